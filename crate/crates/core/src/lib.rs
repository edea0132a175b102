//! Distance Laplacian spectra of small connected graphs.
//!
//! The distance Laplacian of a connected graph puts the vertex transmissions
//! (row sums of the distance matrix) on the diagonal and the negated
//! distances off it. This crate computes those spectra exactly enough to
//! reason about eigenvalue multiplicities: a float eigensolver proposes a
//! grouping, and integer-arithmetic rank computations confirm every integer
//! multiplicity. On top of that sit
//!
//! * a catalog of named graph families built from their complement
//!   structure ([`family`]),
//! * closed-form spectrum rules for complements, small-diameter graphs, and
//!   complete multipartite graphs ([`oracle`]),
//! * an isomorphism-free enumerator of all connected graphs of a given
//!   small order ([`enumerate`]), and
//! * an exhaustive verifier that scans every connected graph of an order,
//!   classifies its multiplicity structure, and compares the graphs that
//!   match a characterization against the families the characterization
//!   predicts ([`verify`]).

pub mod canon;
pub mod enumerate;
pub mod family;
pub mod graph;
pub mod oracle;
pub mod spectral;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use graph::{disjoint_union, ComponentPartition, Graph, StreamSource};
pub use spectral::{
    all_pairs_distances, distance_laplacian, exact_integer_multiplicity, laplacian, numeric_spectrum,
    IntegerSymmetricMatrix, SpectrumNumeric,
};
