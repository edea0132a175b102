//! Simple undirected graphs on a fixed vertex set `0..n`.
//!
//! Adjacency is a packed bit array over the upper triangle in column-major
//! order: pair `(u, v)` with `u < v` sits at index `v(v-1)/2 + u`. This is
//! the same bit order the graph6 format uses, so encoding is a straight
//! repack. Graphs are immutable once built; all operations that "modify"
//! return a new value.

use std::path::PathBuf;

use thiserror::Error;

/// Largest order the graph6 codec accepts (single-byte header form).
pub const MAX_GRAPH6_ORDER: usize = 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("disjoint union of an empty list has no order")]
    EmptyUnion,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("graph6 byte {byte:#04x} at position {pos} outside 63..=126")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("long-form graph6 header (order > 62) is not supported")]
    LongForm,
    #[error("graph6 order 0 is not a graph")]
    ZeroOrder,
    #[error("graph6 data truncated: need {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing bytes after graph6 payload: expected {expected} bytes total, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("nonzero padding bits in final graph6 byte")]
    NonzeroPadding,
}

/// Undirected simple graph with at least one vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

impl Graph {
    fn blank(n: usize) -> Self {
        assert!(n >= 1, "graphs have at least one vertex");
        let words = (n * (n - 1) / 2).div_ceil(64).max(1);
        Graph { n, bits: vec![0; words] }
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::blank(n)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::blank(n);
        for v in 1..n {
            for u in 0..v {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Graph from an explicit edge list. Panics on self-loops or vertices
    /// outside `0..n`; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::blank(n);
        for &(u, v) in edges {
            assert!(u != v, "self-loop ({u},{u})");
            assert!(u < n && v < n, "edge ({u},{v}) outside order {n}");
            g.set_edge(u.min(v), u.max(v));
        }
        g
    }

    /// Graph from a raw upper-triangle bit pattern (column-major, the same
    /// order as graph6). Only orders with at most 64 pair slots fit in the
    /// `u64`. Mostly useful for exhaustive sweeps over labeled graphs.
    pub fn from_upper_bits(n: usize, pattern: u64) -> Self {
        let pairs = n * (n - 1) / 2;
        assert!(pairs <= 64, "order {n} has more than 64 vertex pairs");
        assert!(pairs == 64 || pattern < (1u64 << pairs), "pattern has bits beyond pair count");
        let mut g = Self::blank(n);
        g.bits[0] = pattern;
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        let i = pair_index(u, v);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let i = pair_index(u.min(v), u.max(v));
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| (0..v).map(move |u| (u, v))).filter(|&(u, v)| self.has_edge(u, v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(u, v))
    }

    /// Neighborhood of `v` as a bitmask. Requires order <= 64.
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        assert!(self.n <= 64);
        let mut m = 0u64;
        for u in self.neighbors(v) {
            m |= 1 << u;
        }
        m
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut g = Self::blank(self.n);
        for v in 1..self.n {
            for u in 0..v {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Copy with one extra vertex appended as label `n`, adjacent to the
    /// vertices set in `neighbors` (a bitmask over `0..n`). Requires the
    /// current order to be at most 63.
    pub fn with_appended_vertex(&self, neighbors: u64) -> Graph {
        assert!(self.n < 64);
        debug_assert!(neighbors >> self.n == 0, "neighbor mask beyond order");
        let mut g = Self::blank(self.n + 1);
        g.bits[..self.bits.len()].copy_from_slice(&self.bits);
        for u in 0..self.n {
            if neighbors >> u & 1 == 1 {
                g.set_edge(u, self.n);
            }
        }
        g
    }

    /// Join: both graphs side by side plus every cross edge.
    pub fn join(&self, other: &Graph) -> Graph {
        let n1 = self.n;
        let mut g = disjoint_union(&[self.clone(), other.clone()]).expect("two operands");
        for u in 0..n1 {
            for v in n1..n1 + other.n {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.components().count() == 1
    }

    /// Connected components, each listed in ascending vertex order; blocks
    /// ordered by smallest member.
    pub fn components(&self) -> ComponentPartition {
        let mut seen = vec![false; self.n];
        let mut blocks = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < block.len() {
                let v = block[head];
                head += 1;
                for u in 0..self.n {
                    if !seen[u] && self.has_edge(u, v) {
                        seen[u] = true;
                        block.push(u);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        ComponentPartition { blocks }
    }

    /// Encode in graph6. Panics above order 62 (the single-byte header form).
    pub fn to_graph6(&self) -> String {
        assert!(self.n <= MAX_GRAPH6_ORDER, "graph6 header supports order <= 62");
        let pairs = self.n * (self.n - 1) / 2;
        let mut out = Vec::with_capacity(1 + pairs.div_ceil(6));
        out.push(63 + self.n as u8);
        let mut group = 0u8;
        let mut filled = 0;
        for i in 0..pairs {
            group = group << 1 | (self.bits[i / 64] >> (i % 64) & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
        if filled > 0 {
            out.push(63 + (group << (6 - filled)));
        }
        String::from_utf8(out).expect("bytes 63..=126 are ASCII")
    }

    /// Decode a graph6 string (single-byte header, order 1..=62).
    pub fn from_graph6(s: &str) -> Result<Graph, Graph6Error> {
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Graph6Error::Empty);
        }
        for (pos, &byte) in bytes.iter().enumerate() {
            if !(63..=126).contains(&byte) {
                return Err(Graph6Error::InvalidByte { pos, byte });
            }
        }
        if bytes[0] == 126 {
            return Err(Graph6Error::LongForm);
        }
        let n = (bytes[0] - 63) as usize;
        if n == 0 {
            return Err(Graph6Error::ZeroOrder);
        }
        let pairs = n * (n - 1) / 2;
        let payload = pairs.div_ceil(6);
        if bytes.len() < 1 + payload {
            return Err(Graph6Error::Truncated { expected: payload, found: bytes.len() - 1 });
        }
        if bytes.len() > 1 + payload {
            return Err(Graph6Error::TrailingData { expected: 1 + payload, found: bytes.len() });
        }
        let mut g = Self::blank(n);
        for i in 0..pairs {
            let b = bytes[1 + i / 6] - 63;
            if b >> (5 - i % 6) & 1 == 1 {
                g.bits[i / 64] |= 1 << (i % 64);
            }
        }
        // Padding bits in the last byte must be zero.
        if payload > 0 {
            let used = pairs - 6 * (payload - 1);
            let last = bytes[payload] - 63;
            if last & ((1 << (6 - used)) - 1) != 0 {
                return Err(Graph6Error::NonzeroPadding);
            }
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Disjoint union in list order: vertex labels of later operands are shifted
/// past the earlier ones.
pub fn disjoint_union(parts: &[Graph]) -> Result<Graph, GraphError> {
    if parts.is_empty() {
        return Err(GraphError::EmptyUnion);
    }
    let n: usize = parts.iter().map(|g| g.order()).sum();
    let mut g = Graph::blank(n);
    let mut base = 0;
    for part in parts {
        for (u, v) in part.edges() {
            g.set_edge(base + u, base + v);
        }
        base += part.order();
    }
    Ok(g)
}

/// Partition of the vertex set into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    blocks: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block sizes in descending order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

/// Where a stream of graphs came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamSource {
    Generated,
    Corpus(PathBuf),
}
