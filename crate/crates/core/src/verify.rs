//! Exhaustive verification of spectral characterizations on small orders.
//!
//! A characterization names a spectrum shape (the left hand side) and a
//! list of graph families (the right hand side) and claims the connected
//! graphs realizing the shape are exactly the family instances. This
//! module scans every isomorphism class of a given order, classifies each
//! spectrum into a multiplicity profile, matches profiles against shape
//! predicates, and compares the satisfying set with the predicted set as
//! sets of canonical forms. Any discrepancy, in either direction, is a
//! counterexample.
//!
//! Shape predicates mix two kinds of evidence on purpose: group
//! multiplicities come from the numeric spectrum with a stability sweep of
//! the grouping tolerance, while multiplicities of integer eigenvalues
//! (the order n, and integral spectral radii) are confirmed by exact rank
//! computation over arbitrary precision integers. A numeric coincidence
//! therefore cannot fake an integer multiplicity.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::enumerate::{EnumError, GraphStream, MAX_ENUM_ORDER};
use crate::family::FamilySpec;
use crate::graph::{Graph, StreamSource};
use crate::oracle::predicted_multiplicity_of_n;
use crate::spectral::{
    default_grouping_tol, distance_laplacian, eigenvalues, exact_integer_multiplicity,
    SpectrumNumeric, INTEGER_SNAP_TOL,
};

/// Absolute slack for matching a grouped eigenvalue against an exact
/// target value (the order n, an integer radius, or zero).
pub const VALUE_MATCH_TOL: f64 = 1e-6;

/// Connected isomorphism class counts by order, used to decide whether an
/// externally supplied corpus is complete.
const CONNECTED_CLASS_COUNTS: [usize; MAX_ENUM_ORDER + 1] =
    [0, 1, 1, 2, 6, 21, 112, 853, 11117, 261080];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("theorem {theorem} starts at order {min}, got {n}")]
    BelowThreshold { theorem: &'static str, n: usize, min: usize },
    #[error("corpus covers {found} of {expected} isomorphism classes at order {order}")]
    IncompleteCorpus { found: usize, expected: usize, order: usize },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// Everything the shape predicates need to know about one graph's
/// distance Laplacian spectrum.
#[derive(Debug, Clone)]
pub struct MultiplicityProfile {
    pub order: usize,
    /// Grouped numeric spectrum, values descending.
    pub spectrum: SpectrumNumeric,
    /// Numeric multiplicity of the largest eigenvalue group.
    pub m_radius: usize,
    /// Whether the largest eigenvalue sits within snapping distance of an
    /// integer.
    pub radius_integer: bool,
    /// When it does, whether exact rank computation confirms the numeric
    /// multiplicity of that integer.
    pub radius_exact_agrees: bool,
    /// Whether the group structure survives scaling the grouping tolerance
    /// by ten in both directions.
    pub grouping_stable: bool,
    /// Exact multiplicity of the order n as an eigenvalue.
    pub m_n_exact: usize,
}

fn same_group_structure(a: &SpectrumNumeric, b: &SpectrumNumeric) -> bool {
    a.entries().len() == b.entries().len()
        && a.entries().iter().zip(b.entries()).all(|(x, y)| x.1 == y.1)
}

/// Classify a connected graph with the default grouping tolerance.
pub fn classify(g: &Graph) -> MultiplicityProfile {
    classify_with(g, None)
}

/// Classify a connected graph; `tol` overrides the absolute grouping
/// tolerance when given.
pub fn classify_with(g: &Graph, tol: Option<f64>) -> MultiplicityProfile {
    let n = g.order();
    let dl = distance_laplacian(g).expect("classification takes connected graphs");
    let raw = eigenvalues(&dl).expect("Jacobi converges on distance Laplacians");
    let base_tol = tol.unwrap_or_else(|| default_grouping_tol(raw[0]));
    let spectrum = SpectrumNumeric::group(&raw, base_tol);
    let m_radius = spectrum.entries()[0].1;
    let radius = spectrum.radius();
    let snapped = radius.round();
    let radius_integer = (radius - snapped).abs() <= INTEGER_SNAP_TOL;
    let radius_exact_agrees =
        radius_integer && exact_integer_multiplicity(&dl, snapped as i64) == m_radius;
    let coarser = SpectrumNumeric::group(&raw, base_tol * 10.0);
    let finer = SpectrumNumeric::group(&raw, base_tol * 0.1);
    let grouping_stable =
        same_group_structure(&spectrum, &coarser) && same_group_structure(&spectrum, &finer);
    let m_n_exact = exact_integer_multiplicity(&dl, n as i64);
    debug_assert_eq!(
        m_n_exact,
        predicted_multiplicity_of_n(g),
        "exact rank and complement components disagree on m(n)"
    );
    MultiplicityProfile {
        order: n,
        spectrum,
        m_radius,
        radius_integer,
        radius_exact_agrees,
        grouping_stable,
        m_n_exact,
    }
}

/// The six verified characterizations. Each names a spectrum shape with a
/// group of multiplicity n - 4 and the claimed list of realizing families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Shape (a^{n-4}, n^3, 0) with integral a.
    T31a,
    /// Shape (a^{n-4}, b, n^2, 0) with integral a.
    T31b,
    /// Shape (a, b^{n-4}, n^2, 0).
    T41,
    /// Shape (a^3, n^{n-4}, 0).
    T42a,
    /// Shape (a^2, b, n^{n-4}, 0).
    T42b,
    /// Shapes (a, b, [c,] n^{n-4}, 0) with two simple or one double value
    /// between the radius and the n group.
    T42c,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T31a,
        TheoremId::T31b,
        TheoremId::T41,
        TheoremId::T42a,
        TheoremId::T42b,
        TheoremId::T42c,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T31a => "t31a",
            TheoremId::T31b => "t31b",
            TheoremId::T41 => "t41",
            TheoremId::T42a => "t42a",
            TheoremId::T42b => "t42b",
            TheoremId::T42c => "t42c",
        }
    }

    /// Smallest order at which the characterization is claimed.
    pub fn min_order(self) -> usize {
        match self {
            TheoremId::T31a | TheoremId::T31b => 6,
            _ => 5,
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lowered = s.trim().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == lowered)
            .ok_or_else(|| format!("unknown theorem {s:?}, expected one of t31a t31b t41 t42a t42b t42c"))
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn near(value: f64, target: f64) -> bool {
    (value - target).abs() <= VALUE_MATCH_TOL
}

/// Whether a profile realizes the spectrum shape of the given
/// characterization. Integer multiplicities (the n group, integral radii)
/// must be confirmed exactly; everything else is grouped numerics under a
/// stability sweep.
pub fn matches_lhs(id: TheoremId, profile: &MultiplicityProfile) -> bool {
    let n = profile.order;
    if n < 5 || !profile.grouping_stable {
        return false;
    }
    let groups = profile.spectrum.entries();
    let k = groups.len();
    // Connected graphs contribute a simple zero at the bottom; anything
    // else means the grouping is untrustworthy.
    if k < 2 || groups[k - 1].1 != 1 || groups[k - 1].0.abs() > VALUE_MATCH_TOL {
        return false;
    }
    let nm4 = n - 4;
    let nf = n as f64;
    let radius_confirmed = profile.radius_integer && profile.radius_exact_agrees;
    match id {
        TheoremId::T31a => {
            k == 3
                && groups[0].1 == nm4
                && groups[1].1 == 3
                && near(groups[1].0, nf)
                && profile.m_n_exact == 3
                && radius_confirmed
        }
        TheoremId::T31b => {
            k == 4
                && groups[0].1 == nm4
                && groups[1].1 == 1
                && groups[2].1 == 2
                && near(groups[2].0, nf)
                && profile.m_n_exact == 2
                && radius_confirmed
        }
        TheoremId::T41 => {
            k == 4
                && groups[0].1 == 1
                && groups[1].1 == nm4
                && groups[2].1 == 2
                && near(groups[2].0, nf)
                && profile.m_n_exact == 2
        }
        TheoremId::T42a => {
            k == 3
                && groups[0].1 == 3
                && groups[1].1 == nm4
                && near(groups[1].0, nf)
                && profile.m_n_exact == nm4
        }
        TheoremId::T42b => {
            k == 4
                && groups[0].1 == 2
                && groups[1].1 == 1
                && groups[2].1 == nm4
                && near(groups[2].0, nf)
                && profile.m_n_exact == nm4
        }
        TheoremId::T42c => {
            (k == 4 || k == 5)
                && groups[0].1 == 1
                && groups[k - 2].1 == nm4
                && near(groups[k - 2].0, nf)
                && groups[1..k - 2].iter().map(|e| e.1).sum::<usize>() == 2
                && profile.m_n_exact == nm4
        }
    }
}

/// The families a characterization predicts at order n, restricted to the
/// ones whose arithmetic constraints hold there. Divisibility conditions
/// act purely as instantiability gates.
pub fn theorem_families(id: TheoremId, n: usize) -> Vec<FamilySpec> {
    use FamilySpec::*;
    let candidates: Vec<FamilySpec> = match id {
        TheoremId::T31a => {
            // Complete multipartite graphs on four parts whose non-singleton
            // parts share one size, in every arithmetic flavor.
            let mut v = Vec::new();
            if n % 4 == 0 && n / 4 >= 2 {
                v.push(Multipartite { parts: vec![n / 4; 4] });
            }
            if n >= 7 && (n - 1) % 3 == 0 && (n - 1) / 3 >= 2 {
                let t = (n - 1) / 3;
                v.push(Multipartite { parts: vec![t, t, t, 1] });
            }
            if n % 2 == 0 && n >= 6 {
                let t = (n - 2) / 2;
                v.push(Multipartite { parts: vec![t, t, 1, 1] });
            }
            v.push(SplitNm3 { n });
            v
        }
        TheoremId::T31b => vec![
            SplitNm2PlusEdge { n },
            KNm321 { n },
            Kpp1PlusEdge { n },
            Kpp2 { n },
            KpppPlusEdge { n },
        ],
        TheoremId::T41 => {
            let mut v = Vec::new();
            if n == 7 {
                v.push(StarJoinTwoEdges);
            }
            v.push(CliquePlusTwoEdgeVertex { n });
            v.push(TwoCliquesJoinEdge { n });
            v.push(TwoCliquesJoinBipartite { n });
            v
        }
        TheoremId::T42a => vec![SplitFour { n }, KTripleTwoOnes { n }],
        TheoremId::T42b => vec![SplitFourPlusEdge { n }, KThreeTwoOnes { n }],
        TheoremId::T42c => vec![
            CoStarFour { n },
            CoCycleFour { n },
            CoPathFour { n },
            CoKiteFour { n },
            CoStarThreeEdge { n },
        ],
    };
    candidates
        .into_iter()
        .filter(|spec| spec.instantiate().is_ok())
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Absolute grouping tolerance override.
    pub tol: Option<f64>,
    /// Run below the characterization's claimed starting order.
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    NotEqual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCounts {
    pub scanned: usize,
    pub satisfying: usize,
    pub predicted: usize,
}

/// A graph on the wrong side of the set comparison: either it realizes
/// the shape without being predicted, or it is predicted and fails the
/// shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    pub spectrum: Vec<(f64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstanceRecord {
    pub id: String,
    pub graph6: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n: usize,
    pub counts: ReportCounts,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub families: Vec<FamilyInstanceRecord>,
    pub elapsed_ms: u64,
}

/// Deduplicated (canonical graph6, representative graph) rows for a
/// stream, with the completeness check for external corpora.
fn prepared_classes(stream: &GraphStream) -> Result<Vec<(String, Graph)>, VerifyError> {
    let n = stream.order;
    if !(1..=MAX_ENUM_ORDER).contains(&n) {
        return Err(EnumError::OrderOutOfRange { n, max: MAX_ENUM_ORDER }.into());
    }
    match stream.source {
        // Generated streams are canonical representatives already.
        StreamSource::Generated => Ok(stream
            .graphs
            .iter()
            .map(|g| (g.to_graph6(), g.clone()))
            .collect()),
        StreamSource::Corpus(_) => {
            let forms: BTreeMap<String, Graph> = stream
                .graphs
                .par_iter()
                .map(|g| {
                    let form = canonical_form(g).expect("corpus orders are canonicalizable");
                    let rep = form.to_graph();
                    (form.into_string(), rep)
                })
                .collect();
            let expected = CONNECTED_CLASS_COUNTS[n];
            if forms.len() != expected {
                return Err(VerifyError::IncompleteCorpus {
                    found: forms.len(),
                    expected,
                    order: n,
                });
            }
            Ok(forms.into_iter().collect())
        }
    }
}

/// Scan a stream of connected graphs and compare the set realizing the
/// characterization's shape with the set of predicted family instances.
pub fn verify_theorem(
    id: TheoremId,
    stream: &GraphStream,
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let n = stream.order;
    if n < id.min_order() && !options.force {
        return Err(VerifyError::BelowThreshold { theorem: id.as_str(), n, min: id.min_order() });
    }
    let rows = prepared_classes(stream)?;
    let satisfying: BTreeMap<String, MultiplicityProfile> = rows
        .par_iter()
        .filter_map(|(form, g)| {
            let profile = classify_with(g, options.tol);
            matches_lhs(id, &profile).then(|| (form.clone(), profile))
        })
        .collect();

    let mut families = Vec::new();
    let mut predicted: BTreeMap<String, FamilySpec> = BTreeMap::new();
    for spec in theorem_families(id, n) {
        let g = spec.instantiate().expect("theorem families are pre-filtered");
        let form = canonical_form(&g)
            .expect("family orders are canonicalizable")
            .into_string();
        families.push(FamilyInstanceRecord { id: spec.id(), graph6: form.clone() });
        predicted.insert(form, spec);
    }

    let mut counterexamples: BTreeMap<String, Vec<(f64, usize)>> = BTreeMap::new();
    for (form, profile) in &satisfying {
        if !predicted.contains_key(form) {
            counterexamples.insert(form.clone(), profile.spectrum.entries().to_vec());
        }
    }
    for (form, spec) in &predicted {
        if !satisfying.contains_key(form) {
            let g = spec.instantiate().expect("instantiability was checked");
            let profile = classify_with(&g, options.tol);
            counterexamples.insert(form.clone(), profile.spectrum.entries().to_vec());
        }
    }

    let verdict = if counterexamples.is_empty() { Verdict::Equal } else { Verdict::NotEqual };
    Ok(VerificationReport {
        theorem: id.as_str().to_string(),
        n,
        counts: ReportCounts {
            scanned: rows.len(),
            satisfying: satisfying.len(),
            predicted: predicted.len(),
        },
        verdict,
        counterexamples: counterexamples
            .into_iter()
            .map(|(graph6, spectrum)| Counterexample { graph6, spectrum })
            .collect(),
        families,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// When the largest eigenvalue group has multiplicity n - 4, the three
/// remaining nonzero positions can hold the value n zero to three times.
/// Three and two are the characterized configurations; one and zero are
/// open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CaseLabel {
    /// m(n) = 3: the shape of the three-group characterization.
    A,
    /// m(n) = 2: the shape of the four-group characterization.
    B,
    /// m(n) = 1.
    C,
    /// m(n) = 0: the complement is connected.
    D,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::A => "a",
            CaseLabel::B => "b",
            CaseLabel::C => "c",
            CaseLabel::D => "d",
        }
    }
}

/// Partition for graphs whose largest eigenvalue group has stable numeric
/// multiplicity n - 4: label by the exact multiplicity of n. Returns None
/// when the premise fails.
pub fn case_of(profile: &MultiplicityProfile) -> Option<CaseLabel> {
    let n = profile.order;
    if n < 5 || !profile.grouping_stable || profile.m_radius != n - 4 {
        return None;
    }
    match profile.m_n_exact {
        3 => Some(CaseLabel::A),
        2 => Some(CaseLabel::B),
        1 => Some(CaseLabel::C),
        0 => Some(CaseLabel::D),
        more => {
            // n - 4 radius positions, a simple zero, and more than three
            // copies of n would overfill the spectrum.
            debug_assert!(false, "impossible multiplicity {more} of n alongside an n-4 radius");
            None
        }
    }
}

/// One graph in an uncharacterized configuration.
#[derive(Debug, Clone)]
pub struct OpenCaseRow {
    pub graph6: String,
    pub profile: MultiplicityProfile,
    pub case: CaseLabel,
}

/// Scan a stream for graphs whose largest eigenvalue group has
/// multiplicity n - 4 in one of the configurations no characterization
/// covers, sorted by canonical form.
pub fn explore_open_cases(
    stream: &GraphStream,
    options: &VerifyOptions,
) -> Result<Vec<OpenCaseRow>, VerifyError> {
    let rows = prepared_classes(stream)?;
    let mut out: Vec<OpenCaseRow> = rows
        .par_iter()
        .filter_map(|(form, g)| {
            let profile = classify_with(g, options.tol);
            let case = case_of(&profile)?;
            matches!(case, CaseLabel::C | CaseLabel::D).then(|| OpenCaseRow {
                graph6: form.clone(),
                profile,
                case,
            })
        })
        .collect();
    out.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(out)
}
