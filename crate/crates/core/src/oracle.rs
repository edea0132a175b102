//! Closed-form spectral facts, kept independent of the numeric eigensolver.
//!
//! Everything here is direct arithmetic on known formulas: complement
//! transfer of Laplacian spectra, the diameter-two bridge from Laplacian to
//! distance Laplacian eigenvalues, the complete multipartite spectrum, twin
//! vertex eigenvalues, and parameterized spectrum patterns for the named
//! families. Tests elsewhere compare these predictions against numerically
//! computed spectra, so the two routes fail independently: nothing in this
//! module iterates, and nothing calls Jacobi.

use std::collections::BTreeMap;

use num::rational::Ratio;
use thiserror::Error;

use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::spectral::{all_pairs_distances, SpectrumNumeric};

/// Absolute slack when an input spectrum must contain an exact value
/// (usually the zero of a Laplacian).
pub const ORACLE_ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("expected a zero eigenvalue, smallest entry is {smallest}")]
    MissingZero { smallest: f64 },
    #[error("eigenvalue {value} outside the Laplacian range [0, {upper}]")]
    OutOfRange { value: f64, upper: usize },
    #[error("not a twin set: {reason}")]
    BadTwinSet { reason: String },
    #[error("graph is disconnected")]
    Disconnected,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern multiplicity {value} at n = {n} is not positive")]
    NonpositiveMultiplicity { value: i64, n: usize },
    #[error("pattern multiplicities at n = {n} sum to {sum}, expected {n}")]
    WrongTotal { sum: i64, n: usize },
    #[error("pattern values at n = {n} are not strictly decreasing")]
    NotDecreasing { n: usize },
}

/// Laplacian spectrum of the complement, computed from the Laplacian
/// spectrum of the graph itself. One zero is set aside, every remaining
/// eigenvalue maps through x -> n - x, and the zero is restored at the
/// bottom. Applying the map twice returns the input.
pub fn complement_laplacian_spectrum(mu: &[f64]) -> Result<Vec<f64>, OracleError> {
    let n = mu.len();
    assert!(n >= 1, "a spectrum has at least one entry");
    let mut sorted = mu.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let smallest = sorted[n - 1];
    if smallest.abs() > ORACLE_ZERO_TOL {
        return Err(OracleError::MissingZero { smallest });
    }
    for &v in &sorted {
        if v < -ORACLE_ZERO_TOL || v > n as f64 + ORACLE_ZERO_TOL {
            return Err(OracleError::OutOfRange { value: v, upper: n });
        }
    }
    sorted.pop();
    let mut out: Vec<f64> = sorted.into_iter().map(|x| n as f64 - x).collect();
    out.push(0.0);
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Distance Laplacian spectrum of a connected graph of diameter at most
/// two, computed from its Laplacian spectrum: the eigenvalue in the zero
/// position stays put, every other maps through x -> 2n - x. The caller
/// vouches for connectivity and the diameter bound; the arithmetic itself
/// cannot fail.
pub fn dl_spectrum_from_laplacian(mu: &[f64]) -> Vec<f64> {
    let n = mu.len();
    let mut sorted = mu.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted.pop();
    let mut out: Vec<f64> = sorted.into_iter().map(|x| 2.0 * n as f64 - x).collect();
    out.push(0.0);
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Exact multiplicity of the order n as a distance Laplacian eigenvalue of
/// a connected graph: one less than the number of connected components of
/// the complement.
pub fn predicted_multiplicity_of_n(g: &Graph) -> usize {
    assert!(g.is_connected(), "the eigenvalue n count needs a connected graph");
    g.complement().components().count() - 1
}

/// Distance Laplacian spectrum of the complete multipartite graph with
/// the given part sizes, as exact integers with multiplicities, value
/// descending. Each part of size t >= 2 contributes n + t with
/// multiplicity t - 1, the order n appears once per part beyond the first,
/// and 0 closes the list.
pub fn multipartite_dl_spectrum(parts: &[usize]) -> Vec<(i64, usize)> {
    assert!(parts.len() >= 2, "a multipartite graph needs at least two parts");
    assert!(parts.iter().all(|&t| t >= 1), "empty parts are not allowed");
    let n: usize = parts.iter().sum();
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &t in parts {
        if t >= 2 {
            *counts.entry((n + t) as i64).or_insert(0) += t - 1;
        }
    }
    *counts.entry(n as i64).or_insert(0) += parts.len() - 1;
    *counts.entry(0).or_insert(0) += 1;
    counts.into_iter().rev().collect()
}

/// Whether the values are the Laplacian spectrum (n^{n-1}, 0) of the
/// complete graph, within tol.
pub fn is_complete_l_spectrum(mu: &[f64], tol: f64) -> bool {
    let n = mu.len();
    if n == 0 {
        return false;
    }
    let mut sorted = mu.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted[n - 1].abs() <= tol && sorted[..n - 1].iter().all(|&v| (v - n as f64).abs() <= tol)
}

/// Whether the values are the Laplacian spectrum (n^{n-2}, n-2, 0) of the
/// complete graph with one edge removed, within tol.
pub fn recognize_kn_minus_e(mu: &[f64], tol: f64) -> bool {
    let n = mu.len();
    if n < 3 {
        return false;
    }
    let mut sorted = mu.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted[n - 1].abs() <= tol
        && (sorted[n - 2] - (n as f64 - 2.0)).abs() <= tol
        && sorted[..n - 2].iter().all(|&v| (v - n as f64).abs() <= tol)
}

/// The two connected graphs whose distance Laplacian spectrum has exactly
/// two distinct positive values with the larger one of multiplicity n - 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoValueShape {
    /// Spectrum ((2n-1)^{n-2}, n, 0): the star.
    Star,
    /// Spectrum ((3n/2)^{n-2}, n, 0): the balanced complete bipartite graph.
    BalancedBipartite,
}

/// Recognize a grouped distance Laplacian spectrum of the shape
/// (a^{n-2}, n, 0). Only the star (a = 2n - 1) and, for even n, the
/// balanced complete bipartite graph (a = 3n/2) realize it.
pub fn recognize_two_distinct_mult_n2(
    spectrum: &SpectrumNumeric,
    tol: f64,
) -> Option<TwoValueShape> {
    let groups = spectrum.entries();
    let n = spectrum.order();
    if groups.len() != 3 || n < 4 {
        return None;
    }
    let (a, ma) = groups[0];
    let (b, mb) = groups[1];
    let (z, mz) = groups[2];
    if ma != n - 2 || mb != 1 || mz != 1 || z.abs() > tol || (b - n as f64).abs() > tol {
        return None;
    }
    if (a - (2.0 * n as f64 - 1.0)).abs() <= tol {
        return Some(TwoValueShape::Star);
    }
    if n % 2 == 0 && (a - 1.5 * n as f64).abs() <= tol {
        return Some(TwoValueShape::BalancedBipartite);
    }
    None
}

fn bad_twin(reason: impl Into<String>) -> OracleError {
    OracleError::BadTwinSet { reason: reason.into() }
}

fn check_twin_set(g: &Graph, set: &[usize], adjacent_inside: bool) -> Result<(), OracleError> {
    let n = g.order();
    if set.len() < 2 {
        return Err(bad_twin("need at least two vertices"));
    }
    let mut inside = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(bad_twin(format!("vertex {v} out of range")));
        }
        if inside[v] {
            return Err(bad_twin(format!("vertex {v} repeated")));
        }
        inside[v] = true;
    }
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) != adjacent_inside {
                let want = if adjacent_inside { "adjacent" } else { "non-adjacent" };
                return Err(bad_twin(format!("vertices {u} and {v} must be {want}")));
            }
        }
    }
    let anchor = set[0];
    for w in (0..n).filter(|&w| !inside[w]) {
        let to_anchor = g.has_edge(anchor, w);
        for &v in &set[1..] {
            if g.has_edge(v, w) != to_anchor {
                return Err(bad_twin(format!(
                    "vertices {anchor} and {v} differ at outside vertex {w}"
                )));
            }
        }
    }
    Ok(())
}

fn twin_eigenvalue(
    g: &Graph,
    set: &[usize],
    adjacent_inside: bool,
) -> Result<(i64, usize), OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    check_twin_set(g, set, adjacent_inside)?;
    let dd = all_pairs_distances(g).expect("connectivity checked above");
    let tr = dd.transmission(set[0]);
    debug_assert!(
        set.iter().all(|&v| dd.transmission(v) == tr),
        "twins share a transmission"
    );
    let inner_distance = if adjacent_inside { 1 } else { 2 };
    Ok((tr + inner_distance, set.len() - 1))
}

/// Distance Laplacian eigenvalue guaranteed by a set of pairwise adjacent
/// vertices with identical neighborhoods outside the set: the shared
/// transmission plus one, with multiplicity at least the set size minus
/// one. Returns (eigenvalue, guaranteed multiplicity).
pub fn twin_clique_eigenvalue(g: &Graph, set: &[usize]) -> Result<(i64, usize), OracleError> {
    twin_eigenvalue(g, set, true)
}

/// Distance Laplacian eigenvalue guaranteed by a set of pairwise
/// non-adjacent vertices with identical neighborhoods: the shared
/// transmission plus two, with multiplicity at least the set size minus
/// one. Returns (eigenvalue, guaranteed multiplicity).
pub fn twin_independent_eigenvalue(g: &Graph, set: &[usize]) -> Result<(i64, usize), OracleError> {
    twin_eigenvalue(g, set, false)
}

/// One group of a parameterized spectrum: the eigenvalue is
/// `n_coeff * n + constant + offset` and the multiplicity is
/// `mult_n * n + mult_const`, both as functions of the order n. The
/// rational parts stay exact; `offset` carries the occasional irrational
/// summand.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternEntry {
    pub n_coeff: Ratio<i64>,
    pub constant: Ratio<i64>,
    pub offset: f64,
    pub mult_n: i64,
    pub mult_const: i64,
}

impl PatternEntry {
    /// Rational entry: value (cn * n + cc) / cd is expressed by the caller
    /// as n_coeff = cn/cd and constant = cc/cd.
    pub fn rational(
        n_num: i64,
        n_den: i64,
        c_num: i64,
        c_den: i64,
        mult_n: i64,
        mult_const: i64,
    ) -> Self {
        PatternEntry {
            n_coeff: Ratio::new(n_num, n_den),
            constant: Ratio::new(c_num, c_den),
            offset: 0.0,
            mult_n,
            mult_const,
        }
    }

    /// Entry of the form n + offset for an irrational offset.
    pub fn shifted(offset: f64, mult_n: i64, mult_const: i64) -> Self {
        PatternEntry {
            n_coeff: Ratio::new(1, 1),
            constant: Ratio::new(0, 1),
            offset,
            mult_n,
            mult_const,
        }
    }
}

/// A full spectrum shape parameterized by the order, value descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPattern {
    entries: Vec<PatternEntry>,
}

impl SpectrumPattern {
    pub fn new(entries: Vec<PatternEntry>) -> Self {
        SpectrumPattern { entries }
    }

    pub fn entries(&self) -> &[PatternEntry] {
        &self.entries
    }

    /// Concrete (value, multiplicity) groups at order n, descending.
    /// Errors when a multiplicity fails to be positive, the total misses n,
    /// or two groups collide or come out of order.
    pub fn evaluate(&self, n: usize) -> Result<Vec<(f64, usize)>, PatternError> {
        let ni = n as i64;
        let mut out = Vec::with_capacity(self.entries.len());
        let mut total: i64 = 0;
        for e in &self.entries {
            let m = e.mult_n * ni + e.mult_const;
            if m < 1 {
                return Err(PatternError::NonpositiveMultiplicity { value: m, n });
            }
            total += m;
            let rational = e.n_coeff * Ratio::from_integer(ni) + e.constant;
            let value = *rational.numer() as f64 / *rational.denom() as f64 + e.offset;
            out.push((value, m as usize));
        }
        if total != ni {
            return Err(PatternError::WrongTotal { sum: total, n });
        }
        if out.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(PatternError::NotDecreasing { n });
        }
        Ok(out)
    }

    /// Whether a grouped numeric spectrum matches this pattern at its own
    /// order: identical group multiplicities, values within tol.
    pub fn matches(&self, spectrum: &SpectrumNumeric, tol: f64) -> Result<bool, PatternError> {
        let expected = self.evaluate(spectrum.order())?;
        let got = spectrum.entries();
        Ok(got.len() == expected.len()
            && got
                .iter()
                .zip(&expected)
                .all(|(&(gv, gm), &(ev, em))| gm == em && (gv - ev).abs() <= tol))
    }
}

/// Decimal value of 2 + sqrt(2), the largest Laplacian eigenvalue of the
/// four vertex path; checked against the computed root in tests.
pub const TWO_PLUS_ROOT2: f64 = 3.414_213_562_373_095_048_8;
/// Decimal value of 2 - sqrt(2).
pub const TWO_MINUS_ROOT2: f64 = 0.585_786_437_626_904_951_2;

/// The closed-form distance Laplacian spectrum of a named family, where
/// one is known, as a pattern in the order n. `None` means no closed form
/// is carried for that family (the generic multipartite formula covers
/// some of those cases instead).
pub fn known_spectrum_pattern(spec: &FamilySpec) -> Option<SpectrumPattern> {
    use FamilySpec::*;
    let e = PatternEntry::rational;
    let entries: Vec<PatternEntry> = match spec {
        // Four parts, every part beyond the singletons of one shared size:
        // with s parts of size t >= 2 and r = 4 - s singletons, the large
        // eigenvalue n + t = ((s + 1) n - r) / s has multiplicity n - 4.
        Multipartite { parts } => {
            if parts.len() != 4 {
                return None;
            }
            let mut sorted = parts.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let s = sorted.iter().filter(|&&t| t >= 2).count() as i64;
            let r = 4 - s;
            if s == 0 || !sorted.iter().filter(|&&t| t >= 2).all(|&t| t == sorted[0]) {
                return None;
            }
            vec![
                e(s + 1, s, -r, s, 1, -4),
                e(1, 1, 0, 1, 0, 3),
                e(0, 1, 0, 1, 0, 1),
            ]
        }
        SplitNm3 { .. } => vec![
            e(2, 1, -3, 1, 1, -4),
            e(1, 1, 0, 1, 0, 3),
            e(0, 1, 0, 1, 0, 1),
        ],
        SplitNm2PlusEdge { .. } => vec![
            e(2, 1, -2, 1, 1, -4),
            e(2, 1, -4, 1, 0, 1),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        KNm321 { .. } => vec![
            e(2, 1, -3, 1, 1, -4),
            e(1, 1, 2, 1, 0, 1),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        Kpp1PlusEdge { .. } => vec![
            e(3, 2, -1, 2, 1, -4),
            e(3, 2, -5, 2, 0, 1),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        Kpp2 { .. } => vec![
            e(3, 2, -1, 1, 1, -4),
            e(1, 1, 2, 1, 0, 1),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        KpppPlusEdge { .. } => vec![
            e(4, 3, 0, 1, 1, -4),
            e(4, 3, -2, 1, 0, 1),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        StarJoinTwoEdges => vec![
            e(0, 1, 11, 1, 0, 1),
            e(0, 1, 9, 1, 0, 3),
            e(0, 1, 7, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        CliquePlusTwoEdgeVertex { .. } => vec![
            e(2, 1, -2, 1, 0, 1),
            e(1, 1, 1, 1, 1, -4),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        TwoCliquesJoinEdge { .. } => vec![
            e(2, 1, -2, 1, 0, 1),
            e(3, 2, -1, 1, 1, -4),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        TwoCliquesJoinBipartite { .. } => vec![
            e(3, 2, 0, 1, 0, 1),
            e(5, 4, 0, 1, 1, -4),
            e(1, 1, 0, 1, 0, 2),
            e(0, 1, 0, 1, 0, 1),
        ],
        SplitFour { .. } => vec![
            e(1, 1, 4, 1, 0, 3),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        KTripleTwoOnes { .. } => vec![
            e(1, 1, 2, 1, 0, 3),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        SplitFourPlusEdge { .. } => vec![
            e(1, 1, 4, 1, 0, 2),
            e(1, 1, 2, 1, 0, 1),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        KThreeTwoOnes { .. } => vec![
            e(1, 1, 3, 1, 0, 2),
            e(1, 1, 2, 1, 0, 1),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        CoStarFour { .. } => vec![
            e(1, 1, 4, 1, 0, 1),
            e(1, 1, 1, 1, 0, 2),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        CoCycleFour { .. } => vec![
            e(1, 1, 4, 1, 0, 1),
            e(1, 1, 2, 1, 0, 2),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        CoPathFour { .. } => vec![
            PatternEntry::shifted(TWO_PLUS_ROOT2, 0, 1),
            e(1, 1, 2, 1, 0, 1),
            PatternEntry::shifted(TWO_MINUS_ROOT2, 0, 1),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        CoKiteFour { .. } => vec![
            e(1, 1, 4, 1, 0, 1),
            e(1, 1, 3, 1, 0, 1),
            e(1, 1, 1, 1, 0, 1),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        CoStarThreeEdge { .. } => vec![
            e(1, 1, 3, 1, 0, 1),
            e(1, 1, 2, 1, 0, 1),
            e(1, 1, 1, 1, 0, 1),
            e(1, 1, 0, 1, 1, -4),
            e(0, 1, 0, 1, 0, 1),
        ],
        _ => return None,
    };
    Some(SpectrumPattern::new(entries))
}
