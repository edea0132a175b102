//! Matrices attached to a graph and their spectra.
//!
//! Everything here works on exact integer matrices. Eigenvalues come from a
//! cyclic Jacobi iteration in f64 and are then grouped into multiplicities
//! with a tolerance relative to the spectral radius. When an eigenvalue is
//! suspected to be an exact integer, `exact_integer_multiplicity` settles
//! its multiplicity with no floating point at all: it computes
//! `n - rank(M - k*I)` by fraction-free (Bareiss) elimination over
//! arbitrary-precision integers.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("graph is disconnected; distances are undefined")]
    Disconnected,
    #[error("Jacobi iteration failed to converge: off-diagonal residual {residual:e} after {sweeps} sweeps")]
    NonConvergence { residual: f64, sweeps: usize },
}

/// Relative threshold on off-diagonal mass for Jacobi convergence.
pub const JACOBI_TOL: f64 = 1e-12;
/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 30;
/// Default eigenvalue grouping tolerance, relative to the spectral radius.
pub const GROUPING_REL_TOL: f64 = 1e-8;
/// Absolute floor under the relative grouping tolerance.
pub const GROUPING_ABS_FLOOR: f64 = 1e-10;
/// An eigenvalue this close to an integer is treated as an integer candidate.
pub const INTEGER_SNAP_TOL: f64 = 1e-6;

/// Dense symmetric matrix with integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSymmetricMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntegerSymmetricMatrix {
    /// Build from an entry function; panics if `f` is not symmetric.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = f(i, j);
            }
        }
        for i in 0..n {
            for j in 0..i {
                assert_eq!(data[i * n + j], data[j * n + i], "entry ({i},{j}) breaks symmetry");
            }
        }
        IntegerSymmetricMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.entry(i, i)).sum()
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        (0..self.n).map(|j| self.entry(i, j)).sum()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// All-pairs shortest path data of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceData {
    dist: Vec<u32>,
    n: usize,
    transmissions: Vec<i64>,
    diameter: u32,
}

impl DistanceData {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Row sum of the distance matrix at `v`.
    pub fn transmission(&self, v: usize) -> i64 {
        self.transmissions[v]
    }

    pub fn transmissions(&self) -> &[i64] {
        &self.transmissions
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }
}

/// BFS from every vertex. Errors on disconnected input rather than inventing
/// an infinity sentinel.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceData, SpectralError> {
    let n = g.order();
    let unreached = u32::MAX;
    let mut dist = vec![unreached; n * n];
    for v in 0..n {
        let row = &mut dist[v * n..(v + 1) * n];
        row[v] = 0;
        let mut queue = vec![v];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for u in g.neighbors(x) {
                if row[u] == unreached {
                    row[u] = row[x] + 1;
                    queue.push(u);
                }
            }
        }
        if row.iter().any(|&d| d == unreached) {
            return Err(SpectralError::Disconnected);
        }
    }
    let transmissions = (0..n).map(|v| dist[v * n..(v + 1) * n].iter().map(|&d| d as i64).sum()).collect();
    let diameter = dist.iter().copied().max().unwrap_or(0);
    Ok(DistanceData { dist, n, transmissions, diameter })
}

/// Distance matrix of a connected graph.
pub fn distance_matrix(g: &Graph) -> Result<IntegerSymmetricMatrix, SpectralError> {
    let d = all_pairs_distances(g)?;
    Ok(IntegerSymmetricMatrix::from_fn(g.order(), |i, j| d.distance(i, j) as i64))
}

/// Distance Laplacian: transmissions on the diagonal minus the distance
/// matrix. Positive semidefinite with zero row sums; 0 is simple exactly
/// when the graph is connected (which is required anyway).
pub fn distance_laplacian(g: &Graph) -> Result<IntegerSymmetricMatrix, SpectralError> {
    let d = all_pairs_distances(g)?;
    Ok(IntegerSymmetricMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            d.transmission(i)
        } else {
            -(d.distance(i, j) as i64)
        }
    }))
}

/// Ordinary Laplacian: degrees minus adjacency. Defined for any graph.
pub fn laplacian(g: &Graph) -> IntegerSymmetricMatrix {
    IntegerSymmetricMatrix::from_fn(g.order(), |i, j| {
        if i == j {
            g.degree(i) as i64
        } else if g.has_edge(i, j) {
            -1
        } else {
            0
        }
    })
}

/// 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> IntegerSymmetricMatrix {
    IntegerSymmetricMatrix::from_fn(g.order(), |i, j| i64::from(g.has_edge(i, j)))
}

/// All eigenvalues in descending order, via cyclic Jacobi rotations.
pub fn eigenvalues(m: &IntegerSymmetricMatrix) -> Result<Vec<f64>, SpectralError> {
    let n = m.order();
    let mut a: Vec<f64> = m.data.iter().map(|&v| v as f64).collect();
    let scale = m.max_abs_entry() as f64;
    if n <= 1 || scale == 0.0 {
        let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        d.sort_by(|x, y| y.total_cmp(x));
        return Ok(d);
    }
    let thresh = JACOBI_TOL * scale;
    let off = |a: &[f64]| -> f64 {
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                worst = worst.max(a[p * n + q].abs());
            }
        }
        worst
    };
    let mut sweeps = 0;
    while off(&a) > thresh {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(SpectralError::NonConvergence { residual: off(&a) / scale, sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                // t is the smaller-magnitude root of t^2 + 2t*theta - 1 = 0.
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p * n + i];
                    let aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

/// Eigenvalues grouped into (value, multiplicity) runs, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumNumeric {
    entries: Vec<(f64, usize)>,
}

impl SpectrumNumeric {
    /// Group a descending eigenvalue list: consecutive values within `tol`
    /// are merged and each group is represented by its mean.
    pub fn group(sorted_desc: &[f64], tol: f64) -> Self {
        let mut entries = Vec::new();
        let mut i = 0;
        while i < sorted_desc.len() {
            let mut j = i + 1;
            while j < sorted_desc.len() && sorted_desc[j - 1] - sorted_desc[j] <= tol {
                j += 1;
            }
            let mean = sorted_desc[i..j].iter().sum::<f64>() / (j - i) as f64;
            entries.push((mean, j - i));
            i = j;
        }
        SpectrumNumeric { entries }
    }

    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    /// Number of distinct grouped values.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Total multiplicity, i.e. the matrix order.
    pub fn order(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Largest eigenvalue.
    pub fn radius(&self) -> f64 {
        self.entries.first().map_or(0.0, |&(v, _)| v)
    }

    /// Eigenvalues repeated to multiplicity, descending.
    pub fn expand(&self) -> Vec<f64> {
        self.entries.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m)).collect()
    }

    /// Grouped multiplicity of the eigenvalue nearest `value`, if within `tol`.
    pub fn multiplicity_near(&self, value: f64, tol: f64) -> usize {
        self.entries.iter().find(|&&(v, _)| (v - value).abs() <= tol).map_or(0, |&(_, m)| m)
    }
}

impl std::fmt::Display for SpectrumNumeric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for &(v, m) in &self.entries {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}", format_eigenvalue(v))?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Render an eigenvalue: integers without decimals, everything else with six
/// places, trailing zeros trimmed.
pub fn format_eigenvalue(v: f64) -> String {
    if (v - v.round()).abs() < INTEGER_SNAP_TOL {
        // -0.0 and tiny negatives round to a plain 0
        format!("{}", v.round() as i64)
    } else {
        let s = format!("{v:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Grouping tolerance used when the caller does not supply one.
pub fn default_grouping_tol(radius: f64) -> f64 {
    GROUPING_ABS_FLOOR.max(GROUPING_REL_TOL * radius.abs().max(1.0))
}

/// Numeric spectrum with the default, radius-relative grouping tolerance.
pub fn numeric_spectrum(m: &IntegerSymmetricMatrix) -> Result<SpectrumNumeric, SpectralError> {
    numeric_spectrum_with_tol(m, None)
}

/// Numeric spectrum with an explicit absolute grouping tolerance.
pub fn numeric_spectrum_with_tol(
    m: &IntegerSymmetricMatrix,
    grouping_tol: Option<f64>,
) -> Result<SpectrumNumeric, SpectralError> {
    let vals = eigenvalues(m)?;
    let tol = grouping_tol.unwrap_or_else(|| default_grouping_tol(vals.first().copied().unwrap_or(0.0)));
    Ok(SpectrumNumeric::group(&vals, tol))
}

/// Exact multiplicity of the integer `lambda` as an eigenvalue of `m`:
/// `n - rank(m - lambda*I)` over the integers.
pub fn exact_integer_multiplicity(m: &IntegerSymmetricMatrix, lambda: i64) -> usize {
    let n = m.order();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(m.entry(i, j) - if i == j { lambda } else { 0 })).collect())
        .collect();
    n - bareiss_rank(&mut a)
}

/// Rank by Bareiss fraction-free elimination. Row pivoting plus column
/// skipping handles rank-deficient input; every division is exact.
fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, Graph};
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn distances_on_short_path() {
        let d = all_pairs_distances(&path(3)).unwrap();
        assert_eq!(d.distance(0, 2), 2);
        assert_eq!(d.transmissions(), &[3, 2, 3]);
        assert_eq!(d.diameter(), 2);
    }

    #[test]
    fn distances_on_complete_and_cycle() {
        let d = all_pairs_distances(&Graph::complete(5)).unwrap();
        assert!(d.transmissions().iter().all(|&t| t == 4));
        assert_eq!(d.diameter(), 1);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let d = all_pairs_distances(&c5).unwrap();
        assert!(d.transmissions().iter().all(|&t| t == 6));
        assert_eq!(d.diameter(), 2);
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let g = disjoint_union(&[Graph::complete(2), Graph::complete(1)]).unwrap();
        assert_eq!(all_pairs_distances(&g).unwrap_err(), SpectralError::Disconnected);
        assert_eq!(distance_laplacian(&g).unwrap_err(), SpectralError::Disconnected);
    }

    #[test]
    fn distance_laplacian_of_short_path() {
        let m = distance_laplacian(&path(3)).unwrap();
        let expected = [[3, -1, -2], [-1, 2, -1], [-2, -1, 3]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn distance_laplacian_equals_laplacian_on_complete_graphs() {
        for n in 2..=6 {
            let g = Graph::complete(n);
            assert_eq!(distance_laplacian(&g).unwrap(), laplacian(&g));
        }
    }

    #[test]
    fn spectrum_of_short_path() {
        let s = numeric_spectrum(&distance_laplacian(&path(3)).unwrap()).unwrap();
        let e = s.entries();
        assert_eq!(e.len(), 3);
        assert!((e[0].0 - 5.0).abs() < 1e-9 && e[0].1 == 1);
        assert!((e[1].0 - 3.0).abs() < 1e-9 && e[1].1 == 1);
        assert!(e[2].0.abs() < 1e-9 && e[2].1 == 1);
    }

    #[test]
    fn spectrum_of_complete_graph() {
        let s = numeric_spectrum(&distance_laplacian(&Graph::complete(4)).unwrap()).unwrap();
        assert_eq!(s.entries().len(), 2);
        assert!((s.entries()[0].0 - 4.0).abs() < 1e-9);
        assert_eq!(s.entries()[0].1, 3);
        assert_eq!(s.entries()[1].1, 1);
    }

    #[test]
    fn jacobi_handles_degenerate_input() {
        let zero = laplacian(&Graph::empty(4));
        assert_eq!(eigenvalues(&zero).unwrap(), vec![0.0; 4]);
        let one = distance_laplacian(&Graph::empty(1)).unwrap();
        assert_eq!(eigenvalues(&one).unwrap(), vec![0.0]);
    }

    #[test]
    fn exact_multiplicity_on_known_cases() {
        // K_{2,2,1,1}: distance Laplacian spectrum (8^2, 6^3, 0).
        let parts =
            disjoint_union(&[Graph::complete(2), Graph::complete(2), Graph::complete(1), Graph::complete(1)])
                .unwrap();
        let g = parts.complement();
        let dl = distance_laplacian(&g).unwrap();
        assert_eq!(exact_integer_multiplicity(&dl, 6), 3);
        assert_eq!(exact_integer_multiplicity(&dl, 8), 2);
        assert_eq!(exact_integer_multiplicity(&dl, 0), 1);
        assert_eq!(exact_integer_multiplicity(&dl, 7), 0);

        // P_4's distance Laplacian has eigenvalues 7 +/- sqrt(5), 6, 0.
        let dl = distance_laplacian(&path(4)).unwrap();
        assert_eq!(exact_integer_multiplicity(&dl, 4), 0);
        assert_eq!(exact_integer_multiplicity(&dl, 6), 1);

        assert_eq!(exact_integer_multiplicity(&distance_laplacian(&Graph::complete(3)).unwrap(), 5), 0);
    }

    #[test]
    fn rank_of_laplacian_counts_components() {
        let g = disjoint_union(&[Graph::complete(3), Graph::complete(2), Graph::complete(1)]).unwrap();
        // rank(L) = n - c, so multiplicity of 0 is the component count.
        assert_eq!(exact_integer_multiplicity(&laplacian(&g), 0), 3);
    }

    #[test]
    fn eigenvalue_formatting() {
        assert_eq!(format_eigenvalue(6.000000001), "6");
        assert_eq!(format_eigenvalue(-0.0000000004), "0");
        assert_eq!(format_eigenvalue(4.7639320225), "4.763932");
        assert_eq!(format_eigenvalue(2.5), "2.5");
    }

    proptest! {
        #[test]
        fn laplacian_spectra_are_psd_with_zero_row_sums(g in crate::testutil::arb_graph(7)) {
            let m = laplacian(&g);
            for i in 0..g.order() {
                prop_assert_eq!(m.row_sum(i), 0);
            }
            let vals = eigenvalues(&m).unwrap();
            let radius = vals.first().copied().unwrap_or(0.0).max(1.0);
            prop_assert!(vals.last().copied().unwrap_or(0.0) >= -1e-9 * radius);
            let sum: f64 = vals.iter().sum();
            prop_assert!((sum - m.trace() as f64).abs() <= 1e-8 * (m.trace() as f64).abs().max(1.0));
        }

        #[test]
        fn distance_laplacian_zero_is_simple(g in crate::testutil::arb_connected(7)) {
            // Connectivity makes 0 a simple eigenvalue, numerically and
            // by exact rank.
            let dl = distance_laplacian(&g).unwrap();
            prop_assert_eq!(exact_integer_multiplicity(&dl, 0), 1);
            let spectrum = numeric_spectrum(&dl).unwrap();
            let &(bottom, mult) = spectrum.entries().last().unwrap();
            prop_assert!(bottom.abs() <= 1e-7);
            prop_assert_eq!(mult, 1);
        }

        #[test]
        fn grouping_respects_tolerance(vals in proptest::collection::vec(-50.0f64..50.0, 1..12)) {
            let mut sorted = vals;
            sorted.sort_by(|a, b| b.total_cmp(a));
            let tol = 0.5;
            let s = SpectrumNumeric::group(&sorted, tol);
            prop_assert_eq!(s.order(), sorted.len());
            // Consecutive raw values in different groups are separated by more than tol.
            let mut idx = 0;
            let mut boundaries = Vec::new();
            for &(_, m) in s.entries() {
                idx += m;
                boundaries.push(idx);
            }
            for w in boundaries.windows(2) {
                prop_assert!(sorted[w[0] - 1] - sorted[w[0]] > tol);
            }
        }
    }
}
