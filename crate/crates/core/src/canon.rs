//! Canonical labeling for small graphs.
//!
//! `canonical_form` relabels a graph so that isomorphic graphs map to the
//! identical graph6 string. The labeling is found by partition refinement
//! followed by a backtracking search: vertices are first split by degree and
//! distance profile, the partition is refined to equitability (every vertex
//! in a cell sees the same number of neighbors in every cell), and the
//! search then individualizes vertices cell by cell, keeping the labeling
//! whose packed upper-triangle bit string is lexicographically smallest.
//!
//! Two prunings keep the search small. A branch whose fixed prefix already
//! exceeds the best known string cannot win and is cut. And when every
//! vertex of the target cell has all-or-nothing adjacency to every cell
//! (including its own), any transposition inside the cell is an
//! automorphism, so a single representative stands for the whole cell; this
//! is what makes complete multipartite graphs and unions of cliques cheap
//! instead of factorially expensive.

use thiserror::Error;

use crate::graph::Graph;
use crate::spectral::{adjacency_matrix, eigenvalues};

/// Largest order `canonical_form` accepts.
pub const MAX_CANON_ORDER: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("canonical labeling supports order <= {max}, got {order}")]
    OrderTooLarge { order: usize, max: usize },
}

/// Canonical graph6 string of a graph. Equal forms mean isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// The canonically labeled graph itself.
    pub fn to_graph(&self) -> Graph {
        Graph::from_graph6(&self.0).expect("canonical forms are valid graph6")
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type Cell = Vec<u8>;

struct Search<'a> {
    adj: &'a [u16],
    n: usize,
    best: Option<(u128, Vec<u8>)>,
}

fn cell_mask(cell: &Cell) -> u16 {
    cell.iter().fold(0u16, |m, &v| m | 1 << v)
}

/// Split every cell by the vector of neighbor counts into all cells, until
/// stable. Sub-cells are ordered by ascending count vector, which keeps the
/// partition order a graph invariant.
fn refine(adj: &[u16], cells: &mut Vec<Cell>) {
    loop {
        let masks: Vec<u16> = cells.iter().map(|c| cell_mask(c)).collect();
        let mut next: Vec<Cell> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, u8)> = cell
                .iter()
                .map(|&v| {
                    let counts = masks.iter().map(|&m| (adj[v as usize] & m).count_ones() as u8).collect();
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    if i - start < cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

/// True when any permutation inside `cells[idx]` extends to an automorphism
/// fixing every other vertex: the cell meets every cell (itself included)
/// all-or-nothing. Counts are uniform across the cell because the partition
/// is equitable, so checking one member suffices.
fn cell_is_homogeneous(adj: &[u16], cells: &[Cell], idx: usize) -> bool {
    let v0 = cells[idx][0] as usize;
    for (j, other) in cells.iter().enumerate() {
        let cnt = (adj[v0] & cell_mask(other)).count_ones() as usize;
        let full = if j == idx { other.len() - 1 } else { other.len() };
        if cnt != 0 && cnt != full {
            return false;
        }
    }
    true
}

impl<'a> Search<'a> {
    /// Upper-triangle bits of the partial labeling, column-major, packed
    /// from the most significant bit of the u128 down.
    fn pack(&self, labeling: &[u8]) -> u128 {
        let mut bits = 0u128;
        let mut idx = 0u32;
        for j in 1..labeling.len() {
            for i in 0..j {
                if self.adj[labeling[i] as usize] >> labeling[j] & 1 == 1 {
                    bits |= 1 << (127 - idx);
                }
                idx += 1;
            }
        }
        bits
    }

    fn run(&mut self, mut cells: Vec<Cell>) {
        refine(self.adj, &mut cells);
        let mut labeling: Vec<u8> = Vec::with_capacity(self.n);
        for cell in &cells {
            if cell.len() == 1 {
                labeling.push(cell[0]);
            } else {
                break;
            }
        }
        let k = labeling.len();
        let prefix = self.pack(&labeling);
        if let Some((best_bits, _)) = &self.best {
            let bits = (k * (k - 1) / 2) as u32;
            if bits > 0 && prefix >> (128 - bits) > best_bits >> (128 - bits) {
                return;
            }
        }
        if k == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| prefix < *b) {
                self.best = Some((prefix, labeling));
            }
            return;
        }
        let target = k; // cells[0..k] are the leading singletons
        let candidates: &[u8] =
            if cell_is_homogeneous(self.adj, &cells, target) { &cells[target][..1] } else { &cells[target] };
        for &v in candidates {
            let mut child = cells.clone();
            let rest: Cell = child[target].iter().copied().filter(|&u| u != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            self.run(child);
        }
    }
}

/// Per-vertex invariant for the initial partition: degree plus the sorted
/// multiset of BFS distances (order `n` stands in for "unreachable").
fn initial_keys(g: &Graph) -> Vec<(usize, Vec<u8>)> {
    let n = g.order();
    (0..n)
        .map(|v| {
            let mut dist = vec![n as u8; n];
            dist[v] = 0;
            let mut queue = vec![v];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for u in g.neighbors(x) {
                    if dist[u] == n as u8 {
                        dist[u] = dist[x] + 1;
                        queue.push(u);
                    }
                }
            }
            dist.sort_unstable();
            (g.degree(v), dist)
        })
        .collect()
}

/// Canonical graph6 string of `g`.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(CanonError::OrderTooLarge { order: n, max: MAX_CANON_ORDER });
    }
    if n == 1 {
        return Ok(CanonicalForm(g.to_graph6()));
    }
    let adj: Vec<u16> = (0..n).map(|v| g.neighbors_mask(v) as u16).collect();
    let keys = initial_keys(g);
    let mut order: Vec<u8> = (0..n as u8).collect();
    order.sort_by(|&a, &b| keys[a as usize].cmp(&keys[b as usize]));
    let mut cells: Vec<Cell> = Vec::new();
    for v in order {
        match cells.last_mut() {
            Some(cell) if keys[cell[0] as usize] == keys[v as usize] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut search = Search { adj: &adj, n, best: None };
    search.run(cells);
    let (_, labeling) = search.best.expect("search visits at least one leaf");
    let edges: Vec<(usize, usize)> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| g.has_edge(labeling[i] as usize, labeling[j] as usize))
        .collect();
    Ok(CanonicalForm(Graph::from_edges(n, &edges).to_graph6()))
}

/// Isomorphism test: cheap invariant rejects first, canonical forms decide.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    // Adjacency spectra agree on isomorphic graphs; a solver failure just
    // skips the reject.
    if let (Ok(sa), Ok(sb)) = (eigenvalues(&adjacency_matrix(a)), eigenvalues(&adjacency_matrix(b))) {
        if sa.iter().zip(&sb).any(|(x, y)| (x - y).abs() > 1e-6) {
            return Ok(false);
        }
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn permuted(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(g.order(), &edges)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for slot in 0..n {
                let mut q = p.clone();
                q.insert(slot, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
        a.order() == b.order() && permutations(a.order()).iter().any(|p| &permuted(a, p) == b)
    }

    /// The six connected graphs on four vertices.
    pub(crate) fn connected_order_four() -> Vec<Graph> {
        vec![
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]),
            Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]),
            Graph::complete(4),
        ]
    }

    #[test]
    fn canonical_form_is_relabeling_invariant_order_four() {
        for g in connected_order_four() {
            let base = canonical_form(&g).unwrap();
            for p in permutations(4) {
                assert_eq!(canonical_form(&permuted(&g, &p)).unwrap(), base);
            }
        }
    }

    #[test]
    fn order_four_connected_graphs_have_distinct_forms() {
        let forms: std::collections::BTreeSet<_> =
            connected_order_four().iter().map(|g| canonical_form(g).unwrap()).collect();
        assert_eq!(forms.len(), 6);
    }

    #[test]
    fn canonical_partition_matches_brute_force_exhaustively() {
        // Every labeled graph on 4 and on 5 vertices: canonical forms must
        // induce exactly the partition brute-force permutation testing does.
        for n in [4usize, 5] {
            let pairs = n * (n - 1) / 2;
            let mut by_form: std::collections::BTreeMap<CanonicalForm, Vec<Graph>> = Default::default();
            for bits in 0..1u64 << pairs {
                let g = Graph::from_upper_bits(n, bits);
                by_form.entry(canonical_form(&g).unwrap()).or_default().push(g);
            }
            let reps: Vec<&Graph> = by_form.values().map(|v| &v[0]).collect();
            for (form, members) in &by_form {
                // Form reconstructs a member of its own class.
                assert!(brute_force_isomorphic(&form.to_graph(), &members[0]));
                for g in members {
                    assert!(brute_force_isomorphic(g, &members[0]));
                }
            }
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    assert!(!brute_force_isomorphic(reps[i], reps[j]));
                }
            }
        }
    }

    #[test]
    fn is_isomorphic_agrees_on_known_pairs() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(is_isomorphic(&c4, &k22).unwrap());
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let s4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!is_isomorphic(&p4, &s4).unwrap());
        assert!(!is_isomorphic(&p4, &Graph::complete(3)).unwrap());
    }

    #[test]
    fn symmetric_graphs_stay_cheap() {
        // Unions of cliques and complete multipartite graphs exercise the
        // homogeneous-cell shortcut; these would take ~12! leaves without it.
        let k12 = Graph::complete(12);
        assert_eq!(canonical_form(&k12).unwrap().to_graph(), k12);
        let parts =
            crate::graph::disjoint_union(&vec![Graph::complete(4); 3]).unwrap();
        let g = parts.complement(); // K_{4,4,4}
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.complement().complement()).unwrap());
    }

    #[test]
    fn rejects_large_orders() {
        let g = Graph::empty(13);
        assert_eq!(canonical_form(&g).unwrap_err(), CanonError::OrderTooLarge { order: 13, max: 12 });
    }
}
