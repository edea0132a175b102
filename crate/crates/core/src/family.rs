//! Named graph families.
//!
//! Every family here is defined through the structure of its complement: a
//! disjoint union of cliques, near-cliques, stars, or small fixed graphs.
//! Instantiation builds that union with consecutive vertex blocks in the
//! listed order and complements it, so the labeling is deterministic and
//! the complement's component structure is recoverable exactly. "Plus one
//! edge" variants delete one edge of the first eligible complement block,
//! which is unambiguous up to isomorphism because the block's vertices are
//! interchangeable.
//!
//! Families carry stable string identifiers (`F1` .. `F21` plus primitive
//! codes) so command line tools and reports can address them.

use thiserror::Error;

use crate::graph::{disjoint_union, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family {family} at n = {n}: requires {condition}")]
    Constraint { family: String, n: usize, condition: String },
    #[error("unknown family id {0:?}")]
    UnknownId(String),
    #[error("family {family}: missing required parameter --{param}")]
    MissingParam { family: String, param: &'static str },
}

/// Path on `n >= 1` vertices, 0 - 1 - ... - (n-1).
pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>())
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
}

/// Star on `n >= 2` vertices with center 0.
pub fn star_graph(n: usize) -> Graph {
    assert!(n >= 2, "stars need at least two vertices");
    Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>())
}

/// Kite: clique on `omega` vertices with a path on the remaining `n - omega`
/// hanging off one clique vertex. Requires `2 <= omega < n`.
pub fn kite_graph(n: usize, omega: usize) -> Graph {
    assert!((2..n).contains(&omega), "kite needs 2 <= omega < n");
    let mut edges = Vec::new();
    for v in 1..omega {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    edges.push((omega - 1, omega));
    for v in omega + 1..n {
        edges.push((v - 1, v));
    }
    Graph::from_edges(n, &edges)
}

/// Complete graph minus the edge {0, 1}. Requires `n >= 3` to stay connected.
pub fn complete_minus_edge(n: usize) -> Graph {
    assert!(n >= 3, "removing an edge from K_2 disconnects it");
    let edges: Vec<(usize, usize)> =
        Graph::complete(n).edges().filter(|&e| e != (0, 1)).collect();
    Graph::from_edges(n, &edges)
}

fn clique_minus_edge(n: usize) -> Graph {
    complete_minus_edge(n)
}

fn isolated(k: usize) -> Vec<Graph> {
    vec![Graph::empty(1); k]
}

fn co_union(blocks: Vec<Graph>) -> Graph {
    disjoint_union(&blocks).expect("family complement structures are nonempty").complement()
}

/// A parameterized family instance. `instantiate` checks the family's
/// arithmetic constraints and yields a connected graph of the stated order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// F1: complete multipartite graph with the given part sizes.
    Multipartite { parts: Vec<usize> },
    /// F2: complete split graph, clique of size `n - alpha` joined to an
    /// independent set of size `alpha`.
    CompleteSplit { n: usize, alpha: usize },
    /// F3: complete split graph with independent part of size n - 3.
    SplitNm3 { n: usize },
    /// F4: complete split graph with independent part n - 2, plus one edge
    /// inside the independent part.
    SplitNm2PlusEdge { n: usize },
    /// F5: complete tripartite K_{n-3,2,1}.
    KNm321 { n: usize },
    /// F6: K_{p,p,1} plus an edge inside one large part, p = (n-1)/2.
    Kpp1PlusEdge { n: usize },
    /// F7: complete tripartite K_{p,p,2}, p = (n-2)/2.
    Kpp2 { n: usize },
    /// F8: K_{p,p,p} plus an edge inside one part, p = n/3.
    KpppPlusEdge { n: usize },
    /// F9: clique on n-1 vertices plus one extra vertex joined by two edges.
    CliquePlusTwoEdgeVertex { n: usize },
    /// F10: K_2 joined to two disjoint cliques of size (n-2)/2.
    TwoCliquesJoinEdge { n: usize },
    /// F11: K_{q,q} joined to two disjoint cliques of size q = n/4.
    TwoCliquesJoinBipartite { n: usize },
    /// F12: the star on three vertices joined to two disjoint edges (n = 7).
    StarJoinTwoEdges,
    /// F13: complete split graph with independent part of size 4, plus an
    /// edge inside it.
    SplitFourPlusEdge { n: usize },
    /// F14: complete multipartite K_{3,2,1,...,1}.
    KThreeTwoOnes { n: usize },
    /// F15: complement of a 4-star plus isolated vertices.
    CoStarFour { n: usize },
    /// F16: complement of a 4-cycle plus isolated vertices.
    CoCycleFour { n: usize },
    /// F17: complement of a 4-path plus isolated vertices.
    CoPathFour { n: usize },
    /// F18: complement of the kite on 4 vertices plus isolated vertices.
    CoKiteFour { n: usize },
    /// F19: complement of (3-star and an edge) plus isolated vertices.
    CoStarThreeEdge { n: usize },
    /// F20: complete split graph with independent part of size 4.
    SplitFour { n: usize },
    /// F21: complete multipartite K_{2,2,2,1,...,1}.
    KTripleTwoOnes { n: usize },
    /// Complete graph.
    Complete { n: usize },
    /// Path.
    Path { n: usize },
    /// Cycle.
    Cycle { n: usize },
    /// Star.
    Star { n: usize },
    /// Kite with clique size omega.
    Kite { n: usize, omega: usize },
    /// Complete graph minus one edge.
    CompleteMinusEdge { n: usize },
}

use FamilySpec::*;

impl FamilySpec {
    /// Stable identifier, parameter values included where the family has
    /// free parameters.
    pub fn id(&self) -> String {
        match self {
            Multipartite { parts } => {
                let mut sorted = parts.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let p: Vec<String> = sorted.iter().map(|t| t.to_string()).collect();
                format!("F1:K_{{{}}}", p.join(","))
            }
            CompleteSplit { n, alpha } => format!("F2:SK_{{{n},{alpha}}}"),
            SplitNm3 { .. } => "F3:SK_n_nm3".into(),
            SplitNm2PlusEdge { .. } => "F4:SK_n_nm2_plus_e".into(),
            KNm321 { .. } => "F5:K_nm3_2_1".into(),
            Kpp1PlusEdge { .. } => "F6:K_pp1_plus_e".into(),
            Kpp2 { .. } => "F7:K_pp2".into(),
            KpppPlusEdge { .. } => "F8:K_ppp_plus_e".into(),
            CliquePlusTwoEdgeVertex { .. } => "F9:K_nm1_k1_plus_2e".into(),
            TwoCliquesJoinEdge { .. } => "F10:K2_join_2cliques".into(),
            TwoCliquesJoinBipartite { .. } => "F11:Kqq_join_2cliques".into(),
            StarJoinTwoEdges => "F12:S3_join_2K2".into(),
            SplitFourPlusEdge { .. } => "F13:SK_n_4_plus_e".into(),
            KThreeTwoOnes { .. } => "F14:K_32_ones".into(),
            CoStarFour { .. } => "F15:co_S4".into(),
            CoCycleFour { .. } => "F16:co_C4".into(),
            CoPathFour { .. } => "F17:co_P4".into(),
            CoKiteFour { .. } => "F18:co_Ki43".into(),
            CoStarThreeEdge { .. } => "F19:co_S3_K2".into(),
            SplitFour { .. } => "F20:SK_n_4".into(),
            KTripleTwoOnes { .. } => "F21:K_222_ones".into(),
            Complete { n } => format!("K_{n}"),
            Path { n } => format!("P_{n}"),
            Cycle { n } => format!("C_{n}"),
            Star { n } => format!("S_{n}"),
            Kite { n, omega } => format!("Ki_{{{n},{omega}}}"),
            CompleteMinusEdge { n } => format!("K_{n}-e"),
        }
    }

    /// Order of the instantiated graph.
    pub fn order(&self) -> usize {
        match self {
            Multipartite { parts } => parts.iter().sum(),
            StarJoinTwoEdges => 7,
            CompleteSplit { n, .. }
            | SplitNm3 { n }
            | SplitNm2PlusEdge { n }
            | KNm321 { n }
            | Kpp1PlusEdge { n }
            | Kpp2 { n }
            | KpppPlusEdge { n }
            | CliquePlusTwoEdgeVertex { n }
            | TwoCliquesJoinEdge { n }
            | TwoCliquesJoinBipartite { n }
            | SplitFourPlusEdge { n }
            | KThreeTwoOnes { n }
            | CoStarFour { n }
            | CoCycleFour { n }
            | CoPathFour { n }
            | CoKiteFour { n }
            | CoStarThreeEdge { n }
            | SplitFour { n }
            | KTripleTwoOnes { n }
            | Complete { n }
            | Path { n }
            | Cycle { n }
            | Star { n }
            | Kite { n, .. }
            | CompleteMinusEdge { n } => *n,
        }
    }

    fn constraint(&self, condition: impl Into<String>) -> FamilyError {
        FamilyError::Constraint { family: self.id(), n: self.order(), condition: condition.into() }
    }

    fn require(&self, ok: bool, condition: &str) -> Result<(), FamilyError> {
        if ok {
            Ok(())
        } else {
            Err(self.constraint(condition))
        }
    }

    /// Build the graph. Violated arithmetic constraints come back as errors
    /// naming the condition.
    pub fn instantiate(&self) -> Result<Graph, FamilyError> {
        match self {
            Multipartite { parts } => {
                self.require(parts.len() >= 2, "at least two parts")?;
                self.require(parts.iter().all(|&t| t >= 1), "every part nonempty")?;
                let mut sorted = parts.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                Ok(co_union(sorted.into_iter().map(Graph::complete).collect()))
            }
            CompleteSplit { n, alpha } => {
                self.require(*alpha >= 1, "alpha >= 1")?;
                self.require(*alpha < *n, "alpha <= n - 1")?;
                let mut blocks = vec![Graph::complete(*alpha)];
                blocks.extend(isolated(n - alpha));
                Ok(co_union(blocks))
            }
            SplitNm3 { n } => {
                self.require(*n >= 4, "n >= 4")?;
                CompleteSplit { n: *n, alpha: n - 3 }.instantiate()
            }
            SplitNm2PlusEdge { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut blocks = vec![clique_minus_edge(n - 2)];
                blocks.extend(isolated(2));
                Ok(co_union(blocks))
            }
            KNm321 { n } => {
                self.require(*n >= 4, "n >= 4")?;
                Multipartite { parts: vec![n - 3, 2, 1] }.instantiate()
            }
            Kpp1PlusEdge { n } => {
                self.require(n % 2 == 1, "odd n")?;
                let p = (n - 1) / 2;
                self.require(p >= 3, "(n - 1)/2 >= 3")?;
                Ok(co_union(vec![Graph::complete(p), clique_minus_edge(p), Graph::empty(1)]))
            }
            Kpp2 { n } => {
                self.require(n % 2 == 0, "2 | n")?;
                let p = (n - 2) / 2;
                self.require(p >= 3, "(n - 2)/2 >= 3")?;
                Multipartite { parts: vec![p, p, 2] }.instantiate()
            }
            KpppPlusEdge { n } => {
                self.require(n % 3 == 0, "3 | n")?;
                let p = n / 3;
                self.require(p >= 3, "n/3 >= 3")?;
                Ok(co_union(vec![Graph::complete(p), Graph::complete(p), clique_minus_edge(p)]))
            }
            CliquePlusTwoEdgeVertex { n } => {
                self.require(*n >= 4, "n >= 4")?;
                let mut blocks = vec![star_graph(n - 2)];
                blocks.extend(isolated(2));
                Ok(co_union(blocks))
            }
            TwoCliquesJoinEdge { n } => {
                self.require(n % 2 == 0, "2 | n")?;
                let q = (n - 2) / 2;
                self.require(q >= 1, "(n - 2)/2 >= 1")?;
                let mut blocks = vec![complete_bipartite(q, q)];
                blocks.extend(isolated(2));
                Ok(co_union(blocks))
            }
            TwoCliquesJoinBipartite { n } => {
                self.require(n % 4 == 0, "4 | n")?;
                let q = n / 4;
                Ok(co_union(vec![complete_bipartite(q, q), Graph::complete(q), Graph::complete(q)]))
            }
            StarJoinTwoEdges => {
                Ok(co_union(vec![complete_bipartite(2, 2), Graph::complete(2), Graph::empty(1)]))
            }
            SplitFourPlusEdge { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut blocks = vec![clique_minus_edge(4)];
                blocks.extend(isolated(n - 4));
                Ok(co_union(blocks))
            }
            KThreeTwoOnes { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut parts = vec![3, 2];
                parts.extend(std::iter::repeat_n(1, n - 5));
                Multipartite { parts }.instantiate()
            }
            CoStarFour { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut blocks = vec![star_graph(4)];
                blocks.extend(isolated(n - 4));
                Ok(co_union(blocks))
            }
            CoCycleFour { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut blocks = vec![cycle_graph(4)];
                blocks.extend(isolated(n - 4));
                Ok(co_union(blocks))
            }
            CoPathFour { n } => {
                self.require(*n >= 4, "n >= 4")?;
                let mut blocks = vec![path_graph(4)];
                blocks.extend(isolated(n - 4));
                Ok(co_union(blocks))
            }
            CoKiteFour { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut blocks = vec![kite_graph(4, 3)];
                blocks.extend(isolated(n - 4));
                Ok(co_union(blocks))
            }
            CoStarThreeEdge { n } => {
                self.require(*n >= 5, "n >= 5")?;
                let mut blocks = vec![star_graph(3), Graph::complete(2)];
                blocks.extend(isolated(n - 5));
                Ok(co_union(blocks))
            }
            SplitFour { n } => {
                self.require(*n >= 5, "n >= 5")?;
                CompleteSplit { n: *n, alpha: 4 }.instantiate()
            }
            KTripleTwoOnes { n } => {
                self.require(*n >= 6, "n >= 6")?;
                let mut parts = vec![2, 2, 2];
                parts.extend(std::iter::repeat_n(1, n - 6));
                Multipartite { parts }.instantiate()
            }
            Complete { n } => {
                self.require(*n >= 1, "n >= 1")?;
                Ok(Graph::complete(*n))
            }
            Path { n } => {
                self.require(*n >= 1, "n >= 1")?;
                Ok(path_graph(*n))
            }
            Cycle { n } => {
                self.require(*n >= 3, "n >= 3")?;
                Ok(cycle_graph(*n))
            }
            Star { n } => {
                self.require(*n >= 2, "n >= 2")?;
                Ok(star_graph(*n))
            }
            Kite { n, omega } => {
                self.require(*omega >= 2, "omega >= 2")?;
                self.require(omega < n, "omega <= n - 1")?;
                Ok(kite_graph(*n, *omega))
            }
            CompleteMinusEdge { n } => {
                self.require(*n >= 3, "n >= 3")?;
                Ok(complete_minus_edge(*n))
            }
        }
    }

    /// Resolve a family from its string id plus loose parameters, as a
    /// command line would supply them. The id may be the bare code (`F6`,
    /// case-insensitive) or the full form (`F6:K_pp1_plus_e`).
    pub fn from_cli(
        id: &str,
        n: Option<usize>,
        parts: Option<Vec<usize>>,
        alpha: Option<usize>,
        omega: Option<usize>,
    ) -> Result<FamilySpec, FamilyError> {
        let code = id.split(':').next().unwrap_or(id).trim().to_ascii_lowercase();
        let need_n = |family: &str| n.ok_or(FamilyError::MissingParam { family: family.into(), param: "n" });
        let spec = match code.as_str() {
            "f1" => Multipartite {
                parts: parts.ok_or(FamilyError::MissingParam { family: "F1".into(), param: "parts" })?,
            },
            "f2" => CompleteSplit {
                n: need_n("F2")?,
                alpha: alpha.ok_or(FamilyError::MissingParam { family: "F2".into(), param: "alpha" })?,
            },
            "f3" => SplitNm3 { n: need_n("F3")? },
            "f4" => SplitNm2PlusEdge { n: need_n("F4")? },
            "f5" => KNm321 { n: need_n("F5")? },
            "f6" => Kpp1PlusEdge { n: need_n("F6")? },
            "f7" => Kpp2 { n: need_n("F7")? },
            "f8" => KpppPlusEdge { n: need_n("F8")? },
            "f9" => CliquePlusTwoEdgeVertex { n: need_n("F9")? },
            "f10" => TwoCliquesJoinEdge { n: need_n("F10")? },
            "f11" => TwoCliquesJoinBipartite { n: need_n("F11")? },
            "f12" => {
                if let Some(n) = n {
                    if n != 7 {
                        return Err(FamilyError::Constraint {
                            family: "F12:S3_join_2K2".into(),
                            n,
                            condition: "n = 7".into(),
                        });
                    }
                }
                StarJoinTwoEdges
            }
            "f13" => SplitFourPlusEdge { n: need_n("F13")? },
            "f14" => KThreeTwoOnes { n: need_n("F14")? },
            "f15" => CoStarFour { n: need_n("F15")? },
            "f16" => CoCycleFour { n: need_n("F16")? },
            "f17" => CoPathFour { n: need_n("F17")? },
            "f18" => CoKiteFour { n: need_n("F18")? },
            "f19" => CoStarThreeEdge { n: need_n("F19")? },
            "f20" => SplitFour { n: need_n("F20")? },
            "f21" => KTripleTwoOnes { n: need_n("F21")? },
            "kn" => Complete { n: need_n("Kn")? },
            "pn" => Path { n: need_n("Pn")? },
            "cn" => Cycle { n: need_n("Cn")? },
            "sn" => Star { n: need_n("Sn")? },
            "ki" => Kite {
                n: need_n("Ki")?,
                omega: omega.ok_or(FamilyError::MissingParam { family: "Ki".into(), param: "omega" })?,
            },
            "kn-e" | "kn_minus_e" => CompleteMinusEdge { n: need_n("Kn-e")? },
            _ => return Err(FamilyError::UnknownId(id.into())),
        };
        Ok(spec)
    }
}

/// Complete bipartite graph with parts `a` and `b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    co_union(vec![Graph::complete(a), Graph::complete(b)])
}
