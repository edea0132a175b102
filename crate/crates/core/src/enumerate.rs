//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Generation is level based. Every isomorphism class on k vertices arises
//! from some class on k - 1 vertices by appending one vertex with an
//! arbitrary neighborhood, so each level extends every class of the
//! previous level by all 2^(k-1) neighborhoods and deduplicates through
//! canonical forms. Disconnected classes are kept at intermediate levels,
//! where they are needed as ancestors, and filtered once at the target
//! order. Output is sorted by canonical form, so runs are reproducible.

use std::io::BufRead;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{Graph, Graph6Error, StreamSource};

/// Largest order the generator accepts. The class count grows by roughly
/// an order of magnitude per vertex; nine (274668 classes) stays
/// tractable, ten does not.
pub const MAX_ENUM_ORDER: usize = 9;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("order {n} outside the supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("corpus i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("corpus line {line}: {source}")]
    CorpusParse { line: usize, source: Graph6Error },
    #[error("corpus line {line}: expected order {expected}, found {found}")]
    CorpusOrder { line: usize, expected: usize, found: usize },
    #[error("corpus line {line}: graph is disconnected")]
    CorpusDisconnected { line: usize },
}

/// Extend every class of `level` (order k - 1) by one vertex, dedupe, and
/// return the classes of order k, optionally restricted to connected ones.
fn extend_level(level: &[Graph], k: usize, connected_only: bool) -> Vec<Graph> {
    let mut forms: Vec<CanonicalForm> = level
        .par_iter()
        .flat_map_iter(|g| {
            (0u64..(1u64 << (k - 1))).filter_map(move |mask| {
                let candidate = g.with_appended_vertex(mask);
                if connected_only && !candidate.is_connected() {
                    return None;
                }
                Some(canonical_form(&candidate).expect("enumeration orders are canonicalizable"))
            })
        })
        .collect();
    forms.par_sort_unstable();
    forms.dedup();
    forms.into_iter().map(|f| f.to_graph()).collect()
}

/// All connected graphs of order n, one per isomorphism class, sorted by
/// canonical form.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, EnumError> {
    if !(1..=MAX_ENUM_ORDER).contains(&n) {
        return Err(EnumError::OrderOutOfRange { n, max: MAX_ENUM_ORDER });
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        level = extend_level(&level, k, k == n);
    }
    Ok(level)
}

/// Parse a graph6 corpus: one graph per line, every graph connected and of
/// the expected order. An optional `>>graph6<<` header on the first line
/// and blank lines are ignored. Errors carry the offending line number.
pub fn stream_corpus(path: &Path, expected_order: usize) -> Result<Vec<Graph>, EnumError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut graphs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let mut text = line.trim();
        if idx == 0 {
            text = text.strip_prefix(">>graph6<<").unwrap_or(text).trim();
        }
        if text.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let g = Graph::from_graph6(text)
            .map_err(|source| EnumError::CorpusParse { line: lineno, source })?;
        if g.order() != expected_order {
            return Err(EnumError::CorpusOrder {
                line: lineno,
                expected: expected_order,
                found: g.order(),
            });
        }
        if !g.is_connected() {
            return Err(EnumError::CorpusDisconnected { line: lineno });
        }
        graphs.push(g);
    }
    Ok(graphs)
}

/// A set of connected graphs of one order together with its provenance:
/// either generated here or read from a file.
#[derive(Debug)]
pub struct GraphStream {
    pub source: StreamSource,
    pub order: usize,
    pub graphs: Vec<Graph>,
}

impl GraphStream {
    pub fn generated(n: usize) -> Result<GraphStream, EnumError> {
        Ok(GraphStream {
            source: StreamSource::Generated,
            order: n,
            graphs: enumerate_connected(n)?,
        })
    }

    pub fn from_corpus(path: &Path, order: usize) -> Result<GraphStream, EnumError> {
        let graphs = stream_corpus(path, order)?;
        Ok(GraphStream { source: StreamSource::Corpus(path.to_path_buf()), order, graphs })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{
        complete_minus_edge, cycle_graph, kite_graph, path_graph, star_graph,
    };
    use std::collections::BTreeSet;
    use std::io::Write;

    #[test]
    fn connected_counts_up_to_order_seven() {
        let expected = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_connected(i + 1).unwrap().len(), count, "order {}", i + 1);
        }
    }

    #[test]
    fn order_four_classes_are_the_known_six() {
        let got: BTreeSet<CanonicalForm> = enumerate_connected(4)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        let known: BTreeSet<CanonicalForm> = [
            path_graph(4),
            star_graph(4),
            cycle_graph(4),
            kite_graph(4, 3),
            complete_minus_edge(4),
            Graph::complete(4),
        ]
        .iter()
        .map(|g| canonical_form(g).unwrap())
        .collect();
        assert_eq!(got, known);
    }

    #[test]
    fn output_is_sorted_and_deterministic() {
        let a = enumerate_connected(5).unwrap();
        let b = enumerate_connected(5).unwrap();
        assert_eq!(a, b);
        let forms: Vec<String> = a
            .iter()
            .map(|g| canonical_form(g).unwrap().into_string())
            .collect();
        let mut sorted = forms.clone();
        sorted.sort();
        assert_eq!(forms, sorted);
        assert!(a.iter().all(|g| g.is_connected()));
    }

    #[test]
    fn matches_labeled_brute_force_at_order_five() {
        // Independent route: canonicalize all 2^10 labeled graphs directly.
        let mut classes: BTreeSet<CanonicalForm> = BTreeSet::new();
        for bits in 0u64..(1 << 10) {
            let g = Graph::from_upper_bits(5, bits);
            if g.is_connected() {
                classes.insert(canonical_form(&g).unwrap());
            }
        }
        let generated: BTreeSet<CanonicalForm> = enumerate_connected(5)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        assert_eq!(generated, classes);
    }

    #[test]
    fn rejects_out_of_range_orders() {
        assert!(matches!(
            enumerate_connected(0),
            Err(EnumError::OrderOutOfRange { n: 0, .. })
        ));
        assert!(matches!(
            enumerate_connected(MAX_ENUM_ORDER + 1),
            Err(EnumError::OrderOutOfRange { .. })
        ));
    }

    fn write_corpus(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(f, "{line}").unwrap();
        }
        f.flush().unwrap();
        f
    }

    #[test]
    fn corpus_round_trip() {
        let graphs = enumerate_connected(4).unwrap();
        let lines: Vec<String> = graphs.iter().map(|g| g.to_graph6()).collect();
        let refs: Vec<&str> = lines.iter().map(|s| s.as_str()).collect();
        let f = write_corpus(&refs);
        let back = stream_corpus(f.path(), 4).unwrap();
        assert_eq!(back, graphs);

        let stream = GraphStream::from_corpus(f.path(), 4).unwrap();
        assert_eq!(stream.len(), 6);
        assert!(matches!(stream.source, StreamSource::Corpus(_)));
    }

    #[test]
    fn corpus_accepts_header_and_blank_lines() {
        let k4 = Graph::complete(4).to_graph6();
        let f = write_corpus(&[&format!(">>graph6<<{k4}"), "", &k4]);
        let back = stream_corpus(f.path(), 4).unwrap();
        assert_eq!(back.len(), 2);
    }

    #[test]
    fn corpus_errors_carry_line_numbers() {
        let k4 = Graph::complete(4).to_graph6();
        let k5 = Graph::complete(5).to_graph6();
        let f = write_corpus(&[&k4, &k5]);
        assert!(matches!(
            stream_corpus(f.path(), 4),
            Err(EnumError::CorpusOrder { line: 2, expected: 4, found: 5 })
        ));

        let f = write_corpus(&[&k4, "!!notgraph6"]);
        assert!(matches!(
            stream_corpus(f.path(), 4),
            Err(EnumError::CorpusParse { line: 2, .. })
        ));

        // Two disjoint edges: valid graph6, not connected.
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).to_graph6();
        let f = write_corpus(&[&disconnected]);
        assert!(matches!(
            stream_corpus(f.path(), 4),
            Err(EnumError::CorpusDisconnected { line: 1 })
        ));

        assert!(matches!(
            stream_corpus(Path::new("/nonexistent/corpus.g6"), 4),
            Err(EnumError::Io(_))
        ));
    }
}
