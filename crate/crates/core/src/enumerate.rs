//! Exhaustive enumeration of labeled simple graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted by [`enumerate_labeled_graphs`] (2^21 graphs).
pub const ENUMERATION_MAX_VERTICES: usize = 7;

/// Number of vertex pairs, i.e. the number of edge slots.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labeled graph with edge-mask `index` on `n` vertices.
///
/// Edge slots follow graph6 order `(0,1), (0,2), (1,2), (0,3), ...` and the
/// first slot is the most significant bit of `index`, so ascending indices
/// give ascending graph6 strings.
pub fn labeled_graph(n: usize, index: u64) -> Graph {
    let slots = pair_count(n);
    debug_assert!(slots >= 64 || index >> slots == 0);
    let mut adj = vec![0u64; n];
    let mut pos = 0;
    for v in 1..n {
        for u in 0..v {
            if index >> (slots - 1 - pos) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            pos += 1;
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

/// Iterator over all `2^C(n,2)` labeled graphs on `n` vertices.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn total(&self) -> u64 {
        1u64 << pair_count(self.n)
    }

    /// Restricts the stream to the index range `start..end`, for partitioning.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.next = start.min(self.end);
        self.end = end.min(self.end);
        self
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = labeled_graph(self.n, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = (self.end - self.next) as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs> {
    if n > ENUMERATION_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "exhaustive enumeration vertex count",
            got: n,
            cap: ENUMERATION_MAX_VERTICES,
        });
    }
    let end = 1u64 << pair_count(n);
    Ok(LabeledGraphs { n, next: 0, end })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::graph6::to_graph6;

    #[test]
    fn counts() {
        assert_eq!(enumerate_labeled_graphs(0).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_labeled_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled_graphs(5).unwrap().count(), 1024);
        assert!(matches!(
            enumerate_labeled_graphs(8),
            Err(Error::Capacity { got: 8, cap: 7, .. })
        ));
    }

    #[test]
    fn distinct_and_graph6_sorted() {
        for n in 0..=5 {
            let codes: Vec<String> = enumerate_labeled_graphs(n)
                .unwrap()
                .map(|g| to_graph6(&g).unwrap())
                .collect();
            let unique: HashSet<_> = codes.iter().collect();
            assert_eq!(unique.len(), 1 << pair_count(n));
            assert!(codes.windows(2).all(|w| w[0] < w[1]), "n={n}");
        }
    }

    #[test]
    fn ranges_partition_the_stream() {
        let all: Vec<Graph> = enumerate_labeled_graphs(4).unwrap().collect();
        let mut parts: Vec<Graph> = Vec::new();
        for start in (0..64).step_by(10) {
            parts.extend(
                enumerate_labeled_graphs(4)
                    .unwrap()
                    .range(start, start + 10),
            );
        }
        assert_eq!(all, parts);
    }
}
