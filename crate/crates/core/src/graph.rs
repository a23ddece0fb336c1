//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is one `u64` neighbor mask per vertex. Solvers work on induced
//! subgraphs described by a mask of surviving vertices, so most structural
//! queries exist in two flavors: a public one on the whole graph and a
//! crate-internal `*_in(mask)` one on an induced subgraph.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Hard cap on the number of vertices.
pub const MAX_VERTICES: usize = 64;

/// An immutable simple undirected graph over vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<u64>,
}

/// An induced subgraph together with the map back to the parent's labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the parent label of vertex `i` in `graph`.
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_original(&self, v: usize) -> usize {
        self.original[v]
    }

    /// Maps a vertex set of the subgraph back to parent labels.
    pub fn set_to_original(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.original[v]).collect()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_cap(n)?;
        Ok(Graph { adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_cap(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from raw neighbor masks, validating symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_cap(n)?;
        let universe = VertexSet::full(n).bits();
        for (v, &row) in adj.iter().enumerate() {
            if row & !universe != 0 {
                let bad = (row & !universe).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: bad, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::Loop(v));
            }
            for u in VertexSet(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric adjacency between {v} and {u}"
                    )));
                }
            }
        }
        Ok(Graph { adj })
    }

    /// Internal constructor for masks already known to be valid.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        let g = Graph { adj };
        debug_assert!(g.is_well_formed());
        g
    }

    fn is_well_formed(&self) -> bool {
        let n = self.n();
        let universe = VertexSet::full(n).bits();
        self.adj.iter().enumerate().all(|(v, &row)| {
            row & !universe == 0
                && row >> v & 1 == 0
                && VertexSet(row).iter().all(|u| self.adj[u] >> v & 1 == 1)
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Raw neighbor mask of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |v| {
            VertexSet(self.adj[v] & ((1u64 << v) - 1))
                .iter()
                .map(move |u| (u, v))
        })
    }

    /// Open neighborhood N(v).
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    /// Closed neighborhood N[v] = N(v) ∪ {v}.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]).with(v))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// The subgraph induced by `keep`, relabeled contiguously in ascending order.
    pub fn induced(&self, keep: VertexSet) -> InducedSubgraph {
        let keep = keep.intersection(self.vertices());
        let original: Vec<usize> = keep.iter().collect();
        let mut new_label = [usize::MAX; MAX_VERTICES];
        for (i, &v) in original.iter().enumerate() {
            new_label[v] = i;
        }
        let adj = original
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & keep.bits())
                    .iter()
                    .fold(0u64, |acc, u| acc | 1 << new_label[u])
            })
            .collect();
        InducedSubgraph {
            graph: Graph::from_adjacency_unchecked(adj),
            original,
        }
    }

    /// G − W: the subgraph induced by V − W, with the relabeling map.
    pub fn delete_vertices(&self, w: VertexSet) -> InducedSubgraph {
        self.induced(self.vertices().difference(w))
    }

    /// Disjoint union; `other`'s vertices are shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n();
        check_cap(shift + other.n())?;
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|r| r << shift))
            .collect();
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_in(self.vertices().bits())
            .into_iter()
            .map(VertexSet)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_in(0, self.vertices().bits()) == self.vertices().bits()
    }

    /// ν(G) = |E| − |V| + p.
    pub fn cyclomatic_number(&self) -> usize {
        self.cyclomatic_in(self.vertices().bits())
    }

    /// True if the graph is a forest.
    pub fn is_acyclic(&self) -> bool {
        self.strip_in(self.vertices().bits()) == 0
    }

    /// A shortest cycle as a vertex sequence, or `None` for forests.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        self.shortest_cycle_in(self.vertices().bits())
    }

    // ---- induced-subgraph primitives -----------------------------------

    #[inline]
    pub(crate) fn degree_in(&self, v: usize, mask: u64) -> u32 {
        (self.adj[v] & mask).count_ones()
    }

    pub(crate) fn edges_in(&self, mask: u64) -> usize {
        VertexSet(mask)
            .iter()
            .map(|v| self.degree_in(v, mask) as usize)
            .sum::<usize>()
            / 2
    }

    /// Vertices of `mask` reachable from `start` inside `mask`.
    pub(crate) fn component_in(&self, start: usize, mask: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= mask & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub(crate) fn components_in(&self, mut mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while mask != 0 {
            let c = self.component_in(mask.trailing_zeros() as usize, mask);
            out.push(c);
            mask &= !c;
        }
        out
    }

    pub(crate) fn cyclomatic_in(&self, mask: u64) -> usize {
        let p = self.components_in(mask).len();
        self.edges_in(mask) + p - mask.count_ones() as usize
    }

    /// Repeatedly removes vertices of degree ≤ 1; what remains is the
    /// 2-core, which is empty exactly when the induced subgraph is a forest.
    pub(crate) fn strip_in(&self, mut mask: u64) -> u64 {
        loop {
            let mut changed = false;
            for v in VertexSet(mask) {
                if self.degree_in(v, mask) <= 1 {
                    mask &= !(1u64 << v);
                    changed = true;
                }
            }
            if !changed {
                return mask;
            }
        }
    }

    /// Shortest cycle of the induced subgraph via BFS from every root.
    ///
    /// The minimum over all roots of `dist[u] + dist[w] + 1` across non-tree
    /// edges `uw` equals the girth, and a walk attaining it is a simple cycle.
    pub(crate) fn shortest_cycle_in(&self, mask: u64) -> Option<Vec<usize>> {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        // (length, root, u, w) plus the parent array that produced it
        let mut best: Option<(usize, Vec<usize>, usize, usize)> = None;

        for root in VertexSet(mask) {
            if self.degree_in(root, mask) < 2 {
                continue;
            }
            for v in VertexSet(mask) {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            let mut found: Option<(usize, usize, usize)> = None;
            'bfs: while let Some(u) = queue.pop_front() {
                // every candidate closed through u has length >= 2 * dist[u]
                let limit = found
                    .map(|f| f.0)
                    .unwrap_or(usize::MAX)
                    .min(best.as_ref().map_or(usize::MAX, |b| b.0));
                if 2 * dist[u] >= limit {
                    break;
                }
                for w in VertexSet(self.adj[u] & mask) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if w != parent[u] {
                        let len = dist[u] + dist[w] + 1;
                        if found.is_none_or(|f| len < f.0) {
                            found = Some((len, u, w));
                            if len == 3 {
                                break 'bfs;
                            }
                        }
                    }
                }
            }
            if let Some((len, u, w)) = found {
                if best.as_ref().is_none_or(|b| len < b.0) {
                    best = Some((len, parent.clone(), u, w));
                    if len == 3 {
                        break;
                    }
                }
            }
        }

        let (len, parent, u, w) = best?;
        let walk = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            path
        };
        let mut cycle = walk(u);
        let back = walk(w);
        cycle.extend(back.into_iter().skip(1).rev());
        debug_assert_eq!(cycle.len(), len);
        debug_assert_eq!(
            cycle.iter().copied().collect::<VertexSet>().len(),
            len,
            "shortest closed walk must be a simple cycle"
        );
        Some(cycle)
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            what: "vertex count",
            got: n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
