//! Decycling number φ(G): the minimum size of a feedback vertex set.
//!
//! Exact search by iterative deepening on the budget `k`, separately for each
//! component of the 2-core. A node of the search strips vertices of degree
//! ≤ 1, stops when nothing is left (acyclic), and otherwise branches on the
//! vertices of a shortest cycle in ascending label order; a vertex passed
//! over by one branch is excluded from its later siblings. That fixed order
//! makes the returned certificate deterministic.

use crate::deadline::{Deadline, Interrupted};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest graph accepted by [`brute_force_fvs`].
pub const BRUTE_FORCE_FVS_MAX_VERTICES: usize = 16;

/// φ(G) together with a minimum decycling set, in the graph's own labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvsResult {
    pub size: usize,
    pub certificate: VertexSet,
}

pub fn decycling_number(g: &Graph) -> FvsResult {
    decycling_number_within(g, &mut Deadline::none()).expect("no deadline set")
}

pub fn decycling_number_within(
    g: &Graph,
    deadline: &mut Deadline,
) -> std::result::Result<FvsResult, Interrupted> {
    let mut search = Search {
        g,
        deadline,
        chosen: Vec::new(),
    };
    let core = g.strip_in(g.vertices().bits());
    for comp in g.components_in(core) {
        // φ ≤ ν bounds the deepening
        let nu = g.cyclomatic_in(comp);
        let mut solved = false;
        for budget in 0..=nu {
            if search.run(comp, budget)? {
                solved = true;
                break;
            }
        }
        assert!(solved, "no decycling set within cyclomatic number {nu}");
    }
    let certificate: VertexSet = search.chosen.iter().copied().collect();
    Ok(FvsResult {
        size: certificate.len(),
        certificate,
    })
}

struct Search<'g, 'd> {
    g: &'g Graph,
    deadline: &'d mut Deadline,
    chosen: Vec<usize>,
}

impl Search<'_, '_> {
    fn run(&mut self, mask: u64, budget: usize) -> std::result::Result<bool, Interrupted> {
        self.branch(mask, 0, budget)
    }

    /// `forbidden` holds vertices that an earlier sibling branch already
    /// tried, so branch `i` covers exactly the solutions containing the
    /// `i`-th cycle vertex and none of the earlier ones.
    fn branch(
        &mut self,
        mask: u64,
        forbidden: u64,
        budget: usize,
    ) -> std::result::Result<bool, Interrupted> {
        self.deadline.check()?;
        let mask = self.g.strip_in(mask);
        if mask == 0 {
            return Ok(true);
        }
        let forbidden = forbidden & mask;
        if budget == 0
            || self.g.strip_in(forbidden) != 0
            || !self.budget_can_suffice(mask, forbidden, budget)
        {
            return Ok(false);
        }
        let mut cycle = self
            .g
            .shortest_cycle_in(mask)
            .expect("a non-empty 2-core contains a cycle");
        cycle.sort_unstable();
        let mut excluded = forbidden;
        for v in cycle {
            if forbidden >> v & 1 == 1 {
                continue;
            }
            self.chosen.push(v);
            if self.branch(mask & !(1 << v), excluded, budget - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            excluded |= 1 << v;
        }
        Ok(false)
    }

    /// Deleting a vertex of current degree d lowers ν by at most d − 1, and
    /// degrees never grow, so `budget` deletions of allowed vertices must
    /// cover ν with the largest degrees.
    fn budget_can_suffice(&self, mask: u64, forbidden: u64, budget: usize) -> bool {
        let nu = self.g.cyclomatic_in(mask);
        if budget >= nu {
            return true;
        }
        let mut drops: Vec<usize> = VertexSet(mask & !forbidden)
            .iter()
            .map(|v| self.g.degree_in(v, mask).saturating_sub(1) as usize)
            .collect();
        drops.sort_unstable_by(|a, b| b.cmp(a));
        drops.iter().take(budget).sum::<usize>() >= nu
    }
}

/// True iff `G − s` is acyclic.
pub fn verify_decycling_set(g: &Graph, s: VertexSet) -> bool {
    g.delete_vertices(s).graph.is_acyclic()
}

/// Union-find forest test used only by the oracle, independent of the
/// stripping routine the solver relies on.
fn acyclic_without(g: &Graph, removed: u64) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if removed >> u & 1 == 1 || removed >> v & 1 == 1 {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Oracle: scans subsets by increasing size, each size in lexicographic
/// order, and returns the first whose removal leaves a forest.
pub fn brute_force_fvs(g: &Graph) -> Result<FvsResult> {
    let n = g.n();
    if n > BRUTE_FORCE_FVS_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "brute-force decycling vertex count",
            got: n,
            cap: BRUTE_FORCE_FVS_MAX_VERTICES,
        });
    }
    for size in 0..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set: VertexSet = idx.iter().copied().collect();
            if acyclic_without(g, set.bits()) {
                return Ok(FvsResult {
                    size,
                    certificate: set,
                });
            }
            // advance to the next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("removing every vertex leaves a forest")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }

    fn k(n: usize) -> Graph {
        let e: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        graph(n, &e)
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &e)
    }

    #[test]
    fn solver_fixtures() {
        let tree = graph(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        assert_eq!(
            decycling_number(&tree),
            FvsResult {
                size: 0,
                certificate: VertexSet::EMPTY
            }
        );

        let q3 = k(3)
            .disjoint_union(&k(3))
            .unwrap()
            .disjoint_union(&k(3))
            .unwrap();
        let r = decycling_number(&q3);
        assert_eq!(r.size, 3);
        assert_eq!(r.certificate, VertexSet(0b001_001_001));

        assert_eq!(decycling_number(&k(4)).size, 2);
        assert_eq!(decycling_number(&cycle(6)).size, 1);
        assert_eq!(decycling_number(&Graph::empty(0).unwrap()).size, 0);
    }

    #[test]
    fn oracle_fixtures() {
        assert_eq!(brute_force_fvs(&cycle(5)).unwrap().size, 1);
        let two_k3 = k(3).disjoint_union(&k(3)).unwrap();
        assert_eq!(
            brute_force_fvs(&two_k3).unwrap(),
            FvsResult {
                size: 2,
                certificate: VertexSet(0b001_001)
            }
        );
        assert_eq!(
            brute_force_fvs(&graph(3, &[(0, 1), (1, 2)])).unwrap().size,
            0
        );
        assert!(brute_force_fvs(&Graph::empty(17).unwrap()).is_err());
    }

    #[test]
    fn verify_fixtures() {
        let k4 = k(4);
        for a in 0..4 {
            assert!(!verify_decycling_set(&k4, VertexSet::singleton(a)));
            for b in a + 1..4 {
                assert!(verify_decycling_set(&k4, VertexSet::singleton(a).with(b)));
            }
        }
        assert!(verify_decycling_set(
            &graph(4, &[(0, 1), (2, 3)]),
            VertexSet::EMPTY
        ));
    }

    #[test]
    fn larger_instances() {
        // Petersen graph has φ = 3
        let petersen = graph(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        );
        assert_eq!(
            decycling_number(&petersen).size,
            brute_force_fvs(&petersen).unwrap().size
        );
        assert_eq!(decycling_number(&petersen).size, 3);
        // K_n needs n − 2
        assert_eq!(decycling_number(&k(12)).size, 10);

        use crate::families::{generate, FamilySpec};
        let k3x5 = generate(&FamilySpec::CompleteMultipartite {
            part_size: 3,
            parts: 5,
        })
        .unwrap();
        assert_eq!(
            decycling_number(&k3x5).size,
            brute_force_fvs(&k3x5).unwrap().size
        );
        // a largest induced forest of K_{4x6} is one part plus one vertex
        let k4x6 = generate(&FamilySpec::CompleteMultipartite {
            part_size: 4,
            parts: 6,
        })
        .unwrap();
        assert_eq!(decycling_number(&k4x6).size, 19);

        let sparse = generate(&FamilySpec::RandomGnp {
            n: 40,
            p: 0.1,
            seed: 2,
        })
        .unwrap();
        let r = decycling_number(&sparse);
        assert!(verify_decycling_set(&sparse, r.certificate));
        assert!(r.size <= sparse.cyclomatic_number());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| {
            crate::families::generate(&crate::families::FamilySpec::RandomGnp { n, p, seed })
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn matches_oracle_and_certificate_is_minimal(g in arb_graph(10)) {
            let r = decycling_number(&g);
            let oracle = brute_force_fvs(&g).unwrap();
            prop_assert_eq!(r.size, oracle.size);
            prop_assert_eq!(r.certificate.len(), r.size);
            prop_assert!(verify_decycling_set(&g, r.certificate));
            prop_assert!(r.size <= g.cyclomatic_number());
            // each certificate vertex is a step with φ(G − v) < φ(G)
            for v in r.certificate {
                let rest = g.delete_vertices(VertexSet::singleton(v)).graph;
                prop_assert!(decycling_number(&rest).size < r.size);
            }
        }

        #[test]
        fn additive_over_disjoint_union(a in arb_graph(7), b in arb_graph(7)) {
            let u = a.disjoint_union(&b).unwrap();
            let expected = brute_force_fvs(&a).unwrap().size + brute_force_fvs(&b).unwrap().size;
            prop_assert_eq!(decycling_number(&u).size, expected);
            prop_assert_eq!(brute_force_fvs(&u).unwrap().size, expected);
        }
    }
}
