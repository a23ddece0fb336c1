//! Independence polynomial I(G;x) and its evaluations.
//!
//! Every recursive instance is an induced subgraph of the input, so results
//! are memoized by the mask of surviving vertices. The pivot is always a
//! maximum-degree vertex (lowest label on ties) and the branching identity is
//! `I(G;x) = I(G−v;x) + x·I(G−N[v];x)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::deadline::{Deadline, Interrupted};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polynomial::Polynomial;
use crate::vertex_set::VertexSet;

/// Largest graph accepted by [`brute_force_poly`].
pub const BRUTE_FORCE_POLY_MAX_VERTICES: usize = 24;

/// Memo sizing. When the table reaches `capacity` entries it is cleared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoConfig {
    pub capacity: usize,
}

impl Default for MemoConfig {
    fn default() -> Self {
        MemoConfig { capacity: 1 << 20 }
    }
}

trait Memo<V> {
    fn get(&mut self, key: u64) -> Option<V>;
    fn insert(&mut self, key: u64, value: V);
}

struct LocalMemo<V> {
    map: HashMap<u64, V>,
    capacity: usize,
}

impl<V> LocalMemo<V> {
    fn new(config: MemoConfig) -> Self {
        LocalMemo {
            map: HashMap::new(),
            capacity: config.capacity,
        }
    }
}

impl<V: Clone> Memo<V> for LocalMemo<V> {
    fn get(&mut self, key: u64) -> Option<V> {
        self.map.get(&key).cloned()
    }

    fn insert(&mut self, key: u64, value: V) {
        if self.capacity == 0 {
            return;
        }
        if self.map.len() >= self.capacity {
            self.map.clear();
        }
        self.map.insert(key, value);
    }
}

/// A polynomial memo that several threads may share while computing
/// [`ind_poly_shared`] for the same graph. It only ever changes speed.
pub struct SharedMemo {
    graph: Graph,
    map: Mutex<HashMap<u64, Polynomial>>,
    capacity: usize,
}

impl SharedMemo {
    pub fn new(graph: Graph, config: MemoConfig) -> Self {
        SharedMemo {
            graph,
            map: Mutex::new(HashMap::new()),
            capacity: config.capacity,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Memo<Polynomial> for &SharedMemo {
    fn get(&mut self, key: u64) -> Option<Polynomial> {
        self.map.lock().unwrap().get(&key).cloned()
    }

    fn insert(&mut self, key: u64, value: Polynomial) {
        if self.capacity == 0 {
            return;
        }
        let mut map = self.map.lock().unwrap();
        if map.len() >= self.capacity {
            map.clear();
        }
        map.insert(key, value);
    }
}

/// Maximum-degree vertex of the induced subgraph, lowest label on ties.
fn pivot(g: &Graph, mask: u64) -> usize {
    let mut best = usize::MAX;
    let mut best_deg = 0;
    for v in VertexSet(mask) {
        let d = g.degree_in(v, mask);
        if best == usize::MAX || d > best_deg {
            best = v;
            best_deg = d;
        }
    }
    best
}

#[inline]
fn closed_nbhd(g: &Graph, v: usize) -> u64 {
    g.adj_mask(v) | 1 << v
}

struct PolyRun<'g, M> {
    g: &'g Graph,
    memo: M,
}

impl<M: Memo<Polynomial>> PolyRun<'_, M> {
    fn solve(&mut self, mask: u64) -> Polynomial {
        if mask == 0 {
            return Polynomial::one();
        }
        if let Some(p) = self.memo.get(mask) {
            return p;
        }
        let result = if self.g.edges_in(mask) == 0 {
            Polynomial::one_plus_x_pow(mask.count_ones() as usize)
        } else {
            let comps = self.g.components_in(mask);
            if comps.len() > 1 {
                comps
                    .into_iter()
                    .fold(Polynomial::one(), |acc, c| &acc * &self.solve(c))
            } else {
                let v = pivot(self.g, mask);
                let without = self.solve(mask & !(1 << v));
                let with = self.solve(mask & !closed_nbhd(self.g, v));
                &without + &with.shift()
            }
        };
        self.memo.insert(mask, result.clone());
        result
    }
}

/// Exact independence polynomial.
pub fn ind_poly(g: &Graph) -> Polynomial {
    ind_poly_with(g, MemoConfig::default())
}

pub fn ind_poly_with(g: &Graph, config: MemoConfig) -> Polynomial {
    PolyRun {
        g,
        memo: LocalMemo::new(config),
    }
    .solve(g.vertices().bits())
}

/// [`ind_poly`] backed by a memo shared across threads. The memo must have
/// been created for `g`.
pub fn ind_poly_shared(g: &Graph, memo: &SharedMemo) -> Result<Polynomial> {
    if memo.graph != *g {
        return Err(Error::InvalidParameter(
            "shared memo was created for a different graph".into(),
        ));
    }
    Ok(PolyRun { g, memo }.solve(g.vertices().bits()))
}

/// Definitional oracle: tests every vertex subset for independence.
pub fn brute_force_poly(g: &Graph) -> Result<Polynomial> {
    let n = g.n();
    if n > BRUTE_FORCE_POLY_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "brute-force polynomial vertex count",
            got: n,
            cap: BRUTE_FORCE_POLY_MAX_VERTICES,
        });
    }
    let mut counts = vec![0u64; n + 1];
    for subset in 0u64..1 << n {
        let independent = VertexSet(subset)
            .iter()
            .all(|v| g.adj_mask(v) & subset == 0);
        if independent {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    Ok(Polynomial::from_coeffs(counts))
}

struct AltRun<'g, 'd> {
    g: &'g Graph,
    memo: LocalMemo<i128>,
    deadline: &'d mut Deadline,
}

impl AltRun<'_, '_> {
    fn solve(&mut self, mask: u64) -> std::result::Result<i128, Interrupted> {
        if mask == 0 {
            return Ok(1);
        }
        self.deadline.check()?;
        if let Some(v) = self.memo.get(mask) {
            return Ok(v);
        }
        let g = self.g;
        // an isolated vertex contributes the factor (1 + x), which is 0 at -1
        let result = if VertexSet(mask).iter().any(|v| g.degree_in(v, mask) == 0) {
            0
        } else {
            let comps = g.components_in(mask);
            if comps.len() > 1 {
                let mut acc = 1i128;
                for c in comps {
                    acc *= self.solve(c)?;
                    if acc == 0 {
                        break;
                    }
                }
                acc
            } else if let Some(leaf) = VertexSet(mask).iter().find(|&v| g.degree_in(v, mask) == 1) {
                // I(G;-1) = -I(G - N[u]; -1) for the neighbor u of a leaf
                let u = (g.adj_mask(leaf) & mask).trailing_zeros() as usize;
                -self.solve(mask & !closed_nbhd(g, u))?
            } else {
                let v = pivot(g, mask);
                self.solve(mask & !(1 << v))? - self.solve(mask & !closed_nbhd(g, v))?
            }
        };
        self.memo.insert(mask, result);
        Ok(result)
    }
}

/// I(G;−1), evaluated directly at −1.
///
/// Exact in `i128`: the magnitude never exceeds I(G;1) ≤ 2^64.
pub fn alternating_number(g: &Graph) -> i128 {
    alternating_number_within(g, &mut Deadline::none()).expect("no deadline set")
}

pub fn alternating_number_within(
    g: &Graph,
    deadline: &mut Deadline,
) -> std::result::Result<i128, Interrupted> {
    AltRun {
        g,
        memo: LocalMemo::new(MemoConfig::default()),
        deadline,
    }
    .solve(g.vertices().bits())
}

struct CountRun<'g, 'd> {
    g: &'g Graph,
    memo: LocalMemo<u128>,
    deadline: &'d mut Deadline,
}

impl CountRun<'_, '_> {
    fn solve(&mut self, mask: u64) -> std::result::Result<u128, Interrupted> {
        if mask == 0 {
            return Ok(1);
        }
        self.deadline.check()?;
        if let Some(v) = self.memo.get(mask) {
            return Ok(v);
        }
        let g = self.g;
        let result = if g.edges_in(mask) == 0 {
            1u128 << mask.count_ones()
        } else {
            let comps = g.components_in(mask);
            if comps.len() > 1 {
                let mut acc = 1u128;
                for c in comps {
                    acc *= self.solve(c)?;
                }
                acc
            } else {
                let v = pivot(g, mask);
                self.solve(mask & !(1 << v))? + self.solve(mask & !closed_nbhd(g, v))?
            }
        };
        self.memo.insert(mask, result);
        Ok(result)
    }
}

/// I(G;1), the number of independent sets including the empty set.
pub fn fibonacci_number(g: &Graph) -> u128 {
    fibonacci_number_within(g, &mut Deadline::none()).expect("no deadline set")
}

pub fn fibonacci_number_within(
    g: &Graph,
    deadline: &mut Deadline,
) -> std::result::Result<u128, Interrupted> {
    CountRun {
        g,
        memo: LocalMemo::new(MemoConfig::default()),
        deadline,
    }
    .solve(g.vertices().bits())
}

/// Reduced Euler characteristic of the independence complex, −I(G;−1).
pub fn reduced_euler_characteristic(g: &Graph) -> i128 {
    -alternating_number(g)
}

/// Convenience: I(G;t) for an arbitrary integer point via the polynomial.
pub fn eval_at(g: &Graph, t: &BigInt) -> BigInt {
    ind_poly(g).eval(t)
}
