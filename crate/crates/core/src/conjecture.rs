//! Witness search for prescribed pairs (φ(G), I(G;−1)).
//!
//! Phase one tabulates small connected graphs ("atoms") by their pair of
//! invariants. Phase two composes disjoint unions of atoms: φ adds and
//! I(·;−1) multiplies over disjoint union, so reaching a target `(k, q)` is a
//! bounded search over multisets of atom values. Failure to find a witness
//! is a reported outcome, never an error.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fvs::{brute_force_fvs, decycling_number};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::to_graph6;
use crate::indpoly::{alternating_number, brute_force_poly};
use crate::vertex_set::VertexSet;

/// Largest atom size accepted by [`build_atom_table`].
pub const ATOM_MAX_VERTICES: usize = 9;

/// Largest `k_max` accepted by [`witness_table`].
pub const WITNESS_TABLE_MAX_K: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub phi: usize,
    pub alt: i128,
    pub graph: Graph,
    pub graph6: String,
}

/// Smallest connected representative per `(φ, alt)` pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    pub max_n: usize,
    entries: BTreeMap<(usize, i128), Atom>,
}

impl AtomTable {
    pub fn get(&self, phi: usize, alt: i128) -> Option<&Atom> {
        self.entries.get(&(phi, alt))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in `(φ, alt)` order.
    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.entries.values()
    }
}

/// Connected graphs on `n` vertices whose degree sequence is non-decreasing
/// in label order, in ascending graph6 order.
///
/// Every isomorphism class has such a labeling, so scanning only these
/// labelings still sees every connected graph up to isomorphism.
pub fn degree_ordered_connected_graphs(n: usize) -> Vec<Graph> {
    struct Scan {
        n: usize,
        adj: [u64; MAX_VERTICES],
        deg: [u32; MAX_VERTICES],
        out: Vec<Graph>,
    }

    impl Scan {
        fn column(&mut self, j: usize) {
            let n = self.n;
            if j == n {
                let g = Graph::from_adjacency_unchecked(self.adj[..n].to_vec());
                if g.is_connected() {
                    self.out.push(g);
                }
                return;
            }
            // vertices before j may still gain this many edges
            let slack = (n - 1 - j) as u32;
            for c in 0u64..1 << j {
                // x(0,j) is the most significant bit of the column
                for i in 0..j {
                    if c >> (j - 1 - i) & 1 == 1 {
                        self.adj[i] |= 1 << j;
                        self.adj[j] |= 1 << i;
                        self.deg[i] += 1;
                    }
                }
                self.deg[j] = c.count_ones();
                let feasible = (0..j).all(|i| self.deg[i] <= self.deg[i + 1] + slack)
                    && (n == 1 || self.deg[j] + slack > 0);
                if feasible {
                    self.column(j + 1);
                }
                for i in 0..j {
                    if c >> (j - 1 - i) & 1 == 1 {
                        self.adj[i] &= !(1 << j);
                        self.deg[i] -= 1;
                    }
                }
                self.adj[j] = 0;
            }
        }
    }

    if n == 0 {
        return Vec::new();
    }
    let mut scan = Scan {
        n,
        adj: [0; MAX_VERTICES],
        deg: [0; MAX_VERTICES],
        out: Vec::new(),
    };
    scan.column(0);
    scan.out
}

/// Tabulates `(φ, I(G;−1))` over connected graphs with 1..=max_n vertices,
/// keeping the first representative by vertex count and then graph6 order
/// among degree-ordered labelings.
pub fn build_atom_table(max_n: usize) -> Result<AtomTable> {
    if max_n > ATOM_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "atom vertex count",
            got: max_n,
            cap: ATOM_MAX_VERTICES,
        });
    }
    let mut entries = BTreeMap::new();
    for n in 1..=max_n {
        let graphs = degree_ordered_connected_graphs(n);
        let values: Vec<(usize, i128)> = graphs
            .par_iter()
            .map(|g| (decycling_number(g).size, alternating_number(g)))
            .collect();
        for (g, (phi, alt)) in graphs.into_iter().zip(values) {
            entries.entry((phi, alt)).or_insert_with(|| Atom {
                phi,
                alt,
                graph6: to_graph6(&g).expect("atoms are small"),
                graph: g,
            });
        }
    }
    for atom in entries.values() {
        let oracle_phi = brute_force_fvs(&atom.graph)?.size;
        let oracle_alt = brute_force_poly(&atom.graph)?.eval_i64(-1);
        if oracle_phi != atom.phi || oracle_alt != atom.alt.into() {
            return Err(Error::Defect(format!(
                "atom {} disagrees with the oracles: ({}, {}) vs ({oracle_phi}, {oracle_alt})",
                atom.graph6, atom.phi, atom.alt
            )));
        }
    }
    Ok(AtomTable { max_n, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub k: usize,
    pub q: i128,
    pub graph: Graph,
    /// A minimum decycling set of `graph`.
    pub certificate: VertexSet,
    /// I(graph;−1), recomputed from scratch.
    pub alt_value: i128,
    /// graph6 codes of the atoms, in the order they were placed.
    pub parts: Vec<String>,
}

impl Witness {
    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }
}

fn within_bound(k: usize, q: i128) -> bool {
    k >= 127 || q.unsigned_abs() <= 1u128 << k
}

struct Choice {
    vertices: usize,
    parts: Vec<usize>,
}

impl Choice {
    fn key<'a>(&self, atoms: &'a [&Atom]) -> (usize, usize, Vec<&'a str>) {
        (
            self.vertices,
            self.parts.len(),
            self.parts
                .iter()
                .map(|&i| atoms[i].graph6.as_str())
                .collect(),
        )
    }
}

struct Composer<'a> {
    cyclic: Vec<&'a Atom>,
    forests: Vec<&'a Atom>,
    k: usize,
    q: i128,
    best: Option<Choice>,
}

impl<'a> Composer<'a> {
    fn offer(&mut self, cyclic: &[usize], forest: Option<usize>) {
        let vertices = cyclic
            .iter()
            .map(|&i| self.cyclic[i].graph.n())
            .sum::<usize>()
            + forest.map_or(0, |i| self.forests[i].graph.n());
        if vertices > MAX_VERTICES {
            return;
        }
        // cyclic atoms first, then the forest atom; indices into one list
        let all: Vec<&Atom> = self.cyclic.iter().chain(&self.forests).copied().collect();
        let mut parts = cyclic.to_vec();
        parts.extend(forest.map(|i| self.cyclic.len() + i));
        let choice = Choice { vertices, parts };
        if self
            .best
            .as_ref()
            .is_none_or(|b| choice.key(&all) < b.key(&all))
        {
            self.best = Some(choice);
        }
    }

    fn best_vertices(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |c| c.vertices)
    }

    fn search(
        &mut self,
        start: usize,
        phi: usize,
        product: i128,
        vertices: usize,
        chosen: &mut Vec<usize>,
    ) {
        if vertices > self.best_vertices() {
            return;
        }
        if phi == self.k {
            if product == self.q {
                self.offer(chosen, None);
            }
            // at most one acyclic atom is ever useful: its value is -1, 0 or 1
            for i in 0..self.forests.len() {
                if product * self.forests[i].alt == self.q {
                    self.offer(chosen, Some(i));
                }
            }
            return;
        }
        for i in start..self.cyclic.len() {
            let atom = self.cyclic[i];
            if phi + atom.phi > self.k {
                continue;
            }
            let next = product * atom.alt;
            // with q != 0 every partial product must divide q
            if self.q != 0 && (next == 0 || self.q % next != 0) {
                continue;
            }
            chosen.push(i);
            self.search(i, phi + atom.phi, next, vertices + atom.graph.n(), chosen);
            chosen.pop();
        }
    }
}

/// Looks for a disjoint union of atoms with φ = k and I(·;−1) = q. The
/// returned witness has been re-verified with both solvers.
pub fn find_witness(k: usize, q: i128, atoms: &AtomTable) -> Result<Option<Witness>> {
    if !within_bound(k, q) {
        return Err(Error::TargetOutOfRange { k, q });
    }
    let mut ordered: Vec<&Atom> = atoms.iter().collect();
    ordered.sort_by(|a, b| (a.graph.n(), &a.graph6).cmp(&(b.graph.n(), &b.graph6)));
    let (cyclic, forests): (Vec<&Atom>, Vec<&Atom>) = ordered.into_iter().partition(|a| a.phi > 0);
    let mut composer = Composer {
        cyclic,
        forests,
        k,
        q,
        best: None,
    };
    composer.search(0, 0, 1, 0, &mut Vec::new());
    let Some(Choice { parts, .. }) = composer.best.take() else {
        return Ok(None);
    };

    let all: Vec<&Atom> = composer
        .cyclic
        .iter()
        .chain(&composer.forests)
        .copied()
        .collect();
    let mut graph = Graph::empty(0)?;
    for &i in &parts {
        graph = graph.disjoint_union(&all[i].graph)?;
    }
    let fvs = decycling_number(&graph);
    let alt_value = alternating_number(&graph);
    if fvs.size != k || alt_value != q || !within_bound(fvs.size, alt_value) {
        return Err(Error::Defect(format!(
            "composed witness for (k={k}, q={q}) re-verified as (φ={}, alt={alt_value})",
            fvs.size
        )));
    }
    Ok(Some(Witness {
        k,
        q,
        graph,
        certificate: fvs.certificate,
        alt_value,
        parts: parts.iter().map(|&i| all[i].graph6.clone()).collect(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRow {
    pub k: usize,
    pub q: i128,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTable {
    pub k_max: usize,
    pub atoms_max_n: usize,
    pub rows: Vec<WitnessRow>,
}

/// Per-k coverage: how many of the `2^(k+1) + 1` targets have witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coverage {
    pub k: usize,
    pub targets: usize,
    pub found: usize,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.found == self.targets
    }
}

/// One row for every `k ≤ k_max` and every `|q| ≤ 2^k`, found or not.
pub fn witness_table(k_max: usize, atoms: &AtomTable) -> Result<WitnessTable> {
    if k_max > WITNESS_TABLE_MAX_K {
        return Err(Error::Capacity {
            what: "witness table k_max",
            got: k_max,
            cap: WITNESS_TABLE_MAX_K,
        });
    }
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let bound = 1i128 << k;
        for q in -bound..=bound {
            rows.push(WitnessRow {
                k,
                q,
                witness: find_witness(k, q, atoms)?,
            });
        }
    }
    Ok(WitnessTable {
        k_max,
        atoms_max_n: atoms.max_n,
        rows,
    })
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    k: usize,
    q: i128,
    found: bool,
    graph6: Option<String>,
    n: Option<usize>,
    parts: Option<String>,
    connected: Option<bool>,
    certificate: Option<String>,
    alt: Option<i128>,
    note: &'a str,
}

impl WitnessTable {
    pub fn coverage(&self) -> Vec<Coverage> {
        (0..=self.k_max)
            .map(|k| {
                let rows = self.rows.iter().filter(|r| r.k == k);
                Coverage {
                    k,
                    targets: rows.clone().count(),
                    found: rows.filter(|r| r.witness.is_some()).count(),
                }
            })
            .collect()
    }

    fn records(&self) -> impl Iterator<Item = WitnessRecord<'static>> + '_ {
        self.rows.iter().map(|r| match &r.witness {
            Some(w) => WitnessRecord {
                k: r.k,
                q: r.q,
                found: true,
                graph6: Some(to_graph6(&w.graph).unwrap_or_else(|_| format!("n{}", w.graph.n()))),
                n: Some(w.graph.n()),
                parts: Some(w.parts.join(" ")),
                connected: Some(w.is_connected()),
                certificate: Some(
                    w.certificate
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
                alt: Some(w.alt_value),
                note: "",
            },
            None => WitnessRecord {
                k: r.k,
                q: r.q,
                found: false,
                graph6: None,
                n: None,
                parts: None,
                connected: None,
                certificate: None,
                alt: None,
                note: "not found within search bounds",
            },
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for rec in self.records() {
            w.serialize(rec).map_err(io::Error::other)?;
        }
        w.flush()
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let records: Vec<_> = self.records().collect();
        serde_json::to_writer_pretty(&mut out, &records)?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_labeled_graphs;
    use crate::graph6::parse_graph6;
    use std::collections::HashSet;

    #[test]
    fn degree_ordered_scan_covers_small_classes() {
        // connected graphs up to isomorphism: 1, 1, 2, 6, 21 for n = 1..5;
        // compare the (n, m, sorted degree sequence, alt, phi) fingerprints
        // against the full labeled enumeration
        let fingerprint = |g: &Graph| {
            let mut degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
            degs.sort_unstable();
            (g.m(), degs, alternating_number(g), decycling_number(g).size)
        };
        for n in 1..=6 {
            let scanned = degree_ordered_connected_graphs(n);
            for g in &scanned {
                assert!(g.is_connected());
                assert!((1..n).all(|v| g.degree(v - 1) <= g.degree(v)));
            }
            let codes: Vec<String> = scanned.iter().map(|g| to_graph6(g).unwrap()).collect();
            assert!(codes.windows(2).all(|w| w[0] < w[1]));
            let from_scan: HashSet<_> = scanned.iter().map(fingerprint).collect();
            let from_all: HashSet<_> = enumerate_labeled_graphs(n)
                .unwrap()
                .filter(|g| g.is_connected())
                .map(|g| fingerprint(&g))
                .collect();
            assert_eq!(from_scan, from_all, "n={n}");
        }
    }

    #[test]
    fn atom_fixtures() {
        let atoms = build_atom_table(5).unwrap();
        assert_eq!(atoms.get(1, -2).unwrap().graph6, "Bw");
        assert_eq!(atoms.get(0, -1).unwrap().graph6, "A_");
        assert_eq!(atoms.get(2, -3).unwrap().graph6, "C~");
        assert!(build_atom_table(10).is_err());
    }

    #[test]
    fn witness_fixtures() {
        let atoms = build_atom_table(6).unwrap();
        let w = find_witness(1, -2, &atoms).unwrap().unwrap();
        assert_eq!(to_graph6(&w.graph).unwrap(), "Bw");

        let w = find_witness(0, 1, &atoms).unwrap().unwrap();
        assert_eq!(w.graph.n(), 0);

        let w = find_witness(2, 3, &atoms).unwrap().unwrap();
        assert_eq!((w.k, w.q, w.alt_value), (2, 3, 3));
        // K4 ⊔ K2 has 6 vertices; nothing larger is ever preferred
        assert!(w.graph.n() <= 6);

        assert_eq!(
            find_witness(1, 3, &atoms),
            Err(Error::TargetOutOfRange { k: 1, q: 3 })
        );
        assert_eq!(
            find_witness(0, -2, &atoms),
            Err(Error::TargetOutOfRange { k: 0, q: -2 })
        );
    }

    #[test]
    fn small_coverage_is_complete() {
        let atoms = build_atom_table(6).unwrap();
        let table = witness_table(2, &atoms).unwrap();
        assert_eq!(table.rows.len(), 3 + 5 + 9);
        for c in table.coverage() {
            assert!(c.is_complete(), "{c:?}");
        }
        for row in &table.rows {
            let w = row.witness.as_ref().unwrap();
            assert_eq!(decycling_number(&w.graph).size, row.k);
            assert_eq!(alternating_number(&w.graph), row.q);
            // parts re-assemble into the witness
            let rebuilt = w
                .parts
                .iter()
                .map(|s| parse_graph6(s).unwrap())
                .fold(Graph::empty(0).unwrap(), |acc, g| {
                    acc.disjoint_union(&g).unwrap()
                });
            assert_eq!(rebuilt, w.graph);
        }
        let again = witness_table(2, &atoms).unwrap();
        assert_eq!(table, again);
    }

    #[test]
    fn rows_render() {
        let atoms = build_atom_table(4).unwrap();
        let table = witness_table(1, &atoms).unwrap();
        let mut csv = Vec::new();
        table.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "k,q,found,graph6,n,parts,connected,certificate,alt,note"
        );
        assert_eq!(text.lines().count(), 1 + 3 + 5);
        let mut json = Vec::new();
        table.write_json(&mut json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 8);
    }
}
