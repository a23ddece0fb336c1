//! Exact independence polynomials, alternating numbers of independent sets,
//! cyclomatic and decycling numbers for simple graphs on at most 64 vertices,
//! plus the verification harness and witness search built on them.

pub mod conjecture;
pub mod deadline;
pub mod edge_list;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod fvs;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod indpoly;
pub mod polynomial;
pub mod vertex_set;

pub use conjecture::{
    build_atom_table, find_witness, witness_table, AtomTable, Witness, WitnessTable,
};
pub use deadline::{Deadline, Interrupted};
pub use edge_list::{parse_edge_list, to_edge_list};
pub use enumerate::{enumerate_labeled_graphs, labeled_graph};
pub use error::{Error, Result};
pub use families::{generate, FamilySpec};
pub use fvs::{brute_force_fvs, decycling_number, verify_decycling_set, FvsResult};
pub use graph::{Graph, InducedSubgraph, MAX_VERTICES};
pub use graph6::{parse_graph6, to_graph6};
pub use harness::{check_corpus, check_graph, CheckOptions, InvariantReport, Outcome, Summary};
pub use indpoly::{
    alternating_number, brute_force_poly, fibonacci_number, ind_poly, reduced_euler_characteristic,
};
pub use polynomial::Polynomial;
pub use vertex_set::VertexSet;
