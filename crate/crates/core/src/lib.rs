//! Witness-producing search for two vertex-disjoint cycles of prescribed
//! lengths in graphs with large degree sums, plus the exact oracles and batch
//! verification harness used to check the constructions on small graphs.
//!
//! Graphs have at most 64 vertices; every neighbourhood is one `u64` mask.

pub mod error;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod harness;
pub mod solver;
pub mod structure;
pub mod trace;

pub use error::{ContractViolation, Error, Result};
pub use graph::{build_graph, parse_edge_list, validate_cert, Cycle, CyclePairCert, Graph, Path, VertexSet, MAX_ORDER};
pub use graph6::{encode_graph6, parse_graph6};
pub use hamilton::{
    absorb_pair, close_path_ore, find_cycle_of_length, find_hamilton_path_between, hamilton_connected_by_sigma,
    hamilton_cycle, hamilton_path, rotate_endpoints, RotatedPath,
};
pub use solver::{
    brute_force_oracle, find_disjoint_cycles, improve_partition, improve_partition_from, lemma26_decompose,
    meets_threshold, prop1_small, solve_from_decomposition, solve_from_decomposition_traced, DecompCase, Decomposed,
    Decomposition, ExchangeRecord, Outcome, Partition, PartitionRun, PartitionStop, Strategy,
};
pub use structure::{
    brute_force_classify, classify_near_hamiltonian, classify_within, elzahar_condition, gen_family, ore_condition,
    Family, StructureClass,
};
pub use trace::{SolveTrace, Step, TraceStep};
