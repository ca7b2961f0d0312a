//! König's min-max theorem for 0-1 matrices, made executable.
//!
//! The crate computes minimum line covers and maximum selections of 1s with
//! a recursive algorithm built on the diagonal form, checks them against
//! exhaustive oracles, builds the Menger, Hall and Dilworth instances that
//! the theorem is equivalent to, and evaluates formulas of the three-sorted
//! language L_LA over concrete matrices.

pub mod diagonal;
pub mod error;
pub mod gen;
pub mod la;
pub mod matrix;
pub mod menger;
pub mod oracle;
pub mod order;
pub mod solver;

pub use diagonal::{diagonalize, has_diagonal_property, DiagonalizationResult};
pub use error::{Error, Result};
pub use matrix::{
    apply_permutations, is_cover, is_selection, permute_cover, permute_selection, sum_entries,
    unpermute_cover, unpermute_selection, BoolMatrix, Cover, PermutationMatrix, Selection,
};
pub use oracle::{
    enumerate_paths, oracle_dilworth, oracle_hall, oracle_max_selection, oracle_menger,
    oracle_min_cover, DilworthOracle, HallOracle, MengerOracle, OracleBudget,
};
pub use menger::{
    build_a_double_prime, build_a_prime, cover_to_cut, cut_to_cover, is_cut, is_path, is_restricted_pair,
    paths_to_selection, repair_beta_gamma, selection_to_paths, Edge, EdgeCut, PathCollection, TerminalGraph,
};
pub use order::{
    chains_element_incidence, poset_from_set_system, sdr_from_chain_partition, sdr_from_selection,
    union_property, AntiChain, ChainPartition, Poset, SdrAssignment, SetSystem,
};
pub use solver::{kmm_check, max_selection, min_cover, KmmReport, SelectionStats, Solver, SolverConfig};
