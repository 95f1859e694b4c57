//! Finding and verifying spanning trees with noisy edge-existence queries.
//!
//! A *moldgraph* is a known multigraph in which an adversary has secretly
//! realized a connected spanning subgraph. The only way to learn anything is
//! to ask a noisy oracle "is edge `e` realized?", where answers err with
//! probability `p < 1/2` under one of three regimes: two-sided, false
//! negatives only, or false positives only. This crate provides
//!
//! * the multigraph machinery the algorithms run on: super-edges,
//!   contraction, rotation-system embeddings, face tracing, and dual graphs
//!   ([`graph`], [`embedding`]);
//! * seeded oracle simulators with query accounting ([`oracle`]);
//! * the search and verification algorithms, each available both as a
//!   one-shot call and as a resumable step machine so two algorithms can be
//!   interleaved query-for-query ([`algorithms`]);
//! * instance generators for grids, parallel-edge ladders, complete graphs,
//!   stars, and random trees ([`instances`]);
//! * a plain-text instance file format ([`format`]).

pub mod algorithms;
pub mod embedding;
pub mod error;
pub mod format;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod union_find;

pub use algorithms::{
    combined_fn, combined_fn_seeded, combined_fp, combined_fp_seeded, discover,
    expected_hitting_time_bound, hitting_probability, interleave, naive_fn, naive_fp,
    naive_two_sided, run_machine, solve_planar_fp, solve_sparse_fn, threshold_and_budget,
    verify_tree, CombinedOutcome, Contender, Step, StepMachine, TreeOutcome, VerifyOutcome,
    VerifyParams,
};
pub use embedding::{build_dual, trace_faces, DualGraph, EdgeEnd, Face, PlanarEmbedding};
pub use error::{AlgoError, GraphError, OracleError};
pub use graph::{EdgeId, MoldGraph, Realization, Sparsity, SuperEdgeId, VertexId};
pub use instances::{Family, GridRealization, Instance, InstanceSpec, LadderMode};
pub use oracle::{derive_seed, Answer, EdgeOracle, ErrorModel, NoisyOracle, QueryStats, Variant};
