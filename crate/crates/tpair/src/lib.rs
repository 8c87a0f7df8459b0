//! Terminal-pairability toolkit.
//!
//! A host graph realizes a demand multigraph when there are pairwise
//! edge-disjoint host paths joining the endpoints of every demand edge
//! instance. This crate models hosts, demands, and path systems, generates
//! the extremal demand families (parallel one-factors and multiplicity-q/2
//! triangles on vertex triples), decides realizability by exact
//! backtracking search, and checks the counting inequalities that bound
//! the feasible q on concrete instances.

pub mod analysis;
pub mod bounds;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod solver;
pub mod sweep;

pub use graph::{
    verify_realization, DemandGraph, HostGraph, PathSystem, RealizationReport, Violation,
};
pub use solver::{decide_realizable, greedy_realize, SolveConfig, SolveOutcome, SolveStatus};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex count must be even and positive, got {0}")]
    OddVertexCount(usize),
    #[error("vertex count must be positive and divisible by 3, got {0}")]
    NotDivisibleBy3(usize),
    #[error("multiplicity q must be even and positive, got {0}")]
    OddMultiplicity(usize),
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("demand has {demand} vertices but host has {host}")]
    DimensionMismatch { demand: usize, host: usize },
    #[error("length histogram totals {total} paths, expected {expected}")]
    HistogramMismatch { total: i64, expected: i64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    InvalidInput(String),
    #[error("internal invariant breach: {0}")]
    InternalInvariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
