//! vacantlab: a simulation laboratory for the vacant set and vacant net of
//! random walks on random r-regular graphs.
//!
//! The crate implements three walk processes (simple, non-backtracking, and
//! the unvisited-edge process), measures the component structure of the
//! subgraphs induced by unvisited vertices and unvisited edges, and checks
//! every closed-form prediction (sizes, phase-transition thresholds, cover
//! times, the hypergeometric red-degree law) against seeded Monte Carlo
//! experiments.
//!
//! Module map:
//! - [`graphgen`]: configuration-model sampling, simplicity and niceness
//!   checks, degree-sequence graphs, edge-list I/O, spectral diagnostics.
//! - [`walks`]: the walk engines, visit tracking, cover times, and the
//!   walk-driven lazy revelation of the configuration.
//! - [`structure`]: vacant-set/net subgraphs, components, red-edge moments,
//!   the Molloy-Reed statistics, and the scaling-window probe.
//! - [`theory`]: all closed-form predictions plus independent oracles.
//! - [`harness`]: seeded parallel experiment orchestration, threshold scans,
//!   cover-time studies, and the validation suite.

pub mod error;
pub mod graphgen;
pub mod harness;
pub mod rng;
pub mod structure;
pub mod theory;
pub mod walks;

pub use error::{Error, Result};
