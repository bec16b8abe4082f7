//! Short graph-TSP tours on cubic and subcubic multigraphs.
//!
//! Graph-TSP asks for a shortest closed walk visiting every vertex of an
//! unweighted connected graph, which is the same as a smallest connected
//! spanning multi-subgraph with all degrees even. The solvers here build such
//! subgraphs with certified size bounds:
//!
//! - [`ms::solve_ms`] handles bridgeless subcubic multigraphs with at most
//!   `4n/3 − 2/3` edges, using one minimum-weight perfect matching.
//! - [`matchcomb::solve_matchcomb`] handles small simple bridgeless cubic
//!   graphs with at most `4n/3 − 2` edges, averaging over a convex
//!   combination of perfect matchings.
//! - [`bridges::solve_with_bridges`] extends the first solver to graphs with
//!   bridges.
//!
//! The [`lab`] module holds exact and LP oracles, graph families and report
//! verification.

pub mod bridges;
pub mod error;
pub mod euler;
pub mod graph;
pub mod lab;
pub mod matchcomb;
pub mod matching;
pub mod ms;
pub mod report;

pub use error::{Error, Result};
pub use euler::{EulerianSubgraph, Tour};
pub use graph::{EdgeId, Multigraph, Vertex};
pub use matching::{PerfectMatching, WeightVector};
pub use report::{Algorithm, SolveReport, Thirds};
