//! Constructions, exact searches and structure analysis for Turán problems
//! in balanced multipartite host graphs.
//!
//! * [`graph`]: k-partite host graphs and counting primitives.
//! * [`constructions`]: Turán counts, blow-up templates, Sidon graphs and the
//!   lower-bound constructions.
//! * [`detect`]: witness-producing `K_{1,t}`, `K_{t,t}` and `K_q(t)` detectors.
//! * [`zar`]: exact Zarankiewicz numbers and their finite-range checks.
//! * [`ex`]: exact multipartite Turán numbers at desk scale.
//! * [`stability`]: closeness to templates, atypical vertices, structure reports.
//! * [`io`]: result cache and run manifests.

pub mod bitset;
pub mod constructions;
pub mod detect;
pub mod error;
pub mod ex;
pub mod graph;
pub mod io;
pub mod stability;
pub mod zar;

pub use bitset::BitSet;
pub use detect::{Budget, Detection, ForbiddenPattern, Outcome, Witness};
pub use error::{Error, Result};
pub use graph::{ClassPartition, GraphDoc, PartitionedGraph, VertexSet};
