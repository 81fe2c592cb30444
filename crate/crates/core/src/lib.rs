//! Fault-tolerant shortest paths.
//!
//! * [`rp`]: deterministic replacement paths in unweighted digraphs, in
//!   `Õ(m√n)` time, with a short-detour table, a detour set computed two ways
//!   and greedily chosen pivots for the long detours.
//! * [`dso`]: a deterministic distance sensitivity oracle for weighted
//!   digraphs under up to `f` vertex or edge failures, built from
//!   fault-tolerant trees and a greedy pivot set.
//! * [`oracle`]: brute-force references for both.
//!
//! Algorithms are generic over [`Weight`]; the aliases below name the
//! instantiations the command-line tool uses.

pub mod dso;
pub mod format;
pub mod gen;
pub mod graph;
pub mod hitting;
pub mod oracle;
pub mod rp;
pub mod sssp;
pub mod weight;

pub use graph::{Element, FaultSet, Graph, GraphError, Path, Vertex};
pub use sssp::{NegativeCycle, OpCounter, PriceFunction};
pub use weight::{PathKey, Weight};

/// Graph with real weights, as read from `weighted` files.
pub type WeightedGraph = Graph<f64>;
/// Graph with exact integer weights.
pub type IntGraph = Graph<i64>;
/// Unweighted graph; every edge has weight one.
pub type UnitGraph = Graph<u64>;
/// Oracle over real weights.
pub type WeightedDso = dso::Dso<f64>;
/// Oracle over exact integer weights.
pub type IntDso = dso::Dso<i64>;
