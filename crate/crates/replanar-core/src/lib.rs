//! Transformation of k-planar simple topological drawings into
//! (k+1)-quasiplanar ones, with verifiers certifying every intermediate
//! invariant.
//!
//! The drawing lives in [`topo::TopoGraph`] as a planarization (plane graph
//! with crossing nodes and a rotation system). The pipeline in [`pipeline`]
//! untangles mutually crossing bundles, computes an injective vertex
//! assignment by bipartite matching, reroutes one edge per bundle, and for
//! small k repairs the assignment via a conflict digraph until the output is
//! simple and free of k+1 pairwise crossing edges.

pub mod conflict;
pub mod geom;
pub mod io;
pub mod matching;
pub mod pipeline;
pub mod reroute;
pub mod route;
pub mod simplify;
pub mod surgery;
pub mod topo;
pub mod untangle;
pub mod verify;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unrealizable route: {0}")]
    UnrealizableRoute(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("disjointness violation: {0}")]
    DisjointnessViolation(String),
    #[error("crossing is not tangled: {0}")]
    NotTangled(String),
    #[error("crossing is not untangled: {0}")]
    NotUntangled(String),
    #[error("vertices not consecutive on the gon boundary: {0}")]
    NotConsecutive(String),
    #[error("not a home for this edge: {0}")]
    NotAHome(String),
    #[error("matching does not saturate: {0}")]
    Unsaturated(String),
    #[error("no progress in conflict repair: {0}")]
    NoProgress(String),
    #[error("odd cycle of 2-cycles: {0}")]
    OddCycleOfTwoCycles(String),
    #[error("unclassified crossing: {0}")]
    UnclassifiedCrossing(String),
    #[error("unclassified mutual crossing triple: {0}")]
    UnclassifiedTriple(String),
    #[error("uncharacterized simplicity violation: {0}")]
    UncharacterizedViolation(String),
    #[error("instance budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
