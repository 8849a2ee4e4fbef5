//! Serialization, exact geometric ingestion, drawing realization, seeded
//! instance generation, and brute-force oracles.

pub mod gen;
pub mod ingest;
pub mod jsonio;
pub mod oracle;
pub mod realize;
pub mod svg;

use crate::geom::Pt;
use crate::topo::{EdgeId, VertexId};

/// A straight-line / polyline drawing with exact rational coordinates.
#[derive(Debug, Clone)]
pub struct GeometricDrawing {
    pub vertices: Vec<(VertexId, Pt)>,
    /// Each polyline starts at u's point and ends at v's point.
    pub edges: Vec<(EdgeId, VertexId, VertexId, Vec<Pt>)>,
}

impl GeometricDrawing {
    pub fn vertex_point(&self, v: VertexId) -> Option<&Pt> {
        self.vertices.iter().find(|(id, _)| *id == v).map(|(_, p)| p)
    }
}

/// Reproducible generator request.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub k: u32,
    /// Vertex budget.
    pub n: u32,
    /// Extra crossing-free filler edges per gadget gap, 0..=2.
    pub density: u32,
    pub bundles: u32,
    pub tangles: u32,
    pub twins: u32,
    pub whirls: u32,
    pub mutual_pairs: u32,
}
