//! Combinatorial representation of simple topological graphs.
//!
//! A drawing is stored as its planarization: a plane graph whose nodes are
//! the real vertices plus one degree-4 node per crossing, with a rotation
//! system (counterclockwise order of arc ends at every node) and a designated
//! outer face. All operations are value-semantic: surgery clones and returns
//! a new graph.
//!
//! Conventions used throughout:
//!   * rotations list outgoing darts counterclockwise;
//!   * the face walk successor of dart `d` is `rot_next(twin(d))`, so a walk
//!     keeps its face on the left of every dart;
//!   * the corner of gap `i` at a node (between `rot[i-1]` and `rot[i]`)
//!     belongs to the face of `rot[i-1]`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Planarization node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIx(pub u32);

/// Planarization arc (edge fragment) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcIx(pub u32);

/// A directed arc: `Dart(2*arc + side)`. Side 0 runs `ends[0] -> ends[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    pub fn new(arc: ArcIx, side: u8) -> Dart {
        Dart(arc.0 * 2 + side as u32)
    }
    pub fn arc(self) -> ArcIx {
        ArcIx(self.0 / 2)
    }
    pub fn side(self) -> u8 {
        (self.0 % 2) as u8
    }
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Real(VertexId),
    /// A proper crossing of the two (distinct) edges, stored as ordered pair.
    Cross(EdgeId, EdgeId),
}

impl NodeKind {
    pub fn cross(a: EdgeId, b: EdgeId) -> NodeKind {
        if a <= b {
            NodeKind::Cross(a, b)
        } else {
            NodeKind::Cross(b, a)
        }
    }
    pub fn is_cross(&self) -> bool {
        matches!(self, NodeKind::Cross(..))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct NodeRec {
    pub kind: NodeKind,
    /// Outgoing darts, counterclockwise.
    pub rot: Vec<Dart>,
}

#[derive(Debug, Clone)]
pub(crate) struct ArcRec {
    pub edge: EdgeId,
    pub ends: [NodeIx; 2],
}

#[derive(Debug, Clone)]
pub(crate) struct EdgeRec {
    pub u: VertexId,
    pub v: VertexId,
    /// Forward darts from `u` to `v`; `tail(frags[0]) = Real(u)`.
    pub frags: Vec<Dart>,
}

#[derive(Clone)]
pub struct TopoGraph {
    pub(crate) vertices: BTreeMap<VertexId, NodeIx>,
    pub(crate) edges: BTreeMap<EdgeId, EdgeRec>,
    pub(crate) nodes: Vec<Option<NodeRec>>,
    pub(crate) arcs: Vec<Option<ArcRec>>,
    /// A dart whose left face is the outer face. Invalid iff the graph has no arcs.
    pub(crate) outer: Option<Dart>,
}

impl fmt::Debug for TopoGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TopoGraph({} vertices, {} edges, {} crossings)",
            self.vertices.len(),
            self.edges.len(),
            self.crossing_nodes().count()
        )
    }
}

/// One face of the planarization: the walk lists darts in face order
/// (face on the left of each dart).
#[derive(Debug, Clone)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

/// All faces of a planarization, with a dart -> face index map.
#[derive(Debug, Clone)]
pub struct Faces {
    pub walks: Vec<FaceWalk>,
    face_of: BTreeMap<Dart, usize>,
    pub outer: usize,
}

impl Faces {
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[&d]
    }
    pub fn count(&self) -> usize {
        self.walks.len()
    }
}

/// Report-valued validation: empty iff every structural invariant holds.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
    pub(crate) fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "- {v}")?;
            }
            Ok(())
        }
    }
}

impl TopoGraph {
    pub fn empty() -> TopoGraph {
        TopoGraph {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            nodes: Vec::new(),
            arcs: Vec::new(),
            outer: None,
        }
    }

    // ------------------------------------------------------------------
    // Basic accessors
    // ------------------------------------------------------------------

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let r = &self.edges[&e];
        (r.u, r.v)
    }

    pub fn has_edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edges
            .iter()
            .find(|(_, r)| (r.u, r.v) == (a, b) || (r.u, r.v) == (b, a))
            .map(|(id, _)| *id)
    }

    pub fn vertex_node(&self, v: VertexId) -> NodeIx {
        self.vertices[&v]
    }

    pub fn node_kind(&self, n: NodeIx) -> &NodeKind {
        &self.nodes[n.0 as usize].as_ref().expect("live node").kind
    }

    pub fn rotation(&self, n: NodeIx) -> &[Dart] {
        &self.nodes[n.0 as usize].as_ref().expect("live node").rot
    }

    pub fn arc_edge(&self, a: ArcIx) -> EdgeId {
        self.arcs[a.0 as usize].as_ref().expect("live arc").edge
    }

    pub fn tail(&self, d: Dart) -> NodeIx {
        let a = self.arcs[d.arc().0 as usize].as_ref().expect("live arc");
        a.ends[d.side() as usize]
    }

    pub fn head(&self, d: Dart) -> NodeIx {
        self.tail(d.twin())
    }

    pub fn live_darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.arcs.iter().enumerate().flat_map(|(i, a)| {
            a.as_ref()
                .map(|_| {
                    [
                        Dart::new(ArcIx(i as u32), 0),
                        Dart::new(ArcIx(i as u32), 1),
                    ]
                })
                .into_iter()
                .flatten()
        })
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = NodeIx> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_some())
            .map(|(i, _)| NodeIx(i as u32))
    }

    pub fn crossing_nodes(&self) -> impl Iterator<Item = NodeIx> + '_ {
        self.live_nodes()
            .filter(move |n| self.node_kind(*n).is_cross())
    }

    /// Edges crossing at node `n`.
    pub fn crossing_pair(&self, n: NodeIx) -> (EdgeId, EdgeId) {
        match self.node_kind(n) {
            NodeKind::Cross(a, b) => (*a, *b),
            NodeKind::Real(_) => panic!("not a crossing node"),
        }
    }

    /// Forward darts of `e`, from u to v.
    pub fn fragments(&self, e: EdgeId) -> &[Dart] {
        &self.edges[&e].frags
    }

    /// Crossing nodes along `e`, in order from u to v.
    pub fn crossings_along(&self, e: EdgeId) -> Vec<NodeIx> {
        let fr = self.fragments(e);
        fr.iter()
            .take(fr.len().saturating_sub(1))
            .map(|d| self.head(*d))
            .collect()
    }

    /// Number of crossings on `e`.
    pub fn crossing_count(&self, e: EdgeId) -> usize {
        self.fragments(e).len() - 1
    }

    /// Total number of crossings in the drawing.
    pub fn total_crossings(&self) -> usize {
        self.crossing_nodes().count()
    }

    /// Set of unordered edge pairs that cross, with multiplicity.
    pub fn crossing_pairs(&self) -> BTreeMap<(EdgeId, EdgeId), usize> {
        let mut m = BTreeMap::new();
        for n in self.crossing_nodes() {
            let (a, b) = self.crossing_pair(n);
            *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        m
    }

    /// The labeled abstract edge set.
    pub fn abstract_edge_set(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges
            .values()
            .map(|r| (r.u.min(r.v), r.u.max(r.v)))
            .collect()
    }

    pub fn rot_position(&self, d: Dart) -> usize {
        let n = self.tail(d);
        self.rotation(n)
            .iter()
            .position(|x| *x == d)
            .expect("dart in rotation")
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let n = self.tail(d);
        let rot = self.rotation(n);
        let i = self.rot_position(d);
        rot[(i + 1) % rot.len()]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        let n = self.tail(d);
        let rot = self.rotation(n);
        let i = self.rot_position(d);
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Face walk successor: the face stays on the left of every dart
    /// (rotations are counterclockwise).
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_prev(d.twin())
    }

    // ------------------------------------------------------------------
    // Faces
    // ------------------------------------------------------------------

    /// Computes all face walks from the rotation system.
    /// Fails only if the graph has no arcs at all.
    pub fn faces(&self) -> Result<Faces, Error> {
        let outer_dart = self.outer.ok_or(Error::InvalidGraph(
            "graph has no arcs; faces undefined".into(),
        ))?;
        let mut face_of = BTreeMap::new();
        let mut walks = Vec::new();
        for d0 in self.live_darts() {
            if face_of.contains_key(&d0) {
                continue;
            }
            let idx = walks.len();
            let mut walk = Vec::new();
            let mut d = d0;
            loop {
                face_of.insert(d, idx);
                walk.push(d);
                d = self.face_next(d);
                if d == d0 {
                    break;
                }
                if walk.len() > 4 * self.arcs.len() + 4 {
                    return Err(Error::InvalidGraph("face walk does not close".into()));
                }
            }
            walks.push(FaceWalk { darts: walk });
        }
        let outer = face_of[&outer_dart];
        Ok(Faces {
            walks,
            face_of,
            outer,
        })
    }

    /// Face of the corner at gap `i` of node `n` (between `rot[i-1]` and `rot[i]`).
    pub fn corner_face(&self, faces: &Faces, n: NodeIx, gap: usize) -> usize {
        let rot = self.rotation(n);
        assert!(!rot.is_empty(), "corner of isolated node");
        let prev = rot[(gap + rot.len() - 1) % rot.len()];
        faces.face_of(prev)
    }

    /// All corners (gap indices) of node `n` lying on face `f`, in rotation order.
    pub fn corners_at(&self, faces: &Faces, n: NodeIx, f: usize) -> Vec<usize> {
        let rot = self.rotation(n);
        (0..rot.len())
            .filter(|&g| self.corner_face(faces, n, g) == f)
            .collect()
    }

    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        // vertex map
        for (v, n) in &self.vertices {
            match self.nodes.get(n.0 as usize).and_then(|x| x.as_ref()) {
                Some(rec) => {
                    if rec.kind != NodeKind::Real(*v) {
                        rep.push(format!("{v} maps to node of wrong kind"));
                    }
                }
                None => rep.push(format!("{v} maps to dead node")),
            }
        }
        // abstract graph: no loops, no parallels
        let mut seen_pairs = BTreeSet::new();
        for (e, r) in &self.edges {
            if r.u == r.v {
                rep.push(format!("{e} is a self-loop"));
            }
            let key = (r.u.min(r.v), r.u.max(r.v));
            if !seen_pairs.insert(key) {
                rep.push(format!("parallel edge {e} between {} and {}", r.u, r.v));
            }
            if !self.vertices.contains_key(&r.u) || !self.vertices.contains_key(&r.v) {
                rep.push(format!("{e} references missing vertex"));
            }
        }
        // fragment paths
        for (e, r) in &self.edges {
            if r.frags.is_empty() {
                rep.push(format!("{e} has no fragments"));
                continue;
            }
            let mut ok = true;
            for d in &r.frags {
                match self.arcs.get(d.arc().0 as usize).and_then(|x| x.as_ref()) {
                    Some(a) if a.edge == *e => {}
                    _ => {
                        rep.push(format!("{e} fragment references wrong/dead arc"));
                        ok = false;
                    }
                }
            }
            if !ok {
                continue;
            }
            if self.tail(r.frags[0]) != self.vertices[&r.u]
                || self.head(*r.frags.last().unwrap()) != self.vertices[&r.v]
            {
                rep.push(format!("{e} fragment path does not join its endpoints"));
            }
            for w in r.frags.windows(2) {
                if self.head(w[0]) != self.tail(w[1]) {
                    rep.push(format!("{e} fragment path is not contiguous"));
                }
                let n = self.head(w[0]);
                match self.node_kind(n) {
                    NodeKind::Cross(a, b) if *a == *e || *b == *e => {}
                    _ => rep.push(format!("{e} passes through non-crossing interior node")),
                }
            }
        }
        // arcs belong to some edge's fragment list exactly once
        let mut arc_seen: BTreeMap<ArcIx, usize> = BTreeMap::new();
        for r in self.edges.values() {
            for d in &r.frags {
                *arc_seen.entry(d.arc()).or_insert(0) += 1;
            }
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.is_some() && arc_seen.get(&ArcIx(i as u32)) != Some(&1) {
                rep.push(format!("arc {i} not in exactly one fragment list"));
            }
        }
        // rotations
        let mut dart_count: BTreeMap<Dart, usize> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let Some(rec) = n else { continue };
            for d in &rec.rot {
                match self.arcs.get(d.arc().0 as usize).and_then(|x| x.as_ref()) {
                    Some(_) => {
                        if self.tail(*d) != NodeIx(i as u32) {
                            rep.push(format!("node {i} rotation lists dart with other tail"));
                        }
                    }
                    None => rep.push(format!("node {i} rotation lists dead arc")),
                }
                *dart_count.entry(*d).or_insert(0) += 1;
            }
        }
        for d in self.live_darts() {
            if dart_count.get(&d) != Some(&1) {
                rep.push(format!("dart {:?} not in exactly one rotation", d));
            }
        }
        if !rep.is_ok() {
            return rep; // deeper checks would panic
        }
        // crossing nodes: degree 4, proper, recorded by both edges
        for n in self.crossing_nodes() {
            let rot = self.rotation(n);
            let (ea, eb) = self.crossing_pair(n);
            if ea == eb {
                rep.push(format!("crossing node {:?} pairs an edge with itself", n));
            }
            if rot.len() != 4 {
                rep.push(format!("crossing node {:?} has degree {}", n, rot.len()));
                continue;
            }
            let edges_at: Vec<EdgeId> = rot.iter().map(|d| self.arc_edge(d.arc())).collect();
            if edges_at[0] != edges_at[2] || edges_at[1] != edges_at[3] {
                rep.push(format!(
                    "improper crossing at {:?}: same-edge fragments not opposite",
                    n
                ));
            }
            let mut set: Vec<EdgeId> = edges_at.clone();
            set.sort();
            set.dedup();
            if set != {
                let mut v = vec![ea, eb];
                v.sort();
                v
            } {
                rep.push(format!("crossing node {:?} hosts wrong edges", n));
            }
            for e in [ea, eb] {
                if !self.crossings_along(e).contains(&n) {
                    rep.push(format!("crossing node {:?} missing from {e} path", n));
                }
            }
        }
        // connectivity of the planarization
        let live: Vec<NodeIx> = self.live_nodes().collect();
        if !live.is_empty() {
            let mut seen = BTreeSet::new();
            let mut q = VecDeque::new();
            seen.insert(live[0]);
            q.push_back(live[0]);
            while let Some(n) = q.pop_front() {
                for d in self.rotation(n) {
                    let m = self.head(*d);
                    if seen.insert(m) {
                        q.push_back(m);
                    }
                }
            }
            if seen.len() != live.len() {
                rep.push("planarization is disconnected");
            } else {
                // Euler relation (only meaningful when connected)
                let n_cnt = live.len() as i64;
                let a_cnt = self.arcs.iter().filter(|a| a.is_some()).count() as i64;
                if a_cnt > 0 {
                    match self.faces() {
                        Ok(f) => {
                            let f_cnt = f.count() as i64;
                            if n_cnt - a_cnt + f_cnt != 2 {
                                rep.push(format!(
                                    "Euler relation violated: {n_cnt} - {a_cnt} + {f_cnt} != 2"
                                ));
                            }
                        }
                        Err(e) => rep.push(format!("face computation failed: {e}")),
                    }
                }
            }
        }
        if let Some(o) = self.outer {
            if self
                .arcs
                .get(o.arc().0 as usize)
                .and_then(|x| x.as_ref())
                .is_none()
            {
                rep.push("outer dart is dead");
            }
        } else if self.arcs.iter().any(|a| a.is_some()) {
            rep.push("outer dart missing");
        }
        rep
    }

}

/// Canonical structure used for equality tests and serialization of the
/// combinatorial form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertices: Vec<VertexId>,
    /// edge -> (u, v)
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
    /// Per edge: crossing sequence from u to v, entries `(other_edge, index_on_other, sign)`.
    /// `sign` is +1 if the partner edge crosses left-to-right as seen when
    /// traveling this edge from u to v.
    pub crossings: Vec<(EdgeId, Vec<(EdgeId, usize, i8)>)>,
    /// Rotation at each real vertex: cyclic list of (edge, end) rotated to a
    /// canonical starting element.
    pub rotations: Vec<(VertexId, Vec<(EdgeId, u8)>)>,
    /// Outer face signature: sorted list of (edge, fragment, side) on the walk.
    pub outer_face: Vec<(EdgeId, usize, u8)>,
}

impl TopoGraph {
    fn dart_label(&self, d: Dart) -> (EdgeId, usize, u8) {
        let e = self.arc_edge(d.arc());
        let frags = self.fragments(e);
        let (i, fwd) = frags
            .iter()
            .enumerate()
            .find_map(|(i, fd)| {
                if *fd == d {
                    Some((i, 1))
                } else if fd.twin() == d {
                    Some((i, 0))
                } else {
                    None
                }
            })
            .expect("dart on its edge");
        (e, i, fwd)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let vertices: Vec<VertexId> = self.vertices.keys().copied().collect();
        let edges: Vec<(EdgeId, VertexId, VertexId)> = self
            .edges
            .iter()
            .map(|(e, r)| (*e, r.u, r.v))
            .collect();
        let mut crossings = Vec::new();
        for (e, _r) in &self.edges {
            let mut seq = Vec::new();
            for (_i, n) in self.crossings_along(*e).iter().enumerate() {
                let (a, b) = self.crossing_pair(*n);
                let other = if a == *e { b } else { a };
                let pos_on_other = self
                    .crossings_along(other)
                    .iter()
                    .position(|m| m == n)
                    .expect("mutual crossing");
                // orientation: at the crossing node rotation is [d0,d1,d2,d3]
                // with d0,d2 on one edge. Find our outgoing (continuing) dart
                // and see whether the partner's continuing dart is rot-next
                // (partner leaves to our left => sign +1) or rot-prev.
                let rot = self.rotation(*n);
                let our_in = self
                    .fragments(*e)
                    .iter()
                    .find(|d| self.head(**d) == *n)
                    .copied()
                    .unwrap();
                let our_out = self.rot_position(our_in.twin());
                let nxt = rot[(our_out + 1) % 4];
                let other_fwd_next = self
                    .fragments(other)
                    .iter()
                    .any(|d| *d == nxt);
                let sign = if other_fwd_next { 1i8 } else { -1i8 };
                seq.push((other, pos_on_other, sign));
            }
            crossings.push((*e, seq));
        }
        let mut rotations = Vec::new();
        for (v, n) in &self.vertices {
            let rot = self.rotation(*n);
            let mut lab: Vec<(EdgeId, u8)> = rot
                .iter()
                .map(|d| {
                    let e = self.arc_edge(d.arc());
                    let r = &self.edges[&e];
                    // end = 0 if this dart leaves the u endpoint of e
                    let end = if self.tail(*d) == self.vertices[&r.u] && r.frags[0] == *d {
                        0u8
                    } else {
                        1u8
                    };
                    (e, end)
                })
                .collect();
            // canonical rotation start: smallest element first
            if !lab.is_empty() {
                let min_i = (0..lab.len())
                    .min_by_key(|i| lab[*i])
                    .unwrap();
                lab.rotate_left(min_i);
            }
            rotations.push((*v, lab));
        }
        let outer_face = match self.faces() {
            Ok(f) => {
                let mut w: Vec<(EdgeId, usize, u8)> = f.walks[f.outer]
                    .darts
                    .iter()
                    .map(|d| self.dart_label(*d))
                    .collect();
                w.sort();
                w
            }
            Err(_) => Vec::new(),
        };
        CanonicalForm {
            vertices,
            edges,
            crossings,
            rotations,
            outer_face,
        }
    }

    pub fn structurally_eq(&self, other: &TopoGraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}
