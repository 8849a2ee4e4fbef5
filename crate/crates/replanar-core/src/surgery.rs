//! Edge-route surgery on planarizations.
//!
//! Removal dissolves the crossings of an edge (re-splicing the partner
//! edges) and insertion drives a "pen" through the current plane graph,
//! subdividing one arc per crossing. Between crossings the curve lives in a
//! single face, so a route is fully determined by its attachment gaps and the
//! sequence of crossed arc sides.

use std::collections::BTreeMap;

use crate::topo::{ArcIx, ArcRec, Dart, EdgeId, EdgeRec, NodeIx, NodeKind, NodeRec, TopoGraph, VertexId};
use crate::Error;

/// Where an edge end sat in its vertex rotation before removal.
#[derive(Debug, Clone)]
pub struct GapMemo {
    /// Rotation neighbors of the removed end dart (None if the vertex had degree 1).
    pub pred: Option<Dart>,
    pub succ: Option<Dart>,
}

#[derive(Debug, Clone)]
pub struct RemovalInfo {
    pub u_gap: GapMemo,
    pub v_gap: GapMemo,
    /// Old dart -> surviving dart, for arcs spliced during crossing dissolution.
    pub dart_map: BTreeMap<Dart, Dart>,
    /// A surviving dart on the face that absorbed the removed edge's corridor,
    /// if any arc survives at all.
    pub channel_rep: Option<Dart>,
}

impl RemovalInfo {
    pub fn resolve(&self, mut d: Dart) -> Dart {
        while let Some(n) = self.dart_map.get(&d) {
            d = *n;
        }
        d
    }
    pub fn resolve_opt(&self, d: Option<Dart>) -> Option<Dart> {
        d.map(|x| self.resolve(x))
    }
}

impl TopoGraph {
    fn alloc_node(&mut self, rec: NodeRec) -> NodeIx {
        self.nodes.push(Some(rec));
        NodeIx(self.nodes.len() as u32 - 1)
    }

    fn alloc_arc(&mut self, rec: ArcRec) -> ArcIx {
        self.arcs.push(Some(rec));
        ArcIx(self.arcs.len() as u32 - 1)
    }

    pub(crate) fn node_mut(&mut self, n: NodeIx) -> &mut NodeRec {
        self.nodes[n.0 as usize].as_mut().expect("live node")
    }

    /// End dart of `e` at its endpoint `v` (pointing away from `v`).
    pub fn edge_dart_at(&self, e: EdgeId, v: VertexId) -> Dart {
        let r = &self.edges[&e];
        if r.u == v {
            r.frags[0]
        } else if r.v == v {
            r.frags.last().unwrap().twin()
        } else {
            panic!("{e} not incident to {v}");
        }
    }

    /// Removes the drawing of `e` entirely: its crossings are dissolved
    /// (partner edges re-spliced) and the edge record dropped. Returns the
    /// bookkeeping needed to re-insert a replacement route.
    pub fn remove_edge_route(&mut self, e: EdgeId) -> Result<RemovalInfo, Error> {
        let rec = self
            .edges
            .get(&e)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown edge {e}")))?
            .clone();
        let old_faces = self.faces().ok();
        // Remember the outer walk and the channel face walk for representative fixes.
        let outer_walk: Vec<Dart> = old_faces
            .as_ref()
            .map(|f| f.walks[f.outer].darts.clone())
            .unwrap_or_default();
        let channel_walk: Vec<Dart> = old_faces
            .as_ref()
            .map(|f| f.walks[f.face_of(rec.frags[0])].darts.clone())
            .unwrap_or_default();

        let gap_of = |g: &TopoGraph, v: VertexId| -> GapMemo {
            let d = g.edge_dart_at(e, v);
            let n = g.vertex_node(v);
            let rot = g.rotation(n);
            if rot.len() <= 1 {
                GapMemo {
                    pred: None,
                    succ: None,
                }
            } else {
                let i = g.rot_position(d);
                GapMemo {
                    pred: Some(rot[(i + rot.len() - 1) % rot.len()]),
                    succ: Some(rot[(i + 1) % rot.len()]),
                }
            }
        };
        let u_gap = gap_of(self, rec.u);
        let v_gap = gap_of(self, rec.v);

        let mut dart_map: BTreeMap<Dart, Dart> = BTreeMap::new();
        let resolve = |m: &BTreeMap<Dart, Dart>, mut d: Dart| {
            while let Some(n) = m.get(&d) {
                d = *n;
            }
            d
        };

        // Dissolve each crossing of e.
        let cross_nodes = self.crossings_along(e);
        for c in cross_nodes {
            let (a, b) = self.crossing_pair(c);
            let other = if a == e { b } else { a };
            // Partner fragments around c (current).
            let frags = self.edges[&other].frags.clone();
            let j = frags
                .iter()
                .position(|d| self.head(*d) == c)
                .expect("crossing on partner path");
            let din = frags[j]; // tail p -> c
            let dout = frags[j + 1]; // c -> q
            let p = self.tail(din);
            let q = self.head(dout);
            let merged = self.alloc_arc(ArcRec {
                edge: other,
                ends: [p, q],
            });
            let m_fwd = Dart::new(merged, 0);
            // rotation replacements at p and q
            let pi = self.rot_position(din);
            self.node_mut(p).rot[pi] = m_fwd;
            let qi = self.rot_position(dout.twin());
            self.node_mut(q).rot[qi] = m_fwd.twin();
            // fragment list
            let er = self.edges.get_mut(&other).unwrap();
            er.frags.splice(j..j + 2, [m_fwd]);
            dart_map.insert(din, m_fwd);
            dart_map.insert(dout.twin(), m_fwd.twin());
            // drop node and the two partner arcs; e's own arcs die below
            self.arcs[din.arc().0 as usize] = None;
            self.arcs[dout.arc().0 as usize] = None;
            self.nodes[c.0 as usize] = None;
        }

        // Remove e's end darts from vertex rotations, then its arcs.
        for (v, d0) in [(rec.u, rec.frags[0]), (rec.v, rec.frags.last().unwrap().twin())] {
            let n = self.vertex_node(v);
            let i = self.rot_position(d0);
            self.node_mut(n).rot.remove(i);
        }
        for d in &rec.frags {
            self.arcs[d.arc().0 as usize] = None;
        }
        self.edges.remove(&e);

        // Fix representatives.
        let surviving = |g: &TopoGraph, walk: &[Dart], m: &BTreeMap<Dart, Dart>| -> Option<Dart> {
            walk.iter().map(|d| resolve(m, *d)).find(|d| {
                g.arcs
                    .get(d.arc().0 as usize)
                    .and_then(|x| x.as_ref())
                    .is_some()
            })
        };
        let channel_rep = surviving(self, &channel_walk, &dart_map);
        if let Some(o) = self.outer {
            let o2 = resolve(&dart_map, o);
            let alive = self
                .arcs
                .get(o2.arc().0 as usize)
                .and_then(|x| x.as_ref())
                .is_some();
            self.outer = if alive {
                Some(o2)
            } else {
                // outer face merged into the channel
                surviving(self, &outer_walk, &dart_map).or(channel_rep)
            };
        }
        Ok(RemovalInfo {
            u_gap,
            v_gap,
            dart_map,
            channel_rep,
        })
    }
}

impl TopoGraph {
    /// Re-keys an edge, updating arcs and crossing-node labels.
    pub fn rename_edge(&mut self, from: EdgeId, to: EdgeId) -> Result<(), Error> {
        if self.edges.contains_key(&to) {
            return Err(Error::InvalidGraph(format!("{to} already exists")));
        }
        let rec = self
            .edges
            .remove(&from)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown edge {from}")))?;
        for a in self.arcs.iter_mut().flatten() {
            if a.edge == from {
                a.edge = to;
            }
        }
        for n in self.nodes.iter_mut().flatten() {
            if let crate::topo::NodeKind::Cross(a, b) = &mut n.kind {
                let (mut x, mut y) = (*a, *b);
                if x == from {
                    x = to;
                }
                if y == from {
                    y = to;
                }
                n.kind = crate::topo::NodeKind::cross(x, y);
            }
        }
        self.edges.insert(to, rec);
        Ok(())
    }
}

/// Pen position: a gap at an attached node, or floating at an isolated node.
#[derive(Debug, Clone)]
pub enum PenPos {
    Corner { node: NodeIx, gap: usize },
    Floating { node: NodeIx, face_rep: Dart },
}

/// Incrementally inserts the route of one edge.
pub struct Pen<'g> {
    pub g: &'g mut TopoGraph,
    edge: EdgeId,
    start_vertex: VertexId,
    end_vertex: VertexId,
    pos: PenPos,
    /// Node at which the partial path currently ends (the start vertex until
    /// the first arc is placed).
    path_end: NodeIx,
    started: bool,
    frags: Vec<Dart>,
    /// Isolated nodes and a dart on their containing face.
    pub floating: BTreeMap<NodeIx, Dart>,
}

/// Where to attach a route end in a vertex rotation.
#[derive(Debug, Clone)]
pub enum Attach {
    /// Insert directly after this dart (which must be at the vertex).
    After(Dart),
    /// Insert directly before this dart.
    Before(Dart),
    /// Use the remembered gap of a removed end (pred/succ pair).
    Gap(GapMemo),
    /// The vertex is isolated; it sits on the face of this dart.
    Floating(Dart),
}

impl<'g> Pen<'g> {
    pub fn new(
        g: &'g mut TopoGraph,
        edge: EdgeId,
        start_vertex: VertexId,
        end_vertex: VertexId,
        start: Attach,
    ) -> Result<Pen<'g>, Error> {
        let n = g.vertex_node(start_vertex);
        let pos = match start {
            Attach::Floating(rep) => {
                if !g.rotation(n).is_empty() {
                    return Err(Error::UnrealizableRoute(
                        "floating start at attached vertex".into(),
                    ));
                }
                PenPos::Floating { node: n, face_rep: rep }
            }
            spec => {
                let gap = resolve_gap(g, n, &spec)?;
                PenPos::Corner { node: n, gap }
            }
        };
        Ok(Pen {
            g,
            edge,
            start_vertex,
            end_vertex,
            pos,
            path_end: n,
            started: false,
            frags: Vec::new(),
            floating: BTreeMap::new(),
        })
    }

    pub fn current_face(&self) -> Result<usize, Error> {
        let faces = self.g.faces()?;
        Ok(match &self.pos {
            PenPos::Corner { node, gap } => self.g.corner_face(&faces, *node, *gap),
            PenPos::Floating { face_rep, .. } => faces.face_of(*face_rep),
        })
    }

    /// True if `v` can be reached (a corner of the pen's face, or floating there).
    pub fn can_end_at(&self, v: VertexId) -> Result<bool, Error> {
        let faces = self.g.faces()?;
        let f = match &self.pos {
            PenPos::Corner { node, gap } => self.g.corner_face(&faces, *node, *gap),
            PenPos::Floating { face_rep, .. } => faces.face_of(*face_rep),
        };
        let n = self.g.vertex_node(v);
        if let Some(rep) = self.floating.get(&n) {
            return Ok(faces.face_of(*rep) == f);
        }
        if self.g.rotation(n).is_empty() {
            return Ok(false);
        }
        Ok(!self.g.corners_at(&faces, n, f).is_empty())
    }

    /// The sliver-side stretch: darts of the pen's face walk from the pen's
    /// corner up to (and including) `until`, or the whole relevant prefix for
    /// a corner target.
    fn stretch_to(&self, target: StretchTarget) -> Result<Vec<Dart>, Error> {
        let start = match &self.pos {
            PenPos::Corner { node, gap } => {
                let rot = self.g.rotation(*node);
                rot[(gap + rot.len() - 1) % rot.len()]
            }
            PenPos::Floating { .. } => return Ok(Vec::new()),
        };
        let mut out = Vec::new();
        let mut d = start;
        let limit = 4 * self.g.arcs.len() + 8;
        loop {
            out.push(d);
            match target {
                StretchTarget::Dart(x) => {
                    if d == x {
                        return Ok(out);
                    }
                }
                StretchTarget::Corner { node, gap } => {
                    // after traversing d, the walk passes corner pos(twin(d)) at head(d)
                    let h = self.g.head(d);
                    if h == node && self.g.rot_position(d.twin()) == gap {
                        return Ok(out);
                    }
                }
            }
            d = self.g.face_next(d);
            if out.len() > limit {
                return Err(Error::UnrealizableRoute(
                    "target not on pen's face walk".into(),
                ));
            }
        }
    }

    fn after_split_fixups(&mut self, stretch: &[Dart], p_fwd: Dart) {
        if let Some(o) = self.g.outer {
            if stretch.contains(&o) {
                self.g.outer = Some(p_fwd);
            }
        }
        // Floating nodes always stay on the non-sliver side; their reps may
        // sit on the sliver stretch, in which case repoint them to the new arc.
        let keys: Vec<NodeIx> = self.floating.keys().copied().collect();
        for k in keys {
            let rep = self.floating[&k];
            if stretch.contains(&rep) {
                self.floating.insert(k, p_fwd);
            }
        }
    }

    /// Crosses the arc of `x` from its left face (which must be the pen's
    /// current face). Returns the new crossing node.
    pub fn cross(&mut self, x: Dart) -> Result<NodeIx, Error> {
        let faces = self.g.faces().ok();
        if let Some(f) = &faces {
            let pf = match &self.pos {
                PenPos::Corner { node, gap } => self.g.corner_face(f, *node, *gap),
                PenPos::Floating { face_rep, .. } => f.face_of(*face_rep),
            };
            if f.face_of(x) != pf {
                return Err(Error::UnrealizableRoute(format!(
                    "cannot cross {:?}: not on pen's face",
                    x
                )));
            }
        }
        let stretch = match &self.pos {
            PenPos::Corner { .. } => self.stretch_to(StretchTarget::Dart(x))?,
            PenPos::Floating { .. } => Vec::new(),
        };
        let host_edge = self.g.arc_edge(x.arc());
        if host_edge == self.edge {
            return Err(Error::UnrealizableRoute("route crosses itself".into()));
        }
        let t = self.g.tail(x);
        let h = self.g.head(x);
        // new crossing node
        let c = self.g.alloc_node(NodeRec {
            kind: NodeKind::cross(self.edge, host_edge),
            rot: Vec::new(),
        });
        let a1 = self.g.alloc_arc(ArcRec {
            edge: host_edge,
            ends: [t, c],
        });
        let a2 = self.g.alloc_arc(ArcRec {
            edge: host_edge,
            ends: [c, h],
        });
        let a1t = Dart::new(a1, 0); // t -> c
        let a1c = Dart::new(a1, 1); // c -> t
        let a2c = Dart::new(a2, 0); // c -> h
        let a2h = Dart::new(a2, 1); // h -> c
        // splice host rotations
        let ti = self.g.rot_position(x);
        self.g.node_mut(t).rot[ti] = a1t;
        let hi = self.g.rot_position(x.twin());
        self.g.node_mut(h).rot[hi] = a2h;
        // host fragment list
        let er = self.g.edges.get_mut(&host_edge).unwrap();
        let (j, fwd) = er
            .frags
            .iter()
            .enumerate()
            .find_map(|(j, d)| {
                if *d == x {
                    Some((j, true))
                } else if d.twin() == x {
                    Some((j, false))
                } else {
                    None
                }
            })
            .expect("host dart on host edge");
        if fwd {
            er.frags.splice(j..j + 1, [a1t, a2c]);
        } else {
            er.frags.splice(j..j + 1, [a2h, a1c]);
        }
        self.g.arcs[x.arc().0 as usize] = None;
        // pen arc from path end to c
        let p = self.g.alloc_arc(ArcRec {
            edge: self.edge,
            ends: [self.path_end, c],
        });
        let p_fwd = Dart::new(p, 0);
        let p_back = Dart::new(p, 1);
        // rotation at c, counterclockwise as seen with x pointing "up" and the
        // pen passing left to right: [p_out, a2c, p_in, a1c]; p_out is added by
        // the next step, so the vector starts at a2c and the pen's corner is
        // gap 0 (between a1c and a2c).
        self.g.node_mut(c).rot.extend([a2c, p_back, a1c]);
        self.attach_path_arc(p_fwd)?;
        // The sliver cut off by the new arc holds the hugged stretch plus the
        // tail piece of x; the outer face and floating nodes stay on the far
        // side. Membership is checked against pre-subdivision dart ids.
        let mut st = stretch;
        st.push(x);
        let remap = |d: Dart| -> Dart {
            if d == x {
                a1t
            } else if d == x.twin() {
                a2h
            } else {
                d
            }
        };
        if let Some(o) = self.g.outer {
            self.g.outer = Some(if st.contains(&o) { p_fwd } else { remap(o) });
        }
        let keys: Vec<NodeIx> = self.floating.keys().copied().collect();
        for k in keys {
            let rep = self.floating[&k];
            let new_rep = if st.contains(&rep) { p_fwd } else { remap(rep) };
            self.floating.insert(k, new_rep);
        }
        self.frags.push(p_fwd);
        self.path_end = c;
        self.pos = PenPos::Corner { node: c, gap: 0 };
        self.started = true;
        Ok(c)
    }

    /// Finds the unique crossable dart of `host` on the pen's face.
    pub fn crossable_dart(&self, host: EdgeId) -> Result<Dart, Error> {
        let faces = self.g.faces()?;
        let pf = match &self.pos {
            PenPos::Corner { node, gap } => self.g.corner_face(&faces, *node, *gap),
            PenPos::Floating { face_rep, .. } => faces.face_of(*face_rep),
        };
        let cands: Vec<Dart> = self.g.edges[&host]
            .frags
            .iter()
            .flat_map(|d| [*d, d.twin()])
            .filter(|d| faces.face_of(*d) == pf)
            .collect();
        match cands.len() {
            1 => Ok(cands[0]),
            0 => Err(Error::UnrealizableRoute(format!(
                "{host} does not border the pen's face"
            ))),
            _ => Err(Error::UnrealizableRoute(format!(
                "{host} borders the pen's face on {} sides; route ambiguous",
                cands.len()
            ))),
        }
    }

    pub fn cross_edge_here(&mut self, host: EdgeId) -> Result<NodeIx, Error> {
        let d = self.crossable_dart(host)?;
        self.cross(d)
    }

    /// One sweep step around `w`: crosses the arc-end adjacent to the pen's
    /// corner at `w` on the side away from `avoid`. Returns the crossed edge.
    pub fn sweep_step(&mut self, w: NodeIx, avoid: EdgeId) -> Result<EdgeId, Error> {
        let faces = self.g.faces()?;
        let pf = match &self.pos {
            PenPos::Corner { node, gap } => self.g.corner_face(&faces, *node, *gap),
            PenPos::Floating { face_rep, .. } => faces.face_of(*face_rep),
        };
        let corners = self.g.corners_at(&faces, w, pf);
        if corners.len() != 1 {
            return Err(Error::UnrealizableRoute(format!(
                "sweep: pen face has {} corners at node {:?}",
                corners.len(),
                w
            )));
        }
        let gap = corners[0];
        let rot = self.g.rotation(w).to_vec();
        let d_prev = rot[(gap + rot.len() - 1) % rot.len()];
        let d_next = rot[gap % rot.len()];
        let prev_is_avoid = self.g.arc_edge(d_prev.arc()) == avoid;
        let next_is_avoid = self.g.arc_edge(d_next.arc()) == avoid;
        let target = if prev_is_avoid && !next_is_avoid {
            // sweep counterclockwise: cross d_next from its right side
            d_next.twin()
        } else if next_is_avoid && !prev_is_avoid {
            d_prev
        } else {
            return Err(Error::UnrealizableRoute(
                "sweep corner not adjacent to exactly one end of the avoided edge".into(),
            ));
        };
        let host = self.g.arc_edge(target.arc());
        if host == avoid {
            return Err(Error::UnrealizableRoute(
                "sweep would cross the avoided edge".into(),
            ));
        }
        self.cross(target)?;
        Ok(host)
    }

    fn attach_path_arc(&mut self, p_fwd: Dart) -> Result<(), Error> {
        match self.pos.clone() {
            PenPos::Corner { node, gap } => {
                self.g.node_mut(node).rot.insert(gap, p_fwd);
            }
            PenPos::Floating { node, .. } => {
                self.g.node_mut(node).rot.push(p_fwd);
                self.floating.remove(&node);
            }
        }
        Ok(())
    }

    /// Ends the route at `end_vertex`, attaching per `attach`.
    pub fn end(mut self, attach: Attach) -> Result<Vec<Dart>, Error> {
        let vn = self.g.vertex_node(self.end_vertex);
        let faces = self.g.faces().ok();
        let pen_face = faces.as_ref().map(|f| match &self.pos {
            PenPos::Corner { node, gap } => self.g.corner_face(f, *node, *gap),
            PenPos::Floating { face_rep, .. } => f.face_of(*face_rep),
        });
        enum EndKind {
            Gap(usize),
            Float,
        }
        let (end_kind, stretch) = match &attach {
            Attach::Floating(_) => {
                let rep = self
                    .floating
                    .get(&vn)
                    .copied()
                    .ok_or_else(|| Error::UnrealizableRoute("end vertex is not floating".into()))?;
                if let (Some(f), Some(pf)) = (&faces, pen_face) {
                    if f.face_of(rep) != pf {
                        return Err(Error::UnrealizableRoute(
                            "end vertex floats in a different face".into(),
                        ));
                    }
                }
                (EndKind::Float, Vec::new())
            }
            spec => {
                let gap = resolve_gap(self.g, vn, spec)?;
                if let (Some(f), Some(pf)) = (&faces, pen_face) {
                    if self.g.corner_face(f, vn, gap) != pf {
                        return Err(Error::UnrealizableRoute(
                            "end gap is not on the pen's face".into(),
                        ));
                    }
                }
                let stretch = match &self.pos {
                    PenPos::Corner { .. } => {
                        self.stretch_to(StretchTarget::Corner { node: vn, gap })?
                    }
                    PenPos::Floating { .. } => Vec::new(),
                };
                (EndKind::Gap(gap), stretch)
            }
        };
        let p = self.g.alloc_arc(ArcRec {
            edge: self.edge,
            ends: [self.path_end, vn],
        });
        let p_fwd = Dart::new(p, 0);
        match end_kind {
            EndKind::Gap(gap) => self.g.node_mut(vn).rot.insert(gap, Dart::new(p, 1)),
            EndKind::Float => {
                self.g.node_mut(vn).rot.push(Dart::new(p, 1));
                self.floating.remove(&vn);
            }
        }
        match self.pos.clone() {
            PenPos::Corner { node, gap } => {
                self.g.node_mut(node).rot.insert(gap, p_fwd);
            }
            PenPos::Floating { node, .. } => {
                self.g.node_mut(node).rot.push(p_fwd);
                self.floating.remove(&node);
            }
        }
        self.after_split_fixups(&stretch, p_fwd);
        self.frags.push(p_fwd);
        let frags = self.frags.clone();
        self.g.edges.insert(
            self.edge,
            EdgeRec {
                u: self.start_vertex,
                v: self.end_vertex,
                frags: frags.clone(),
            },
        );
        if self.g.outer.is_none() {
            self.g.outer = Some(p_fwd);
        }
        Ok(frags)
    }

    /// Ends at `end_vertex` choosing the first corner of the pen's face at
    /// that vertex (walking the face forward from the pen's position).
    pub fn end_at_vertex_auto(self) -> Result<Vec<Dart>, Error> {
        let vn = self.g.vertex_node(self.end_vertex);
        if self.floating.contains_key(&vn) {
            let rep = self.floating[&vn];
            return self.end(Attach::Floating(rep));
        }
        let faces = self.g.faces()?;
        let pf = match &self.pos {
            PenPos::Corner { node, gap } => self.g.corner_face(&faces, *node, *gap),
            PenPos::Floating { face_rep, .. } => faces.face_of(*face_rep),
        };
        // walk the face forward from the pen corner (or from any dart if floating)
        let start = match &self.pos {
            PenPos::Corner { node, gap } => {
                let rot = self.g.rotation(*node);
                rot[(gap + rot.len() - 1) % rot.len()]
            }
            PenPos::Floating { face_rep, .. } => *face_rep,
        };
        let mut d = start;
        let limit = 4 * self.g.arcs.len() + 8;
        let mut steps = 0;
        loop {
            let h = self.g.head(d);
            if h == vn {
                let gap = self.g.rot_position(d.twin());
                debug_assert_eq!(self.g.corner_face(&faces, vn, gap), pf);
                let rot = self.g.rotation(vn);
                let before = rot[gap % rot.len()];
                return self.end(Attach::Before(before));
            }
            d = self.g.face_next(d);
            steps += 1;
            if steps > limit {
                return Err(Error::UnrealizableRoute(format!(
                    "end vertex {} not on the pen's face",
                    self.end_vertex
                )));
            }
        }
    }
}

enum StretchTarget {
    Dart(Dart),
    Corner { node: NodeIx, gap: usize },
}

fn resolve_gap(g: &TopoGraph, n: NodeIx, spec: &Attach) -> Result<usize, Error> {
    let rot = g.rotation(n);
    match spec {
        Attach::After(d) => {
            let i = rot
                .iter()
                .position(|x| x == d)
                .ok_or_else(|| Error::UnrealizableRoute("attach dart not at vertex".into()))?;
            Ok(i + 1)
        }
        Attach::Before(d) => {
            let i = rot
                .iter()
                .position(|x| x == d)
                .ok_or_else(|| Error::UnrealizableRoute("attach dart not at vertex".into()))?;
            Ok(i)
        }
        Attach::Gap(memo) => match (&memo.pred, &memo.succ) {
            (Some(p), _) if rot.contains(p) => {
                Ok(rot.iter().position(|x| x == p).unwrap() + 1)
            }
            (_, Some(s)) if rot.contains(s) => Ok(rot.iter().position(|x| x == s).unwrap()),
            (None, None) if rot.is_empty() => Err(Error::UnrealizableRoute(
                "gap memo refers to isolated vertex; use Floating".into(),
            )),
            _ => Err(Error::UnrealizableRoute(
                "gap memo darts no longer at vertex".into(),
            )),
        },
        Attach::Floating(_) => unreachable!(),
    }
}

/// Direct construction of planarizations (used by geometry ingestion and the
/// untangling rebuild).
pub struct RawBuilder {
    pub g: TopoGraph,
}

impl Default for RawBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl RawBuilder {
    pub fn new() -> RawBuilder {
        RawBuilder {
            g: TopoGraph::empty(),
        }
    }

    pub fn add_vertex(&mut self, v: VertexId) -> NodeIx {
        let n = self.g.alloc_node(NodeRec {
            kind: NodeKind::Real(v),
            rot: Vec::new(),
        });
        self.g.vertices.insert(v, n);
        n
    }

    pub fn add_cross(&mut self, e1: EdgeId, e2: EdgeId) -> NodeIx {
        self.g.alloc_node(NodeRec {
            kind: NodeKind::cross(e1, e2),
            rot: Vec::new(),
        })
    }

    pub fn add_arc(&mut self, edge: EdgeId, a: NodeIx, b: NodeIx) -> ArcIx {
        self.g.alloc_arc(ArcRec { edge, ends: [a, b] })
    }

    pub fn set_rotation(&mut self, n: NodeIx, rot: Vec<Dart>) {
        self.g.node_mut(n).rot = rot;
    }

    pub fn declare_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId, frags: Vec<Dart>) {
        self.g.edges.insert(e, EdgeRec { u, v, frags });
    }

    pub fn set_outer(&mut self, d: Dart) {
        self.g.outer = Some(d);
    }

    pub fn finish(self) -> TopoGraph {
        self.g
    }
}
