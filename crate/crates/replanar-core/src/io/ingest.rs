//! Exact ingestion of polyline drawings into planarizations.
//!
//! All pairwise segment intersections are computed in rational arithmetic;
//! every touching configuration that is not a proper transversal crossing of
//! two edge interiors (or a shared endpoint) is rejected as degenerate.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::geom::{cmp_angle, is_transversal, seg_intersection, Pt, Q, SegInter};
use crate::surgery::RawBuilder;
use crate::topo::{Dart, EdgeId, NodeIx, TopoGraph, VertexId};
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct CrossEvent {
    /// Position along the edge: segment index and parameter within it.
    seg: usize,
    t: Q,
    p: Pt,
}

fn param_on_segment(a: &Pt, b: &Pt, p: &Pt) -> Q {
    let d = b.sub(a);
    if !d.x.is_zero() {
        (&p.x - &a.x) / d.x
    } else {
        (&p.y - &a.y) / d.y
    }
}

/// Local in/out directions of a polyline at a point on it.
fn local_dirs(poly: &[Pt], p: &Pt) -> Result<(Pt, Pt)> {
    for i in 0..poly.len() - 1 {
        let (a, b) = (&poly[i], &poly[i + 1]);
        if p == a {
            if i == 0 {
                return Err(Error::Degenerate("direction requested at endpoint".into()));
            }
            return Ok((poly[i - 1].sub(p), b.sub(p)));
        }
        if crate::geom::orient(a, b, p) == 0 {
            let t = param_on_segment(a, b, p);
            if t > Q::zero() && t < crate::geom::q(1) {
                return Ok((a.sub(p), b.sub(p)));
            }
        }
    }
    if p == poly.last().unwrap() {
        return Err(Error::Degenerate("direction requested at endpoint".into()));
    }
    Err(Error::Degenerate("point not on polyline".into()))
}

pub fn ingest_geometry(d: &super::GeometricDrawing) -> Result<TopoGraph> {
    // --- vertex sanity ---------------------------------------------------
    let mut coord_of: BTreeMap<VertexId, Pt> = BTreeMap::new();
    for (v, p) in &d.vertices {
        if coord_of.insert(*v, p.clone()).is_some() {
            return Err(Error::Degenerate(format!("duplicate vertex id {v}")));
        }
    }
    {
        let mut pts: Vec<&Pt> = coord_of.values().collect();
        pts.sort();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate("two vertices share a point".into()));
        }
    }
    // --- polyline sanity --------------------------------------------------
    for (e, u, v, poly) in &d.edges {
        if poly.len() < 2 {
            return Err(Error::Degenerate(format!("{e}: polyline too short")));
        }
        if poly[0] != coord_of[u] || poly[poly.len() - 1] != coord_of[v] {
            return Err(Error::Degenerate(format!(
                "{e}: polyline endpoints do not match vertex points"
            )));
        }
        for w in poly.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Degenerate(format!("{e}: zero-length segment")));
            }
        }
        // self-simplicity
        for i in 0..poly.len() - 1 {
            for j in i + 1..poly.len() - 1 {
                let inter = seg_intersection(&poly[i], &poly[i + 1], &poly[j], &poly[j + 1]);
                match inter {
                    SegInter::Empty => {}
                    SegInter::Point(p) => {
                        let adjacent = j == i + 1;
                        if adjacent && p == poly[j] {
                            continue;
                        }
                        return Err(Error::Degenerate(format!("{e}: polyline self-intersects")));
                    }
                    SegInter::Overlap => {
                        return Err(Error::Degenerate(format!("{e}: polyline overlaps itself")))
                    }
                }
            }
        }
        // edge through a vertex
        for (w, p) in &coord_of {
            if (w == u) || (w == v) {
                // interior passage through its own endpoint is a self-intersection,
                // caught below via events at t=0/t=end.
                continue;
            }
            for s in poly.windows(2) {
                if crate::geom::orient(&s[0], &s[1], p) == 0
                    && seg_intersection(&s[0], &s[1], p, p) == SegInter::Point(p.clone())
                {
                    return Err(Error::Degenerate(format!("{e} passes through vertex {w}")));
                }
            }
        }
    }
    // --- pairwise intersections -------------------------------------------
    let mut events: BTreeMap<EdgeId, Vec<CrossEvent>> = BTreeMap::new();
    for (e, ..) in &d.edges {
        events.insert(*e, Vec::new());
    }
    let mut point_pairs: BTreeMap<Pt, Vec<(EdgeId, EdgeId)>> = BTreeMap::new();
    for i in 0..d.edges.len() {
        for j in i + 1..d.edges.len() {
            let (e1, u1, v1, p1) = &d.edges[i];
            let (e2, u2, v2, p2) = &d.edges[j];
            let mut points: Vec<Pt> = Vec::new();
            for s in 0..p1.len() - 1 {
                for t in 0..p2.len() - 1 {
                    match seg_intersection(&p1[s], &p1[s + 1], &p2[t], &p2[t + 1]) {
                        SegInter::Empty => {}
                        SegInter::Overlap => {
                            return Err(Error::Degenerate(format!("{e1} and {e2} overlap")))
                        }
                        SegInter::Point(p) => {
                            if !points.contains(&p) {
                                points.push(p);
                            }
                        }
                    }
                }
            }
            let shared: Vec<VertexId> = [*u1, *v1]
                .into_iter()
                .filter(|w| w == u2 || w == v2)
                .collect();
            for p in points {
                if let Some(w) = shared.iter().find(|w| coord_of[w] == p) {
                    let _ = w;
                    continue; // meeting at the common endpoint
                }
                if coord_of.values().any(|vp| *vp == p) {
                    return Err(Error::Degenerate(format!(
                        "{e1} and {e2} cross at a vertex point"
                    )));
                }
                let d1 = local_dirs(p1, &p)?;
                let d2 = local_dirs(p2, &p)?;
                if !is_transversal((&d1.0, &d1.1), (&d2.0, &d2.1)) {
                    return Err(Error::Degenerate(format!(
                        "{e1} and {e2} touch tangentially"
                    )));
                }
                point_pairs.entry(p.clone()).or_default().push((*e1, *e2));
                // register events on both edges
                for (e, poly) in [(*e1, p1), (*e2, p2)] {
                    let mut placed = false;
                    for s in 0..poly.len() - 1 {
                        if crate::geom::orient(&poly[s], &poly[s + 1], &p) == 0 {
                            let t = param_on_segment(&poly[s], &poly[s + 1], &p);
                            if t >= Q::zero() && t <= crate::geom::q(1) {
                                // canonicalize joint hits to the later segment's t=0
                                let (cs, ct) = if t == crate::geom::q(1) && s + 2 < poly.len() {
                                    (s + 1, Q::zero())
                                } else {
                                    (s, t)
                                };
                                if (cs == 0 && ct.is_zero())
                                    || (cs == poly.len() - 2 && ct == crate::geom::q(1))
                                {
                                    return Err(Error::Degenerate(format!(
                                        "{e} is crossed at its endpoint"
                                    )));
                                }
                                events.get_mut(&e).unwrap().push(CrossEvent {
                                    seg: cs,
                                    t: ct,
                                    p: p.clone(),
                                });
                                placed = true;
                                break;
                            }
                        }
                    }
                    if !placed {
                        return Err(Error::InternalInvariant(
                            "intersection point not on polyline".into(),
                        ));
                    }
                }
            }
        }
    }
    for (p, pairs) in &point_pairs {
        if pairs.len() > 1 {
            return Err(Error::Degenerate(format!(
                "three or more arcs through one point ({},{})",
                p.x, p.y
            )));
        }
    }
    // --- build planarization ----------------------------------------------
    let mut b = RawBuilder::new();
    let mut vnode: BTreeMap<VertexId, NodeIx> = BTreeMap::new();
    for (v, _) in &d.vertices {
        vnode.insert(*v, b.add_vertex(*v));
    }
    // crossing nodes, keyed by point
    let mut cnode: BTreeMap<Pt, NodeIx> = BTreeMap::new();
    for (p, pairs) in &point_pairs {
        let (e1, e2) = pairs[0];
        cnode.insert(p.clone(), b.add_cross(e1, e2));
    }
    // arcs with their sub-polylines
    struct ArcGeom {
        fwd: Dart,
        poly: Vec<Pt>,
    }
    let mut arc_geoms: Vec<ArcGeom> = Vec::new();
    // node -> outgoing (dart, direction)
    let mut node_dirs: BTreeMap<NodeIx, Vec<(Dart, Pt)>> = BTreeMap::new();
    for (e, u, v, poly) in &d.edges {
        let mut evs = events[e].clone();
        evs.sort_by(|a, b| a.seg.cmp(&b.seg).then_with(|| a.t.cmp(&b.t)));
        for w in evs.windows(2) {
            if w[0].p == w[1].p {
                return Err(Error::Degenerate(format!(
                    "{e} crosses two edges at one point"
                )));
            }
        }
        // cut points: (seg, t, node, point)
        let mut cuts: Vec<(usize, Q, NodeIx, Pt)> = Vec::new();
        cuts.push((0, Q::zero(), vnode[u], poly[0].clone()));
        for ev in &evs {
            cuts.push((ev.seg, ev.t.clone(), cnode[&ev.p], ev.p.clone()));
        }
        cuts.push((
            poly.len() - 2,
            crate::geom::q(1),
            vnode[v],
            poly.last().unwrap().clone(),
        ));
        let mut frags: Vec<Dart> = Vec::new();
        for w in cuts.windows(2) {
            let (s0, _t0, n0, p0) = (&w[0].0, &w[0].1, w[0].2, &w[0].3);
            let (s1, _t1, n1, p1) = (&w[1].0, &w[1].1, w[1].2, &w[1].3);
            let mut sub: Vec<Pt> = vec![p0.clone()];
            for joint in (*s0 + 1)..=(*s1) {
                let jp = &poly[joint];
                if jp != sub.last().unwrap() && jp != p1 {
                    sub.push(jp.clone());
                }
            }
            if *p1 != *sub.last().unwrap() {
                sub.push(p1.clone());
            }
            let arc = b.add_arc(*e, n0, n1);
            let fwd = Dart::new(arc, 0);
            let dir0 = sub[1].sub(&sub[0]);
            let dir1 = sub[sub.len() - 2].sub(&sub[sub.len() - 1]);
            node_dirs.entry(n0).or_default().push((fwd, dir0));
            node_dirs.entry(n1).or_default().push((fwd.twin(), dir1));
            arc_geoms.push(ArcGeom {
                fwd,
                poly: sub,
            });
            frags.push(fwd);
        }
        b.declare_edge(*e, *u, *v, frags);
    }
    // rotations
    for (n, mut dirs) in node_dirs {
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                if cmp_angle(&dirs[i].1, &dirs[j].1) == std::cmp::Ordering::Equal {
                    return Err(Error::Degenerate(
                        "two arc ends leave a node in the same direction".into(),
                    ));
                }
            }
        }
        dirs.sort_by(|a, b| cmp_angle(&a.1, &b.1));
        b.set_rotation(n, dirs.into_iter().map(|(d, _)| d).collect());
    }
    // outer face: lowest point of the drawing
    let mut best: Option<(Pt, usize, usize)> = None; // point, arc index, point index
    for (ai, ag) in arc_geoms.iter().enumerate() {
        for (pi, p) in ag.poly.iter().enumerate() {
            let better = match &best {
                None => true,
                Some((bp, _, _)) => (&p.y, &p.x) < (&bp.y, &bp.x),
            };
            if better {
                best = Some((p.clone(), ai, pi));
            }
        }
    }
    if let Some((p, ai, pi)) = best {
        let ag = &arc_geoms[ai];
        let outer = if pi == 0 || pi == ag.poly.len() - 1 {
            // node point: all directions lie in the upper half plane, so the
            // downward gap wraps around the end of the sorted rotation.
            let n = if pi == 0 {
                b.g.tail(ag.fwd)
            } else {
                b.g.head(ag.fwd)
            };
            *b.g.rotation(n).last().expect("node has arcs")
        } else {
            let u1 = ag.poly[pi - 1].sub(&p);
            let u2 = ag.poly[pi + 1].sub(&p);
            if cmp_angle(&u1, &u2) == std::cmp::Ordering::Less {
                ag.fwd
            } else {
                ag.fwd.twin()
            }
        };
        b.set_outer(outer);
    }
    let g = b.finish();
    let rep = g.validate();
    if !rep.is_ok() {
        return Err(Error::InternalInvariant(format!(
            "ingested drawing fails validation: {rep}"
        )));
    }
    Ok(g)
}
