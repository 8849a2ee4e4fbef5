//! Edge rerouting surgery: rerouting one edge of an untangled mutual
//! crossing around a chosen boundary vertex, home rerouting of the adjacent
//! edge inside the gon, the combined full rerouting, and the classification
//! of the new crossings it introduces.

use std::collections::{BTreeMap, BTreeSet};

use crate::topo::{Dart, EdgeId, NodeIx, TopoGraph, VertexId};
use crate::verify::KCrossing;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStatus {
    Nonrerouted,
    Safe,
    Critical,
}

/// The pair of functions driving the global rerouting, plus per-edge status.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    /// Crossing key (smallest member edge) -> vertex rerouted around.
    pub f: BTreeMap<EdgeId, VertexId>,
    /// Crossing key -> the member edge to reroute.
    pub g_map: BTreeMap<EdgeId, EdgeId>,
    pub status: BTreeMap<EdgeId, EdgeStatus>,
    /// Edge -> crossings that are homes for it.
    pub homes: BTreeMap<EdgeId, Vec<EdgeId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RerouteKind {
    Global,
    Home,
}

/// What one rerouting did: the decomposition of the new curve.
#[derive(Debug, Clone)]
pub struct RerouteRecord {
    pub kind: RerouteKind,
    pub edge: EdgeId,
    pub x_key: EdgeId,
    /// w = f(X), the vertex the edge was rerouted around (for home
    /// reroutings: the endpoint of the home edge at f(X)'s partner... the
    /// vertex the guiding global rerouting went around).
    pub around: VertexId,
    /// Tip endpoint: the original tip at `v` is kept.
    pub tip_v: VertexId,
    /// Corridor endpoint, consecutive with `around` on the gon.
    pub tip_u: VertexId,
    /// The member edge incident to `around` (never crossed).
    pub a_edge: EdgeId,
    /// Members crossed by the disk arc, in traversal order.
    pub disk_hosts: Vec<EdgeId>,
    /// Edges crossed by the hook sweep at `around`, in sweep order.
    pub fan: Vec<EdgeId>,
    /// Set when a later home rerouting replaced this drawing.
    pub superseded: bool,
}

fn fresh_edge_id(g: &TopoGraph) -> EdgeId {
    EdgeId(g.edge_ids().map(|e| e.0).max().unwrap_or(0) + 1_000_000 + 1)
}

/// Splits the gon cycle at the two endpoints of `chord`; returns the side
/// (as a set of vertices) containing `probe`.
fn gon_side_of(x: &KCrossing, chord_ends: (VertexId, VertexId), probe: VertexId) -> BTreeSet<VertexId> {
    let cycle = x.gon_cycle();
    let n = cycle.len();
    let i = cycle.iter().position(|v| *v == chord_ends.0).unwrap();
    let j = cycle.iter().position(|v| *v == chord_ends.1).unwrap();
    let mut side_a = BTreeSet::new();
    let mut p = (i + 1) % n;
    while p != j {
        side_a.insert(cycle[p]);
        p = (p + 1) % n;
    }
    if side_a.contains(&probe) {
        side_a
    } else {
        let mut side_b = BTreeSet::new();
        let mut p = (j + 1) % n;
        while p != i {
            side_b.insert(cycle[p]);
            p = (p + 1) % n;
        }
        assert!(side_b.contains(&probe), "probe on the chord itself");
        side_b
    }
}

/// First crossing node along `edge` from its `from` endpoint whose partner
/// satisfies the predicate, together with the dart of the piece pointing
/// back toward `from` at that node.
fn first_crossing_from(
    g: &TopoGraph,
    edge: EdgeId,
    from: VertexId,
    accept: impl Fn(EdgeId) -> bool,
) -> Option<(NodeIx, Dart)> {
    let (u, _v) = g.edge_endpoints(edge);
    let frags: Vec<Dart> = if u == from {
        g.fragments(edge).to_vec()
    } else {
        g.fragments(edge).iter().rev().map(|d| d.twin()).collect()
    };
    for d in frags {
        let n = g.head(d);
        if let crate::topo::NodeKind::Cross(a, b) = g.node_kind(n) {
            let other = if *a == edge { *b } else { *a };
            if accept(other) {
                // d points from the `from` side into n; the piece back toward
                // `from` at n is d.twin()
                return Some((n, d.twin()));
            }
        }
    }
    None
}

/// Crosses `piece` (a dart with tail at node `n`) entering from the corner
/// between `piece` and `beside` in the rotation at `n`.
fn cross_piece_at_corner(
    pen: &mut crate::surgery::Pen<'_>,
    n: NodeIx,
    piece: Dart,
    beside: Dart,
) -> Result<NodeIx> {
    let rot = pen.g.rotation(n).to_vec();
    let pi = rot
        .iter()
        .position(|d| *d == piece)
        .ok_or_else(|| Error::InternalInvariant("piece not at node".into()))?;
    let len = rot.len();
    let prev = rot[(pi + len - 1) % len];
    let next = rot[(pi + 1) % len];
    if prev == beside {
        // corner (beside, piece): crossing the piece from its right side
        pen.cross(piece.twin())
    } else if next == beside {
        // corner (piece, beside): crossing the piece from its left side
        pen.cross(piece)
    } else {
        Err(Error::InternalInvariant(
            "anchor darts not adjacent in rotation".into(),
        ))
    }
}

/// Reroutes `e` = (u, v) of the untangled crossing `x` around `w`, where `u`
/// and `w` are consecutive along the gon boundary. Returns the new graph and
/// the record of the surgery.
pub fn reroute_around(
    g: &TopoGraph,
    x: &KCrossing,
    e: EdgeId,
    w: VertexId,
) -> Result<(TopoGraph, RerouteRecord)> {
    if x.gon.is_none() {
        return Err(Error::NotUntangled(format!("crossing {}", x.id_key())));
    }
    if !x.edges.contains(&e) {
        return Err(Error::InvalidGraph(format!("{e} not in the crossing")));
    }
    let (eu, ev) = g.edge_endpoints(e);
    if w == eu || w == ev {
        return Err(Error::NotConsecutive(format!(
            "{w} is an endpoint of {e}"
        )));
    }
    if !x.endpoints.contains(&w) {
        return Err(Error::NotConsecutive(format!("{w} not on the gon")));
    }
    let u = if x.gon_adjacent(eu, w) {
        eu
    } else if x.gon_adjacent(ev, w) {
        ev
    } else {
        return Err(Error::NotConsecutive(format!(
            "neither endpoint of {e} is consecutive with {w}"
        )));
    };
    let v = if u == eu { ev } else { eu };
    let a_edge = x
        .edge_at(g, w)
        .ok_or_else(|| Error::InternalInvariant("no member edge at w".into()))?;
    let (a1, a2) = g.edge_endpoints(a_edge);
    let w_prime = if a1 == w { a2 } else { a1 };

    // gon walk from v toward w on the side avoiding w'
    let cycle = x.gon_cycle().to_vec();
    let n = cycle.len();
    let pv = cycle.iter().position(|z| *z == v).unwrap();
    let pw = cycle.iter().position(|z| *z == w).unwrap();
    let pwp = cycle.iter().position(|z| *z == w_prime).unwrap();
    let dist = |from: usize, to: usize, step: i64| -> usize {
        let mut d = 0;
        let mut p = from;
        while p != to {
            p = ((p as i64 + step).rem_euclid(n as i64)) as usize;
            d += 1;
        }
        d
    };
    let step = if dist(pv, pw, 1) < dist(pv, pwp, 1) { 1i64 } else { -1i64 };
    let mut walk_positions: Vec<usize> = Vec::new();
    {
        let mut p = pv;
        loop {
            p = ((p as i64 + step).rem_euclid(n as i64)) as usize;
            if p == pw {
                break;
            }
            walk_positions.push(p);
        }
    }
    let disk_hosts: Vec<EdgeId> = walk_positions
        .iter()
        .map(|p| x.edge_at(g, cycle[*p]).expect("chord at gon position"))
        .collect();
    debug_assert_eq!(disk_hosts.len(), x.edges.len() - 2);
    debug_assert!(!disk_hosts.contains(&e) && !disk_hosts.contains(&a_edge));

    let mut out = g.clone();
    let tmp = fresh_edge_id(&out);
    let in_x = |id: EdgeId| x.edges.contains(&id);

    // Start beside e's end at v, on the side facing the first anchor corner.
    let e_end_at_v = out.edge_dart_at(e, v);
    let faces0 = out.faces()?;
    // anchor for the first host
    let first_host = disk_hosts[0];
    let first_vertex = cycle[walk_positions[0]];
    let (n1, _back1) = first_crossing_from(&out, first_host, first_vertex, in_x)
        .ok_or_else(|| Error::InternalInvariant("host has no member crossing".into()))?;
    // the corner face at the anchor determines which side of e to start on
    // try both corners around e's end at v; pick the one from which the pen
    // can reach the first anchor (deterministic preference: after the dart)
    let n_v = out.vertex_node(v);
    let rot_v = out.rotation(n_v).to_vec();
    let e_pos = rot_v.iter().position(|d| *d == e_end_at_v).unwrap();
    let cand_gaps = [(e_pos + 1) % rot_v.len(), e_pos];
    let mut chosen_gap = None;
    for gap in cand_gaps {
        let gf = out.corner_face(&faces0, n_v, if gap == 0 { rot_v.len() } else { gap });
        // the first crossing happens on a piece at n1; check that some piece
        // there borders this face
        let rot1 = out.rotation(n1).to_vec();
        if rot1.iter().any(|d| faces0.face_of(*d) == gf) {
            chosen_gap = Some(if gap == 0 { rot_v.len() } else { gap });
            break;
        }
    }
    let chosen_gap = chosen_gap.ok_or_else(|| {
        Error::UnrealizableRoute("no start corner at v reaches the first anchor".into())
    })?;
    let rot_v_now = out.rotation(n_v).to_vec();
    let before_dart = rot_v_now[chosen_gap % rot_v_now.len()];
    let mut pen = crate::surgery::Pen::new(
        &mut out,
        tmp,
        v,
        u,
        crate::surgery::Attach::Before(before_dart),
    )?;

    // disk arc: cross each host adjacent to its outermost member crossing
    let mut prev_probe = v;
    for (host, wp) in disk_hosts.iter().zip(&walk_positions) {
        let q_vertex = cycle[*wp];
        let (nq, back_dart) = first_crossing_from(pen.g, *host, q_vertex, in_x)
            .ok_or_else(|| Error::InternalInvariant("host lost its member crossing".into()))?;
        // piece of host toward q at nq:
        let piece_to_q = back_dart;
        // partner edge and its gon side containing the previous probe
        let partner = {
            let (a, b) = pen.g.crossing_pair(nq);
            if a == *host {
                b
            } else {
                a
            }
        };
        let t_vertex = {
            let p_ends = pen.g.edge_endpoints(partner);
            let side = gon_side_of(x, pen.g.edge_endpoints(*host), prev_probe);
            if side.contains(&p_ends.0) {
                p_ends.0
            } else if side.contains(&p_ends.1) {
                p_ends.1
            } else {
                return Err(Error::InternalInvariant(
                    "partner chord does not straddle the host".into(),
                ));
            }
        };
        // dart of partner at nq pointing toward t_vertex: the partner piece
        // whose continuation reaches t side; identified by fragment order
        let beside = partner_piece_toward(pen.g, nq, partner, t_vertex)?;
        cross_piece_at_corner(&mut pen, nq, piece_to_q, beside)?;
        prev_probe = q_vertex;
    }

    // hook: sweep around w (away from a_edge) until u is reachable
    let mut fan: Vec<EdgeId> = Vec::new();
    let wn = pen.g.vertex_node(w);
    let mut guard = 0usize;
    while !pen.can_end_at(u)? {
        let crossed = pen.sweep_step(wn, a_edge)?;
        fan.push(crossed);
        guard += 1;
        if guard > 2 * pen.g.rotation(wn).len() + 4 {
            return Err(Error::InternalInvariant(
                "hook sweep failed to terminate".into(),
            ));
        }
    }
    pen.end_at_vertex_auto()?;

    // replace e by the new route
    out.remove_edge_route(e)?;
    out.rename_edge(tmp, e)?;

    let record = RerouteRecord {
        kind: RerouteKind::Global,
        edge: e,
        x_key: x.id_key(),
        around: w,
        tip_v: v,
        tip_u: u,
        a_edge,
        disk_hosts,
        fan,
        superseded: false,
    };
    assert_reroute_properties(g, &out, &record)?;
    Ok((out, record))
}

/// The dart at crossing node `n` belonging to `edge`, on the side of the
/// node whose continuation along the edge reaches endpoint `toward`.
fn partner_piece_toward(
    g: &TopoGraph,
    n: NodeIx,
    edge: EdgeId,
    toward: VertexId,
) -> Result<Dart> {
    let (u, _v) = g.edge_endpoints(edge);
    let frags: Vec<Dart> = if u == toward {
        g.fragments(edge).iter().rev().map(|d| d.twin()).collect()
    } else {
        g.fragments(edge).to_vec()
    };
    // frags now runs from the far endpoint toward `toward`... we want the
    // piece at n on the `toward` side: walk from `toward` instead.
    let from_toward: Vec<Dart> = frags.iter().rev().map(|d| d.twin()).collect();
    let mut position = None;
    for (i, d) in from_toward.iter().enumerate() {
        if g.head(*d) == n {
            position = Some(i);
            break;
        }
    }
    let i = position.ok_or_else(|| Error::InternalInvariant("edge does not pass node".into()))?;
    // the piece between `toward`-side and n is from_toward[i]; its dart with
    // tail at n is its twin
    Ok(from_toward[i].twin())
}

/// Checks the three rerouting properties on the surgery output:
/// the rerouted edge avoids the member edge at `around`, its new crossings
/// all share the vertex `around`, and it crosses nothing twice.
pub fn assert_reroute_properties(
    before: &TopoGraph,
    after: &TopoGraph,
    r: &RerouteRecord,
) -> Result<()> {
    let mut seen: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for nx in after.crossings_along(r.edge) {
        let (a, b) = after.crossing_pair(nx);
        let other = if a == r.edge { b } else { a };
        *seen.entry(other).or_insert(0) += 1;
    }
    if seen.contains_key(&r.a_edge) {
        return Err(Error::InternalInvariant(format!(
            "rerouted {} crosses the member edge at its hook vertex",
            r.edge
        )));
    }
    if let Some((e2, _)) = seen.iter().find(|(_, c)| **c > 1) {
        return Err(Error::InternalInvariant(format!(
            "rerouted {} crosses {e2} more than once",
            r.edge
        )));
    }
    let before_partners: BTreeSet<EdgeId> = before
        .crossings_along(r.edge)
        .iter()
        .map(|n| {
            let (a, b) = before.crossing_pair(*n);
            if a == r.edge {
                b
            } else {
                a
            }
        })
        .collect();
    for other in seen.keys() {
        if before_partners.contains(other) {
            continue;
        }
        let (a, b) = after.edge_endpoints(*other);
        if a != r.around && b != r.around {
            return Err(Error::InternalInvariant(format!(
                "new crossing of {} with {other} is not incident to the hook vertex",
                r.edge
            )));
        }
    }
    Ok(())
}

/// Data shared by global reroute drivers: which crossings are homes for
/// which edges.
pub fn home_targets(
    g: &TopoGraph,
    records: &[RerouteRecord],
) -> Result<BTreeMap<EdgeId, Vec<EdgeId>>> {
    let mut homes: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    let mut per_x: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for r in records {
        if r.kind != RerouteKind::Global {
            continue;
        }
        if let Some(home_edge) = g.has_edge_between(r.tip_v, r.around) {
            homes.entry(home_edge).or_default().push(r.x_key);
            *per_x.entry(r.x_key).or_insert(0) += 1;
        }
    }
    for (x, cnt) in per_x {
        if cnt > 1 {
            return Err(Error::InternalInvariant(format!(
                "crossing {x} is a home for {cnt} edges"
            )));
        }
    }
    for (e, hs) in &homes {
        if hs.len() > 2 {
            return Err(Error::InternalInvariant(format!("{e} has {} homes", hs.len())));
        }
    }
    Ok(homes)
}

/// Redraws the edge (tip_v, around) of the given global rerouting record
/// inside the gon, following the first three parts of the rerouted edge on
/// the inner side. The result crosses only the disk hosts, once each.
pub fn home_reroute(
    g: &TopoGraph,
    x: &KCrossing,
    record: &RerouteRecord,
) -> Result<(TopoGraph, RerouteRecord)> {
    let home_edge = g
        .has_edge_between(record.tip_v, record.around)
        .ok_or_else(|| Error::NotAHome(format!("no edge ({}, {})", record.tip_v, record.around)))?;
    let v = record.tip_v;
    let w = record.around;
    let g_edge = record.edge;
    let mut out = g.clone();
    let tmp = fresh_edge_id(&out);

    // anchors: the rerouted edge's crossing node on each disk host
    let mut anchors: Vec<(EdgeId, NodeIx)> = Vec::new();
    for host in &record.disk_hosts {
        let nx = out
            .crossings_along(g_edge)
            .into_iter()
            .find(|n| {
                let (a, b) = out.crossing_pair(*n);
                (a, b) == (g_edge.min(*host), g_edge.max(*host))
            })
            .ok_or_else(|| Error::NotAHome("guide crossing missing".into()))?;
        anchors.push((*host, nx));
    }

    // start at v beside the guide's end dart, on the side of the first anchor
    let guide_end = out.edge_dart_at(g_edge, v);
    let n_v = out.vertex_node(v);
    let faces0 = out.faces()?;
    let rot_v = out.rotation(n_v).to_vec();
    let gpos = rot_v.iter().position(|d| *d == guide_end).unwrap();
    let mut chosen = None;
    if let Some((_, n1)) = anchors.first() {
        for gap in [(gpos + 1) % rot_v.len(), gpos] {
            let gg = if gap == 0 { rot_v.len() } else { gap };
            let gf = out.corner_face(&faces0, n_v, gg);
            let rot1 = out.rotation(*n1).to_vec();
            if rot1.iter().any(|d| faces0.face_of(*d) == gf) {
                chosen = Some(gg);
                break;
            }
        }
    }
    let chosen = chosen.ok_or_else(|| Error::NotAHome("no start corner reaches guide".into()))?;
    let before_dart = rot_v[chosen % rot_v.len()];
    // precompute the gon-vertex side of each host (stable data)
    let mut host_sides: BTreeMap<EdgeId, VertexId> = BTreeMap::new();
    for (host, _) in &anchors {
        host_sides.insert(*host, host_gon_vertex(&out, x, *host, record)?);
    }
    let mut pen = crate::surgery::Pen::new(
        &mut out,
        tmp,
        v,
        w,
        crate::surgery::Attach::Before(before_dart),
    )?;

    let mut prev_node: Option<NodeIx> = None;
    for (host, nx) in &anchors {
        // the host piece on the core side of nx: the piece NOT on the
        // gon-vertex side (the side toward the host's own member crossings)
        let piece_to_vertex = partner_piece_toward(pen.g, *nx, *host, host_sides[host])?;
        let rot = pen.g.rotation(*nx).to_vec();
        let core_piece = rot
            .iter()
            .copied()
            .find(|d| pen.g.arc_edge(d.arc()) == *host && *d != piece_to_vertex)
            .ok_or_else(|| Error::InternalInvariant("host piece missing".into()))?;
        // guide piece pointing back toward the previous anchor / v
        let guide_back = match prev_node {
            None => partner_piece_toward(pen.g, *nx, g_edge, v)?,
            Some(pn) => guide_piece_toward_node(pen.g, *nx, g_edge, pn)?,
        };
        cross_piece_at_corner(&mut pen, *nx, core_piece, guide_back)?;
        prev_node = Some(*nx);
    }
    if !pen.can_end_at(w)? {
        return Err(Error::NotAHome("home route cannot reach the hook vertex".into()));
    }
    pen.end_at_vertex_auto()?;
    out.remove_edge_route(home_edge)?;
    out.rename_edge(tmp, home_edge)?;

    let rec = RerouteRecord {
        kind: RerouteKind::Home,
        edge: home_edge,
        x_key: record.x_key,
        around: w,
        tip_v: v,
        tip_u: w,
        a_edge: record.a_edge,
        disk_hosts: record.disk_hosts.clone(),
        fan: Vec::new(),
        superseded: false,
    };
    // postconditions: crosses exactly the disk hosts once each
    let mut seen: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for nx in out.crossings_along(home_edge) {
        let (a, b) = out.crossing_pair(nx);
        let other = if a == home_edge { b } else { a };
        *seen.entry(other).or_insert(0) += 1;
    }
    for h in &rec.disk_hosts {
        if seen.get(h) != Some(&1) {
            return Err(Error::InternalInvariant(format!(
                "home-rerouted {home_edge} does not cross host {h} exactly once"
            )));
        }
    }
    if seen.len() != rec.disk_hosts.len() {
        return Err(Error::InternalInvariant(format!(
            "home-rerouted {home_edge} has extra crossings"
        )));
    }
    Ok((out, rec))
}

fn host_gon_vertex(
    g: &TopoGraph,
    x: &KCrossing,
    host: EdgeId,
    record: &RerouteRecord,
) -> Result<VertexId> {
    // the endpoint of `host` on the walk side used by the guiding reroute:
    // reconstruct from the gon cycle: hosts were crossed adjacent to their
    // outermost crossing toward the traversal position.
    let cycle = x.gon_cycle();
    let n = cycle.len();
    let pv = cycle.iter().position(|z| *z == record.tip_v).unwrap();
    let pw = cycle.iter().position(|z| *z == record.around).unwrap();
    let (h1, h2) = g.edge_endpoints(host);
    // direction from v to w not passing w': recompute via which endpoint of
    // host appears strictly between pv and pw in one direction
    for stepdir in [1i64, -1i64] {
        let mut p = pv;
        let mut seen: Vec<VertexId> = Vec::new();
        loop {
            p = ((p as i64 + stepdir).rem_euclid(n as i64)) as usize;
            if p == pw {
                break;
            }
            seen.push(cycle[p]);
        }
        let hosts_here: Vec<EdgeId> = seen
            .iter()
            .filter_map(|vv| x.edge_at(g, *vv))
            .collect();
        if hosts_here.len() == x.edges.len() - 2 {
            if seen.contains(&h1) {
                return Ok(h1);
            }
            if seen.contains(&h2) {
                return Ok(h2);
            }
        }
    }
    Err(Error::InternalInvariant(
        "host endpoint not on the traversal side".into(),
    ))
}

fn guide_piece_toward_node(
    g: &TopoGraph,
    n: NodeIx,
    edge: EdgeId,
    target: NodeIx,
) -> Result<Dart> {
    // walk the edge's fragment path; find n and the direction toward target
    let frags = g.fragments(edge).to_vec();
    let nodes: Vec<NodeIx> = {
        let mut v = vec![g.tail(frags[0])];
        for d in &frags {
            v.push(g.head(*d));
        }
        v
    };
    let pi = nodes
        .iter()
        .position(|m| *m == n)
        .ok_or_else(|| Error::InternalInvariant("node not on guide".into()))?;
    let ti = nodes
        .iter()
        .position(|m| *m == target)
        .ok_or_else(|| Error::InternalInvariant("target not on guide".into()))?;
    let d = if ti < pi {
        // piece toward the earlier side: fragment pi-1 reversed at n
        frags[pi - 1].twin()
    } else {
        frags[pi]
    };
    debug_assert_eq!(g.tail(d), n);
    Ok(d)
}

/// Applies the global rerouting for every crossing, then all home
/// reroutings. Returns the new graph, all records, and the status map.
pub fn full_reroute(
    g: &TopoGraph,
    xs: &[KCrossing],
    assignment: &mut Assignment,
) -> Result<(TopoGraph, Vec<RerouteRecord>)> {
    let mut cur = g.clone();
    let mut records: Vec<RerouteRecord> = Vec::new();
    let mut order: Vec<&KCrossing> = xs.iter().collect();
    order.sort_by_key(|x| x.id_key());
    for x in order {
        let key = x.id_key();
        let fw = *assignment
            .f
            .get(&key)
            .ok_or_else(|| Error::InternalInvariant(format!("f missing for {key}")))?;
        let ge = *assignment
            .g_map
            .get(&key)
            .ok_or_else(|| Error::InternalInvariant(format!("g missing for {key}")))?;
        let (next, rec) = reroute_around(&cur, x, ge, fw)?;
        cur = next;
        records.push(rec);
    }
    // home reroutings
    let homes = home_targets(&cur, &records)?;
    assignment.homes = homes.clone();
    let mut home_choice: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for (e, hs) in &homes {
        let chosen = *hs.iter().min().unwrap();
        home_choice.insert(*e, chosen);
    }
    let by_key: BTreeMap<EdgeId, &KCrossing> = xs.iter().map(|x| (x.id_key(), x)).collect();
    let rec_by_key: BTreeMap<EdgeId, RerouteRecord> = records
        .iter()
        .map(|r| (r.x_key, r.clone()))
        .collect();
    for (home_edge, xkey) in &home_choice {
        let x = by_key[xkey];
        let guide = &rec_by_key[xkey];
        let (next, rec) = home_reroute(&cur, x, guide)?;
        cur = next;
        // a previously rerouted edge that is now home-rerouted is superseded
        for r in records.iter_mut() {
            if r.edge == *home_edge && r.kind == RerouteKind::Global {
                r.superseded = true;
            }
        }
        let _ = home_edge;
        records.push(rec);
    }
    // status map
    for e in cur.edge_ids() {
        assignment.status.insert(e, EdgeStatus::Nonrerouted);
    }
    for r in &records {
        match r.kind {
            RerouteKind::Home => {
                assignment.status.insert(r.edge, EdgeStatus::Safe);
            }
            RerouteKind::Global => {
                if assignment.status.get(&r.edge) != Some(&EdgeStatus::Safe) {
                    assignment.status.insert(r.edge, EdgeStatus::Critical);
                }
            }
        }
    }
    Ok((cur, records))
}

/// Classification report for crossings present after but not before.
#[derive(Debug, Clone, Default)]
pub struct NewCrossingReport {
    /// (e1, e2) classified as safe-vs-home-member.
    pub case_a: Vec<(EdgeId, EdgeId)>,
    /// (critical, other) classified as rerouted-around-endpoint.
    pub case_b: Vec<(EdgeId, EdgeId)>,
}

/// Classifies every crossing present in `after` but not in `before`: either
/// a safe edge crossing a nonrerouted member of its home, or a critical edge
/// crossing an edge incident to the vertex it was rerouted around.
pub fn classify_new_crossings(
    before: &TopoGraph,
    after: &TopoGraph,
    xs: &[KCrossing],
    records: &[RerouteRecord],
    assignment: &Assignment,
) -> Result<NewCrossingReport> {
    let old: BTreeSet<(EdgeId, EdgeId)> = before.crossing_pairs().keys().copied().collect();
    let mut rep = NewCrossingReport::default();
    let by_key: BTreeMap<EdgeId, &KCrossing> = xs.iter().map(|x| (x.id_key(), x)).collect();
    'pairs: for (pair, _m) in after.crossing_pairs() {
        if old.contains(&pair) {
            continue;
        }
        let (p, q) = pair;
        for (e1, e2) in [(p, q), (q, p)] {
            let s1 = assignment.status.get(&e1).copied().unwrap_or(EdgeStatus::Nonrerouted);
            let s2 = assignment.status.get(&e2).copied().unwrap_or(EdgeStatus::Nonrerouted);
            // case (a): e1 safe, e2 nonrerouted member of e1's home
            if s1 == EdgeStatus::Safe && s2 == EdgeStatus::Nonrerouted {
                if let Some(r) = records
                    .iter()
                    .find(|r| r.kind == RerouteKind::Home && r.edge == e1)
                {
                    if let Some(x) = by_key.get(&r.x_key) {
                        if x.edges.contains(&e2) {
                            rep.case_a.push((e1, e2));
                            continue 'pairs;
                        }
                    }
                }
            }
            // case (b): e1 critical, rerouted around an endpoint of e2
            if s1 == EdgeStatus::Critical {
                if let Some(r) = records.iter().find(|r| {
                    r.kind == RerouteKind::Global && r.edge == e1 && !r.superseded
                }) {
                    let (a, b) = after.edge_endpoints(e2);
                    if r.around == a || r.around == b {
                        rep.case_b.push((e1, e2));
                        continue 'pairs;
                    }
                }
            }
        }
        return Err(Error::UnclassifiedCrossing(format!(
            "crossing {:?} fits neither case",
            pair
        )));
    }
    Ok(rep)
}
