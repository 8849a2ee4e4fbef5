//! The bipartite crossing/vertex graph, Hall-condition checks, and the
//! deterministic maximum matchings used to pick rerouting vertices.

use std::collections::{BTreeMap, BTreeSet};

use crate::topo::{EdgeId, TopoGraph, VertexId};
use crate::verify::KCrossing;
use crate::{Error, Result};

/// Bipartite graph H: one node per crossing (A side) joined to the 2k+2
/// endpoint vertices of that crossing (B side).
#[derive(Debug, Clone)]
pub struct BipartiteH {
    pub a_keys: Vec<EdgeId>,
    pub adj: BTreeMap<EdgeId, Vec<VertexId>>,
    pub b: BTreeSet<VertexId>,
}

impl BipartiteH {
    pub fn neighborhood(&self, a_sub: &[EdgeId]) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for a in a_sub {
            out.extend(self.adj[a].iter().copied());
        }
        out
    }
}

/// Builds H and certifies planarity of its natural embedding: the crossing
/// node sits inside the disk of its bundle with its endpoints in gon order,
/// and the ends at a shared vertex are ordered like that vertex's member
/// edges in the drawing's rotation.
pub fn build_h(g: &TopoGraph, xs: &[KCrossing]) -> Result<BipartiteH> {
    let mut a_keys = Vec::new();
    let mut adj = BTreeMap::new();
    let mut b = BTreeSet::new();
    for x in xs {
        let key = x.id_key();
        a_keys.push(key);
        let vs: Vec<VertexId> = x.endpoints.iter().copied().collect();
        b.extend(vs.iter().copied());
        adj.insert(key, vs);
    }
    a_keys.sort();
    let h = BipartiteH { a_keys, adj, b };
    certify_h_planar(g, xs, &h)?;
    Ok(h)
}

/// Dart-permutation genus check of the constructed embedding of H.
fn certify_h_planar(g: &TopoGraph, xs: &[KCrossing], h: &BipartiteH) -> Result<()> {
    if xs.is_empty() {
        return Ok(());
    }
    // Darts: (a_index, b_vertex, dir). Build rotations.
    // At v(X): endpoints in gon order (all bundles here are untangled).
    // At u in B: H-ends ordered by the rotation position of u's member edge
    // ends in g (each H-edge at u runs along u's member edge of that bundle).
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct HDart {
        a: usize,
        b: VertexId,
        from_a: bool,
    }
    let mut rot: BTreeMap<(bool, u64), Vec<HDart>> = BTreeMap::new(); // (is_a_side, id)
    let by_key: BTreeMap<EdgeId, &KCrossing> = xs.iter().map(|x| (x.id_key(), x)).collect();
    for (ai, key) in h.a_keys.iter().enumerate() {
        let x = by_key[key];
        let order: Vec<VertexId> = match &x.gon {
            Some(gon) => gon.boundary_cycle.clone(),
            None => x.endpoints.iter().copied().collect(),
        };
        rot.insert(
            (true, ai as u64),
            order
                .iter()
                .map(|u| HDart {
                    a: ai,
                    b: *u,
                    from_a: true,
                })
                .collect(),
        );
    }
    for u in &h.b {
        let n = g.vertex_node(*u);
        let mut ends: Vec<(usize, usize)> = Vec::new(); // (rot position of member end, a index)
        for (ai, key) in h.a_keys.iter().enumerate() {
            let x = by_key[key];
            if !x.endpoints.contains(u) {
                continue;
            }
            let member = x.edge_at(g, *u).expect("member edge at endpoint");
            let end_dart = g.edge_dart_at(member, *u);
            let pos = g
                .rotation(n)
                .iter()
                .position(|d| *d == end_dart)
                .expect("member end in rotation");
            ends.push((pos, ai));
        }
        ends.sort();
        rot.insert(
            (false, u.0 as u64),
            ends.iter()
                .map(|(_, ai)| HDart {
                    a: *ai,
                    b: *u,
                    from_a: false,
                })
                .collect(),
        );
    }
    // face count via next(d) = rot_prev(twin(d))
    let twin = |d: HDart| HDart {
        from_a: !d.from_a,
        ..d
    };
    let rot_prev = |d: HDart| -> HDart {
        let key = if d.from_a {
            (true, d.a as u64)
        } else {
            (false, d.b.0 as u64)
        };
        let r = &rot[&key];
        let i = r.iter().position(|x| *x == d).expect("dart in rotation");
        r[(i + r.len() - 1) % r.len()]
    };
    let mut all: Vec<HDart> = rot.values().flatten().copied().collect();
    all.sort();
    let mut seen: BTreeSet<HDart> = BTreeSet::new();
    let mut faces = 0usize;
    for d0 in &all {
        if seen.contains(d0) {
            continue;
        }
        faces += 1;
        let mut d = *d0;
        loop {
            seen.insert(d);
            d = rot_prev(twin(d));
            if d == *d0 {
                break;
            }
        }
    }
    // connected components of H
    let mut comp: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut acomp: BTreeMap<usize, usize> = BTreeMap::new();
    let mut c = 0usize;
    for (ai, key) in h.a_keys.iter().enumerate() {
        if acomp.contains_key(&ai) {
            continue;
        }
        // BFS over shared vertices
        let mut stack = vec![ai];
        while let Some(a) = stack.pop() {
            if acomp.insert(a, c).is_some() {
                continue;
            }
            for u in &h.adj[&h.a_keys[a]] {
                if comp.insert(*u, c).is_none() {
                    for (aj, kj) in h.a_keys.iter().enumerate() {
                        if !acomp.contains_key(&aj) && by_key[kj].endpoints.contains(u) {
                            stack.push(aj);
                        }
                    }
                }
            }
        }
        let _ = key;
        c += 1;
    }
    let v_cnt = h.a_keys.len() + h.b.len();
    let e_cnt: usize = h.adj.values().map(|v| v.len()).sum();
    // Euler for a disconnected plane graph: V - E + F = 1 + C
    if v_cnt as i64 - e_cnt as i64 + faces as i64 != 1 + c as i64 {
        return Err(Error::InternalInvariant(format!(
            "H embedding is not planar: V={v_cnt} E={e_cnt} F={faces} C={c}"
        )));
    }
    Ok(())
}

/// Hall slack check: |N(A')| >= |A'| + 2k+1 for nonempty subsets.
pub fn hall_check(h: &BipartiteH, a_sub: &[EdgeId], k: usize) -> bool {
    if a_sub.is_empty() {
        return true;
    }
    h.neighborhood(a_sub).len() >= a_sub.len() + 2 * k + 1
}

/// Maximum bipartite matching by augmenting paths with a fixed scan order
/// (A keys ascending, candidate vertices ascending), so results are
/// reproducible.
fn augment(
    adj: &BTreeMap<EdgeId, Vec<VertexId>>,
    a: EdgeId,
    matched_b: &mut BTreeMap<VertexId, EdgeId>,
    visited: &mut BTreeSet<VertexId>,
    excluded: &BTreeSet<VertexId>,
) -> bool {
    for v in &adj[&a] {
        if excluded.contains(v) || visited.contains(v) {
            continue;
        }
        visited.insert(*v);
        let free = match matched_b.get(v) {
            None => true,
            Some(owner) => augment(adj, *owner, matched_b, visited, excluded),
        };
        if free {
            matched_b.insert(*v, a);
            return true;
        }
    }
    false
}

/// Saturating matching of all crossings to distinct endpoint vertices.
pub fn match_f(h: &BipartiteH) -> Result<BTreeMap<EdgeId, VertexId>> {
    match_restricted(h, &h.a_keys, &BTreeSet::new())
}

/// Matching of a subset of A avoiding a set of excluded vertices (used when
/// repairing the assignment inside a conflict cycle).
pub fn rematch_inside(
    h: &BipartiteH,
    a_sub: &[EdgeId],
    excluded: &BTreeSet<VertexId>,
) -> Result<BTreeMap<EdgeId, VertexId>> {
    if excluded.len() > 4 {
        return Err(Error::Unsaturated(format!(
            "{} exclusions exceed the Hall slack",
            excluded.len()
        )));
    }
    match_restricted(h, a_sub, excluded)
}

fn match_restricted(
    h: &BipartiteH,
    a_sub: &[EdgeId],
    excluded: &BTreeSet<VertexId>,
) -> Result<BTreeMap<EdgeId, VertexId>> {
    let mut matched_b: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
    let mut keys = a_sub.to_vec();
    keys.sort();
    for a in &keys {
        let mut visited = BTreeSet::new();
        if !augment(&h.adj, *a, &mut matched_b, &mut visited, excluded) {
            return Err(Error::Unsaturated(format!("no augmenting path for {a}")));
        }
    }
    let mut out = BTreeMap::new();
    for (v, a) in matched_b {
        out.insert(a, v);
    }
    Ok(out)
}

/// Injective map from cycles to incident vertices (the cycle-breaking
/// assignment of the small-k repair).
pub fn match_s(cycles: &[(usize, Vec<VertexId>)]) -> Result<BTreeMap<usize, VertexId>> {
    let mut matched_b: BTreeMap<VertexId, usize> = BTreeMap::new();
    fn go(
        cycles: &BTreeMap<usize, Vec<VertexId>>,
        c: usize,
        matched_b: &mut BTreeMap<VertexId, usize>,
        visited: &mut BTreeSet<VertexId>,
    ) -> bool {
        for v in &cycles[&c] {
            if visited.contains(v) {
                continue;
            }
            visited.insert(*v);
            let free = match matched_b.get(v) {
                None => true,
                Some(owner) => go(cycles, *owner, matched_b, visited),
            };
            if free {
                matched_b.insert(*v, c);
                return true;
            }
        }
        false
    }
    let map: BTreeMap<usize, Vec<VertexId>> = cycles.iter().cloned().collect();
    for (c, _) in cycles {
        let mut visited = BTreeSet::new();
        if !go(&map, *c, &mut matched_b, &mut visited) {
            return Err(Error::Unsaturated(format!("no vertex for cycle {c}")));
        }
    }
    let mut out = BTreeMap::new();
    for (v, c) in matched_b {
        out.insert(c, v);
    }
    Ok(out)
}
