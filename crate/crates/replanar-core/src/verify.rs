//! Predicates and witnesses: simplicity, k-planarity, quasiplanarity,
//! mutual-crossing enumeration, untangledness, and gon overlap checks.

use std::collections::{BTreeMap, BTreeSet};

use crate::surgery::RawBuilder;
use crate::topo::{Dart, EdgeId, NodeIx, TopoGraph, ValidationReport, VertexId};
use crate::{Error, Result};

/// A set of m pairwise crossing edges with derived gon data.
#[derive(Debug, Clone)]
pub struct KCrossing {
    pub edges: BTreeSet<EdgeId>,
    pub endpoints: BTreeSet<VertexId>,
    /// Present iff the crossing is untangled: endpoints in cyclic order along
    /// the common face of the sub-arrangement.
    pub gon: Option<GonData>,
}

#[derive(Debug, Clone)]
pub struct GonData {
    /// Cyclic order of the 2m endpoints along the boundary of the common face.
    pub boundary_cycle: Vec<VertexId>,
}

impl KCrossing {
    /// Stable identifier: the smallest member edge.
    pub fn id_key(&self) -> EdgeId {
        *self.edges.iter().next().expect("nonempty crossing")
    }

    /// The member edge incident to `v`, if any.
    pub fn edge_at(&self, g: &TopoGraph, v: VertexId) -> Option<EdgeId> {
        self.edges.iter().copied().find(|e| {
            let (a, b) = g.edge_endpoints(*e);
            a == v || b == v
        })
    }

    pub fn gon_cycle(&self) -> &[VertexId] {
        &self
            .gon
            .as_ref()
            .expect("untangled crossing with gon data")
            .boundary_cycle
    }

    pub fn gon_pos(&self, v: VertexId) -> usize {
        self.gon_cycle()
            .iter()
            .position(|x| *x == v)
            .expect("vertex on gon")
    }

    pub fn gon_neighbors(&self, v: VertexId) -> (VertexId, VertexId) {
        let c = self.gon_cycle();
        let i = self.gon_pos(v);
        let n = c.len();
        (c[(i + n - 1) % n], c[(i + 1) % n])
    }

    pub fn gon_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        let (p, s) = self.gon_neighbors(a);
        p == b || s == b
    }
}

/// Undirected graph on edges; adjacency = "the two edges cross".
#[derive(Debug, Clone)]
pub struct CrossingGraph {
    pub nodes: Vec<EdgeId>,
    pub adj: BTreeMap<EdgeId, BTreeSet<EdgeId>>,
}

impl CrossingGraph {
    pub fn build(g: &TopoGraph) -> CrossingGraph {
        let nodes: Vec<EdgeId> = g.edge_ids().collect();
        let mut adj: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
        for e in &nodes {
            adj.insert(*e, BTreeSet::new());
        }
        for ((a, b), _mult) in g.crossing_pairs() {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        CrossingGraph { nodes, adj }
    }
}

/// True iff no two edges share more than one point: no pair crosses twice,
/// and no adjacent pair crosses. The witness names an offending pair.
pub fn is_simple(g: &TopoGraph) -> (bool, Option<(EdgeId, EdgeId)>) {
    for ((a, b), mult) in g.crossing_pairs() {
        if mult > 1 {
            return (false, Some((a, b)));
        }
        let (u1, v1) = g.edge_endpoints(a);
        let (u2, v2) = g.edge_endpoints(b);
        if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
            return (false, Some((a, b)));
        }
    }
    (true, None)
}

/// True iff every edge is crossed at most k times; the witness is an
/// over-crossed edge.
pub fn is_k_planar(g: &TopoGraph, k: usize) -> (bool, Option<EdgeId>) {
    for e in g.edge_ids() {
        if g.crossing_count(e) > k {
            return (false, Some(e));
        }
    }
    (true, None)
}

/// Finds a set of m pairwise crossing edges if one exists (branch and bound
/// over the crossing graph, highest degree first).
pub fn find_mutual_crossing(g: &TopoGraph, m: usize) -> Option<BTreeSet<EdgeId>> {
    if m == 0 {
        return Some(BTreeSet::new());
    }
    let cg = CrossingGraph::build(g);
    let mut order: Vec<EdgeId> = cg.nodes.clone();
    order.sort_by_key(|e| std::cmp::Reverse(cg.adj[e].len()));
    fn extend(
        cg: &CrossingGraph,
        m: usize,
        clique: &mut Vec<EdgeId>,
        cands: &[EdgeId],
    ) -> Option<BTreeSet<EdgeId>> {
        if clique.len() == m {
            return Some(clique.iter().copied().collect());
        }
        if clique.len() + cands.len() < m {
            return None;
        }
        for (i, c) in cands.iter().enumerate() {
            if cg.adj[c].len() + 1 < m {
                continue;
            }
            clique.push(*c);
            let next: Vec<EdgeId> = cands[i + 1..]
                .iter()
                .filter(|x| cg.adj[c].contains(x))
                .copied()
                .collect();
            if let Some(found) = extend(cg, m, clique, &next) {
                return Some(found);
            }
            clique.pop();
        }
        None
    }
    extend(&cg, m, &mut Vec::new(), &order)
}

pub fn is_m_quasiplanar(g: &TopoGraph, m: usize) -> bool {
    find_mutual_crossing(g, m).is_none()
}

/// All sets of m pairwise crossing edges (exhaustive branch and bound).
pub fn all_mutual_crossings(g: &TopoGraph, m: usize) -> Vec<BTreeSet<EdgeId>> {
    let cg = CrossingGraph::build(g);
    let order: Vec<EdgeId> = cg.nodes.clone();
    let mut out = Vec::new();
    fn extend(
        cg: &CrossingGraph,
        m: usize,
        clique: &mut Vec<EdgeId>,
        cands: &[EdgeId],
        out: &mut Vec<BTreeSet<EdgeId>>,
    ) {
        if clique.len() == m {
            out.push(clique.iter().copied().collect());
            return;
        }
        if clique.len() + cands.len() < m {
            return;
        }
        for (i, c) in cands.iter().enumerate() {
            clique.push(*c);
            let next: Vec<EdgeId> = cands[i + 1..]
                .iter()
                .filter(|x| cg.adj[c].contains(x))
                .copied()
                .collect();
            extend(cg, m, clique, &next, out);
            clique.pop();
        }
    }
    extend(&cg, m, &mut Vec::new(), &order, &mut out);
    out
}

/// The sub-drawing induced by a set of edges: crossings with outside edges
/// are smoothed away. Returns the graph and the node map (old -> new).
pub fn induced_subdrawing(
    g: &TopoGraph,
    keep: &BTreeSet<EdgeId>,
) -> Result<(TopoGraph, BTreeMap<NodeIx, NodeIx>)> {
    let mut b = RawBuilder::new();
    let mut node_map: BTreeMap<NodeIx, NodeIx> = BTreeMap::new();
    for e in keep {
        let (u, v) = g.edge_endpoints(*e);
        for w in [u, v] {
            let n = g.vertex_node(w);
            if let std::collections::btree_map::Entry::Vacant(en) = node_map.entry(n) {
                en.insert(b.add_vertex(w));
            }
        }
    }
    for n in g.crossing_nodes() {
        let (a, c) = g.crossing_pair(n);
        if keep.contains(&a) && keep.contains(&c) {
            let nn = b.add_cross(a, c);
            node_map.insert(n, nn);
        }
    }
    let mut dart_map: BTreeMap<Dart, Dart> = BTreeMap::new();
    for e in keep {
        let frags = g.fragments(*e).to_vec();
        let mut new_frags: Vec<Dart> = Vec::new();
        let mut prev_kept = g.tail(frags[0]);
        let mut run_start = frags[0];
        for (i, d) in frags.iter().enumerate() {
            let h = g.head(*d);
            if node_map.contains_key(&h) {
                let na = b.add_arc(*e, node_map[&prev_kept], node_map[&h]);
                let fwd = Dart::new(na, 0);
                dart_map.insert(run_start, fwd);
                dart_map.insert(d.twin(), fwd.twin());
                new_frags.push(fwd);
                prev_kept = h;
                if i + 1 < frags.len() {
                    run_start = frags[i + 1];
                }
            }
        }
        let (u, v) = g.edge_endpoints(*e);
        b.declare_edge(*e, u, v, new_frags);
    }
    for (old_n, new_n) in &node_map {
        let rot: Vec<Dart> = g
            .rotation(*old_n)
            .iter()
            .filter_map(|d| dart_map.get(d).copied())
            .collect();
        b.set_rotation(*new_n, rot);
    }
    let mut sub = b.finish();
    let first = sub.live_darts().next();
    sub.outer = first;
    Ok((sub, node_map))
}

/// Lists all (k+1)-crossings of a k-planar graph and asserts the structural
/// consequences of k-planarity: member edges have exactly k crossings, all
/// inside their own crossing, and distinct crossings are edge-disjoint.
pub fn list_k1_crossings(g: &TopoGraph, k: usize) -> Result<Vec<KCrossing>> {
    let sets = all_mutual_crossings(g, k + 1);
    let mut seen_edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut out = Vec::new();
    for edges in sets {
        for e in &edges {
            if !seen_edges.insert(*e) {
                return Err(Error::DisjointnessViolation(format!(
                    "{e} belongs to two distinct (k+1)-crossings"
                )));
            }
            if g.crossing_count(*e) != k {
                return Err(Error::DisjointnessViolation(format!(
                    "{e} is in a (k+1)-crossing but has {} crossings (expected {k})",
                    g.crossing_count(*e)
                )));
            }
            for n in g.crossings_along(*e) {
                let (a, b) = g.crossing_pair(n);
                let other = if a == *e { b } else { a };
                if !edges.contains(&other) {
                    return Err(Error::DisjointnessViolation(format!(
                        "{e} crosses {other} outside its (k+1)-crossing"
                    )));
                }
            }
        }
        let mut endpoints = BTreeSet::new();
        for e in &edges {
            let (u, v) = g.edge_endpoints(*e);
            endpoints.insert(u);
            endpoints.insert(v);
        }
        if endpoints.len() != 2 * edges.len() {
            return Err(Error::DisjointnessViolation(
                "member edges of a (k+1)-crossing are adjacent".into(),
            ));
        }
        let mut x = KCrossing {
            edges,
            endpoints,
            gon: None,
        };
        let (unt, gon) = untangled_gon(g, &x)?;
        if unt {
            x.gon = gon;
        }
        out.push(x);
    }
    Ok(out)
}

/// Computes untangledness of `x` and, when untangled, the gon data.
fn untangled_gon(g: &TopoGraph, x: &KCrossing) -> Result<(bool, Option<GonData>)> {
    let (sub, node_map) = induced_subdrawing(g, &x.edges)?;
    let faces = sub.faces()?;
    let want: BTreeSet<NodeIx> = x
        .endpoints
        .iter()
        .map(|v| node_map[&g.vertex_node(*v)])
        .collect();
    for walk in &faces.walks {
        let mut seq: Vec<VertexId> = Vec::new();
        let mut nodes_seen: BTreeSet<NodeIx> = BTreeSet::new();
        for d in &walk.darts {
            let t = sub.tail(*d);
            if want.contains(&t) {
                nodes_seen.insert(t);
                if let crate::topo::NodeKind::Real(v) = sub.node_kind(t) {
                    if !seq.contains(v) {
                        seq.push(*v);
                    }
                }
            }
        }
        if nodes_seen.len() == want.len() {
            return Ok((true, Some(GonData {
                boundary_cycle: seq,
            })));
        }
    }
    Ok((false, None))
}

/// Public form of the untangledness test for a crossing given as an edge set.
pub fn is_untangled(g: &TopoGraph, edges: &BTreeSet<EdgeId>) -> Result<(bool, Option<GonData>)> {
    let mut endpoints = BTreeSet::new();
    for e in edges {
        let (u, v) = g.edge_endpoints(*e);
        endpoints.insert(u);
        endpoints.insert(v);
    }
    let x = KCrossing {
        edges: edges.clone(),
        endpoints,
        gon: None,
    };
    untangled_gon(g, &x)
}

/// Faces of `g` whose entire boundary lies on the given crossing's edges
/// (the core faces of the crossing's region).
fn core_faces(g: &TopoGraph, x: &KCrossing) -> Result<BTreeSet<usize>> {
    let faces = g.faces()?;
    let mut out = BTreeSet::new();
    for (i, walk) in faces.walks.iter().enumerate() {
        if i == faces.outer {
            continue;
        }
        if walk
            .darts
            .iter()
            .all(|d| x.edges.contains(&g.arc_edge(d.arc())))
        {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Gon overlap bounds: pairs share at most 2k+1 vertices, triples at most 2,
/// and the crossing regions are interior-disjoint (no shared core faces).
pub fn check_gon_overlaps(g: &TopoGraph, xs: &[KCrossing]) -> Result<ValidationReport> {
    let mut rep = ValidationReport::default();
    let k = if xs.is_empty() {
        0
    } else {
        xs[0].edges.len() - 1
    };
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate().skip(i + 1) {
            let shared: BTreeSet<_> = a.endpoints.intersection(&b.endpoints).collect();
            if shared.len() > 2 * k + 1 {
                rep.push(format!(
                    "crossings {i} and {j} share {} vertices (> {})",
                    shared.len(),
                    2 * k + 1
                ));
            }
            for (l, c) in xs.iter().enumerate().skip(j + 1) {
                let tri: BTreeSet<_> = shared
                    .iter()
                    .filter(|v| c.endpoints.contains(**v))
                    .collect();
                if tri.len() > 2 {
                    rep.push(format!(
                        "crossings {i}, {j}, {l} share {} vertices (> 2)",
                        tri.len()
                    ));
                }
            }
        }
    }
    let mut face_owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, x) in xs.iter().enumerate() {
        for f in core_faces(g, x)? {
            if let Some(prev) = face_owner.insert(f, i) {
                rep.push(format!(
                    "crossings {prev} and {i} share an interior core face"
                ));
            }
        }
    }
    Ok(rep)
}
