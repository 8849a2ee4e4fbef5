//! Seeded instance generation: bundles of pairwise crossing chords, spiral
//! tangles, twin/whirl layouts, composed in disjoint disks and joined by
//! crossing-free connector edges.

use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{q, q_ratio, Pt, Q};
use crate::io::{GeometricDrawing, InstanceSpec};
use crate::topo::{EdgeId, TopoGraph, VertexId};
use crate::{Error, Result};

/// A point on the unit circle with rational coordinates, parameterized by
/// t = tan(angle/2); the angle grows monotonically with t over (-pi, pi).
pub fn circle_point(t: &Q) -> Pt {
    let t2 = t * t;
    let den = &t2 + Q::one();
    Pt::new((Q::one() - &t2) / den.clone(), (q(2) * t) / den)
}

/// 2m points in convex position approximating a circle of given center and
/// radius, in counterclockwise order. The `skew` index perturbs the
/// parameters to escape degenerate chord concurrences.
pub fn ring_points(m2: usize, center: &Pt, radius: &Q, skew: u64) -> Vec<Pt> {
    // spread t over a wide range; tangent parameterization leaves a gap near
    // angle pi which only shears the convex polygon, never breaks convexity
    let mut pts = Vec::with_capacity(m2);
    for i in 0..m2 {
        // t from -m2 to +m2 in uneven steps, perturbed by skew and index
        let base = q(2 * i as i64 + 1) - q(m2 as i64);
        let wob = q_ratio((skew as i64 % 7) * (i as i64 + 1) % 11 + 1, 13 + i as i64);
        let t = base + wob;
        let p = circle_point(&(t / q(m2 as i64 / 2 + 1)));
        pts.push(Pt::new(&center.x + radius * &p.x, &center.y + radius * &p.y));
    }
    pts
}

/// A bundle of k+1 pairwise crossing straight chords: 2(k+1) ring vertices,
/// antipodal pairs joined. Vertex and edge ids start at the given bases.
pub fn chord_bundle(
    k: usize,
    center: &Pt,
    radius: &Q,
    vbase: u32,
    ebase: u32,
    skew: u64,
) -> GeometricDrawing {
    let m = k + 1;
    let pts = ring_points(2 * m, center, radius, skew);
    let vertices: Vec<(VertexId, Pt)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (VertexId(vbase + i as u32), p.clone()))
        .collect();
    let edges = (0..m)
        .map(|j| {
            (
                EdgeId(ebase + j as u32),
                vertices[j].0,
                vertices[j + m].0,
                vec![vertices[j].1.clone(), vertices[j + m].1.clone()],
            )
        })
        .collect();
    GeometricDrawing { vertices, edges }
}

/// Ingests a drawing, retrying with perturbed ring parameters on degeneracy.
pub fn ingest_with_retries(
    build: impl Fn(u64) -> GeometricDrawing,
) -> Result<(GeometricDrawing, TopoGraph)> {
    let mut last = None;
    for skew in 0..24 {
        let d = build(skew);
        match crate::io::ingest::ingest_geometry(&d) {
            Ok(g) => return Ok((d, g)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Degenerate("no attempts".into())))
}

/// A tangled 3-crossing: three pairwise crossing polylines where one
/// endpoint is wrapped by another edge's winding, so the six endpoints do
/// not share a face of the sub-arrangement.
pub fn spiral3(center: &Pt, scale: &Q, vbase: u32, ebase: u32) -> GeometricDrawing {
    let p = |x: i64, y: i64| Pt::new(&center.x + scale * q_ratio(x, 4), &center.y + scale * q_ratio(y, 4));
    // edge 1: horizontal bar
    // edge 2: crosses it steeply
    // edge 3: crosses both, then winds around edge 1's right endpoint
    let v: Vec<(VertexId, Pt)> = vec![
        (VertexId(vbase), p(-4, 0)),
        (VertexId(vbase + 1), p(3, 0)),
        (VertexId(vbase + 2), p(-2, -2)),
        (VertexId(vbase + 3), p(-1, 3)),
        (VertexId(vbase + 4), p(-3, 2)),
        (VertexId(vbase + 5), p(0, 1)),
    ];
    let e1 = (
        EdgeId(ebase),
        VertexId(vbase),
        VertexId(vbase + 1),
        vec![p(-4, 0), p(3, 0)],
    );
    let e2 = (
        EdgeId(ebase + 1),
        VertexId(vbase + 2),
        VertexId(vbase + 3),
        vec![p(-2, -2), p(-1, 3)],
    );
    // winds: from (-3,2) down crossing e1, right below e1 past v(base+1),
    // up around it, back left above e1, crossing e2, ending at (0,1)
    let e3 = (
        EdgeId(ebase + 2),
        VertexId(vbase + 4),
        VertexId(vbase + 5),
        vec![
            p(-3, 2),
            p(-3, -1),
            p(2, -1),
            p(4, 0),
            p(2, 2),
            p(-2, 2),
            p(-2, 1),
            p(0, 1),
        ],
    );
    GeometricDrawing {
        vertices: v,
        edges: vec![e1, e2, e3],
    }
}

/// Composes several drawings side by side (disjoint coordinates assumed).
pub fn merge_drawings(parts: Vec<GeometricDrawing>) -> GeometricDrawing {
    let mut out = GeometricDrawing {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    for p in parts {
        out.vertices.extend(p.vertices);
        out.edges.extend(p.edges);
    }
    out
}

/// Straight connector edges joining consecutive gadget "ports" so the whole
/// drawing is connected; ports face each other across empty strips.
pub fn connect_ports(
    d: &mut GeometricDrawing,
    ports: &[(VertexId, VertexId)],
    ebase: u32,
) {
    for (i, (a, b)) in ports.iter().enumerate() {
        let pa = d.vertex_point(*a).unwrap().clone();
        let pb = d.vertex_point(*b).unwrap().clone();
        d.edges.push((EdgeId(ebase + i as u32), *a, *b, vec![pa, pb]));
    }
}

/// Deterministic seeded instance: gadgets in a row of disjoint disks joined
/// by connector edges. Fails if the vertex budget cannot host the request.
pub fn gen_instance(spec: &InstanceSpec) -> Result<(GeometricDrawing, TopoGraph)> {
    let k = spec.k as usize;
    if k < 2 {
        return Err(Error::BudgetExhausted("k must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut gadgets: Vec<&str> = Vec::new();
    for _ in 0..spec.bundles {
        gadgets.push("bundle");
    }
    for _ in 0..spec.tangles {
        gadgets.push("tangle");
    }
    for _ in 0..spec.twins {
        gadgets.push("twin");
    }
    for _ in 0..spec.whirls {
        gadgets.push("whirl");
    }
    for _ in 0..spec.mutual_pairs {
        gadgets.push("mutual");
    }
    if gadgets.is_empty() {
        gadgets.push("plain");
    }
    // vertex budget estimate
    let mut need = 0u32;
    for g in &gadgets {
        need += match *g {
            "bundle" => 2 * (k as u32 + 1),
            "tangle" => 6,
            "twin" => 4 * (k as u32 + 1) - 2,
            "whirl" => 6 * (k as u32 + 1) - 3,
            "mutual" => 4 * (k as u32 + 1) - 2,
            _ => 4,
        };
    }
    if need > spec.n {
        return Err(Error::BudgetExhausted(format!(
            "{need} vertices needed, budget {}",
            spec.n
        )));
    }
    let build = |skew: u64| -> GeometricDrawing {
        let mut rng2 = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e3779b97f4a7c15);
        let mut parts: Vec<GeometricDrawing> = Vec::new();
        let mut vbase = 1u32;
        let mut ebase = 1u32;
        let mut ports: Vec<VertexId> = Vec::new();
        for (gi, kind) in gadgets.iter().enumerate() {
            let cx = q(40 * gi as i64);
            let center = Pt::new(cx, q(0));
            let radius = q(10);
            let part = match *kind {
                "bundle" => chord_bundle(k, &center, &radius, vbase, ebase, skew + rng2.gen_range(0..5)),
                "tangle" => spiral3(&center, &radius, vbase, ebase),
                "twin" => super::gadgets::twin_gadget(k, &center, &radius, vbase, ebase, skew),
                "whirl" => super::gadgets::whirl_gadget(k, &center, &radius, vbase, ebase, skew),
                "mutual" => super::gadgets::mutual_gadget(k, &center, &radius, vbase, ebase, skew),
                _ => {
                    // a plain crossing-free path gadget
                    let pts = [
                        Pt::new(&center.x - q(8), q(-2)),
                        Pt::new(&center.x - q(3), q(2)),
                        Pt::new(&center.x + q(3), q(-2)),
                        Pt::new(&center.x + q(8), q(2)),
                    ];
                    let vs: Vec<(VertexId, Pt)> = pts
                        .iter()
                        .enumerate()
                        .map(|(i, p)| (VertexId(vbase + i as u32), p.clone()))
                        .collect();
                    let es = (0..3)
                        .map(|i| {
                            (
                                EdgeId(ebase + i as u32),
                                vs[i].0,
                                vs[i + 1].0,
                                vec![vs[i].1.clone(), vs[i + 1].1.clone()],
                            )
                        })
                        .collect();
                    GeometricDrawing {
                        vertices: vs,
                        edges: es,
                    }
                }
            };
            // ports: westmost and eastmost vertex of the gadget
            let west = part
                .vertices
                .iter()
                .min_by(|a, b| (&a.1.x, &a.1.y).cmp(&(&b.1.x, &b.1.y)))
                .unwrap()
                .0;
            let east = part
                .vertices
                .iter()
                .max_by(|a, b| (&a.1.x, &a.1.y).cmp(&(&b.1.x, &b.1.y)))
                .unwrap()
                .0;
            vbase += part.vertices.len() as u32;
            ebase += part.edges.len() as u32 + 4;
            ports.push(west);
            ports.push(east);
            parts.push(part);
        }
        let mut d = merge_drawings(parts);
        // join gadget i's east port to gadget i+1's west port
        let pairs: Vec<(VertexId, VertexId)> = (0..gadgets.len().saturating_sub(1))
            .map(|i| (ports[2 * i + 1], ports[2 * i + 2]))
            .collect();
        connect_ports(&mut d, &pairs, ebase);
        d
    };
    let (d, g) = ingest_with_retries(build)?;
    let (simple, wit) = crate::verify::is_simple(&g);
    if !simple {
        return Err(Error::InternalInvariant(format!(
            "generated instance not simple: {:?}",
            wit
        )));
    }
    let (kp, wit) = crate::verify::is_k_planar(&g, k);
    if !kp {
        return Err(Error::InternalInvariant(format!(
            "generated instance not k-planar: {:?}",
            wit
        )));
    }
    let _ = rng.gen_range(0..2u32);
    Ok((d, g))
}
