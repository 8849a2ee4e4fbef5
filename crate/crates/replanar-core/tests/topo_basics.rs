//! Planarization, face, and surgery basics on tiny hand-built drawings.

use replanar_core::geom::{Pt, q};
use replanar_core::io::ingest::ingest_geometry;
use replanar_core::io::GeometricDrawing;
use replanar_core::surgery::{Attach, Pen};
use replanar_core::topo::{EdgeId, TopoGraph, VertexId};

fn v(i: u32) -> VertexId {
    VertexId(i)
}
fn e(i: u32) -> EdgeId {
    EdgeId(i)
}

pub fn straight(d: &mut GeometricDrawing, id: u32, a: u32, b: u32) {
    let pa = d.vertex_point(v(a)).unwrap().clone();
    let pb = d.vertex_point(v(b)).unwrap().clone();
    d.edges.push((e(id), v(a), v(b), vec![pa, pb]));
}

/// Three pairwise crossing segments: a=(1,2), b=(3,4), c=(5,6).
pub fn tri3() -> TopoGraph {
    let mut d = GeometricDrawing {
        vertices: vec![
            (v(1), Pt::of(0, 2)),
            (v(2), Pt::of(6, 2)),
            (v(3), Pt::of(1, 0)),
            (v(4), Pt::of(3, 4)),
            (v(5), Pt::of(4, 0)),
            (v(6), Pt::of(2, 4)),
        ],
        edges: vec![],
    };
    straight(&mut d, 1, 1, 2);
    straight(&mut d, 2, 3, 4);
    straight(&mut d, 3, 5, 6);
    ingest_geometry(&d).expect("tri3 ingests")
}

pub fn square4() -> TopoGraph {
    let mut d = GeometricDrawing {
        vertices: vec![
            (v(1), Pt::of(0, 0)),
            (v(2), Pt::of(2, 0)),
            (v(3), Pt::of(2, 2)),
            (v(4), Pt::of(0, 2)),
        ],
        edges: vec![],
    };
    straight(&mut d, 1, 1, 2);
    straight(&mut d, 2, 2, 3);
    straight(&mut d, 3, 3, 4);
    straight(&mut d, 4, 4, 1);
    ingest_geometry(&d).expect("square ingests")
}

#[test]
fn square_faces_and_validate() {
    let g = square4();
    assert!(g.validate().is_ok(), "{}", g.validate());
    let f = g.faces().unwrap();
    assert_eq!(f.count(), 2);
    // outer face walk has 4 darts, inner too
    assert_eq!(f.walks[f.outer].darts.len(), 4);
}

#[test]
fn single_edge_one_face() {
    let d = GeometricDrawing {
        vertices: vec![(v(1), Pt::of(0, 0)), (v(2), Pt::of(3, 1))],
        edges: vec![(e(1), v(1), v(2), vec![Pt::of(0, 0), Pt::of(3, 1)])],
    };
    let g = ingest_geometry(&d).unwrap();
    assert!(g.validate().is_ok());
    assert_eq!(g.faces().unwrap().count(), 1);
}

#[test]
fn tri3_structure() {
    let g = tri3();
    assert!(g.validate().is_ok(), "{}", g.validate());
    assert_eq!(g.total_crossings(), 3);
    for eid in [1, 2, 3] {
        assert_eq!(g.crossing_count(e(eid)), 2, "edge {eid}");
    }
    // two faces: the central triangle and the outer face
    let f = g.faces().unwrap();
    assert_eq!(f.count(), 2);
    let inner = (0..f.count()).find(|i| *i != f.outer).unwrap();
    assert_eq!(f.walks[inner].darts.len(), 3, "central triangle");
    assert_eq!(
        g.abstract_edge_set(),
        [(v(1), v(2)), (v(3), v(4)), (v(5), v(6))].into_iter().collect()
    );
}

#[test]
fn tri3_crossing_coordinates() {
    // exact crossing points, asserted via the raw segment oracle
    use replanar_core::geom::{seg_intersection, SegInter};
    let a = (Pt::of(0, 2), Pt::of(6, 2));
    let b = (Pt::of(1, 0), Pt::of(3, 4));
    let c = (Pt::of(4, 0), Pt::of(2, 4));
    assert_eq!(
        seg_intersection(&a.0, &a.1, &b.0, &b.1),
        SegInter::Point(Pt::of(2, 2))
    );
    assert_eq!(
        seg_intersection(&a.0, &a.1, &c.0, &c.1),
        SegInter::Point(Pt::of(3, 2))
    );
    assert_eq!(
        seg_intersection(&b.0, &b.1, &c.0, &c.1),
        SegInter::Point(Pt::new(q(5) / q(2), q(3)))
    );
}

#[test]
fn degenerate_rejections() {
    // three concurrent segments through one point
    let mut d = GeometricDrawing {
        vertices: vec![
            (v(1), Pt::of(-2, 0)),
            (v(2), Pt::of(2, 0)),
            (v(3), Pt::of(0, -2)),
            (v(4), Pt::of(0, 2)),
            (v(5), Pt::of(-2, -2)),
            (v(6), Pt::of(2, 2)),
        ],
        edges: vec![],
    };
    straight(&mut d, 1, 1, 2);
    straight(&mut d, 2, 3, 4);
    straight(&mut d, 3, 5, 6);
    assert!(ingest_geometry(&d).is_err());

    // two disjoint segments: fine, zero crossings... but disconnected
    // planarizations are rejected by validation, so join them.
    let mut d2 = GeometricDrawing {
        vertices: vec![
            (v(1), Pt::of(0, 0)),
            (v(2), Pt::of(1, 3)),
            (v(3), Pt::of(2, 0)),
        ],
        edges: vec![],
    };
    straight(&mut d2, 1, 1, 2);
    straight(&mut d2, 2, 2, 3);
    let g = ingest_geometry(&d2).unwrap();
    assert_eq!(g.total_crossings(), 0);
}

#[test]
fn remove_edge_dissolves_crossings() {
    let g0 = tri3();
    let mut g = g0.clone();
    g.remove_edge_route(e(2)).unwrap();
    // intermediate state: endpoints 3 and 4 are now isolated, so full
    // validation is not expected to pass, but the rest must be coherent
    assert_eq!(g.total_crossings(), 1);
    assert_eq!(g.crossing_count(e(1)), 1);
    assert_eq!(g.crossing_count(e(3)), 1);
    assert_eq!(g.edge_ids().count(), 2);
    // only one face remains (a plus-shape with stubs)
    assert_eq!(g.faces().unwrap().count(), 1);
}

#[test]
fn pen_inserts_diagonal_into_square() {
    let mut g = square4();
    // abstract edge (1,3) drawn inside the inner face
    let f = g.faces().unwrap();
    let inner = (0..f.count()).find(|i| *i != f.outer).unwrap();
    // corner of the inner face at vertex 1
    let n1 = g.vertex_node(v(1));
    let gaps = g.corners_at(&f, n1, inner);
    assert_eq!(gaps.len(), 1);
    let rot = g.rotation(n1).to_vec();
    let before = rot[gaps[0] % rot.len()];
    let pen = Pen::new(&mut g, e(9), v(1), v(3), Attach::Before(before)).unwrap();
    assert!(pen.can_end_at(v(3)).unwrap());
    pen.end_at_vertex_auto().unwrap();
    assert!(g.validate().is_ok(), "{}", g.validate());
    assert_eq!(g.faces().unwrap().count(), 3);
    assert_eq!(g.total_crossings(), 0);
}

#[test]
fn pen_crosses_an_arc() {
    // square with a diagonal; route a new edge (2,4) crossing the diagonal
    let mut d = GeometricDrawing {
        vertices: vec![
            (v(1), Pt::of(0, 0)),
            (v(2), Pt::of(2, 0)),
            (v(3), Pt::of(2, 2)),
            (v(4), Pt::of(0, 2)),
        ],
        edges: vec![],
    };
    straight(&mut d, 1, 1, 2);
    straight(&mut d, 2, 2, 3);
    straight(&mut d, 3, 3, 4);
    straight(&mut d, 4, 4, 1);
    straight(&mut d, 5, 1, 3); // diagonal
    let mut g = ingest_geometry(&d).unwrap();
    assert_eq!(g.faces().unwrap().count(), 3);
    // insert (2,4) crossing edge 5: start at vertex 2 in the lower triangle
    let f = g.faces().unwrap();
    let n2 = g.vertex_node(v(2));
    // the lower-triangle corner at vertex 2 is the one bordered by edges 1 and 5... pick
    // the gap whose face also has a corner at vertex 1 and borders edge 5.
    let diag_dart = g.fragments(e(5))[0];
    let lower = f.face_of(diag_dart); // left of 1->3 dart points up-left... determine by test
    let gaps = g.corners_at(&f, n2, lower);
    let (gap, target) = if gaps.len() == 1 {
        (gaps[0], diag_dart)
    } else {
        // vertex 2 borders the face on one corner only in either case; fall back
        let other = f.face_of(diag_dart.twin());
        let gaps2 = g.corners_at(&f, n2, other);
        assert_eq!(gaps2.len(), 1);
        (gaps2[0], diag_dart.twin())
    };
    let rot = g.rotation(n2).to_vec();
    let before = rot[gap % rot.len()];
    let mut pen = Pen::new(&mut g, e(6), v(2), v(4), Attach::Before(before)).unwrap();
    assert!(!pen.can_end_at(v(4)).unwrap(), "must cross the diagonal first");
    pen.cross(target).unwrap();
    assert!(pen.can_end_at(v(4)).unwrap());
    pen.end_at_vertex_auto().unwrap();
    assert!(g.validate().is_ok(), "{}", g.validate());
    assert_eq!(g.total_crossings(), 1);
    assert_eq!(g.faces().unwrap().count(), 5);
    assert_eq!(g.crossing_count(e(6)), 1);
    assert_eq!(g.crossing_count(e(5)), 1);
    // outer face still has 4 boundary darts
    let f2 = g.faces().unwrap();
    assert_eq!(f2.walks[f2.outer].darts.len(), 4);
}
