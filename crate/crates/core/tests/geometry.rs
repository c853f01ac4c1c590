mod common;

use common::alternating;
use conway_core::geometry::{orientation_determinant, GeneralPositionViolation};
use conway_core::io::fixtures::CONTOUR_FIXTURES;
use conway_core::*;
use num_rational::BigRational;

fn contours(name: &str) -> ContourSet {
    let f = CONTOUR_FIXTURES.iter().find(|f| f.name == name).unwrap();
    parse_contours(f.source).unwrap().to_set()
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    let between = |x: &BigRational, y: &BigRational, v: &BigRational| (x <= v && v <= y) || (y <= v && v <= x);
    orientation_determinant(a, b, p) == 0 && between(&a.x, &b.x, &p.x) && between(&a.y, &b.y, &p.y)
}

/// Segments through `p`, in global (contour, index) order.
fn segments_through(set: &ContourSet, p: &Point) -> Vec<(Point, Point)> {
    let mut out = Vec::new();
    for c in &set.contours {
        for i in 0..c.vertices().len() {
            let (a, b) = c.segment(i);
            if on_segment(p, a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[test]
fn contour_fixtures_ingest_with_geometric_orientations() {
    for f in CONTOUR_FIXTURES {
        let set = parse_contours(f.source).unwrap().to_set();
        let (shadow, points) = set.compute_shadow().unwrap();
        let d = shadow.diagram();
        assert_eq!(d.crossing_count(), f.crossings, "{}", f.name);
        assert!(d.validate().is_ok());
        assert!(validate_planarity(d), "{}", f.name);
        for c in d.crossings() {
            let p = &points[&c.id];
            let segs = segments_through(&set, p);
            assert_eq!(segs.len(), 2);
            let (a0, a1) = &segs[0];
            let (b0, b1) = &segs[1];
            let tip = Point::new(p.x.clone() + &b1.x - &b0.x, p.y.clone() + &b1.y - &b0.y);
            let along_a = Point::new(p.x.clone() + &a1.x - &a0.x, p.y.clone() + &a1.y - &a0.y);
            let det = orientation_determinant(p, &along_a, &tip);
            assert_eq!(c.orient_ab.value(), det as i64, "{} {}", f.name, c.id);
        }
    }
}

#[test]
fn hopf_quads_give_the_hopf_shadow() {
    let (shadow, _) = contours("hopf_quads").compute_shadow().unwrap();
    let d = shadow.diagram();
    assert_eq!(d.component_count(), 2);
    let e = ConwayEngine::new();
    let linked = d.change_crossing(CrossingId(1)).unwrap();
    assert_eq!(e.coefficient(&linked, 1).unwrap().abs(), 1);
    assert_eq!(e.coefficient(d, 1).unwrap(), 0);
}

#[test]
fn trefoil_hexagon_alternates_to_a_trefoil() {
    let (shadow, _) = contours("trefoil_hexagon").compute_shadow().unwrap();
    let d = alternating(shadow.diagram());
    assert_eq!(d.component_count(), 1);
    let e = ConwayEngine::new();
    assert_eq!(e.conway_polynomial(&d, None).unwrap().to_text(), "c0=1 c2=1");
}

#[test]
fn descending_states_of_ingested_shadows_vanish() {
    let e = ConwayEngine::new();
    for f in CONTOUR_FIXTURES {
        let (shadow, _) = parse_contours(f.source).unwrap().to_set().compute_shadow().unwrap();
        for m in MarkingSpace::new(shadow.diagram()).sample(64) {
            let desc = descending_diagram(&shadow, &m).unwrap();
            for n in 1..=desc.crossing_count() as i32 + 1 {
                assert_eq!(e.coefficient(&desc, n).unwrap(), 0, "{} n={n}", f.name);
            }
        }
    }
}

#[test]
fn disjoint_triangles_are_two_free_loops() {
    let (shadow, _) = contours("disjoint_triangles").compute_shadow().unwrap();
    assert_eq!(shadow.diagram(), &Diagram::unlink(2).with_component_order(vec![]));
}

#[test]
fn reversing_a_contour_flips_orientations() {
    let set = contours("hopf_quads");
    let (base, _) = set.compute_shadow().unwrap();
    let flipped = ContourSet::new(vec![set.contours[0].clone(), set.contours[1].reversed()]);
    let (other, _) = flipped.compute_shadow().unwrap();
    let a: Vec<_> = base.diagram().crossings().iter().map(|c| c.orient_ab).collect();
    let b: Vec<_> = other.diagram().crossings().iter().map(|c| c.orient_ab).collect();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(*x, -*y);
    }
}

#[test]
fn scaling_and_translation_keep_the_shadow() {
    let set = contours("trefoil_hexagon");
    let (base, _) = set.compute_shadow().unwrap();
    let scale = BigRational::new(7.into(), 3.into());
    let offset = Point::from_ints(-11, 5);
    let moved = ContourSet::new(set.contours.iter().map(|c| c.transformed(&scale, &offset)).collect());
    let (other, _) = moved.compute_shadow().unwrap();
    assert_eq!(base, other);
}

#[test]
fn collinear_vertices_are_rejected() {
    let set = parse_contours(
        "contour a\npoint 0 0\npoint 2 0\npoint 1 5\nend\ncontour b\npoint 4 0\npoint 9 1\npoint 7 6\nend\n",
    )
    .unwrap()
    .to_set();
    let errs = set.validate_general_position().unwrap_err();
    assert!(errs
        .iter()
        .any(|v| matches!(v, GeneralPositionViolation::CollinearVertices(..))));
    assert!(matches!(set.compute_shadow(), Err(Error::GeneralPosition(_))));
}
