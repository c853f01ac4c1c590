//! Polygonal contours with rational vertices and their crossing structure.
//!
//! All predicates are exact: coordinates are arbitrary-precision rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Crossing, CrossingId, Diagram, EdgeId, Passage, Shadow, Sign, Strand};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }

    fn sub(&self, o: &Point) -> (BigRational, BigRational) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn cross(u: &(BigRational, BigRational), v: &(BigRational, BigRational)) -> BigRational {
    &u.0 * &v.1 - &u.1 * &v.0
}

fn sign_of(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `det(q - p, r - p)`: `+1` for a counterclockwise turn.
pub fn orientation_determinant(p: &Point, q: &Point, r: &Point) -> i8 {
    sign_of(&cross(&q.sub(p), &r.sub(p)))
}

/// A closed oriented polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    vertices: Vec<Point>,
}

impl Contour {
    pub fn new(vertices: Vec<Point>) -> Result<Contour> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        for i in 0..vertices.len() {
            if vertices[i] == vertices[(i + 1) % vertices.len()] {
                return Err(Error::RepeatedVertex(i));
            }
        }
        Ok(Contour { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn segment(&self, i: usize) -> (&Point, &Point) {
        (&self.vertices[i], &self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn reversed(&self) -> Contour {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Contour { vertices }
    }

    /// Applies `p -> scale * p + offset`.
    pub fn transformed(&self, scale: &BigRational, offset: &Point) -> Contour {
        let vertices = self
            .vertices
            .iter()
            .map(|p| Point::new(&p.x * scale + &offset.x, &p.y * scale + &offset.y))
            .collect();
        Contour { vertices }
    }
}

/// An ordered sequence of contours.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContourSet {
    pub contours: Vec<Contour>,
}

/// Segment `index` of contour `contour`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SegmentRef {
    pub contour: usize,
    pub index: usize,
}

impl fmt::Display for SegmentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "segment {} of contour {}", self.index + 1, self.contour + 1)
    }
}

/// Vertex `index` of contour `contour`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct VertexRef {
    pub contour: usize,
    pub index: usize,
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex {} of contour {}", self.index + 1, self.contour + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum GeneralPositionViolation {
    #[error("{0}, {1} and {2} are collinear")]
    CollinearVertices(VertexRef, VertexRef, VertexRef),
    #[error("{vertex} lies on {segment}")]
    VertexOnSegment { vertex: VertexRef, segment: SegmentRef },
    #[error("{0} and {1} overlap")]
    OverlappingSegments(SegmentRef, SegmentRef),
    #[error("{0}, {1} and {2} pass through one point")]
    TripleIntersection(SegmentRef, SegmentRef, SegmentRef),
}

/// Interior intersection of two segments with its parameters along each.
struct Hit {
    point: Point,
    t: BigRational,
    u: BigRational,
}

fn interior_hit(p: (&Point, &Point), q: (&Point, &Point)) -> Option<Hit> {
    let r = p.1.sub(p.0);
    let s = q.1.sub(q.0);
    let denom = cross(&r, &s);
    if denom.is_zero() {
        return None;
    }
    let qp = q.0.sub(p.0);
    let t = cross(&qp, &s) / &denom;
    let u = cross(&qp, &r) / &denom;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if t > zero && t < one && u > zero && u < one {
        let point = Point::new(&p.0.x + &r.0 * &t, &p.0.y + &r.1 * &t);
        Some(Hit { point, t, u })
    } else {
        None
    }
}

fn on_segment(v: &Point, s: (&Point, &Point)) -> bool {
    if orientation_determinant(s.0, s.1, v) != 0 {
        return false;
    }
    let within = |a: &BigRational, b: &BigRational, x: &BigRational| {
        (a <= x && x <= b) || (b <= x && x <= a)
    };
    within(&s.0.x, &s.1.x, &v.x) && within(&s.0.y, &s.1.y, &v.y)
}

impl ContourSet {
    pub fn new(contours: Vec<Contour>) -> ContourSet {
        ContourSet { contours }
    }

    fn vertex_refs(&self) -> Vec<(VertexRef, &Point)> {
        self.contours
            .iter()
            .enumerate()
            .flat_map(|(c, k)| {
                k.vertices
                    .iter()
                    .enumerate()
                    .map(move |(index, p)| (VertexRef { contour: c, index }, p))
            })
            .collect()
    }

    fn segment_refs(&self) -> Vec<(SegmentRef, (&Point, &Point))> {
        self.contours
            .iter()
            .enumerate()
            .flat_map(|(c, k)| {
                (0..k.vertices.len()).map(move |index| (SegmentRef { contour: c, index }, k.segment(index)))
            })
            .collect()
    }

    /// Whether two segments share an endpoint (consecutive on one contour).
    fn adjacent(&self, a: SegmentRef, b: SegmentRef) -> bool {
        if a.contour != b.contour {
            return false;
        }
        let n = self.contours[a.contour].vertices.len();
        (a.index + 1) % n == b.index || (b.index + 1) % n == a.index
    }

    pub fn validate_general_position(&self) -> std::result::Result<(), Vec<GeneralPositionViolation>> {
        let mut violations = Vec::new();
        let vertices = self.vertex_refs();
        let segments = self.segment_refs();

        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                for k in j + 1..vertices.len() {
                    if orientation_determinant(vertices[i].1, vertices[j].1, vertices[k].1) == 0 {
                        violations.push(GeneralPositionViolation::CollinearVertices(
                            vertices[i].0,
                            vertices[j].0,
                            vertices[k].0,
                        ));
                    }
                }
            }
        }

        for &(vr, v) in &vertices {
            for &(sr, s) in &segments {
                if s.0 == v || s.1 == v {
                    continue;
                }
                if on_segment(v, s) {
                    violations.push(GeneralPositionViolation::VertexOnSegment { vertex: vr, segment: sr });
                }
            }
        }

        let mut hits = Vec::new();
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                let (a, sa) = segments[i];
                let (b, sb) = segments[j];
                let ra = sa.1.sub(sa.0);
                let rb = sb.1.sub(sb.0);
                if cross(&ra, &rb).is_zero()
                    && orientation_determinant(sa.0, sa.1, sb.0) == 0
                    && (on_segment(sb.0, sa) || on_segment(sb.1, sa) || on_segment(sa.0, sb))
                    && !self.adjacent(a, b)
                {
                    violations.push(GeneralPositionViolation::OverlappingSegments(a, b));
                }
                if let Some(hit) = interior_hit(sa, sb) {
                    hits.push((i, j, hit.point));
                }
            }
        }

        for (i, j, point) in &hits {
            for (k, &(c, s)) in segments.iter().enumerate() {
                if k <= *j || k == *i {
                    continue;
                }
                if on_segment(point, s) {
                    violations.push(GeneralPositionViolation::TripleIntersection(
                        segments[*i].0,
                        segments[*j].0,
                        c,
                    ));
                }
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// The crossing structure of the contours.
    ///
    /// One crossing per interior segment intersection, numbered in order of
    /// (first segment, second segment) over the global segment order; strand
    /// `A` is the earlier segment. Edges are numbered along each contour,
    /// starting with the arc through its first vertex. Contours without
    /// intersections become free loops; the component order follows contour
    /// order.
    pub fn compute_shadow(&self) -> Result<(Shadow, BTreeMap<CrossingId, Point>)> {
        self.validate_general_position().map_err(Error::GeneralPosition)?;
        let segments = self.segment_refs();

        // (contour, segment, parameter, crossing index, strand)
        let mut events: Vec<(usize, usize, BigRational, usize, Strand)> = Vec::new();
        let mut points = BTreeMap::new();
        let mut orients = Vec::new();
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                let (a, sa) = segments[i];
                let (b, sb) = segments[j];
                if let Some(hit) = interior_hit(sa, sb) {
                    let k = orients.len();
                    let da = sa.1.sub(sa.0);
                    let db = sb.1.sub(sb.0);
                    let orient = if sign_of(&cross(&da, &db)) > 0 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    };
                    orients.push(orient);
                    points.insert(CrossingId(k as u32 + 1), hit.point);
                    events.push((a.contour, a.index, hit.t, k, Strand::A));
                    events.push((b.contour, b.index, hit.u, k, Strand::B));
                }
            }
        }
        events.sort_by(|x, y| {
            (x.0, x.1)
                .cmp(&(y.0, y.1))
                .then_with(|| x.2.partial_cmp(&y.2).unwrap_or(Ordering::Equal))
        });

        let mut passages: Vec<[Option<Passage>; 2]> = vec![[None, None]; orients.len()];
        let mut next_edge = 1u32;
        let mut free_loops = 0;
        let mut order = Vec::new();
        for contour in 0..self.contours.len() {
            let on_contour: Vec<_> = events.iter().filter(|e| e.0 == contour).collect();
            let m = on_contour.len() as u32;
            if m == 0 {
                free_loops += 1;
                continue;
            }
            let base = next_edge;
            order.push(EdgeId(base));
            for (k, ev) in on_contour.iter().enumerate() {
                let k = k as u32;
                let p = Passage::new(base + k, base + (k + 1) % m);
                let slot = match ev.4 {
                    Strand::A => 0,
                    Strand::B => 1,
                };
                passages[ev.3][slot] = Some(p);
            }
            next_edge += m;
        }

        let crossings = passages
            .into_iter()
            .zip(orients)
            .enumerate()
            .map(|(k, (p, orient_ab))| Crossing {
                id: CrossingId(k as u32 + 1),
                a: p[0].expect("every crossing has an A passage"),
                b: p[1].expect("every crossing has a B passage"),
                orient_ab,
                over: Strand::A,
            })
            .collect();
        let d = Diagram::new(crossings, free_loops).with_component_order(order);
        Ok((d.shadow(), points))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contour(pts: &[(i64, i64)]) -> Contour {
        Contour::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    #[test]
    fn orientation_of_unit_triangles() {
        let p = |x, y| Point::from_ints(x, y);
        assert_eq!(orientation_determinant(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orientation_determinant(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
        assert_eq!(orientation_determinant(&p(0, 0), &p(1, 1), &p(2, 2)), 0);
    }

    #[test]
    fn contours_need_three_distinct_vertices() {
        assert!(matches!(
            Contour::new(vec![Point::from_ints(0, 0), Point::from_ints(1, 0)]),
            Err(Error::TooFewVertices(2))
        ));
        let p = Point::from_ints(0, 0);
        assert!(matches!(
            Contour::new(vec![p.clone(), Point::from_ints(1, 0), p]),
            Err(Error::RepeatedVertex(2))
        ));
    }

    #[test]
    fn disjoint_triangles_are_free_loops() {
        let set = ContourSet::new(vec![
            contour(&[(0, 0), (4, 1), (1, 3)]),
            contour(&[(10, 0), (14, 2), (11, 5)]),
        ]);
        assert!(set.validate_general_position().is_ok());
        let (shadow, points) = set.compute_shadow().unwrap();
        assert_eq!(shadow.diagram().crossing_count(), 0);
        assert_eq!(shadow.diagram().free_loops(), 2);
        assert!(points.is_empty());
    }

    #[test]
    fn vertex_on_another_edge_is_rejected() {
        let set = ContourSet::new(vec![
            contour(&[(0, 0), (4, 0), (0, 4)]),
            contour(&[(2, 0), (5, -3), (6, 1)]),
        ]);
        let errs = set.validate_general_position().unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, GeneralPositionViolation::VertexOnSegment { .. })));
        assert!(matches!(set.compute_shadow(), Err(Error::GeneralPosition(_))));
    }

    #[test]
    fn triple_points_are_rejected() {
        // Three segments through the origin, no three vertices collinear.
        let set = ContourSet::new(vec![
            contour(&[(-3, -1), (3, 1), (10, -20)]),
            contour(&[(-1, -3), (1, 3), (-20, 10)]),
            contour(&[(-2, 3), (2, -3), (30, 31)]),
        ]);
        let errs = set.validate_general_position().unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, GeneralPositionViolation::TripleIntersection(..))));
    }
}
