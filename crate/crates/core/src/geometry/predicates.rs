//! Exact line-level predicates over the quadratic field Q(sqrt(q)).
//!
//! Intersections of carrier lines and perpendicular bisectors leave the
//! shared-radicand point form (both coordinates become general field
//! elements), so this submodule works with full quadratic numbers.

use crate::exactnum::{QuadraticNumber, Rational};

use super::{orientation, GeometryError, PlanarPoint, Segment};

/// Classification of the intersection of two crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossIntersection {
    /// The crosses share a full line.
    WholeLine,
    /// Finitely many points; for disjoint open segments the count is
    /// between 2 and 4 (4 generically, fewer at concurrences).
    FinitePoints(usize),
}

/// A point with both coordinates in Q(sqrt(q)).
#[derive(Debug, Clone, PartialEq, Eq)]
struct FieldPoint {
    x: QuadraticNumber,
    y: QuadraticNumber,
}

impl FieldPoint {
    fn from_planar(p: &PlanarPoint, radicand: u64) -> Self {
        FieldPoint {
            x: QuadraticNumber::from_rational(p.x.clone()),
            y: QuadraticNumber::new_canonical(Rational::zero(), p.y_coeff.clone(), radicand),
        }
    }
}

/// Line `a*x + b*y + c = 0` with coefficients in Q(sqrt(q)).
#[derive(Debug, Clone)]
struct Line {
    a: QuadraticNumber,
    b: QuadraticNumber,
    c: QuadraticNumber,
}

impl Line {
    fn through(p: &FieldPoint, q: &FieldPoint) -> Line {
        let dx = &q.x - &p.x;
        let dy = &q.y - &p.y;
        // (dy)(x - px) - (dx)(y - py) = 0
        let c = &(&dx * &p.y) - &(&dy * &p.x);
        Line { a: dy, b: -&dx, c }
    }

    fn perpendicular_bisector(p: &FieldPoint, q: &FieldPoint) -> Line {
        let dx = &q.x - &p.x;
        let dy = &q.y - &p.y;
        let half = QuadraticNumber::from_rational(Rational::ratio(1, 2));
        let mx = (&p.x + &q.x) * half.clone();
        let my = (&p.y + &q.y) * half;
        // dx(x - mx) + dy(y - my) = 0
        let c = -&(&(&dx * &mx) + &(&dy * &my));
        Line { a: dx, b: dy, c }
    }

    fn same_line(&self, other: &Line) -> bool {
        let ab = &(&self.a * &other.b) - &(&other.a * &self.b);
        let ac = &(&self.a * &other.c) - &(&other.a * &self.c);
        let bc = &(&self.b * &other.c) - &(&other.b * &self.c);
        ab.is_zero() && ac.is_zero() && bc.is_zero()
    }

    /// Intersection point, unless the lines are parallel or identical.
    fn intersect(&self, other: &Line) -> Option<FieldPoint> {
        let det = &(&self.a * &other.b) - &(&other.a * &self.b);
        if det.is_zero() {
            return None;
        }
        let x_num = &(&self.b * &other.c) - &(&other.b * &self.c);
        let y_num = &(&other.a * &self.c) - &(&self.a * &other.c);
        let x = x_num.div(&det).expect("nonzero determinant");
        let y = y_num.div(&det).expect("nonzero determinant");
        Some(FieldPoint { x, y })
    }
}

/// Whether the open segments intersect: a proper crossing, or collinear
/// segments with overlapping interiors. Endpoint touches do not count.
pub(super) fn open_segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let (a1, b1) = s1.endpoints();
    let (a2, b2) = s2.endpoints();
    let d1 = orientation(a1, b1, a2);
    let d2 = orientation(a1, b1, b2);
    let d3 = orientation(a2, b2, a1);
    let d4 = orientation(a2, b2, b1);

    if d1 != 0 || d2 != 0 || d3 != 0 || d4 != 0 {
        return d1 * d2 < 0 && d3 * d4 < 0;
    }

    // All four collinear: compare open parameter intervals along the
    // dominant axis of the common carrier.
    let use_x = a1.x != b1.x;
    let param = |p: &PlanarPoint| {
        if use_x {
            p.x.clone()
        } else {
            p.y_coeff.clone()
        }
    };
    let (lo1, hi1) = minmax(param(a1), param(b1));
    let (lo2, hi2) = minmax(param(a2), param(b2));
    lo1.max(lo2) < hi1.min(hi2)
}

fn minmax(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub(super) fn cross_intersection(
    seg1: &Segment,
    seg2: &Segment,
    radicand: u64,
) -> Result<CrossIntersection, GeometryError> {
    if open_segments_intersect(seg1, seg2) {
        return Err(GeometryError::SegmentsIntersect);
    }
    let (a1, b1) = seg1.endpoints();
    let (a2, b2) = seg2.endpoints();
    let p1 = FieldPoint::from_planar(a1, radicand);
    let q1 = FieldPoint::from_planar(b1, radicand);
    let p2 = FieldPoint::from_planar(a2, radicand);
    let q2 = FieldPoint::from_planar(b2, radicand);

    let cross1 = [
        Line::through(&p1, &q1),
        Line::perpendicular_bisector(&p1, &q1),
    ];
    let cross2 = [
        Line::through(&p2, &q2),
        Line::perpendicular_bisector(&p2, &q2),
    ];

    for l in &cross1 {
        for m in &cross2 {
            if l.same_line(m) {
                return Ok(CrossIntersection::WholeLine);
            }
        }
    }

    let mut points: Vec<FieldPoint> = Vec::with_capacity(4);
    for l in &cross1 {
        for m in &cross2 {
            if let Some(p) = l.intersect(m) {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }
    Ok(CrossIntersection::FinitePoints(points.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(nx: i64, dx: i64, ny: i64, dy: i64) -> PlanarPoint {
        PlanarPoint::new(Rational::ratio(nx, dx), Rational::ratio(ny, dy))
    }

    fn seg(ax: (i64, i64), ay: (i64, i64), bx: (i64, i64), by: (i64, i64)) -> Segment {
        Segment::new(pt(ax.0, ax.1, ay.0, ay.1), pt(bx.0, bx.1, by.0, by.1)).unwrap()
    }

    #[test]
    fn collinear_disjoint_segments_share_carrier() {
        let s1 = seg((0, 1), (0, 1), (1, 1), (0, 1));
        let s2 = seg((2, 1), (0, 1), (3, 1), (0, 1));
        assert_eq!(
            cross_intersection(&s1, &s2, 1).unwrap(),
            CrossIntersection::WholeLine
        );
    }

    #[test]
    fn shared_bisector_is_whole_line() {
        let s1 = seg((0, 1), (0, 1), (1, 1), (0, 1));
        let s2 = seg((0, 1), (2, 1), (1, 1), (2, 1));
        assert_eq!(
            cross_intersection(&s1, &s2, 1).unwrap(),
            CrossIntersection::WholeLine
        );
    }

    #[test]
    fn perpendicular_arms_give_two_points() {
        // Unit segment on the x-axis vs a vertical segment on the y-axis:
        // the crosses meet at (0,0) and (1/2, 3/2).
        let s1 = seg((0, 1), (0, 1), (1, 1), (0, 1));
        let s2 = seg((0, 1), (1, 1), (0, 1), (2, 1));
        assert_eq!(
            cross_intersection(&s1, &s2, 1).unwrap(),
            CrossIntersection::FinitePoints(2)
        );
    }

    #[test]
    fn generic_position_gives_four_points() {
        // Hand-checked: lines y=0, x=1, y=2x-5, x+2y=15/2 meet in four
        // distinct points.
        let s1 = seg((0, 1), (0, 1), (2, 1), (0, 1));
        let s2 = seg((3, 1), (1, 1), (4, 1), (3, 1));
        assert_eq!(
            cross_intersection(&s1, &s2, 1).unwrap(),
            CrossIntersection::FinitePoints(4)
        );
    }

    #[test]
    fn concurrence_can_drop_to_three() {
        // seg2's midpoint lies on seg1's carrier (outside the open part):
        // two of the four pairwise intersections coincide.
        let s1 = seg((0, 1), (0, 1), (1, 1), (0, 1));
        let s2 = seg((3, 1), (-1, 1), (5, 1), (1, 1));
        assert_eq!(
            cross_intersection(&s1, &s2, 1).unwrap(),
            CrossIntersection::FinitePoints(3)
        );
    }

    #[test]
    fn intersecting_open_segments_rejected() {
        let s1 = seg((0, 1), (0, 1), (2, 1), (0, 1));
        let s2 = seg((1, 1), (-1, 1), (1, 1), (1, 1));
        assert_eq!(
            cross_intersection(&s1, &s2, 1),
            Err(GeometryError::SegmentsIntersect)
        );
    }

    #[test]
    fn endpoint_touch_is_allowed() {
        // Sharing an endpoint leaves the open segments disjoint.
        let s1 = seg((0, 1), (0, 1), (1, 1), (0, 1));
        let s2 = seg((1, 1), (0, 1), (2, 1), (1, 1));
        assert!(cross_intersection(&s1, &s2, 1).is_ok());
    }

    #[test]
    fn open_overlap_detected() {
        let s1 = seg((0, 1), (0, 1), (2, 1), (0, 1));
        let s2 = seg((1, 1), (0, 1), (3, 1), (0, 1));
        assert!(open_segments_intersect(&s1, &s2));
        // Touching at one point only: not an open intersection.
        let s3 = seg((2, 1), (0, 1), (3, 1), (0, 1));
        assert!(!open_segments_intersect(&s1, &s3));
    }

    #[test]
    fn field_intersections_with_radical_coordinates() {
        // Segment endpoints with y = k*sqrt(3): the bisector intersections
        // land in Q(sqrt(3)) and are still handled exactly.
        let s1 = seg((0, 1), (0, 1), (1, 1), (1, 1)); // (0,0) -> (1, sqrt(3))
        let s2 = seg((4, 1), (0, 1), (5, 1), (0, 1));
        let result = cross_intersection(&s1, &s2, 3).unwrap();
        assert!(matches!(result, CrossIntersection::FinitePoints(n) if (2..=4).contains(&n)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        /// Cross-intersection lemma: for disjoint open segments the
        /// intersection of the two crosses is a whole line or between 2 and
        /// 4 points.
        #[test]
        fn cross_classification_bounds(
            ax in -6i64..6, ay in -6i64..6, bx in -6i64..6, by in -6i64..6,
            cx in -6i64..6, cy in -6i64..6, dx in -6i64..6, dy in -6i64..6,
        ) {
            prop_assume!((ax, ay) != (bx, by) && (cx, cy) != (dx, dy));
            let s1 = Segment::new(pt(ax, 1, ay, 1), pt(bx, 1, by, 1)).unwrap();
            let s2 = Segment::new(pt(cx, 1, cy, 1), pt(dx, 1, dy, 1)).unwrap();
            match cross_intersection(&s1, &s2, 1) {
                Err(GeometryError::SegmentsIntersect) => {}
                Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
                Ok(CrossIntersection::WholeLine) => {}
                Ok(CrossIntersection::FinitePoints(n)) => {
                    prop_assert!((2..=4).contains(&n), "count {} out of range", n);
                }
            }
        }
    }
}
