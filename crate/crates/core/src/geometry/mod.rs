//! Coordinate-form planar integral point sets.
//!
//! Points live in a shared-radicand frame: a set carries one squarefree
//! `q >= 1`, and every point is `(x, y*sqrt(q))` with `x, y` rational. Every
//! planar integral point set in scope here (the fan constructions and the
//! unit-distance sets) admits such a frame, `q` being the characteristic.
//! All predicates are exact; nothing in this module touches floating point.

mod document;
mod predicates;

pub use document::{parse_planar_document, PlanarDocument, PLANAR_FORMAT};
pub use predicates::CrossIntersection;

use serde::{Deserialize, Serialize};

use crate::exactnum::{self, interval_sqrt, NumError, Rational, RationalInterval};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("a planar set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("radicand must be a positive squarefree integer, got {0}")]
    InvalidRadicand(u64),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("open segments intersect; cross classification requires disjoint open segments")]
    SegmentsIntersect,
    #[error("set is not integral")]
    NotIntegral,
    #[error("set is degenerate (all points collinear)")]
    Degenerate,
    #[error("distance from point to segment endpoint is irrational")]
    NonRationalDistance,
    #[error("quadrilateral is not strictly convex in the given order")]
    NotConvex,
    #[error("distance exceeds the supported integer range")]
    DistanceOverflow,
    #[error("document parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A point `(x, y_coeff * sqrt(q))` of a shared-radicand planar frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: Rational,
    #[serde(rename = "y")]
    pub y_coeff: Rational,
}

impl PlanarPoint {
    pub fn new(x: Rational, y_coeff: Rational) -> Self {
        PlanarPoint { x, y_coeff }
    }

    pub fn on_axis(&self) -> bool {
        self.y_coeff.is_zero()
    }
}

/// An ordered planar point set over one squarefree radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarPointSet {
    radicand: u64,
    points: Vec<PlanarPoint>,
}

impl PlanarPointSet {
    /// Validates the radicand (positive, squarefree) and point distinctness.
    pub fn new(radicand: u64, points: Vec<PlanarPoint>) -> Result<Self, GeometryError> {
        if radicand == 0 || !exactnum::is_squarefree(radicand)? {
            return Err(GeometryError::InvalidRadicand(radicand));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(GeometryError::DuplicatePoints(i, j));
                }
            }
        }
        Ok(PlanarPointSet { radicand, points })
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn points(&self) -> &[PlanarPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Result<&PlanarPoint, GeometryError> {
        self.points.get(i).ok_or(GeometryError::IndexOutOfRange(i))
    }

    pub fn contains_point(&self, p: &PlanarPoint) -> bool {
        self.points.contains(p)
    }

    /// Appends a point, revalidating distinctness.
    pub fn with_point(&self, p: PlanarPoint) -> Result<Self, GeometryError> {
        let mut points = self.points.clone();
        points.push(p);
        PlanarPointSet::new(self.radicand, points)
    }
}

/// A segment between two distinct points of a shared-radicand frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    a: PlanarPoint,
    b: PlanarPoint,
}

impl Segment {
    pub fn new(a: PlanarPoint, b: PlanarPoint) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn endpoints(&self) -> (&PlanarPoint, &PlanarPoint) {
        (&self.a, &self.b)
    }
}

/// A point pair whose squared distance is not the square of an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    pub dist_squared: Rational,
}

/// Result of exact integrality verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub is_integral: bool,
    pub full_dimensional: bool,
    /// Largest pairwise distance; present only when integral.
    pub diameter: Option<u64>,
    /// Smallest pairwise distance; present only when integral.
    pub min_distance: Option<u64>,
    /// Sorted multiset of all pairwise distances; empty unless integral.
    pub distance_multiset: Vec<u64>,
    pub failures: Vec<PairFailure>,
}

/// Squared Euclidean distance of two points in the frame with the given
/// radicand: `(dx)^2 + (dy)^2 * q`, an exact rational.
pub fn dist_squared(p: &PlanarPoint, q_pt: &PlanarPoint, radicand: u64) -> Rational {
    let dx = &p.x - &q_pt.x;
    let dy = &p.y_coeff - &q_pt.y_coeff;
    dx.square() + dy.square() * Rational::from(radicand)
}

/// Integer distance of two points, when the squared distance is the square
/// of an integer.
pub fn exact_distance(
    p: &PlanarPoint,
    q_pt: &PlanarPoint,
    radicand: u64,
) -> Result<Option<u64>, GeometryError> {
    let d2 = dist_squared(p, q_pt, radicand);
    match d2.to_bigint() {
        None => Ok(None),
        Some(n) => {
            let (root, exact) = exactnum::isqrt(n.magnitude());
            if !exact {
                return Ok(None);
            }
            use num_traits::ToPrimitive;
            root.to_u64()
                .map(Some)
                .ok_or(GeometryError::DistanceOverflow)
        }
    }
}

/// Orientation of the triple `(a, b, c)`: the sign of the cross product
/// coefficient, which is exact because the shared `sqrt(q)` factors out.
pub fn orientation(a: &PlanarPoint, b: &PlanarPoint, c: &PlanarPoint) -> i32 {
    let lhs = (&b.x - &a.x) * (&c.y_coeff - &a.y_coeff);
    let rhs = (&c.x - &a.x) * (&b.y_coeff - &a.y_coeff);
    (lhs - rhs).signum()
}

pub fn collinear(a: &PlanarPoint, b: &PlanarPoint, c: &PlanarPoint) -> bool {
    orientation(a, b, c) == 0
}

/// Verifies that every pairwise distance is the square root of a perfect
/// square and that the set spans the plane.
pub fn verify_integral_set(s: &PlanarPointSet) -> Result<IntegralityReport, GeometryError> {
    let n = s.len();
    if n < 3 {
        return Err(GeometryError::TooFewPoints(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if s.points[i] == s.points[j] {
                return Err(GeometryError::DuplicatePoints(i, j));
            }
        }
    }

    let mut distances = Vec::with_capacity(n * (n - 1) / 2);
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d2 = dist_squared(&s.points[i], &s.points[j], s.radicand);
            match exact_distance(&s.points[i], &s.points[j], s.radicand)? {
                Some(d) if d >= 1 => distances.push(d),
                _ => failures.push(PairFailure {
                    i,
                    j,
                    dist_squared: d2,
                }),
            }
        }
    }

    let full_dimensional = (2..n).any(|k| !collinear(&s.points[0], &s.points[1], &s.points[k]));

    let is_integral = failures.is_empty();
    if is_integral {
        distances.sort_unstable();
        Ok(IntegralityReport {
            is_integral,
            full_dimensional,
            diameter: distances.last().copied(),
            min_distance: distances.first().copied(),
            distance_multiset: distances,
            failures,
        })
    } else {
        Ok(IntegralityReport {
            is_integral,
            full_dimensional,
            diameter: None,
            min_distance: None,
            distance_multiset: Vec::new(),
            failures,
        })
    }
}

/// The characteristic: the squarefree `q` such that every triangle area in
/// the set is a rational multiple of `sqrt(q)`.
///
/// In the shared-radicand frame every triangle area is `(cross/2)*sqrt(q)`
/// with a rational cross product, so the characteristic equals the frame
/// radicand; this is cross-checked against the definitional route (the
/// squarefree part of numerator times denominator of a squared area)
/// whenever that factorization stays within the trial-division limit.
pub fn characteristic(s: &PlanarPointSet) -> Result<u64, GeometryError> {
    let report = verify_integral_set(s)?;
    if !report.is_integral {
        return Err(GeometryError::NotIntegral);
    }
    if !report.full_dimensional {
        return Err(GeometryError::Degenerate);
    }
    let tri = first_nondegenerate_triangle(s).ok_or(GeometryError::Degenerate)?;
    let area_sq = triangle_area_squared(s, tri.0, tri.1, tri.2)?;
    debug_assert!(area_sq.is_positive());
    let product = (area_sq.numer() * area_sq.denom()).magnitude().clone();
    match exactnum::squarefree_part(&product) {
        Ok((sf, _)) => {
            use num_traits::ToPrimitive;
            let definitional = sf.to_u64().ok_or(GeometryError::DistanceOverflow)?;
            debug_assert_eq!(definitional, s.radicand);
            Ok(definitional)
        }
        // The residual exceeded the factor limit; the frame identity still
        // pins the squarefree part exactly.
        Err(NumError::FactorLimitExceeded { .. }) => Ok(s.radicand),
        Err(e) => Err(e.into()),
    }
}

fn first_nondegenerate_triangle(s: &PlanarPointSet) -> Option<(usize, usize, usize)> {
    let n = s.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !collinear(&s.points[i], &s.points[j], &s.points[k]) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Squared area of the triangle on points `i, j, k`: `(cross/2)^2 * q`.
pub fn triangle_area_squared(
    s: &PlanarPointSet,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Rational, GeometryError> {
    let (a, b, c) = (s.point(i)?, s.point(j)?, s.point(k)?);
    let cross =
        (&b.x - &a.x) * (&c.y_coeff - &a.y_coeff) - (&c.x - &a.x) * (&b.y_coeff - &a.y_coeff);
    Ok(cross.square() * Rational::ratio(1, 4) * Rational::from(s.radicand))
}

/// Classifies the intersection of the crosses of two segments. The cross of
/// a segment is the union of its carrier line and its perpendicular
/// bisector. Requires the open segments to be disjoint.
pub fn cross_intersection(
    seg1: &Segment,
    seg2: &Segment,
    radicand: u64,
) -> Result<CrossIntersection, GeometryError> {
    predicates::cross_intersection(seg1, seg2, radicand)
}

/// `|N M1| - |N M2|` for the segment `(M1, M2)`, defined when both
/// distances are rational (their squares are perfect rational squares).
pub fn rho_value(
    n_pt: &PlanarPoint,
    seg: &Segment,
    radicand: u64,
) -> Result<Rational, GeometryError> {
    let (m1, m2) = seg.endpoints();
    let d1 = dist_squared(n_pt, m1, radicand)
        .sqrt_exact()
        .ok_or(GeometryError::NonRationalDistance)?;
    let d2 = dist_squared(n_pt, m2, radicand)
        .sqrt_exact()
        .ok_or(GeometryError::NonRationalDistance)?;
    Ok(d1 - d2)
}

/// Counts point pairs of `s` lying on the line through points `i` and `j`
/// whose distance is exactly `k`. The equal-segments lemma bounds this by
/// `2k - 1` for integral sets.
pub fn count_equal_segments_on_line(
    s: &PlanarPointSet,
    i: usize,
    j: usize,
    k: u64,
) -> Result<usize, GeometryError> {
    let a = s.point(i)?.clone();
    let b = s.point(j)?.clone();
    if a == b {
        return Err(GeometryError::DegenerateSegment);
    }
    let on_line: Vec<&PlanarPoint> = s.points.iter().filter(|p| collinear(&a, &b, p)).collect();
    let k_sq = Rational::from(k).square();
    let mut count = 0;
    for (u, p) in on_line.iter().enumerate() {
        for q_pt in &on_line[u + 1..] {
            if dist_squared(p, q_pt, s.radicand) == k_sq {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// For a strictly convex quadrilateral `ABCD` (in cyclic order), tests that
/// some diagonal exceeds some side; always true by the convex-quadrilateral
/// lemma, and checked here exactly on squared lengths.
pub fn convex_quad_diag_exceeds_side(
    a: &PlanarPoint,
    b: &PlanarPoint,
    c: &PlanarPoint,
    d: &PlanarPoint,
    radicand: u64,
) -> Result<bool, GeometryError> {
    let orients = [
        orientation(a, b, c),
        orientation(b, c, d),
        orientation(c, d, a),
        orientation(d, a, b),
    ];
    if orients[0] == 0 || orients.iter().any(|&o| o != orients[0]) {
        return Err(GeometryError::NotConvex);
    }
    let diag = dist_squared(a, c, radicand).max(dist_squared(b, d, radicand));
    let side = dist_squared(a, b, radicand)
        .min(dist_squared(b, c, radicand))
        .min(dist_squared(c, d, radicand))
        .min(dist_squared(d, a, radicand));
    Ok(diag > side)
}

/// Bounding-box report in the frame whose first axis is the diameter
/// direction (square-container lemma).
#[derive(Debug, Clone)]
pub struct ContainerReport {
    pub diameter: u64,
    /// Extent along the diameter direction; exact (the dot products stay
    /// rational).
    pub side_along_diameter: Rational,
    /// Extent perpendicular to the diameter, certified by interval
    /// arithmetic at the stated tolerance (the value leaves the rational
    /// field).
    pub side_perpendicular: RationalInterval,
    /// log2 of the interval tolerance used for the perpendicular side.
    pub tolerance_log2: i64,
    /// Both sides certified `<= diameter`.
    pub fits_in_diameter_square: bool,
}

/// Checks the square-container lemma: an integral planar set of diameter
/// `d` fits in an axis square of side `d` once the first axis is rotated to
/// the diameter direction.
pub fn square_container_report(s: &PlanarPointSet) -> Result<ContainerReport, GeometryError> {
    const TOL_LOG2: i64 = -40;
    let report = verify_integral_set(s)?;
    if !report.is_integral {
        return Err(GeometryError::NotIntegral);
    }
    let d = report.diameter.expect("integral set has a diameter");
    let d_sq = Rational::from(d).square();

    // Locate one diameter pair.
    let mut pair = None;
    'outer: for i in 0..s.len() {
        for j in i + 1..s.len() {
            if dist_squared(&s.points[i], &s.points[j], s.radicand) == d_sq {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let (ia, ib) = pair.expect("diameter is attained");
    let a = s.points[ia].clone();
    let b = &s.points[ib];
    let dx = &b.x - &a.x;
    let dy = &b.y_coeff - &a.y_coeff;
    let q = Rational::from(s.radicand);
    let d_rat = Rational::from(d);

    // Projections onto the diameter direction are rational:
    // dot((P-A), (B-A)) = (px-ax)(bx-ax) + (py-ay)(by-ay) q.
    let mut u_min: Option<Rational> = None;
    let mut u_max: Option<Rational> = None;
    // Perpendicular offsets are cross/d * sqrt(q); track the rational cross.
    let mut w_min: Option<Rational> = None;
    let mut w_max: Option<Rational> = None;
    for p in &s.points {
        let px = &p.x - &a.x;
        let py = &p.y_coeff - &a.y_coeff;
        let u = (&px * &dx + &py * &dy * &q) / d_rat.clone();
        let w = &px * &dy - &py * &dx;
        u_min = Some(u_min.map_or(u.clone(), |m: Rational| m.min(u.clone())));
        u_max = Some(u_max.map_or(u.clone(), |m: Rational| m.max(u)));
        w_min = Some(w_min.map_or(w.clone(), |m: Rational| m.min(w.clone())));
        w_max = Some(w_max.map_or(w.clone(), |m: Rational| m.max(w)));
    }
    let side_u = u_max.unwrap() - u_min.unwrap();
    let w_spread = w_max.unwrap() - w_min.unwrap();
    // side_w = w_spread * sqrt(q) / d = sqrt(w_spread^2 q) / d.
    let tol = Rational::pow2(TOL_LOG2);
    let side_w = interval_sqrt(&(w_spread.square() * &q), &tol)?
        .mul_rational(&d_rat.recip().map_err(NumError::from)?);

    let fits = side_u <= d_rat && side_w.high() <= &d_rat;
    Ok(ContainerReport {
        diameter: d,
        side_along_diameter: side_u,
        side_perpendicular: side_w,
        tolerance_log2: TOL_LOG2,
        fits_in_diameter_square: fits,
    })
}

#[cfg(test)]
pub(crate) mod test_sets {
    use super::*;

    /// Equilateral triangle of side 1, characteristic 3.
    pub fn equilateral() -> PlanarPointSet {
        PlanarPointSet::new(
            3,
            vec![
                PlanarPoint::new(Rational::ratio(-1, 2), Rational::zero()),
                PlanarPoint::new(Rational::ratio(1, 2), Rational::zero()),
                PlanarPoint::new(Rational::zero(), Rational::ratio(1, 2)),
            ],
        )
        .unwrap()
    }

    /// The 5-point fan with unit distance: x in {±1/2, ±7/2}, apex at
    /// (0, sqrt(15)/2).
    pub fn fan5() -> PlanarPointSet {
        PlanarPointSet::new(
            15,
            vec![
                PlanarPoint::new(Rational::ratio(-7, 2), Rational::zero()),
                PlanarPoint::new(Rational::ratio(-1, 2), Rational::zero()),
                PlanarPoint::new(Rational::ratio(1, 2), Rational::zero()),
                PlanarPoint::new(Rational::ratio(7, 2), Rational::zero()),
                PlanarPoint::new(Rational::zero(), Rational::ratio(1, 2)),
            ],
        )
        .unwrap()
    }
}
