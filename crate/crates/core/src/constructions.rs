//! Constructive machinery for integral point sets with a prescribed
//! distance.
//!
//! The core is the fan construction: for `a = 2^(2^k) - 1` the divisors
//! `c_J = prod_{j in J} (2^(2^j) + 1)` give collinear points
//! `M_{J±} = (±b_J/2, 0)` with `b_J = (c_J - a/c_J)/2`, plus the apex
//! `N = (0, sqrt(a)/2)`. All pairwise distances are integers, the pair with
//! `|b_J| = 1` realizes distance 1, and the apex distances are
//! `g_J/2 = (c_J + a/c_J)/4`. Trimming, dilation and the simplex blow-up
//! then produce prime sets of any size `n >= m+1` in any dimension
//! `m >= 3` containing any prescribed distance `d`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::dmatrix::{self, DistanceMatrix, MatrixError};
use crate::exactnum::{NumError, Rational};
use crate::geometry::{self, GeometryError, PlanarPoint, PlanarPointSet};
use crate::provenance::Provenance;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("construction parameter k must be >= 1, got {0}")]
    BadK(u32),
    #[error("target size {target} out of range {min}..={max}")]
    BadTrimTarget { target: usize, min: usize, max: usize },
    #[error("set does not have the fan construction shape: {0}")]
    NotConstructionShape(&'static str),
    #[error("set is not a fan (needs exactly one point off the carrier line)")]
    NotFacher,
    #[error("dilation factor must be >= 1")]
    BadDilation,
    #[error("blow-up dimension must be >= 3, got {0}")]
    BadDimension(u32),
    #[error("simplex side must be >= 1")]
    BadSimplexSide,
    #[error(
        "circumradius condition violated: side^2 (m-2) / (2(m-1)) = {required} exceeds apex height^2 = {available}"
    )]
    CircumradiusViolated {
        required: Rational,
        available: Rational,
    },
    #[error("blow-up output spans dimension {got}, expected {expected}")]
    DimensionCertificationFailed { expected: usize, got: usize },
    #[error("prime set parameters out of range: need m >= 3, n >= m+1, d >= 1")]
    BadPrimeParams,
    #[error("coordinate exceeds supported integer range")]
    Overflow,
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Parameters of the fan construction for a given `k`.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    pub k: u32,
    /// `a = 2^(2^k) - 1`.
    pub a: BigUint,
    /// `d_j = 2^(2^j) + 1` for `1 <= j <= k-1`.
    pub d_list: Vec<BigUint>,
    pub subsets: Vec<SubsetParams>,
}

/// Per-subset derived quantities.
#[derive(Debug, Clone)]
pub struct SubsetParams {
    /// Indices `j` of the subset, ascending.
    pub indices: Vec<u32>,
    /// `c_J`, the product of the chosen `d_j`.
    pub c: BigUint,
    /// `b_J = (c_J - a/c_J)/2`; odd, possibly negative.
    pub b: BigInt,
    /// `g_J = (c_J + a/c_J)/2`; even.
    pub g: BigUint,
}

impl ConstructionParams {
    pub fn new(k: u32) -> Result<Self, ConstructError> {
        if k < 1 {
            return Err(ConstructError::BadK(k));
        }
        let a = (BigUint::one() << (1u64 << k)) - BigUint::one();
        let d_list: Vec<BigUint> = (1..k)
            .map(|j| (BigUint::one() << (1u64 << j)) + BigUint::one())
            .collect();
        let index_count = k - 1;
        let mut subsets = Vec::with_capacity(1 << index_count);
        for mask in 0u32..(1 << index_count) {
            let mut indices = Vec::new();
            let mut c = BigUint::one();
            for (pos, d) in d_list.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    indices.push(pos as u32 + 1);
                    c *= d;
                }
            }
            let quotient = &a / &c;
            let b = (BigInt::from(c.clone()) - BigInt::from(quotient.clone())) / BigInt::from(2);
            let g = (&c + &quotient) / BigUint::from(2u32);
            subsets.push(SubsetParams { indices, c, b, g });
        }
        Ok(ConstructionParams {
            k,
            a,
            d_list,
            subsets,
        })
    }
}

/// Builds the fan point set for parameter `k`: `2^k + 1` points, all
/// distances integral, distance 1 present, `2^k` of them collinear.
pub fn construction1(k: u32) -> Result<PlanarPointSet, ConstructError> {
    let params = ConstructionParams::new(k)?;
    construction1_from_params(&params)
}

pub fn construction1_from_params(
    params: &ConstructionParams,
) -> Result<PlanarPointSet, ConstructError> {
    // Radicand: the squarefree part of a; the apex height sqrt(a)/2 becomes
    // (f/2) sqrt(s) when a = s f^2. For k <= 6 the trial-division limit
    // certifies the factorization; beyond that the factor limit fails fast.
    let (s, f) = crate::exactnum::squarefree_part(&params.a)?;
    let radicand = s.to_u64().ok_or(ConstructError::Overflow)?;
    let half = Rational::ratio(1, 2);

    let mut points = Vec::with_capacity((1usize << params.k) + 1);
    for subset in &params.subsets {
        let b_half = Rational::from(subset.b.clone()) * &half;
        points.push(PlanarPoint::new(b_half.clone(), Rational::zero()));
        points.push(PlanarPoint::new(-b_half, Rational::zero()));
    }
    let apex_y = Rational::from(BigInt::from(f)) * &half;
    points.push(PlanarPoint::new(Rational::zero(), apex_y));

    Ok(PlanarPointSet::new(radicand, points)?)
}

/// Label of a fan point for provenance: `M+{...}` / `M-{...}` or `N`.
fn point_label(p: &PlanarPoint, params: &ConstructionParams) -> String {
    if !p.on_axis() {
        return "N".to_string();
    }
    for subset in &params.subsets {
        let b_half = Rational::from(subset.b.clone()) * Rational::ratio(1, 2);
        let sign = if p.x == b_half {
            "+"
        } else if p.x == -b_half {
            "-"
        } else {
            continue;
        };
        let idx: Vec<String> = subset.indices.iter().map(|i| i.to_string()).collect();
        return format!("M{sign}{{{}}}", idx.join(","));
    }
    format!("({}, 0)", p.x)
}

/// Provenance labels for a (possibly trimmed) fan set.
pub fn fan_provenance(set: &PlanarPointSet, k: u32) -> Result<Provenance, ConstructError> {
    let params = ConstructionParams::new(k)?;
    let mut p = Provenance::for_construction(k);
    p.kept_points = Some(
        set.points()
            .iter()
            .map(|pt| point_label(pt, &params))
            .collect(),
    );
    Ok(p)
}

/// Removes excess collinear points from a fan set down to `target_n`
/// points, never touching the unit pair `(±1/2, 0)` or the apex.
///
/// Pairs are dropped by descending `|x|`; when a single point must go, the
/// positive-x member of the widest remaining pair is removed.
pub fn trim(s: &PlanarPointSet, target_n: usize) -> Result<PlanarPointSet, ConstructError> {
    let n = s.len();
    if target_n < 3 || target_n > n {
        return Err(ConstructError::BadTrimTarget {
            target: target_n,
            min: 3,
            max: n,
        });
    }

    // Validate the construction shape: one off-axis apex at x = 0, the rest
    // on the axis in symmetric pairs including (±1/2, 0).
    let (axis, apex): (Vec<&PlanarPoint>, Vec<&PlanarPoint>) =
        s.points().iter().partition(|p| p.on_axis());
    if apex.len() != 1 {
        return Err(ConstructError::NotConstructionShape(
            "expected exactly one off-axis apex",
        ));
    }
    if !apex[0].x.is_zero() {
        return Err(ConstructError::NotConstructionShape(
            "apex must sit at x = 0",
        ));
    }
    let half = Rational::ratio(1, 2);
    let has = |x: &Rational| axis.iter().any(|p| &p.x == x);
    if !has(&half) || !has(&(-&half)) {
        return Err(ConstructError::NotConstructionShape(
            "unit pair (±1/2, 0) must be present",
        ));
    }
    for p in &axis {
        if !has(&-&p.x) {
            return Err(ConstructError::NotConstructionShape(
                "axis points must come in symmetric pairs",
            ));
        }
    }

    // Positive representatives sorted by descending magnitude; (1/2, 0) is
    // last so the unit pair survives every trim.
    let mut magnitudes: Vec<Rational> = axis
        .iter()
        .filter(|p| p.x.is_positive())
        .map(|p| p.x.clone())
        .collect();
    magnitudes.sort_by(|a, b| b.cmp(a));

    let mut remove = n - target_n;
    let mut removed: Vec<PlanarPoint> = Vec::new();
    for mag in &magnitudes {
        if remove == 0 {
            break;
        }
        if *mag == half {
            return Err(ConstructError::BadTrimTarget {
                target: target_n,
                min: 3,
                max: n,
            });
        }
        if remove >= 2 {
            removed.push(PlanarPoint::new(mag.clone(), Rational::zero()));
            removed.push(PlanarPoint::new(-mag, Rational::zero()));
            remove -= 2;
        } else {
            // Break the widest remaining pair at its positive-x member.
            removed.push(PlanarPoint::new(mag.clone(), Rational::zero()));
            remove -= 1;
        }
    }

    let points: Vec<PlanarPoint> = s
        .points()
        .iter()
        .filter(|p| !removed.contains(p))
        .cloned()
        .collect();
    debug_assert_eq!(points.len(), target_n);
    Ok(PlanarPointSet::new(s.radicand(), points)?)
}

/// Scales all coordinates of a planar set by `p >= 1`; distances scale by
/// `p` exactly.
pub fn dilate(s: &PlanarPointSet, p: u64) -> Result<PlanarPointSet, ConstructError> {
    if p < 1 {
        return Err(ConstructError::BadDilation);
    }
    let factor = Rational::from(p);
    let points = s
        .points()
        .iter()
        .map(|pt| PlanarPoint::new(&pt.x * &factor, &pt.y_coeff * &factor))
        .collect();
    Ok(PlanarPointSet::new(s.radicand(), points)?)
}

/// Scales all entries of a distance matrix by `p >= 1`.
pub fn dilate_matrix(dm: &DistanceMatrix, p: u64) -> Result<DistanceMatrix, ConstructError> {
    if p < 1 {
        return Err(ConstructError::BadDilation);
    }
    Ok(dm.dilate(p)?)
}

/// Plan for replacing the apex of a fan by a regular `(m-2)`-simplex.
#[derive(Debug, Clone)]
pub struct BlowupPlan {
    base: PlanarPointSet,
    /// Indices of the collinear points in `base`.
    line_points: Vec<usize>,
    /// Index of the apex in `base`.
    apex: usize,
    pub target_dim: u32,
    pub simplex_side: u64,
    /// Squared distance from the apex to the carrier line.
    pub apex_height_squared: Rational,
}

impl BlowupPlan {
    /// Detects the fan structure of `base` and checks the circumradius
    /// condition `s^2 (m-2) / (2(m-1)) <= h^2` for simplex side `s` and
    /// apex height `h`.
    pub fn new(base: PlanarPointSet, m: u32, simplex_side: u64) -> Result<Self, ConstructError> {
        if m < 3 {
            return Err(ConstructError::BadDimension(m));
        }
        if simplex_side < 1 {
            return Err(ConstructError::BadSimplexSide);
        }
        let report = geometry::verify_integral_set(&base)?;
        if !report.is_integral {
            return Err(ConstructError::Geometry(GeometryError::NotIntegral));
        }
        let (line_points, apex) = facher_structure(&base).ok_or(ConstructError::NotFacher)?;

        // h^2 = cross((B-A), (P-A))^2 q / |B-A|^2 for two line points A, B.
        let a = &base.points()[line_points[0]];
        let b = &base.points()[line_points[1]];
        let p = &base.points()[apex];
        let dx = &b.x - &a.x;
        let dy = &b.y_coeff - &a.y_coeff;
        let px = &p.x - &a.x;
        let py = &p.y_coeff - &a.y_coeff;
        let cross = &px * &dy - &py * &dx;
        let q = Rational::from(base.radicand());
        let base_sq = geometry::dist_squared(a, b, base.radicand());
        let apex_height_squared = cross.square() * q / base_sq;

        let required = Rational::from(simplex_side).square() * Rational::from(m as u64 - 2)
            / Rational::from(2 * (m as u64 - 1));
        if required > apex_height_squared {
            return Err(ConstructError::CircumradiusViolated {
                required,
                available: apex_height_squared,
            });
        }
        Ok(BlowupPlan {
            base,
            line_points,
            apex,
            target_dim: m,
            simplex_side,
            apex_height_squared,
        })
    }

    pub fn base(&self) -> &PlanarPointSet {
        &self.base
    }
}

/// Finds the fan structure: a line containing all points but one. Returns
/// (indices on the line, apex index).
fn facher_structure(s: &PlanarPointSet) -> Option<(Vec<usize>, usize)> {
    let n = s.len();
    let pts = s.points();
    for i in 0..n {
        for j in i + 1..n {
            let on_line: Vec<usize> = (0..n)
                .filter(|&k| geometry::collinear(&pts[i], &pts[j], &pts[k]))
                .collect();
            if on_line.len() == n - 1 {
                let apex = (0..n).find(|k| !on_line.contains(k)).expect("one off-line");
                return Some((on_line, apex));
            }
        }
    }
    None
}

/// Replaces the apex of a fan by a regular `(m-2)`-simplex of the planned
/// side length: the `n-1` line points keep their mutual distances, each of
/// the `m-1` simplex vertices sits at the old apex distance from every line
/// point, and the output is certified to span exactly `m` dimensions.
pub fn blowup(plan: &BlowupPlan) -> Result<DistanceMatrix, ConstructError> {
    let base = &plan.base;
    let line = &plan.line_points;
    let apex = plan.apex;
    let m = plan.target_dim as usize;
    let n_line = line.len();
    let n_total = n_line + (m - 1);
    let q = base.radicand();

    let dist = |i: usize, j: usize| -> Result<u64, ConstructError> {
        geometry::exact_distance(&base.points()[i], &base.points()[j], q)?
            .ok_or(ConstructError::Geometry(GeometryError::NotIntegral))
    };

    let mut entries = vec![0u64; n_total * n_total];
    let mut set = |e: &mut Vec<u64>, i: usize, j: usize, v: u64| {
        e[i * n_total + j] = v;
        e[j * n_total + i] = v;
    };
    for (ri, &i) in line.iter().enumerate() {
        for (rj, &j) in line.iter().enumerate().skip(ri + 1) {
            let d = dist(i, j)?;
            set(&mut entries, ri, rj, d);
        }
        let to_apex = dist(i, apex)?;
        for v in 0..m - 1 {
            set(&mut entries, ri, n_line + v, to_apex);
        }
    }
    for u in 0..m - 1 {
        for v in u + 1..m - 1 {
            set(&mut entries, n_line + u, n_line + v, plan.simplex_side);
        }
    }

    let dm = DistanceMatrix::new(n_total, entries)?;
    // Certify the spanned dimension instead of trusting the construction;
    // equality in the circumradius condition collapses one dimension.
    let verdict = dmatrix::realizable_dim(&dm);
    match verdict.dimension {
        Some(d) if d == m => Ok(dm),
        got => Err(ConstructError::DimensionCertificationFailed {
            expected: m,
            got: got.unwrap_or(0),
        }),
    }
}

/// Output of [`prime_set`].
#[derive(Debug, Clone)]
pub struct PrimeSetOutput {
    pub matrix: DistanceMatrix,
    pub provenance: Provenance,
    pub k_used: u32,
    /// Whether the requested distance is minimal and occurs exactly once.
    pub unique_min_achieved: bool,
}

/// Builds a prime integral point set of `n` points in dimension `m >= 3`
/// containing distance `d`.
///
/// The base is the fan for the smallest admissible `k`, trimmed to
/// `n - m + 2` points, dilated by `d`, and blown up with a simplex of side
/// `d + 1`; `gcd(d, d+1) = 1` makes the result prime. `k` is escalated
/// while the circumradius condition fails for the dilated height
/// `d * sqrt(a) / 2` (and, when `unique_min` is requested, starts at 2 so
/// the base has a unique unit distance).
pub fn prime_set(
    m: u32,
    n: usize,
    d: u64,
    unique_min: bool,
) -> Result<PrimeSetOutput, ConstructError> {
    if m < 3 || n < m as usize + 1 || d < 1 {
        return Err(ConstructError::BadPrimeParams);
    }
    let n_base = n - m as usize + 2;
    let side = d.checked_add(1).ok_or(ConstructError::Overflow)?;

    let mut k = if unique_min { 2 } else { 1 };
    while (1usize << k) + 1 < n_base {
        k += 1;
    }

    loop {
        let set = construction1(k)?;
        let trimmed = trim(&set, n_base)?;
        let dilated = dilate(&trimmed, d)?;
        match BlowupPlan::new(dilated, m, side) {
            Ok(plan) => {
                let matrix = blowup(&plan)?;
                debug_assert_eq!(matrix.n(), n);
                debug_assert_eq!(matrix.distance_gcd(), 1);

                let multiset = matrix.distance_multiset();
                let unique_min_achieved =
                    multiset[0] == d && multiset.iter().filter(|&&x| x == d).count() == 1;

                let mut provenance = fan_provenance(&trimmed, k)?;
                provenance.dilation = Some(d);
                provenance.target_dim = Some(m);
                provenance.simplex_side = Some(side);
                if unique_min {
                    provenance.unique_min_achieved = Some(unique_min_achieved);
                }
                return Ok(PrimeSetOutput {
                    matrix,
                    provenance,
                    k_used: k,
                    unique_min_achieved,
                });
            }
            Err(ConstructError::CircumradiusViolated { .. }) => {
                // "Sufficiently large height": the next k squares the apex
                // height while the simplex side stays fixed.
                k += 1;
                if k > 16 {
                    return Err(ConstructError::Overflow);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::test_sets::{equilateral, fan5};
    use num_integer::Integer as _;
    use num_traits::Zero as _;

    #[test]
    fn params_small_k() {
        let p = ConstructionParams::new(2).unwrap();
        assert_eq!(p.a, BigUint::from(15u64));
        assert_eq!(p.d_list, vec![BigUint::from(5u64)]);
        let bs: Vec<i64> = p.subsets.iter().map(|s| s.b.to_i64().unwrap()).collect();
        assert_eq!(bs, vec![-7, 1]);
        let gs: Vec<u64> = p.subsets.iter().map(|s| s.g.to_u64().unwrap()).collect();
        assert_eq!(gs, vec![8, 4]);
    }

    #[test]
    fn params_k3_derived_values() {
        // Oracle: c in {1, 5, 17, 85} for a = 255, evaluated by the
        // defining formulas.
        let p = ConstructionParams::new(3).unwrap();
        let mut cb: Vec<(u64, i64, u64)> = p
            .subsets
            .iter()
            .map(|s| {
                (
                    s.c.to_u64().unwrap(),
                    s.b.to_i64().unwrap(),
                    s.g.to_u64().unwrap(),
                )
            })
            .collect();
        cb.sort();
        let expected: Vec<(u64, i64, u64)> = [1u64, 5, 17, 85]
            .iter()
            .map(|&c| {
                let q = 255 / c;
                (c, (c as i64 - q as i64) / 2, (c + q) / 2)
            })
            .collect();
        assert_eq!(cb, expected);
        let bs: Vec<i64> = cb.iter().map(|t| t.1).collect();
        assert_eq!(bs, vec![-127, -23, 1, 41]);
        let g_half: Vec<u64> = cb.iter().map(|t| t.2 / 2).collect();
        assert_eq!(g_half, vec![64, 14, 8, 22]);
    }

    #[test]
    fn params_congruences_and_distinctness() {
        for k in 1..=6 {
            let p = ConstructionParams::new(k).unwrap();
            let four = BigUint::from(4u32);
            assert_eq!(&p.a % &four, BigUint::from(3u32), "a mod 4, k={k}");
            let mut abs_b: Vec<BigUint> = Vec::new();
            for s in &p.subsets {
                assert_eq!(&s.c % &four, BigUint::one(), "c mod 4");
                assert!((&p.a % &s.c).is_zero(), "c divides a");
                assert!(s.b.is_odd(), "b odd");
                assert!((&s.g % BigUint::from(2u32)).is_zero(), "g even");
                abs_b.push(s.b.magnitude().clone());
            }
            abs_b.sort();
            abs_b.dedup();
            assert_eq!(abs_b.len(), p.subsets.len(), "|b| pairwise distinct");
            // b = 1 for the subset {k-1} when k >= 2.
            if k >= 2 {
                let h = p
                    .subsets
                    .iter()
                    .find(|s| s.indices == vec![k - 1])
                    .expect("H subset");
                assert_eq!(h.b, BigInt::one());
            }
        }
    }

    #[test]
    fn construction_k1_is_unit_equilateral() {
        let s = construction1(1).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.radicand(), 3);
        let report = geometry::verify_integral_set(&s).unwrap();
        assert_eq!(report.distance_multiset, vec![1, 1, 1]);
        // Same set as the reference equilateral up to point order.
        let mut got = s.points().to_vec();
        let mut want = equilateral().points().to_vec();
        got.sort_by(|a, b| (&a.x, &a.y_coeff).cmp(&(&b.x, &b.y_coeff)));
        want.sort_by(|a, b| (&a.x, &a.y_coeff).cmp(&(&b.x, &b.y_coeff)));
        assert_eq!(got, want);
    }

    #[test]
    fn construction_k2_is_the_optimal_five_point_set() {
        let s = construction1(2).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.radicand(), 15);
        let mut xs: Vec<Rational> = s
            .points()
            .iter()
            .filter(|p| p.on_axis())
            .map(|p| p.x.clone())
            .collect();
        xs.sort();
        assert_eq!(
            xs,
            vec![
                Rational::ratio(-7, 2),
                Rational::ratio(-1, 2),
                Rational::ratio(1, 2),
                Rational::ratio(7, 2),
            ]
        );
        let report = geometry::verify_integral_set(&s).unwrap();
        assert_eq!(report.diameter, Some(7));
        assert_eq!(report.distance_multiset, vec![1, 2, 2, 3, 3, 4, 4, 4, 4, 7]);
    }

    #[test]
    fn construction_k3_diameter_127() {
        let s = construction1(3).unwrap();
        assert_eq!(s.len(), 9);
        assert_eq!(s.radicand(), 255);
        let report = geometry::verify_integral_set(&s).unwrap();
        assert!(report.is_integral);
        assert_eq!(report.diameter, Some(127));
        assert_eq!(report.min_distance, Some(1));
    }

    #[test]
    fn apex_distances_equal_g_half() {
        for k in 1..=4 {
            let params = ConstructionParams::new(k).unwrap();
            let s = construction1_from_params(&params).unwrap();
            let apex = s.points().last().unwrap().clone();
            for subset in &params.subsets {
                let b_half = Rational::from(subset.b.clone()) * Rational::ratio(1, 2);
                for x in [b_half.clone(), -b_half] {
                    let m = PlanarPoint::new(x, Rational::zero());
                    let d = geometry::exact_distance(&apex, &m, s.radicand())
                        .unwrap()
                        .expect("integral");
                    let g_half = (&subset.g / BigUint::from(2u32)).to_u64().unwrap();
                    assert_eq!(d, g_half, "k={k} subset {:?}", subset.indices);
                }
            }
        }
    }

    #[test]
    fn rejects_k0() {
        assert!(matches!(construction1(0), Err(ConstructError::BadK(0))));
    }

    #[test]
    fn trim_examples() {
        let s = construction1(2).unwrap();
        let t3 = trim(&s, 3).unwrap();
        let report = geometry::verify_integral_set(&t3).unwrap();
        assert_eq!(report.distance_multiset, vec![1, 2, 2]);

        let t4 = trim(&s, 4).unwrap();
        let report = geometry::verify_integral_set(&t4).unwrap();
        assert_eq!(report.diameter, Some(4));
        assert_eq!(report.distance_multiset, vec![1, 2, 2, 3, 4, 4]);
        // The positive-x member of the widest pair was dropped.
        assert!(t4.contains_point(&PlanarPoint::new(
            Rational::ratio(-7, 2),
            Rational::zero()
        )));

        assert_eq!(trim(&s, 5).unwrap(), s);
        assert!(matches!(
            trim(&s, 2),
            Err(ConstructError::BadTrimTarget { .. })
        ));
        assert!(matches!(
            trim(&s, 6),
            Err(ConstructError::BadTrimTarget { .. })
        ));
    }

    #[test]
    fn trim_rejects_non_construction_sets() {
        // A valid integral set that is not a fan output (no unit pair at ±1/2).
        let s = dilate(&construction1(2).unwrap(), 2).unwrap();
        assert!(matches!(
            trim(&s, 3),
            Err(ConstructError::NotConstructionShape(_))
        ));
    }

    #[test]
    fn dilate_examples() {
        let eq = equilateral();
        let e3 = dilate(&eq, 3).unwrap();
        let report = geometry::verify_integral_set(&e3).unwrap();
        assert_eq!(report.distance_multiset, vec![3, 3, 3]);

        let f2 = dilate(&fan5(), 2).unwrap();
        let report = geometry::verify_integral_set(&f2).unwrap();
        assert_eq!(report.diameter, Some(14));
        assert_eq!(report.min_distance, Some(2));

        let dm = dmatrix::from_points(&eq).unwrap();
        assert_eq!(dilate_matrix(&dm, 1).unwrap(), dm);
        assert!(matches!(dilate(&eq, 0), Err(ConstructError::BadDilation)));
    }

    #[test]
    fn blowup_trimmed_fan_to_dim3() {
        let base = trim(&construction1(2).unwrap(), 3).unwrap();
        let plan = BlowupPlan::new(base, 3, 2).unwrap();
        assert_eq!(plan.apex_height_squared, Rational::ratio(15, 4));
        let dm = blowup(&plan).unwrap();
        assert_eq!(dm.n(), 4);
        assert_eq!(dm.distance_multiset(), vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(dmatrix::realizable_dim(&dm).dimension, Some(3));
    }

    #[test]
    fn blowup_rejects_low_apex() {
        // Equilateral side 1: h^2 = 3/4 < 1 = required for side 2, m = 3.
        let err = BlowupPlan::new(equilateral(), 3, 2);
        match err {
            Err(ConstructError::CircumradiusViolated {
                required,
                available,
            }) => {
                assert_eq!(required, Rational::one());
                assert_eq!(available, Rational::ratio(3, 4));
            }
            other => panic!("expected circumradius violation, got {other:?}"),
        }
    }

    #[test]
    fn blowup_full_fan_to_dim4() {
        let plan = BlowupPlan::new(construction1(2).unwrap(), 4, 2).unwrap();
        let dm = blowup(&plan).unwrap();
        assert_eq!(dm.n(), 7);
        assert_eq!(dmatrix::realizable_dim(&dm).dimension, Some(4));
    }

    #[test]
    fn prime_set_341() {
        let out = prime_set(3, 4, 1, false).unwrap();
        assert_eq!(out.matrix.distance_multiset(), vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(out.matrix.distance_gcd(), 1);
        assert_eq!(dmatrix::realizable_dim(&out.matrix).dimension, Some(3));
        // k = 1 is rejected by the circumradius check (1 > 3/4); the
        // smallest admissible k is 2.
        assert_eq!(out.k_used, 2);
    }

    #[test]
    fn prime_set_352_unique() {
        let out = prime_set(3, 5, 2, true).unwrap();
        let dm = &out.matrix;
        assert_eq!(dm.n(), 5);
        // Line distances {2, 6, 8}, line-to-simplex {4, 4, 8}, simplex side 3.
        assert_eq!(dm.distance_multiset(), vec![2, 3, 4, 4, 4, 4, 6, 8, 8, 8]);
        assert_eq!(dm.distance_gcd(), 1);
        assert!(out.unique_min_achieved);
        assert_eq!(dmatrix::realizable_dim(dm).dimension, Some(3));
    }

    #[test]
    fn prime_set_rejects_bad_params() {
        assert!(matches!(
            prime_set(2, 4, 1, false),
            Err(ConstructError::BadPrimeParams)
        ));
        assert!(matches!(
            prime_set(3, 3, 1, false),
            Err(ConstructError::BadPrimeParams)
        ));
        assert!(matches!(
            prime_set(3, 4, 0, false),
            Err(ConstructError::BadPrimeParams)
        ));
    }
}
