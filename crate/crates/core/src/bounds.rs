//! Certified evaluation of the diameter lower-bound constants.
//!
//! Everything here is computed as a rational interval that provably
//! contains the true value; the only widening comes from square roots,
//! taken at 2^-96 per radical so that the final constants are certified to
//! width well below 1e-12.
//!
//! The chain of constants, with the default cutoffs
//! `(cutoff_n, cutoff_diam, cutoff_t) = (21491, 10000, 647)`:
//!
//! - `beta = 1/sqrt(cutoff_n - 1) + sqrt(2/sqrt(3) + 1/(cutoff_n - 1))`
//!   bounds the packing coefficient: `phi_k <= beta / sqrt(k - 1)` for
//!   `k > cutoff_n`.
//! - `gamma2 = (cutoff_t - 6) / f(cutoff_t)` with
//!   `f(t) = (2/3) t^(3/2) - (3/2) t + (5/6) sqrt(t)`, so that a line
//!   segment of length `b > cutoff_diam` meets an integral set in at most
//!   `gamma2 * b + 6` points.
//! - `lambda_min = (-gamma2 + sqrt(gamma2^2 + 16 beta^2)) / (8 beta^2)`,
//!   the positive root of `4 beta^2 x^2 + gamma2 x - 1 = 0`; `gamma =
//!   lambda_min` is the linear diameter coefficient: `d(2,n) >= gamma (n-2)`
//!   for n beyond the cutoff, with `3^(1/4) 2^(-3/2) n` below it.

use crate::exactnum::{interval_sqrt, NumError, Rational, RationalInterval};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("packing bound requires k >= 2, got {0}")]
    BadK(u64),
    #[error("argument must be >= {min}, got {got}")]
    OutOfRange { min: u64, got: u64 },
    #[error("hypothesis requires b > {limit}, got {0}", limit = 10000)]
    OutsideHypothesis(u64),
    #[error("invalid cutoffs: {0}")]
    InvalidCutoffs(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

pub const DEFAULT_CUTOFF_N: u64 = 21491;
pub const DEFAULT_CUTOFF_DIAM: u64 = 10000;
pub const DEFAULT_CUTOFF_T: u64 = 647;

/// Per-radical bracketing precision; final interval widths stay far below
/// the 1e-12 certification target.
const SQRT_PRECISION_LOG2: i64 = -96;

fn prec() -> Rational {
    Rational::pow2(SQRT_PRECISION_LOG2)
}

fn sqrt_rat(x: &Rational) -> Result<RationalInterval, BoundsError> {
    Ok(interval_sqrt(x, &prec())?)
}

fn sqrt_int(x: &RationalInterval) -> Result<RationalInterval, BoundsError> {
    Ok(x.sqrt(&prec())?)
}

/// Certified constants for a cutoff triple.
#[derive(Debug, Clone)]
pub struct BoundsConstants {
    pub beta: RationalInterval,
    pub gamma2: RationalInterval,
    pub gamma: RationalInterval,
    pub lambda_min: RationalInterval,
    pub cutoff_n: u64,
    pub cutoff_diam: u64,
    pub cutoff_t: u64,
}

/// Lower and upper bounds for the k-point packing coefficient of the unit
/// square: `sqrt(2/(k sqrt(3))) <= phi_k <= 1/(k-1) + sqrt(1/(k-1)^2 +
/// 2/((k-1) sqrt(3)))`.
pub fn pps_bounds(k: u64) -> Result<(RationalInterval, RationalInterval), BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadK(k));
    }
    let s3 = sqrt_rat(&Rational::from(3i64))?;
    let lower_inner = RationalInterval::point(Rational::from(2i64))
        .div(&s3.mul_rational(&Rational::from(k)))?;
    let lower = sqrt_int(&lower_inner)?;

    let km1 = Rational::from(k - 1);
    let a = km1.recip()?;
    let upper_inner = RationalInterval::point(a.square())
        + &RationalInterval::point(Rational::from(2i64) * &a).div(&s3)?;
    let upper = RationalInterval::point(a) + &sqrt_int(&upper_inner)?;
    Ok((lower, upper))
}

fn beta_for(cutoff_n: u64) -> Result<RationalInterval, BoundsError> {
    if cutoff_n < 3 {
        return Err(BoundsError::InvalidCutoffs(format!(
            "cutoff_n must be >= 3, got {cutoff_n}"
        )));
    }
    let nm1 = Rational::from(cutoff_n - 1);
    let s3 = sqrt_rat(&Rational::from(3i64))?;
    let first = sqrt_rat(&nm1)?.recip()?;
    let inner =
        RationalInterval::point(Rational::from(2i64)).div(&s3)? + &RationalInterval::point(nm1.recip()?);
    Ok(first + &sqrt_int(&inner)?)
}

/// Exact minimal length of a segment meeting an integral set in `n^2 + 1`
/// points: `(2/3) n^3 + (1/2) n^2 - (1/6) n`, which equals
/// `sum_{k=1}^{n} k (2k - 1)`.
pub fn min_segment_length_exact(n: u64) -> Result<Rational, BoundsError> {
    if n < 1 {
        return Err(BoundsError::OutOfRange { min: 1, got: n });
    }
    let n = Rational::from(n);
    let n2 = n.square();
    let n3 = &n2 * &n;
    Ok(n3 * Rational::ratio(2, 3) + n2 * Rational::ratio(1, 2) - n * Rational::ratio(1, 6))
}

/// Certified lower bound for the length of a segment meeting an integral
/// set in `t` points: `(2/3) t^(3/2) - (3/2) t + (5/6) sqrt(t)`.
pub fn min_segment_length(t: u64) -> Result<RationalInterval, BoundsError> {
    if t < 2 {
        return Err(BoundsError::OutOfRange { min: 2, got: t });
    }
    let t_rat = Rational::from(t);
    let sqrt_t = sqrt_rat(&t_rat)?;
    // sqrt(t) (2t/3 + 5/6) - 3t/2
    let coeff = &t_rat * Rational::ratio(2, 3) + Rational::ratio(5, 6);
    Ok(sqrt_t
        .mul_rational(&coeff)
        .add_rational(&(t_rat * Rational::ratio(-3, 2))))
}

fn gamma2_for(cutoff_t: u64) -> Result<RationalInterval, BoundsError> {
    if cutoff_t < 7 {
        return Err(BoundsError::InvalidCutoffs(format!(
            "cutoff_t must be >= 7, got {cutoff_t}"
        )));
    }
    let denom = min_segment_length(cutoff_t)?;
    if !denom.is_strictly_positive() {
        return Err(BoundsError::InvalidCutoffs(
            "segment-length bound not positive at cutoff_t".into(),
        ));
    }
    RationalInterval::point(Rational::from(cutoff_t - 6))
        .div(&denom)
        .map_err(Into::into)
}

fn lambda_from(
    beta: &RationalInterval,
    gamma2: &RationalInterval,
) -> Result<RationalInterval, BoundsError> {
    let beta_sq = beta.square();
    let discriminant = &gamma2.square() + &beta_sq.mul_rational(&Rational::from(16i64));
    let root = sqrt_int(&discriminant)?;
    let numer = &root - gamma2;
    let denom = beta_sq.mul_rational(&Rational::from(8i64));
    numer.div(&denom).map_err(Into::into)
}

/// Recomputes the full constant chain for explicit cutoffs. The caller is
/// responsible for choosing `cutoff_n` consistently with `cutoff_diam`
/// (exact small-case knowledge up to that diameter); `cutoff_t` must be
/// large enough that the segment-length bound at `cutoff_t` exceeds
/// `cutoff_diam`, which is validated here.
pub fn constants_for_cutoffs(
    cutoff_n: u64,
    cutoff_diam: u64,
    cutoff_t: u64,
) -> Result<BoundsConstants, BoundsError> {
    if cutoff_diam < 1 {
        return Err(BoundsError::InvalidCutoffs("cutoff_diam must be >= 1".into()));
    }
    let msl = min_segment_length(cutoff_t.max(2))?;
    if !(cutoff_t >= 7 && msl.strictly_above(&Rational::from(cutoff_diam))) {
        return Err(BoundsError::InvalidCutoffs(format!(
            "segment-length bound at t = {cutoff_t} must exceed cutoff_diam = {cutoff_diam}"
        )));
    }
    let beta = beta_for(cutoff_n)?;
    let gamma2 = gamma2_for(cutoff_t)?;
    let lambda_min = lambda_from(&beta, &gamma2)?;
    Ok(BoundsConstants {
        beta,
        gamma: lambda_min.clone(),
        gamma2,
        lambda_min,
        cutoff_n,
        cutoff_diam,
        cutoff_t,
    })
}

/// The default certified constants; every interval has width <= 1e-12.
pub fn constants() -> BoundsConstants {
    let c = constants_for_cutoffs(DEFAULT_CUTOFF_N, DEFAULT_CUTOFF_DIAM, DEFAULT_CUTOFF_T)
        .expect("default cutoffs are valid");
    let target = Rational::new(1.into(), 1_000_000_000_000i64.into()).expect("nonzero");
    debug_assert!(c.beta.width() <= target);
    debug_assert!(c.gamma2.width() <= target);
    debug_assert!(c.gamma.width() <= target);
    c
}

/// Just the gamma interval for explicit cutoffs.
pub fn gamma_for_cutoffs(
    cutoff_n: u64,
    cutoff_diam: u64,
    cutoff_t: u64,
) -> Result<RationalInterval, BoundsError> {
    Ok(constants_for_cutoffs(cutoff_n, cutoff_diam, cutoff_t)?.gamma)
}

/// Smallest `t` whose certified segment-length bound exceeds `diam`.
pub fn find_cutoff_t(diam: u64) -> Result<u64, BoundsError> {
    let exceeds = |t: u64| -> Result<bool, BoundsError> {
        Ok(min_segment_length(t)?.strictly_above(&Rational::from(diam)))
    };
    let mut hi = 16u64;
    while !exceeds(hi)? {
        hi = hi.checked_mul(2).ok_or(BoundsError::OutOfRange {
            min: 2,
            got: diam,
        })?;
    }
    let mut lo = 7u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if exceeds(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Upper end of the collinear-points bound `gamma2 * b + 6` for a segment
/// of length `b > 10000`, floored to an integer count.
pub fn max_collinear(b: u64) -> Result<u64, BoundsError> {
    if b <= DEFAULT_CUTOFF_DIAM {
        return Err(BoundsError::OutsideHypothesis(b));
    }
    let gamma2 = gamma2_for(DEFAULT_CUTOFF_T)?;
    let value = gamma2.high() * &Rational::from(b) + Rational::from(6i64);
    use num_traits::ToPrimitive;
    value
        .floor()
        .to_u64()
        .ok_or(BoundsError::OutOfRange { min: 0, got: b })
}

/// Certified interval for the point-count bound `4 b^2 phi^2 + gamma2 b + 2`
/// given an upper interval for the packing coefficient.
pub fn point_count_bound(
    b: u64,
    phi_upper: &RationalInterval,
) -> Result<RationalInterval, BoundsError> {
    if b <= DEFAULT_CUTOFF_DIAM {
        return Err(BoundsError::OutsideHypothesis(b));
    }
    let gamma2 = gamma2_for(DEFAULT_CUTOFF_T)?;
    let b_rat = Rational::from(b);
    let quad = phi_upper
        .square()
        .mul_rational(&(Rational::from(4i64) * b_rat.square()));
    Ok((&quad + &gamma2.mul_rational(&b_rat)).add_rational(&Rational::from(2i64)))
}

/// Certified linear diameter lower bound: `3^(1/4) 2^(-3/2) n` for
/// `4 <= n <= 21491` and `gamma (n - 2)` beyond; always strictly above
/// `(5/11) n`.
pub fn diameter_lower(n: u64) -> Result<RationalInterval, BoundsError> {
    if n < 4 {
        return Err(BoundsError::OutOfRange { min: 4, got: n });
    }
    let value = if n <= DEFAULT_CUTOFF_N {
        small_case_coefficient()?.mul_rational(&Rational::from(n))
    } else {
        constants().gamma.mul_rational(&Rational::from(n - 2))
    };
    // Corollary consistency: the certified value exceeds (5/11) n.
    let five_elevenths_n = Rational::ratio(5, 11) * Rational::from(n);
    if !value.strictly_above(&five_elevenths_n) {
        return Err(BoundsError::InvalidCutoffs(format!(
            "diameter bound at n = {n} failed the 5/11 consistency check"
        )));
    }
    Ok(value)
}

/// Certified interval for `3^(1/4) * 2^(-3/2)`, the small-case coefficient
/// and the asymptotic ceiling for gamma.
pub fn small_case_coefficient() -> Result<RationalInterval, BoundsError> {
    let root4_3 = sqrt_int(&sqrt_rat(&Rational::from(3i64))?)?;
    let sqrt8 = sqrt_rat(&Rational::from(8i64))?;
    root4_3.div(&sqrt8).map_err(Into::into)
}

/// Residual `4 beta^2 lambda^2 + gamma2 lambda - 1` as an interval; the
/// root certificate for `lambda_min` is that this interval straddles zero.
pub fn quadratic_residual(c: &BoundsConstants) -> RationalInterval {
    let l2 = c.lambda_min.square();
    let term1 = (&c.beta.square() * &l2).mul_rational(&Rational::from(4i64));
    (&term1 + &(&c.gamma2 * &c.lambda_min)).add_rational(&Rational::from(-1i64))
}

/// The printed literature value for beta together with the certified one.
/// Direct evaluation of the defining expression gives an interval near
/// 1.08141, strictly above the commonly printed bound 1.07464; the
/// downstream gamma digits are consistent with the larger (certified)
/// value, so the printed bound appears to be a misprint. The certified
/// interval is authoritative and nothing in this crate hard-codes 1.07464.
#[derive(Debug, Clone)]
pub struct BetaDiscrepancy {
    pub certified: RationalInterval,
    pub printed_bound: Rational,
    /// True iff the certified interval actually lies below the printed
    /// bound (it does not).
    pub printed_bound_consistent: bool,
    pub note: &'static str,
}

pub fn beta_discrepancy(c: &BoundsConstants) -> BetaDiscrepancy {
    let printed_bound = Rational::ratio(107_464, 100_000);
    BetaDiscrepancy {
        printed_bound_consistent: c.beta.strictly_below(&printed_bound),
        certified: c.beta.clone(),
        printed_bound,
        note: "direct certified evaluation of the beta expression exceeds the printed bound \
               1.07464; the certified interval is authoritative",
    }
}
