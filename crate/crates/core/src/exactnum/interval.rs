use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{isqrt, NumError, Rational};

/// Default precision exponent for [`interval_sqrt`]: width <= 2^-64.
pub const DEFAULT_SQRT_PRECISION_LOG2: i64 = -64;

/// Closed interval with exact rational endpoints, used to certify values of
/// irrational expressions. All arithmetic is outward-exact: endpoints are
/// rationals, so the only widening ever introduced comes from square roots.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    low: Rational,
    high: Rational,
}

impl RationalInterval {
    pub fn new(low: Rational, high: Rational) -> Result<Self, NumError> {
        if low > high {
            return Err(NumError::EmptyInterval);
        }
        Ok(RationalInterval { low, high })
    }

    pub fn point(value: Rational) -> Self {
        RationalInterval {
            low: value.clone(),
            high: value,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Rational::from(n))
    }

    pub fn low(&self) -> &Rational {
        &self.low
    }

    pub fn high(&self) -> &Rational {
        &self.high
    }

    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.low <= x && x <= &self.high
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.low <= other.low && other.high <= self.high
    }

    pub fn midpoint(&self) -> Rational {
        (&self.low + &self.high) * Rational::ratio(1, 2)
    }

    /// True when every point of the interval is strictly below `x`.
    pub fn strictly_below(&self, x: &Rational) -> bool {
        &self.high < x
    }

    /// True when every point of the interval is strictly above `x`.
    pub fn strictly_above(&self, x: &Rational) -> bool {
        &self.low > x
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.low.is_positive()
    }

    pub fn mul_rational(&self, s: &Rational) -> Self {
        let a = &self.low * s;
        let b = &self.high * s;
        if a <= b {
            RationalInterval { low: a, high: b }
        } else {
            RationalInterval { low: b, high: a }
        }
    }

    pub fn add_rational(&self, s: &Rational) -> Self {
        RationalInterval {
            low: &self.low + s,
            high: &self.high + s,
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Result<Self, NumError> {
        if self.low.is_positive() || self.high.is_negative() {
            Ok(RationalInterval {
                low: self.high.recip()?,
                high: self.low.recip()?,
            })
        } else {
            Err(NumError::IntervalDomain("reciprocal of interval containing zero"))
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self * &other.recip()?)
    }

    /// Certified square root: encloses `sqrt(x)` for every `x` in `self`.
    /// `precision` bounds the extra width added at each endpoint.
    pub fn sqrt(&self, precision: &Rational) -> Result<Self, NumError> {
        let lo = interval_sqrt(&self.low, precision)?;
        let hi = interval_sqrt(&self.high, precision)?;
        Ok(RationalInterval {
            low: lo.low,
            high: hi.high,
        })
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.low, self.high)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.low, self.high)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            low: &self.low + &rhs.low,
            high: &self.high + &rhs.high,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            low: &self.low - &rhs.high,
            high: &self.high - &rhs.low,
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let candidates = [
            &self.low * &rhs.low,
            &self.low * &rhs.high,
            &self.high * &rhs.low,
            &self.high * &rhs.high,
        ];
        let mut low = candidates[0].clone();
        let mut high = candidates[0].clone();
        for c in &candidates[1..] {
            if c < &low {
                low = c.clone();
            }
            if c > &high {
                high = c.clone();
            }
        }
        RationalInterval { low, high }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            low: -(&self.high),
            high: -(&self.low),
        }
    }
}

macro_rules! forward_interval_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<&RationalInterval> for RationalInterval {
            type Output = RationalInterval;
            fn $method(self, rhs: &RationalInterval) -> RationalInterval {
                (&self).$method(rhs)
            }
        }
        impl $trait for RationalInterval {
            type Output = RationalInterval;
            fn $method(self, rhs: RationalInterval) -> RationalInterval {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_interval_owned!(Add, add);
forward_interval_owned!(Sub, sub);
forward_interval_owned!(Mul, mul);

/// Certified bracketing of `sqrt(x)`: returns `[low, high]` with
/// `low^2 <= x <= high^2` and `high - low <= precision`.
///
/// Perfect rational squares yield a zero-width interval. Otherwise the root
/// is bracketed by scaled integer square roots with a power-of-two scale, so
/// calls at nested precisions yield nested intervals.
pub fn interval_sqrt(x: &Rational, precision: &Rational) -> Result<RationalInterval, NumError> {
    if x.is_negative() {
        return Err(NumError::NegativeSqrt);
    }
    if !precision.is_positive() {
        return Err(NumError::NonPositivePrecision);
    }
    if let Some(root) = x.sqrt_exact() {
        return Ok(RationalInterval::point(root));
    }

    // Smallest power of two with 2/scale <= precision.
    let mut shift: u32 = 1;
    loop {
        let scale = Rational::pow2(shift as i64);
        if Rational::from(2i64) <= &scale * precision {
            break;
        }
        shift += 1;
    }

    loop {
        let scale_int = BigInt::one() << shift;
        let scale = Rational::from(scale_int.clone());
        // t = x * scale^2, bracketed by integers.
        let t = x * &(&scale * &scale);
        let t_floor: BigUint = t.floor().magnitude().clone();
        let t_ceil: BigUint = t.ceil().magnitude().clone();
        let (root_lo, _) = isqrt(&t_floor);
        let (root_hi, hi_exact) = isqrt(&t_ceil);
        let root_hi = if hi_exact {
            root_hi
        } else {
            root_hi + BigUint::one()
        };
        let low = Rational::new(BigInt::from(root_lo), scale_int.clone())?;
        let high = Rational::new(BigInt::from(root_hi), scale_int)?;
        debug_assert!(&low * &low <= *x);
        debug_assert!(&high * &high >= *x);
        if &high - &low <= *precision {
            return Ok(RationalInterval { low, high });
        }
        shift += 1;
    }
}
