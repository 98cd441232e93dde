use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NumError;

/// Arbitrary-precision rational number, always in canonical form:
/// positive denominator, numerator and denominator coprime.
///
/// Serializes as the string `"num/den"`, with `/den` omitted when the
/// denominator is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, NumError> {
        if denom.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `n / d` for machine integers; panics on `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// 2^exp for possibly negative exp; handy for binary precision targets.
    pub fn pow2(exp: i64) -> Self {
        let mag = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            Rational(BigRational::from_integer(mag))
        } else {
            Rational(BigRational::new(BigInt::one(), mag))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// The integer value, if the denominator is 1.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_bigint().and_then(|n| n.to_u64())
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    /// Nearest `f64`; for the magnitudes used here the rounding error is
    /// far below any tolerance we compare against.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().numer().clone()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().numer().clone()
    }

    /// If self = (p/q)^2 for a rational p/q >= 0, returns p/q.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let (nr, n_exact) = super::isqrt(&self.0.numer().magnitude().clone());
        if !n_exact {
            return None;
        }
        let (dr, d_exact) = super::isqrt(&self.0.denom().magnitude().clone());
        if !d_exact {
            return None;
        }
        Some(Rational(BigRational::new(
            BigInt::from(nr),
            BigInt::from(dr),
        )))
    }

    /// Decimal rendering truncated toward zero to `digits` fractional digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let neg = self.is_negative();
        let num = self.0.numer().magnitude().clone();
        let den = self.0.denom().magnitude().clone();
        let int_part = &num / &den;
        let mut rem = &num % &den;
        let mut frac = String::with_capacity(digits);
        let ten = BigUint::from(10u32);
        for _ in 0..digits {
            rem *= &ten;
            frac.push_str(&(&rem / &den).to_string());
            rem %= &den;
        }
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumError::InvalidRational(s.to_string());
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
                Ok(Rational::from_int(n))
            }
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(NumError::ZeroDenominator);
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_int(BigInt::from(n))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}
