use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{NumError, Rational};

/// Exact quadratic irrationality `p + r*sqrt(q)` with `p, r` rational and
/// `q` a squarefree non-negative integer.
///
/// Canonical form: `r == 0` implies `q == 0`, and `q == 1` is folded into
/// the rational part, so equality is plain field-wise comparison. Values
/// with matching radicands (or with one side rational) are closed under
/// ring operations; division is by the conjugate.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticNumber {
    #[serde(rename = "p")]
    rational_part: Rational,
    #[serde(rename = "r")]
    radical_coefficient: Rational,
    #[serde(rename = "q")]
    radicand: u64,
}

impl QuadraticNumber {
    /// Builds `p + r*sqrt(q)`, validating that `q` is squarefree.
    pub fn new(p: Rational, r: Rational, q: u64) -> Result<Self, NumError> {
        if q > 1 && !super::is_squarefree(q)? {
            return Err(NumError::NotSquarefree(q));
        }
        Ok(Self::new_canonical(p, r, q))
    }

    /// Internal constructor for radicands already known squarefree.
    pub(crate) fn new_canonical(p: Rational, r: Rational, q: u64) -> Self {
        if r.is_zero() || q == 0 {
            return QuadraticNumber {
                rational_part: p,
                radical_coefficient: Rational::zero(),
                radicand: 0,
            };
        }
        if q == 1 {
            return QuadraticNumber {
                rational_part: p + r,
                radical_coefficient: Rational::zero(),
                radicand: 0,
            };
        }
        QuadraticNumber {
            rational_part: p,
            radical_coefficient: r,
            radicand: q,
        }
    }

    pub fn from_rational(p: Rational) -> Self {
        Self::new_canonical(p, Rational::zero(), 0)
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn radical_coefficient(&self) -> &Rational {
        &self.radical_coefficient
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.radical_coefficient.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radical_coefficient.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational_part)
    }

    /// Common radicand of two values, treating rationals as compatible with
    /// everything. Panics on a genuine mismatch: within this crate all
    /// coordinates of one computation share a single radicand by
    /// construction.
    fn joint_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (0, q) | (q, 0) => q,
            (a, b) if a == b => a,
            (a, b) => panic!("radicand mismatch: {a} vs {b}"),
        }
    }

    pub fn mul_rational(&self, s: &Rational) -> Self {
        Self::new_canonical(
            &self.rational_part * s,
            &self.radical_coefficient * s,
            self.radicand,
        )
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        // 1 / (p + r*sqrt(q)) = (p - r*sqrt(q)) / (p^2 - r^2 q); the norm is
        // nonzero because q is squarefree (so sqrt(q) is irrational for q > 1).
        let norm = self.rational_part.square()
            - self.radical_coefficient.square() * Rational::from(self.radicand);
        debug_assert!(!norm.is_zero());
        let inv = norm.recip()?;
        Ok(Self::new_canonical(
            &self.rational_part * &inv,
            -(&self.radical_coefficient) * &inv,
            self.radicand,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self * &other.recip()?)
    }

    /// Exact sign: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        let p = &self.rational_part;
        let r = &self.radical_coefficient;
        if r.is_zero() {
            return p.signum();
        }
        if p.is_zero() {
            return r.signum();
        }
        let sp = p.signum();
        let sr = r.signum();
        if sp == sr {
            return sp;
        }
        // Signs differ: compare p^2 against r^2 q.
        let p2 = p.square();
        let r2q = r.square() * Rational::from(self.radicand);
        match p2.cmp(&r2q) {
            Ordering::Greater => sp,
            Ordering::Less => sr,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// `f64` approximation for reporting.
    pub fn to_f64(&self) -> f64 {
        self.rational_part.to_f64()
            + self.radical_coefficient.to_f64() * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical_coefficient.is_zero() {
            write!(f, "{}", self.rational_part)
        } else if self.rational_part.is_zero() {
            write!(f, "{}*sqrt({})", self.radical_coefficient, self.radicand)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                self.rational_part, self.radical_coefficient, self.radicand
            )
        }
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let q = self.joint_radicand(rhs);
        QuadraticNumber::new_canonical(
            &self.rational_part + &rhs.rational_part,
            &self.radical_coefficient + &rhs.radical_coefficient,
            q,
        )
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let q = self.joint_radicand(rhs);
        QuadraticNumber::new_canonical(
            &self.rational_part - &rhs.rational_part,
            &self.radical_coefficient - &rhs.radical_coefficient,
            q,
        )
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let q = self.joint_radicand(rhs);
        // (p1 + r1*s)(p2 + r2*s) = p1 p2 + r1 r2 q + (p1 r2 + p2 r1) s
        let p = &self.rational_part * &rhs.rational_part
            + &self.radical_coefficient * &rhs.radical_coefficient * Rational::from(q);
        let r = &self.rational_part * &rhs.radical_coefficient
            + &rhs.rational_part * &self.radical_coefficient;
        QuadraticNumber::new_canonical(p, r, q)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new_canonical(
            -(&self.rational_part),
            -(&self.radical_coefficient),
            self.radicand,
        )
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q15(p: i64, pd: i64, r: i64, rd: i64) -> QuadraticNumber {
        QuadraticNumber::new(Rational::ratio(p, pd), Rational::ratio(r, rd), 15).unwrap()
    }

    #[test]
    fn canonical_folds_trivial_radicands() {
        let x = QuadraticNumber::new(Rational::from(2i64), Rational::from(3i64), 1).unwrap();
        assert!(x.is_rational());
        assert_eq!(x.to_rational().unwrap(), &Rational::from(5i64));

        let y = QuadraticNumber::new(Rational::from(2i64), Rational::zero(), 15).unwrap();
        assert_eq!(y.radicand(), 0);
    }

    #[test]
    fn rejects_non_squarefree_radicand() {
        assert!(matches!(
            QuadraticNumber::new(Rational::zero(), Rational::one(), 12),
            Err(NumError::NotSquarefree(12))
        ));
    }

    #[test]
    fn square_of_pure_radical_is_rational() {
        // (r*sqrt(q))^2 = r^2 q with zero radical coefficient.
        let x = q15(0, 1, 1, 2);
        let sq = x.square();
        assert!(sq.is_rational());
        assert_eq!(sq.to_rational().unwrap(), &Rational::ratio(15, 4));
    }

    #[test]
    fn signum_mixed_signs() {
        // 4 - sqrt(15) > 0, 3 - sqrt(15) < 0.
        assert_eq!(q15(4, 1, -1, 1).signum(), 1);
        assert_eq!(q15(3, 1, -1, 1).signum(), -1);
        assert_eq!(QuadraticNumber::zero().signum(), 0);
    }

    #[test]
    fn reciprocal_multiplies_to_one() {
        let x = q15(3, 2, -5, 7);
        let prod = &x * &x.recip().unwrap();
        assert_eq!(prod.to_rational().unwrap(), &Rational::one());
    }

    proptest! {
        #[test]
        fn ring_ops_closed_same_radicand(
            p1 in -20i64..20, r1 in -20i64..20,
            p2 in -20i64..20, r2 in -20i64..20,
        ) {
            let a = QuadraticNumber::new(Rational::from(p1), Rational::from(r1), 15).unwrap();
            let b = QuadraticNumber::new(Rational::from(p2), Rational::from(r2), 15).unwrap();
            for v in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(v.radicand() == 15 || v.is_rational());
            }
            // Distributivity spot check.
            prop_assert_eq!(&a * &(&a + &b), &(&a * &a) + &(&a * &b));
        }

        #[test]
        fn signum_agrees_with_float(p in -30i64..30, r in -30i64..30) {
            let x = QuadraticNumber::new(Rational::from(p), Rational::from(r), 7).unwrap();
            let approx = p as f64 + r as f64 * 7f64.sqrt();
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if approx > 0.0 { 1 } else { -1 });
            }
        }
    }
}
