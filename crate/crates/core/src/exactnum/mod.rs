//! Exact scalar arithmetic: arbitrary-precision rationals, quadratic
//! irrationalities `p + r*sqrt(q)`, and certified rational intervals.
//!
//! Everything in this module is immutable and pure; values can be shared
//! freely across threads.

mod interval;
mod quadratic;
mod rational;

pub use interval::{interval_sqrt, RationalInterval, DEFAULT_SQRT_PRECISION_LOG2};
pub use quadratic::QuadraticNumber;
pub use rational::Rational;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Default trial-division bound for [`squarefree_part`].
pub const DEFAULT_FACTOR_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a valid rational: {0}")]
    InvalidRational(String),
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("precision must be positive")]
    NonPositivePrecision,
    #[error("squarefree_part requires a positive integer")]
    NonPositiveInput,
    #[error("cannot certify factorization: residual {residual} exceeds trial-division limit {limit}")]
    FactorLimitExceeded { residual: String, limit: u64 },
    #[error("radicand mismatch: {0} vs {1}")]
    RadicandMismatch(u64, u64),
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("interval endpoints out of order")]
    EmptyInterval,
    #[error("interval operation undefined: {0}")]
    IntervalDomain(&'static str),
}

/// Floor integer square root together with an exactness flag.
///
/// Returns `(r, exact)` with `r = floor(sqrt(n))` and `exact == (r*r == n)`.
pub fn isqrt(n: &BigUint) -> (BigUint, bool) {
    if n.is_zero() {
        return (BigUint::zero(), true);
    }
    let r = n.sqrt();
    let exact = &r * &r == *n;
    (r, exact)
}

/// `isqrt` for machine integers.
pub fn isqrt_u64(n: u64) -> (u64, bool) {
    let (r, exact) = isqrt(&BigUint::from(n));
    (r.to_u64().expect("root fits"), exact)
}

/// Decomposes `n = s * f^2` with `s` squarefree, using trial division up to
/// [`DEFAULT_FACTOR_LIMIT`].
pub fn squarefree_part(n: &BigUint) -> Result<(BigUint, BigUint), NumError> {
    squarefree_part_with_limit(n, DEFAULT_FACTOR_LIMIT)
}

/// Decomposes `n = s * f^2` with `s` squarefree.
///
/// Trial division runs over 2, 3 and the 6k±1 wheel up to `limit`. The
/// residual afterwards has no prime factor <= `limit`, so it is either 1, a
/// perfect square (contributing to `f`), a certified prime below `limit^2`
/// (contributing to `s`), or too large to classify, in which case the call
/// fails rather than guessing.
pub fn squarefree_part_with_limit(
    n: &BigUint,
    limit: u64,
) -> Result<(BigUint, BigUint), NumError> {
    if n.is_zero() {
        return Err(NumError::NonPositiveInput);
    }
    let mut m = n.clone();
    let mut square_free = BigUint::one();
    let mut cofactor = BigUint::one();

    let divide_out = |m: &mut BigUint, p: u64, sf: &mut BigUint, cf: &mut BigUint| {
        let pb = BigUint::from(p);
        let mut exp = 0u32;
        while (&*m % &pb).is_zero() {
            *m /= &pb;
            exp += 1;
        }
        if exp % 2 == 1 {
            *sf *= &pb;
        }
        for _ in 0..exp / 2 {
            *cf *= &pb;
        }
    };

    divide_out(&mut m, 2, &mut square_free, &mut cofactor);
    divide_out(&mut m, 3, &mut square_free, &mut cofactor);
    let mut p = 5u64;
    while p <= limit {
        // Cheap early exit: if m < p^2 the residual is 1 or prime.
        if BigUint::from(p) * BigUint::from(p) > m {
            break;
        }
        divide_out(&mut m, p, &mut square_free, &mut cofactor);
        divide_out(&mut m, p + 2, &mut square_free, &mut cofactor);
        p += 6;
    }

    if !m.is_one() {
        let (root, exact) = isqrt(&m);
        if exact {
            cofactor *= root;
        } else if m < BigUint::from(limit) * BigUint::from(limit) {
            // No factor <= limit, and below limit^2, so m is prime.
            square_free *= &m;
        } else {
            return Err(NumError::FactorLimitExceeded {
                residual: m.to_string(),
                limit,
            });
        }
    }
    Ok((square_free, cofactor))
}

/// `squarefree_part` restricted to `u64`, for radicand validation.
pub fn squarefree_part_u64(n: u64) -> Result<(u64, u64), NumError> {
    let (s, f) = squarefree_part(&BigUint::from(n))?;
    Ok((s.to_u64().expect("fits"), f.to_u64().expect("fits")))
}

/// True when `n` is squarefree (certifiable within the default limit).
pub fn is_squarefree(n: u64) -> Result<bool, NumError> {
    let (s, _) = squarefree_part_u64(n)?;
    Ok(s == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt_u64(0), (0, true));
        assert_eq!(isqrt_u64(16), (4, true));
        assert_eq!(isqrt_u64(15), (3, false));
        assert_eq!(isqrt_u64(1), (1, true));
        assert_eq!(isqrt_u64(u64::MAX), (4294967295, false));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part_u64(1).unwrap(), (1, 1));
        assert_eq!(squarefree_part_u64(60).unwrap(), (15, 2));
        // 65535 = 3 * 5 * 17 * 257, all exponents 1 (trial-division oracle below).
        assert_eq!(squarefree_part_u64(65535).unwrap(), (65535, 1));
    }

    #[test]
    fn squarefree_oracle_65535() {
        // Independent naive factorization.
        let mut n = 65535u64;
        let mut factors = vec![];
        let mut d = 2;
        while d * d <= n {
            while n % d == 0 {
                factors.push(d);
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        assert_eq!(factors, vec![3, 5, 17, 257]);
    }

    #[test]
    fn squarefree_large_prime_residual() {
        // 2^64 - 1 = 3*5*17*257*641*65537*6700417; the last prime exceeds the
        // trial-division limit but is certified prime because it is below limit^2.
        let n = BigUint::from(u64::MAX);
        let (s, f) = squarefree_part(&n).unwrap();
        assert_eq!(s, n);
        assert!(f.is_one());
    }

    #[test]
    fn squarefree_square_residual() {
        // p^2 with p prime above the limit: residual is a perfect square.
        let p = BigUint::from(1_000_003u64);
        let n = &p * &p;
        let (s, f) = squarefree_part(&n).unwrap();
        assert!(s.is_one());
        assert_eq!(f, p);
    }

    #[test]
    fn squarefree_uncertifiable() {
        // Product of two distinct primes above the limit cannot be classified.
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        assert!(matches!(
            squarefree_part(&n),
            Err(NumError::FactorLimitExceeded { .. })
        ));
    }

    #[test]
    fn squarefree_zero_rejected() {
        assert_eq!(
            squarefree_part(&BigUint::zero()),
            Err(NumError::NonPositiveInput)
        );
    }

    proptest! {
        #[test]
        fn squarefree_reconstructs(n in 1u64..2_000_000) {
            let (s, f) = squarefree_part_u64(n).unwrap();
            prop_assert_eq!(s * f * f, n);
            // s itself has no square divisor > 1.
            let mut d = 2u64;
            while d * d <= s {
                prop_assert!(s % (d * d) != 0);
                d += 1;
            }
        }

        #[test]
        fn isqrt_floor_property(n in 0u64..u64::MAX / 2) {
            let (r, exact) = isqrt_u64(n);
            prop_assert!(r as u128 * r as u128 <= n as u128);
            prop_assert!((r as u128 + 1) * (r as u128 + 1) > n as u128);
            prop_assert_eq!(exact, r * r == n);
        }
    }
}
