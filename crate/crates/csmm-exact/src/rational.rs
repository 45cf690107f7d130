//! Arbitrary-precision rational numbers and small combinatorial helpers.
//!
//! The workbench standardizes on `num_rational::BigRational` (always kept in
//! lowest terms by the library) rather than a hand-rolled fraction type; the
//! helpers here exist so call sites stay terse and allocation-conscious code
//! has one place to construct constants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Canonical exact scalar used across the workspace.
pub type Rational = num_rational::BigRational;

/// Builds `n / d` as a [`Rational`].
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational with zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact factorial `n!`.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact binomial coefficient `C(n, k)` for non-negative arguments,
/// with the standard convention `C(n, k) = 0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Returns `|a| < |b|` exactly.
pub fn abs_lt(a: &Rational, b: &Rational) -> bool {
    a.abs() < b.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact_and_reduced() {
        // 1/2 + 1/3 = 5/6 with no drift.
        let sum = rat(1, 2) + rat(1, 3);
        assert_eq!(sum, rat(5, 6));
        // Reduction happens automatically.
        assert_eq!(rat(4, 8), rat(1, 2));
        assert_eq!(rat(-3, -9), rat(1, 3));
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 7), BigInt::from(0));
        assert_eq!(binomial(9, 0), BigInt::from(1));
        // Pascal identity on a strip.
        for n in 1..12u64 {
            for k in 1..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                );
            }
        }
    }

    #[test]
    fn abs_comparison() {
        assert!(abs_lt(&rat(-1, 3), &rat(1, 2)));
        assert!(!abs_lt(&rat(5, 2), &rat(-2, 1)));
    }
}
