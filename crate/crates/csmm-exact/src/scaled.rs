//! Rationals carrying a half-integer power of a formal positive scale.
//!
//! Asymptotic checks compare matrix entries of the form
//! `value * S^(half_power / 2)` where the scale `S` is a concrete positive
//! integer (`N`, or `(k+1)N`, or `(k+p)N/p` depending on the pipeline).
//! Storing the half power symbolically keeps every entry exact: two scaled
//! values are compared by moving to squared magnitudes, which are honest
//! rationals once `S` is substituted.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// `value * S^(half_power/2)` for a formal positive scale `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledRational {
    /// Rational prefactor.
    pub value: Rational,
    /// Exponent of `sqrt(S)`; may be negative.
    pub half_power: i32,
}

impl ScaledRational {
    /// Builds `value * S^(half_power/2)`.
    pub fn new(value: Rational, half_power: i32) -> Self {
        let half_power = if value.is_zero() { 0 } else { half_power };
        Self { value, half_power }
    }

    /// The zero value.
    pub fn zero() -> Self {
        Self::new(Rational::zero(), 0)
    }

    /// True iff the value is zero (the ledger of a zero is irrelevant).
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Product of two scaled values.
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.value * &other.value, self.half_power + other.half_power)
    }

    /// Multiplies the ledger by `S^(dh/2)`.
    pub fn shift(&self, dh: i32) -> Self {
        Self::new(self.value.clone(), self.half_power + dh)
    }

    /// Exact squared magnitude after substituting the concrete scale `s`.
    ///
    /// # Panics
    /// Panics if `s == 0` and the ledger power is negative.
    pub fn magnitude_squared(&self, s: u64) -> Rational {
        let v2 = &self.value * &self.value;
        let s_rat = Rational::from_integer(s.into());
        if self.half_power >= 0 {
            let mut acc = v2;
            for _ in 0..self.half_power {
                acc *= &s_rat;
            }
            acc
        } else {
            assert!(s != 0, "negative ledger power at zero scale");
            let mut acc = v2;
            for _ in 0..(-self.half_power) {
                acc /= &s_rat;
            }
            acc
        }
    }

    /// Exact comparison of magnitudes `|self| <= |other|` at scale `s`.
    pub fn magnitude_le(&self, other: &Self, s: u64) -> bool {
        self.magnitude_squared(s) <= other.magnitude_squared(s)
    }

    /// Adds two scaled values; both must share the same ledger power unless
    /// one of them is zero.
    ///
    /// # Panics
    /// Panics on a ledger mismatch: addition across different half powers is
    /// a logic error in this codebase (entries are aligned before summing).
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.half_power, other.half_power,
            "adding scaled rationals with mismatched ledgers"
        );
        Self::new(&self.value + &other.value, self.half_power)
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Self::new(self.value.abs(), self.half_power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn magnitude_comparison_at_scale() {
        // 3*sqrt(N) vs 1*N at N = 4: 3*2 = 6 > 4.
        let a = ScaledRational::new(rat_int(3), 1);
        let b = ScaledRational::new(rat_int(1), 2);
        assert!(!a.magnitude_le(&b, 4));
        // ... and at N = 16: 3*4 = 12 < 16.
        assert!(a.magnitude_le(&b, 16));
    }

    #[test]
    fn products_accumulate_ledgers() {
        let a = ScaledRational::new(rat(1, 2), 3);
        let b = ScaledRational::new(rat_int(4), -1);
        let c = a.mul(&b);
        assert_eq!(c.value, rat_int(2));
        assert_eq!(c.half_power, 2);
    }

    #[test]
    fn zero_normalizes_ledger() {
        let z = ScaledRational::new(rat_int(0), 7);
        assert!(z.is_zero());
        assert_eq!(z.half_power, 0);
        let a = ScaledRational::new(rat_int(5), -3);
        assert_eq!(z.add(&a), a);
    }

    #[test]
    fn negative_powers_divide() {
        // (6 * S^(-1))^2 = 36 / 9 = 4 at S = 3.
        let a = ScaledRational::new(rat_int(6), -2);
        assert_eq!(a.magnitude_squared(3), rat_int(4));
    }
}
