//! Polynomials in the two deformation parameters with rational coefficients.
//!
//! The observable algebra and its abstract counterpart carry structure
//! constants that are polynomial in the two parameters `eps1` and `eps2`
//! (the third parameter `eps3 = eps2 - p*eps1` is always eliminated in
//! favor of these two for a concrete flavor count `p`).  A [`ParamPoly`] is
//! a sparse map from exponent pairs to rational coefficients.
//!
//! Design notes:
//! * Exponents are `i32` and **negative `eps2` powers are allowed**: the
//!   affine-algebra level `p/eps2` needs Laurent terms in `eps2`.  `eps1`
//!   exponents must stay non-negative; this is asserted on construction.
//! * Exact division by a linear divisor such as `eps3 = eps2 - p*eps1` is
//!   provided and *fails loudly* when the remainder is non-zero — several
//!   derivations rely on a trace identity being exactly divisible, and a
//!   silent approximation there would invalidate every downstream check.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{rat_int, Rational};

/// Error raised by exact polynomial division.
#[derive(Debug, Error)]
pub enum PolyError {
    /// Division left a non-zero remainder.
    #[error("exact division failed: non-zero remainder {0}")]
    NonZeroRemainder(String),
    /// Division by the zero polynomial.
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// Sparse polynomial in `eps1` (non-negative powers) and `eps2`
/// (integer powers), with [`Rational`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ParamPoly {
    /// Map `(e1 exponent, e2 exponent) -> coefficient`; zero coefficients
    /// are never stored.
    terms: BTreeMap<(i32, i32), Rational>,
}

impl ParamPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(rat_int(1))
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    /// The monomial `c * eps1^a * eps2^b`.
    ///
    /// # Panics
    /// Panics if `a < 0`.
    pub fn monomial(c: Rational, a: i32, b: i32) -> Self {
        assert!(a >= 0, "negative eps1 exponent is not supported");
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert((a, b), c);
        }
        p
    }

    /// The parameter `eps1`.
    pub fn eps1() -> Self {
        Self::monomial(rat_int(1), 1, 0)
    }

    /// The parameter `eps2`.
    pub fn eps2() -> Self {
        Self::monomial(rat_int(1), 0, 1)
    }

    /// The derived parameter `eps3 = eps2 - p * eps1` for flavor count `p`.
    pub fn eps3(p: i64) -> Self {
        Self::eps2() - Self::eps1().scale(&rat_int(p))
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `((e1, e2), coefficient)` pairs in exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.terms.iter()
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    fn add_term(&mut self, key: (i32, i32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at concrete parameter values.
    pub fn eval(&self, e1: &Rational, e2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..a {
                t *= e1;
            }
            if b >= 0 {
                for _ in 0..b {
                    t *= e2;
                }
            } else {
                assert!(!e2.is_zero(), "Laurent evaluation at eps2 = 0");
                for _ in 0..(-b) {
                    t /= e2;
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division, returning the quotient `self / divisor`.
    ///
    /// `divisor` must be non-zero and divide `self` exactly over the Laurent
    /// ring `Q[eps1, eps2, 1/eps2]`; otherwise an error is returned.
    /// The implementation is multivariate reduction against the leading
    /// divisor term in `(e1, e2)`-lexicographic order, which terminates for
    /// the linear divisors used in practice (`eps3`, `eps3^2`, scalars) and
    /// is verified by re-multiplication before the quotient is returned.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (&lead_key, lead_coef) = divisor
            .terms
            .iter()
            .next_back()
            .expect("non-zero divisor has a leading term");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Reduce the top remainder term while it is divisible in eps1.
        loop {
            let top = match rem.terms.iter().next_back() {
                None => break,
                Some((&k, c)) => (k, c.clone()),
            };
            let de1 = top.0 .0 - lead_key.0;
            let de2 = top.0 .1 - lead_key.1;
            if de1 < 0 {
                return Err(PolyError::NonZeroRemainder(format!("{rem}")));
            }
            let q = top.1 / lead_coef;
            quot.add_term((de1, de2), q.clone());
            let piece = Self::monomial(q, de1, de2);
            rem = rem - &piece * divisor;
        }
        debug_assert_eq!(&quot * divisor, *self);
        Ok(quot)
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if a != 0 {
                write!(f, "*e1^{a}")?;
            }
            if b != 0 {
                write!(f, "*e2^{b}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl std::ops::Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(mut self, rhs: ParamPoly) -> ParamPoly {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
        self
    }
}

impl std::ops::Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(mut self) -> ParamPoly {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl std::ops::Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}
