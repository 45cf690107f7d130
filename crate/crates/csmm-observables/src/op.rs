//! Gauge-invariant operator specifications and their action on states.
//!
//! The generators are
//!
//! ```text
//! e^a_{b;n,m} = (1/eps1) lamdag^a Sym(Z^n Zdag^m) lam_b
//! t_{n,m}     = (1/eps1) Tr Sym(Z^n Zdag^m)
//! ```
//!
//! where `Sym` is the uniform average over all `binom(n+m, n)`
//! interleavings of `n` annihilation and `m` creation letters.  The
//! degenerate case `t_{0,0}` is the scalar `N`.

use csmm_exact::{binomial, rat_int, Rational};
use csmm_fock::word::{Letter, WordShape};
use csmm_fock::ModelParams;
use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::state::GaugeState;

/// Errors of the observable layer.
#[derive(Debug, Error)]
pub enum ObsError {
    /// Propagated Fock-engine error.
    #[error(transparent)]
    Fock(#[from] csmm_fock::poly::FockError),
    /// Operation not supported in the given state representation.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A state failed the physicality precondition.
    #[error("non-physical input state: {0}")]
    NonPhysical(String),
    /// Operator indices outside their valid domain.
    #[error("invalid indices: {0}")]
    InvalidIndices(String),
}

/// A symbolic gauge-invariant operator.
#[derive(Clone, Debug, PartialEq)]
pub enum GaugeOpSpec {
    /// `e^a_{b;n,m}` with `n` annihilation and `m` creation letters.
    E {
        /// Upper (creation-side) flavor index.
        a: u8,
        /// Lower (annihilation-side) flavor index.
        b: u8,
        /// Number of `Z` letters.
        n: u32,
        /// Number of `Zdag` letters.
        m: u32,
    },
    /// `t_{n,m}`.
    T {
        /// Number of `Z` letters.
        n: u32,
        /// Number of `Zdag` letters.
        m: u32,
    },
    /// Moment-map entry `mu^i_j` (concrete representation only).
    Mu {
        /// Upper index.
        i: u8,
        /// Lower index.
        j: u8,
    },
    /// Product, rightmost factor applied first.
    Product(Vec<GaugeOpSpec>),
    /// `[A, B] = AB - BA`.
    Commutator(Box<GaugeOpSpec>, Box<GaugeOpSpec>),
    /// Scalar multiple.
    ScalarMul(Rational, Box<GaugeOpSpec>),
    /// Sum of operators.
    Sum(Vec<GaugeOpSpec>),
}

/// The expansion of `Sym(Z^n Zdag^m)` into weighted words.
#[derive(Clone, Debug)]
pub struct SymWordExpansion {
    /// `(coefficient, word)` pairs; every coefficient is
    /// `1/binom(n+m, n)` and there are exactly `binom(n+m, n)` words.
    pub words: Vec<(Rational, Vec<Letter>)>,
}

/// Uniform average over all interleavings of `n` `Z`-letters and `m`
/// `Zdag`-letters.
pub fn build_sym(n: u32, m: u32) -> SymWordExpansion {
    let total = (n + m) as usize;
    let count = binomial((n + m) as u64, n as u64);
    let coeff = Rational::one() / Rational::from_integer(count);
    let mut words = Vec::new();
    for z_positions in (0..total).combinations(n as usize) {
        let mut word = vec![Letter::ZDag; total];
        for &p in &z_positions {
            word[p] = Letter::Z;
        }
        words.push((coeff.clone(), word));
    }
    SymWordExpansion { words }
}

/// Applies a symmetrized word family in a given closure shape.
fn apply_sym<S: GaugeState>(state: &S, n: u32, m: u32, shape: WordShape) -> S {
    let mut out = S::zero(state.params());
    for (c, word) in build_sym(n, m).words {
        let mut piece = state.apply_word(&word, shape);
        piece.scale(&c);
        out.add_scaled(&piece, &Rational::one());
    }
    out
}

/// Applies a gauge operator to a state.
pub fn apply_op<S: GaugeState>(op: &GaugeOpSpec, state: &S) -> Result<S, ObsError> {
    let params = state.params();
    let inv_eps1 = Rational::one() / params.eps1();
    match op {
        GaugeOpSpec::T { n, m } => {
            if *n == 0 && *m == 0 {
                // t_{0,0} = N/eps1: trace of the empty word.
                let mut out = state.clone();
                out.scale(&(rat_int(params.rank as i64) * &inv_eps1));
                return Ok(out);
            }
            let mut out = apply_sym(state, *n, *m, WordShape::Trace);
            out.scale(&inv_eps1);
            Ok(out)
        }
        GaugeOpSpec::E { a, b, n, m } => {
            if *a as u32 >= params.flavors || *b as u32 >= params.flavors {
                return Err(ObsError::InvalidIndices(format!(
                    "flavor ({a},{b}) out of range for p = {}",
                    params.flavors
                )));
            }
            let shape = WordShape::Sandwich {
                out_flavor: *a,
                in_flavor: *b,
            };
            let mut out = apply_sym(state, *n, *m, shape);
            out.scale(&inv_eps1);
            Ok(out)
        }
        GaugeOpSpec::Mu { i, j } => state.apply_mu(*i, *j).ok_or_else(|| {
            ObsError::Unsupported(
                "moment-map entries act only on the concrete representation".into(),
            )
        }),
        GaugeOpSpec::Product(factors) => {
            let mut cur = state.clone();
            for f in factors.iter().rev() {
                cur = apply_op(f, &cur)?;
            }
            Ok(cur)
        }
        GaugeOpSpec::Commutator(x, y) => {
            let xy = apply_op(x, &apply_op(y, state)?)?;
            let yx = apply_op(y, &apply_op(x, state)?)?;
            let mut out = xy;
            out.add_scaled(&yx, &-Rational::one());
            Ok(out)
        }
        GaugeOpSpec::ScalarMul(c, inner) => {
            let mut out = apply_op(inner, state)?;
            out.scale(c);
            Ok(out)
        }
        GaugeOpSpec::Sum(parts) => {
            let mut out = S::zero(params);
            for part in parts {
                let piece = apply_op(part, state)?;
                out.add_scaled(&piece, &Rational::one());
            }
            Ok(out)
        }
    }
}

/// Convenience: the generator `t_{n,m}`.
pub fn op_t(n: u32, m: u32) -> GaugeOpSpec {
    GaugeOpSpec::T { n, m }
}

/// Convenience: the generator `e^a_{b;n,m}`.
pub fn op_e(a: u8, b: u8, n: u32, m: u32) -> GaugeOpSpec {
    GaugeOpSpec::E { a, b, n, m }
}

#[allow(dead_code)]
fn is_zero_rational(c: &Rational) -> bool {
    c.is_zero()
}
