//! Exact arithmetic foundation for the matrix-model workbench.
//!
//! Everything downstream of this crate is a *proof-grade* computation: a
//! check passes only when a residual is identically zero, or when an exact
//! coefficient matches an exact prediction.  No floating point appears
//! anywhere in the workspace; this crate supplies the three numeric types
//! the rest of the code is written against, plus an exact linear solver.
//!
//! * [`Rational`] — arbitrary-precision rationals (`num-rational` backed).
//! * [`ParamPoly`] — polynomials in the two deformation parameters
//!   `eps1`, `eps2` with rational coefficients.  Negative `eps2` powers are
//!   permitted so that the affine-algebra layer can carry `1/eps2` levels.
//! * [`ScaledRational`] — a rational together with a half-integer power of
//!   a formal scale `sqrt(S)`, used for asymptotic bookkeeping where matrix
//!   entries carry powers of `sqrt(N)` or `sqrt((k+1)N)`.
//! * [`solve_exact`] — fraction-free-enough Gaussian elimination over the
//!   rationals for (possibly overdetermined) sparse systems, with an exact
//!   consistency verdict.

pub mod parampoly;
pub mod rational;
pub mod scaled;
pub mod solve;

pub use parampoly::ParamPoly;
pub use rational::{binomial, factorial, rat, rat_int, Rational};
pub use scaled::ScaledRational;
pub use solve::{solve_exact, RowSpace, SolveError, SparseRow};
