//! Exact Fock-space engine for the quantized two-matrix/flavor model.
//!
//! States are polynomials in the creation operators `Zdag` (an `N x N`
//! matrix) and `lamdag` (`p` flavors of `N`-row vectors) acting on a Fock
//! vacuum, with commutation relations
//!
//! ```text
//! [Z^i_j, Zdag^k_l] = eps1 * delta^i_l * delta^k_j
//! [lam^j_b, lamdag^a_i] = eps1 * delta^j_i * delta^a_b
//! ```
//!
//! Rather than expanding everything into elementary matrix entries (which
//! blows up as `N^energy`), monomials are stored as products of *chains*
//! `lamdag^a Zdag^d` with a free row index, open `Zdag^d` segments, and
//! closed trace loops `Tr(Zdag^d)`.  Annihilation operators act as exact
//! derivations that split chains; gauge-invariant words are applied with
//! deferred ("wire") indices so that no explicit index sum over `N` is ever
//! performed.
//!
//! Layout:
//! * [`params`] — model parameters `(N, p, k)` and the induced couplings.
//! * [`monomial`] — chain monomials, welding, canonical form.
//! * [`poly`] — state polynomials, elementary operators, derivations,
//!   inner products.
//! * [`word`] — deferred-index application of traced / flavor-sandwiched /
//!   open operator words.
//! * [`mu`] — the moment map (gauge constraint) and physicality checks.
//! * [`ground`] — explicit ground states.
//! * [`orbit`] — compression of permutation-covariant states onto gauge
//!   orbits of column labels, with the same word engine.

pub mod ground;
pub mod monomial;
pub mod mu;
pub mod orbit;
pub mod params;
pub mod poly;
pub mod word;

pub use ground::ground_state;
pub use monomial::{Chain, Head, Monomial, Tail};
pub use mu::{is_physical, moment_map_apply, PhysicalReport};
pub use orbit::{ground_orbit, OrbitMono, OrbitState};
pub use params::ModelParams;
pub use poly::{ElementarySymbol, FockPoly};
pub use word::{apply_word, apply_word_orbit, Letter, WordShape};
