//! Symmetric-function combinatorics backing the determinant-label calculus.
//!
//! Antisymmetrized creation labels ("C-labels") built from `N` strictly
//! ordered exponents correspond, up to a sorting sign, to Schur labels; a
//! trace insertion acts on a C-label by bumping one exponent, which is
//! exactly the border-strip (Murnaghan–Nakayama) expansion on the Schur
//! side.  This crate implements both sides of that dictionary plus the
//! symmetric-group character values needed to move between power-sum and
//! Schur coordinates.
//!
//! Layout:
//! * [`partition`] — integer partitions, beta numbers, centralizer orders.
//! * [`clabel`] — C-labels, the label/Schur dictionary, trace bumps.
//! * [`mn`] — border-strip expansion with a row cap, character values,
//!   character-table export.
//! * [`oracle`] — an independent brute-force implementation working with
//!   explicit multivariate polynomials; it exists so the production
//!   combinatorics can be validated against literal algebra, and is used
//!   only by tests and acceptance checks.

pub mod clabel;
pub mod mn;
pub mod oracle;
pub mod partition;

pub use clabel::{c_to_schur, power_times_c, schur_to_c, CLabel};
pub use mn::{char_value, mn_expand, write_char_table_csv, SchurExpansion};
pub use partition::{partitions_of, partitions_up_to, Partition};
