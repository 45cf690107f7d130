//! Gauge-invariant observable algebra on the Fock engine.
//!
//! This crate turns the generator families
//!
//! ```text
//! e^a_{b;n,m} = (1/eps1) lamdag^a Sym(Z^n Zdag^m) lam_b
//! t_{n,m}     = (1/eps1) Tr Sym(Z^n Zdag^m)
//! ```
//!
//! into executable operators (on both the concrete and the
//! orbit-compressed state representations), builds physical spanning sets
//! of the energy-truncated physical subspace, and verifies the printed
//! commutation-relation families exactly — by acting on the spanning sets
//! and demanding the zero state, with no numerical tolerance.

#![warn(missing_docs)]

pub mod op;
pub mod relations;
pub mod spanning;
pub mod state;
pub mod traceid;

pub use op::{apply_op, build_sym, op_e, op_t, GaugeOpSpec, ObsError, SymWordExpansion};
pub use relations::{
    mirrored_relation_residual_op, relation_residual_op, verify_relation, RelIndices,
    RelationFamily, RelationReport,
};
pub use spanning::{physical_spanning_set, PhysicalStates};
pub use state::GaugeState;
pub use traceid::{trace_identity_check, TraceIdentityReport};
