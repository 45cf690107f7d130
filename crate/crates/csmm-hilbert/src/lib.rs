//! placeholder
pub mod basis;
use thiserror::Error;
#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("fock error: {0}")]
    Fock(#[from] csmm_fock::poly::FockError),
}
