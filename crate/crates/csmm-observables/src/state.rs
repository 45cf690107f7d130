//! A common interface over the two state representations of the Fock
//! engine: eager polynomials ([`FockPoly`]) and gauge-orbit-compressed
//! states ([`OrbitState`]).  Observable application, spanning-set
//! generation and relation verification are written once against this
//! trait.

use std::collections::BTreeMap;

use csmm_exact::Rational;
use csmm_fock::monomial::Monomial;
use csmm_fock::mu::{is_physical, moment_map_apply};
use csmm_fock::orbit::{ground_orbit, OrbitMono, OrbitState};
use csmm_fock::poly::{FockError, FockPoly};
use csmm_fock::word::{apply_word, apply_word_orbit, Letter, WordShape};
use csmm_fock::ModelParams;

/// State representation usable by the observable layer.
pub trait GaugeState: Clone {
    /// Coordinate label distinguishing basis monomials of the
    /// representation.
    type Key: Ord + Clone + std::fmt::Debug;

    /// Model parameters the state lives in.
    fn params(&self) -> ModelParams;
    /// The zero state.
    fn zero(params: ModelParams) -> Self;
    /// The lowest-energy physical state.
    fn ground(params: ModelParams) -> Result<Self, FockError>;
    /// `self += c * other`.
    fn add_scaled(&mut self, other: &Self, c: &Rational);
    /// `self *= c`.
    fn scale(&mut self, c: &Rational);
    /// Formal zero test on the compressed representation (sufficient but not
    /// necessary for the state to vanish).
    fn is_zero(&self) -> bool;
    /// Faithful zero test: true iff the state is the zero Fock vector.
    ///
    /// Chain monomials of word length at or above the matrix rank satisfy
    /// Cayley-Hamilton trace relations, so this must expand down to
    /// elementary oscillator entries instead of comparing compressed
    /// coordinates.
    fn is_null(&self) -> bool;
    /// Applies a creation/annihilation word in the given closure shape.
    fn apply_word(&self, word: &[Letter], shape: WordShape) -> Self;
    /// Applies the moment-map entry `mu^i_j` when the representation
    /// supports it.
    fn apply_mu(&self, i: u8, j: u8) -> Option<Self>;
    /// Exact coordinate vector of the state.
    fn coords(&self) -> BTreeMap<Self::Key, Rational>;
    /// Largest energy among the state's monomials (`None` when zero).
    fn max_energy(&self) -> Option<u32>;
    /// Full physicality check (Gauss law + flavor-count grading).
    fn check_physical(&self) -> bool;
    /// One representative `(monomial, coefficient)` rendered for reports.
    fn witness_term(&self) -> Option<String>;
}

impl GaugeState for FockPoly {
    type Key = Monomial;

    fn params(&self) -> ModelParams {
        self.params
    }
    fn zero(params: ModelParams) -> Self {
        FockPoly::zero(params)
    }
    fn ground(params: ModelParams) -> Result<Self, FockError> {
        csmm_fock::ground_state(params)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        FockPoly::add_scaled(self, other, c);
    }
    fn scale(&mut self, c: &Rational) {
        FockPoly::scale(self, c);
    }
    fn is_zero(&self) -> bool {
        FockPoly::is_zero(self)
    }
    fn is_null(&self) -> bool {
        FockPoly::is_null(self)
    }
    fn apply_word(&self, word: &[Letter], shape: WordShape) -> Self {
        apply_word(word, shape, self)
    }
    fn apply_mu(&self, i: u8, j: u8) -> Option<Self> {
        Some(moment_map_apply(self, i, j))
    }
    fn coords(&self) -> BTreeMap<Self::Key, Rational> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }
    fn max_energy(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::energy).max()
    }
    fn check_physical(&self) -> bool {
        is_physical(self).is_physical()
    }
    fn witness_term(&self) -> Option<String> {
        self.coords()
            .into_iter()
            .next()
            .map(|(m, c)| format!("{c} * {m:?}"))
    }
}

impl GaugeState for OrbitState {
    type Key = OrbitMono;

    fn params(&self) -> ModelParams {
        self.params
    }
    fn zero(params: ModelParams) -> Self {
        OrbitState::zero(params)
    }
    fn ground(params: ModelParams) -> Result<Self, FockError> {
        ground_orbit(params)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        OrbitState::add_scaled(self, other, c);
    }
    fn scale(&mut self, c: &Rational) {
        OrbitState::scale(self, c);
    }
    fn is_zero(&self) -> bool {
        OrbitState::is_zero(self)
    }
    fn is_null(&self) -> bool {
        OrbitState::is_zero(self) || self.to_fock().is_null()
    }
    fn apply_word(&self, word: &[Letter], shape: WordShape) -> Self {
        apply_word_orbit(word, shape, self)
    }
    fn apply_mu(&self, _i: u8, _j: u8) -> Option<Self> {
        // Individual moment-map entries are not gauge-covariant, so they
        // cannot act on orbit-compressed states.
        None
    }
    fn coords(&self) -> BTreeMap<Self::Key, Rational> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }
    fn max_energy(&self) -> Option<u32> {
        self.terms.keys().map(OrbitMono::energy).max()
    }
    fn check_physical(&self) -> bool {
        is_physical(&self.to_fock()).is_physical()
    }
    fn witness_term(&self) -> Option<String> {
        self.coords()
            .into_iter()
            .next()
            .map(|(m, c)| format!("{c} * {m:?}"))
    }
}
