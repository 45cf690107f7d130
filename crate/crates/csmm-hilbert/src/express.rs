//! Exact expansion of physical states in the loop basis.
//!
//! The expansion solves, per energy block, the Gram system
//! `G x = b` with `G[nu][mu] = <p_nu g, p_mu g> / <g,g>` and
//! `b[nu] = <p_nu g, state> / <g,g>`, both computed through the faithful
//! annihilation pairing of [`crate::pairing`].  The Gram matrix of a basis
//! is positive definite, so the solve succeeds exactly whenever the input
//! is in the span; the solver re-verifies every equation, which certifies
//! the coefficients.

use std::collections::HashMap;

use num_traits::Zero;

use csmm_exact::{solve_exact, Rational, SparseRow};
use csmm_fock::orbit::OrbitState;

use crate::basis::Basis;
use crate::pairing::GroundExtractor;
use crate::HilbertError;

/// One cached energy block of the scaled Gram matrix.
struct Block {
    /// Basis indices of the columns (all states at this energy).
    cols: Vec<usize>,
    /// `gram[r][c] = <p_{nu_r} g, b_{cols[c]}> / <g,g>`; the functional
    /// labels `nu_r` run over the same partitions as the columns.
    gram: Vec<Vec<Rational>>,
}

/// Expands states in a fixed basis, caching per-energy Gram blocks.
pub struct Expander<'a> {
    /// The target basis.
    pub basis: &'a Basis,
    extractor: GroundExtractor,
    blocks: HashMap<u32, Block>,
}

impl<'a> Expander<'a> {
    /// Builds an expander for the basis.
    pub fn new(basis: &'a Basis) -> Result<Self, HilbertError> {
        let extractor = GroundExtractor::new(basis.params)?;
        Ok(Self {
            basis,
            extractor,
            blocks: HashMap::new(),
        })
    }

    /// The scalar extractor (shared with callers that need raw pairings).
    pub fn extractor(&self) -> &GroundExtractor {
        &self.extractor
    }

    fn block(&mut self, e: u32) -> Result<&Block, HilbertError> {
        if !self.blocks.contains_key(&e) {
            let cols = self.basis.energy_block(e);
            let mut gram = Vec::with_capacity(cols.len());
            for &r in &cols {
                let nu = self.basis.states[r].parts();
                let mut row = Vec::with_capacity(cols.len());
                for &c in &cols {
                    row.push(self.extractor.pair(&nu, &self.basis.realizations[c])?);
                }
                gram.push(row);
            }
            self.blocks.insert(e, Block { cols, gram });
        }
        Ok(self.blocks.get(&e).unwrap())
    }

    /// Exact coefficients of `state` in the basis.  The state may mix
    /// energies; each homogeneous component must lie below the basis
    /// cutoff.  Fails with a witness when a block system is inconsistent
    /// (the input is not in the span) or an energy exceeds the cutoff.
    pub fn express(&mut self, state: &OrbitState) -> Result<Vec<Rational>, HilbertError> {
        let mut out = vec![Rational::zero(); self.basis.len()];
        if state.is_zero() {
            return Ok(out);
        }
        // Split into energy-homogeneous components.
        let mut components: HashMap<u32, OrbitState> = HashMap::new();
        for (om, c) in &state.terms {
            components
                .entry(om.energy().saturating_sub(ground_energy(self.basis)))
                .or_insert_with(|| OrbitState::zero(state.params))
                .add_term(om.clone(), c.clone());
        }
        // A term below the ground energy can only belong to a null
        // combination; merge it into the lowest block, where the pairing
        // ignores it exactly.
        for (e, component) in components {
            if e > self.basis.cutoff {
                return Err(HilbertError::AboveCutoff {
                    energy: e,
                    cutoff: self.basis.cutoff,
                });
            }
            let rhs = {
                let basis = self.basis;
                let extractor = &self.extractor;
                let cols = basis.energy_block(e);
                let mut rhs = Vec::with_capacity(cols.len());
                for &r in &cols {
                    let nu = basis.states[r].parts();
                    rhs.push(extractor.pair(&nu, &component)?);
                }
                rhs
            };
            let block = self.block(e)?;
            let rows: Vec<SparseRow> = block
                .gram
                .iter()
                .zip(&rhs)
                .map(|(grow, b)| {
                    SparseRow::new(
                        grow.iter().cloned().enumerate(),
                        b.clone(),
                    )
                })
                .collect();
            let x = solve_exact(&rows, block.cols.len())
                .map_err(|e| HilbertError::OutsideSpan(e.to_string()))?;
            for (slot, v) in block.cols.iter().zip(x) {
                out[*slot] = v;
            }
        }
        Ok(out)
    }

    /// Exact determinant of the scaled Gram block at energy `e`
    /// (`det(Gram) / <g,g>^dim`); a nonzero value certifies linear
    /// independence of the block.
    pub fn gram_determinant(&mut self, e: u32) -> Result<Rational, HilbertError> {
        let block = self.block(e)?;
        Ok(determinant(&block.gram))
    }
}

/// Ground-state energy `k N (N-1) / 2`.
pub fn ground_energy_of(params: csmm_fock::ModelParams) -> u32 {
    params.level * params.rank * (params.rank - 1) / 2
}

fn ground_energy(basis: &Basis) -> u32 {
    ground_energy_of(basis.params)
}

/// Exact determinant by fraction-free-ish Gaussian elimination on
/// rationals (the blocks are small).
fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= &sub;
            }
        }
    }
    det
}
