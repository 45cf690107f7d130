//! The single-flavor energy eigenbasis of trace-loop states.
//!
//! At one flavor the physical Hilbert space up to energy `E` is spanned by
//! the states `Tr(Zdag^1)^{c_1} ... Tr(Zdag^N)^{c_N} |ground>` with
//! `sum_i i*c_i <= E`; these are indexed by partitions with parts at most
//! `N`.  Realizations are kept in the gauge-orbit-compressed form, which is
//! exact and cheap because loop multiplication is gauge covariant.

use serde::Serialize;

use csmm_fock::orbit::{ground_orbit, OrbitState};
use csmm_fock::ModelParams;

use crate::HilbertError;

/// One basis label: the exponent vector of the trace loops.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisState {
    /// `counts[i]` is the exponent of `Tr(Zdag^{i+1})`.
    pub counts: Vec<u32>,
}

impl BasisState {
    /// Builds a label from a descending part list (each part is a loop
    /// length).
    pub fn from_parts(parts: &[u32]) -> Self {
        let max = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0u32; max];
        for &p in parts {
            assert!(p >= 1, "loop lengths are positive");
            counts[p as usize - 1] += 1;
        }
        Self { counts }
    }

    /// The multiset of loop lengths, descending.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &c) in self.counts.iter().enumerate().rev() {
            for _ in 0..c {
                out.push(i as u32 + 1);
            }
        }
        out
    }

    /// Energy above the ground state: `sum_i i * c_i`.
    pub fn energy(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u32 + 1) * c)
            .sum()
    }

    /// Number of loop factors `sum_i c_i`; the per-state normalization is
    /// one half-power of the scale per factor.
    pub fn factor_count(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Compact display such as `p1^2 p3` (the empty product is `1`).
    pub fn label(&self) -> String {
        let mut pieces = Vec::new();
        for (i, &c) in self.counts.iter().enumerate() {
            match c {
                0 => {}
                1 => pieces.push(format!("p{}", i + 1)),
                _ => pieces.push(format!("p{}^{}", i + 1, c)),
            }
        }
        if pieces.is_empty() {
            "1".to_string()
        } else {
            pieces.join(" ")
        }
    }
}

/// Descending part lists of every total `<= budget` with parts `<= max_part`.
pub fn partitions_up_to(budget: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn rec(budget: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for part in (1..=cap.min(budget)).rev() {
            cur.push(part);
            rec(budget - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(budget, max_part, &mut Vec::new(), &mut out);
    out.sort_by_key(|p| (p.iter().sum::<u32>(), p.clone()));
    out
}

/// The loop basis of the physical space up to an energy cutoff, with exact
/// orbit-compressed realizations.
#[derive(Clone, Debug)]
pub struct Basis {
    /// Model parameters (single flavor).
    pub params: ModelParams,
    /// Energy cutoff above the ground state.
    pub cutoff: u32,
    /// Labels, sorted by (energy, parts).
    pub states: Vec<BasisState>,
    /// `states[i]` realized as loops times the ground state.
    pub realizations: Vec<OrbitState>,
}

impl Basis {
    /// Builds the basis for rank `n`, level `k`, cutoff `e` (single flavor).
    pub fn build(n: u32, k: u32, e: u32) -> Result<Self, HilbertError> {
        let params = ModelParams::new(n, 1, k);
        let ground = ground_orbit(params)?;
        let mut states = Vec::new();
        let mut realizations = Vec::new();
        for parts in partitions_up_to(e, n) {
            states.push(BasisState::from_parts(&parts));
            realizations.push(ground.mul_loops(&parts));
        }
        Ok(Self {
            params,
            cutoff: e,
            states,
            realizations,
        })
    }

    /// Number of basis states.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// True iff empty (never the case for a valid build).
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Indices of the states at one energy.
    pub fn energy_block(&self, e: u32) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.energy() == e)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of a label.
    pub fn position(&self, state: &BasisState) -> Option<usize> {
        self.states.iter().position(|s| {
            s.parts() == state.parts()
        })
    }
}
