//! Exact matrices of the trace observables on the truncated loop basis.
//!
//! All storage is in the *raw* basis `prod_i Tr(Zdag^i)^{c_i} |ground>`.
//! The paper's energy eigenbasis normalizes each `Zdag` by one half-power
//! of the scale (`sqrt(N)` for the plain basis, `sqrt(N(k+1))` for the
//! rescaled one), so a raw entry between states of energies `e_row`,
//! `e_col` acquires the uniform ledger `scale^{(e_row - e_col)/2}`; for
//! `t_{m,n}` every nonzero entry has `e_row - e_col = n - m`.

use csmm_exact::{Rational, ScaledRational};
use csmm_fock::ModelParams;
use csmm_observables::{apply_op, op_t};
use num_traits::Zero;
use serde::Serialize;

use crate::basis::Basis;
use crate::express::Expander;
use crate::HilbertError;

/// Exact matrix of `t_{m,n} = Tr Sym(Z^m Zdag^n)` from `H^{<=E_dom}` to
/// `H^{<=E_dom + n - m}`.
#[derive(Clone, Debug)]
pub struct RepMatrix {
    /// Number of annihilators `Z`.
    pub m: u32,
    /// Number of creators `Zdag`.
    pub n: u32,
    /// Model parameters.
    pub params: ModelParams,
    /// Domain basis.
    pub domain: Basis,
    /// Codomain basis.
    pub codomain: Basis,
    /// Column-major raw entries: `raw[j][i]` is the coefficient of
    /// codomain state `i` in the image of domain state `j`.
    pub raw: Vec<Vec<Rational>>,
}

impl RepMatrix {
    /// Raw entry (row `i` of the codomain, column `j` of the domain).
    pub fn raw_entry(&self, i: usize, j: usize) -> &Rational {
        &self.raw[j][i]
    }

    /// Entry in the normalized energy eigenbasis: `raw * sqrt(N)^{n-m}`.
    pub fn normalized_entry(&self, i: usize, j: usize) -> ScaledRational {
        ScaledRational::new(self.raw[j][i].clone(), self.n as i32 - self.m as i32)
    }

    /// Ledger half-power of the rescaled operator matrix
    /// `((k+1)N)^{-(m+n+2 delta_{m,n})/2} t_{m,n}` in the rescaled basis:
    /// entries are `raw * S^{half/2}` with `S = (k+1)N`.
    pub fn rescaled_half_power(&self) -> i32 {
        let delta = if self.m == self.n { 2 } else { 0 };
        self.n as i32 - self.m as i32 - (self.m + self.n) as i32 - delta
    }

    /// True iff every nonzero entry connects energies differing by `n-m`.
    pub fn is_energy_homogeneous(&self) -> bool {
        let shift = self.n as i64 - self.m as i64;
        for (j, col) in self.raw.iter().enumerate() {
            let ej = self.domain.states[j].energy() as i64;
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() && self.codomain.states[i].energy() as i64 != ej + shift {
                    return false;
                }
            }
        }
        true
    }

    /// CSV rows `m,n,k,E,N,row_state,col_state,raw_num,raw_den,
    /// ledger_halfpower,predicted,residual` for every structurally allowed
    /// entry.  `predicted` and `residual` are parity-reduced rational
    /// coefficients of `sqrt(N)^{(n-m) mod 2}` when a prediction is given,
    /// empty otherwise.
    pub fn to_csv(&self, predicted: Option<&[Vec<Rational>]>) -> String {
        let mut out = String::from(
            "m,n,k,E,N,row_state,col_state,raw_num,raw_den,ledger_halfpower,predicted,residual\n",
        );
        let shift = self.n as i64 - self.m as i64;
        for (j, col) in self.raw.iter().enumerate() {
            let ej = self.domain.states[j].energy() as i64;
            for (i, v) in col.iter().enumerate() {
                if self.codomain.states[i].energy() as i64 != ej + shift {
                    continue;
                }
                let (p, r) = match predicted {
                    Some(pm) => {
                        let pred = &pm[j][i];
                        let norm = self.parity_reduced(i, j);
                        (pred.to_string(), (&norm - pred).to_string())
                    }
                    None => (String::new(), String::new()),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    self.m,
                    self.n,
                    self.params.level,
                    self.domain.cutoff,
                    self.params.rank,
                    self.codomain.states[i].label().replace(' ', "."),
                    self.domain.states[j].label().replace(' ', "."),
                    v.numer(),
                    v.denom(),
                    self.n as i32 - self.m as i32,
                    p,
                    r
                ));
            }
        }
        out
    }

    /// Normalized entry reduced to a rational multiple of
    /// `sqrt(N)^{(n-m) mod 2}`: folds the even part of the ledger into the
    /// value so that same-parity quantities subtract exactly.
    pub fn parity_reduced(&self, i: usize, j: usize) -> Rational {
        let h = self.n as i32 - self.m as i32;
        let parity = h.rem_euclid(2);
        fold_even_half_power(&self.raw[j][i], h - parity, self.params.rank)
    }
}

/// `value * scale^{h/2}` for an even `h`, as an exact rational.
pub fn fold_even_half_power(value: &Rational, h: i32, scale: u32) -> Rational {
    debug_assert!(h % 2 == 0);
    let s = Rational::from_integer(scale.into());
    let mut v = value.clone();
    for _ in 0..(h / 2).abs() {
        if h > 0 {
            v *= &s;
        } else {
            v /= &s;
        }
    }
    v
}

/// Builds the matrix of `t_{m,n}` with domain cutoff `e` and codomain
/// cutoff `max(e + n - m, 0)`.
pub fn rep_matrix(m: u32, n: u32, rank: u32, k: u32, e: u32) -> Result<RepMatrix, HilbertError> {
    let cod = (e as i64 + n as i64 - m as i64).max(0) as u32;
    rep_matrix_with_cutoffs(m, n, rank, k, e, cod)
}

/// Builds the matrix of `t_{m,n}` with explicit domain and codomain
/// cutoffs (`cod_cut` must be at least `dom_cut + n - m`).
pub fn rep_matrix_with_cutoffs(
    m: u32,
    n: u32,
    rank: u32,
    k: u32,
    dom_cut: u32,
    cod_cut: u32,
) -> Result<RepMatrix, HilbertError> {
    assert!(
        cod_cut as i64 >= dom_cut as i64 + n as i64 - m as i64,
        "codomain cutoff clips the image"
    );
    let domain = Basis::build(rank, k, dom_cut)?;
    let codomain = Basis::build(rank, k, cod_cut)?;
    let mut expander = Expander::new(&codomain)?;
    let op = op_t(m, n);
    let mut raw = Vec::with_capacity(domain.len());
    for b in &domain.realizations {
        let img = apply_op(&op, b)?;
        raw.push(expander.express(&img)?);
    }
    Ok(RepMatrix {
        m,
        n,
        params: domain.params,
        domain,
        codomain,
        raw,
    })
}

/// Raw-matrix product `a ∘ b` (apply `b` first): requires the domain of
/// `a` to be the codomain basis of `b`.  Returns column-major raw entries
/// over (codomain of `a`) x (domain of `b`).
pub fn compose_raw(a: &RepMatrix, b: &RepMatrix) -> Vec<Vec<Rational>> {
    assert_eq!(a.params, b.params, "parameter mismatch");
    assert_eq!(
        a.domain.cutoff, b.codomain.cutoff,
        "basis mismatch in composition"
    );
    let rows = a.codomain.len();
    let mid = a.domain.len();
    let cols = b.domain.len();
    let mut out = vec![vec![Rational::zero(); rows]; cols];
    for j in 0..cols {
        for l in 0..mid {
            if b.raw[j][l].is_zero() {
                continue;
            }
            for i in 0..rows {
                if a.raw[l][i].is_zero() {
                    continue;
                }
                let add = &a.raw[l][i] * &b.raw[j][l];
                out[j][i] += &add;
            }
        }
    }
    out
}

/// Report of the exact basis construction for one parameter set: counts
/// and per-energy Gram determinants (scaled by the positive ground norm).
#[derive(Debug, Serialize)]
pub struct BasisReport {
    /// Gauge rank.
    pub rank: u32,
    /// Level.
    pub level: u32,
    /// Energy cutoff.
    pub cutoff: u32,
    /// Number of basis states.
    pub dimension: usize,
    /// `(energy, block size, det(Gram)/<g,g>^size)` per energy.
    pub gram_blocks: Vec<(u32, usize, String)>,
    /// True iff every block determinant is nonzero.
    pub gram_nonsingular: bool,
}

/// Builds the basis and certifies linear independence through exact Gram
/// block determinants.
pub fn basis_report(rank: u32, k: u32, e: u32) -> Result<BasisReport, HilbertError> {
    let basis = Basis::build(rank, k, e)?;
    let mut expander = Expander::new(&basis)?;
    let mut blocks = Vec::new();
    let mut ok = true;
    for energy in 0..=e {
        let size = basis.energy_block(energy).len();
        if size == 0 {
            continue;
        }
        let det = expander.gram_determinant(energy)?;
        ok &= !det.is_zero();
        blocks.push((energy, size, det.to_string()));
    }
    Ok(BasisReport {
        rank,
        level: k,
        cutoff: e,
        dimension: basis.len(),
        gram_blocks: blocks,
        gram_nonsingular: ok,
    })
}
