//! Differential-operator forms on the polynomial realization of the loop
//! basis, with half-integer ledgers of the scale `N`.
//!
//! A form is a sum of terms `value * sqrt(N)^{half} * (p-multiplications)
//! * (derivatives)`, acting on monomials in the variables `p_i`
//! (multiplications written to the left of derivatives; a derivative
//! `d/dp_i` contributes the exponent as a factor and decrements it).

use csmm_exact::{rat, rat_int, Rational};
use num_traits::Zero;

use crate::basis::{Basis, BasisState};

/// One term of a differential-operator form.
#[derive(Clone, Debug)]
pub struct DiffOpTerm {
    /// Rational prefactor (powers of `k+1` are folded in here).
    pub value: Rational,
    /// Ledger exponent of `sqrt(N)`.
    pub half: i32,
    /// Loop lengths multiplied in (`p_i` factors).
    pub mults: Vec<u32>,
    /// Loop lengths differentiated (`d/dp_i` factors, applied first).
    pub derivs: Vec<u32>,
}

/// A differential-operator form.
#[derive(Clone, Debug, Default)]
pub struct DiffOpForm {
    /// Terms; order is irrelevant.
    pub terms: Vec<DiffOpTerm>,
}

impl DiffOpForm {
    /// Adds a term.
    pub fn push(&mut self, value: Rational, half: i32, mults: &[u32], derivs: &[u32]) {
        if value.is_zero() {
            return;
        }
        self.terms.push(DiffOpTerm {
            value,
            half,
            mults: mults.to_vec(),
            derivs: derivs.to_vec(),
        });
    }

    /// Image of a basis label: list of `(label, value, half)` with distinct
    /// `(label, half)` pairs merged.
    pub fn apply(&self, state: &BasisState) -> Vec<(BasisState, Rational, i32)> {
        let mut out: Vec<(BasisState, Rational, i32)> = Vec::new();
        for term in &self.terms {
            let mut counts = state.counts.clone();
            let mut v = term.value.clone();
            let mut dead = false;
            for &d in &term.derivs {
                let idx = d as usize - 1;
                let c = if idx < counts.len() { counts[idx] } else { 0 };
                if c == 0 {
                    dead = true;
                    break;
                }
                v *= rat_int(c as i64);
                counts[idx] -= 1;
            }
            if dead {
                continue;
            }
            for &p in &term.mults {
                let idx = p as usize - 1;
                if idx >= counts.len() {
                    counts.resize(idx + 1, 0);
                }
                counts[idx] += 1;
            }
            while counts.last() == Some(&0) {
                counts.pop();
            }
            let label = BasisState { counts };
            if let Some(slot) = out
                .iter_mut()
                .find(|(l, _, h)| *l == label && *h == term.half)
            {
                slot.1 += &v;
            } else {
                out.push((label, v, term.half));
            }
        }
        out.retain(|(_, v, _)| !v.is_zero());
        out
    }

    /// Predicted matrix entries as polynomials in `N`: for each domain
    /// column `j` and codomain row `i`, the coefficient of `N^d` where the
    /// term of ledger `half` contributes at raw degree
    /// `d = (half - shift) / 2` (`shift = e_row - e_col` is the uniform
    /// normalization ledger of the compared operator).  Entries whose
    /// ledger parity disagrees with `shift` are rejected (they cannot occur
    /// for a consistent prediction).
    pub fn raw_polynomials(
        &self,
        domain: &Basis,
        codomain: &Basis,
        shift: i32,
    ) -> Vec<Vec<Vec<(i32, Rational)>>> {
        let mut out = vec![vec![Vec::new(); codomain.len()]; domain.len()];
        for (j, label) in domain.states.iter().enumerate() {
            for (image, v, half) in self.apply(label) {
                let Some(i) = codomain.position(&image) else {
                    continue;
                };
                assert!(
                    (half - shift) % 2 == 0,
                    "prediction ledger parity mismatch"
                );
                let d = (half - shift) / 2;
                let entry = &mut out[j][i];
                if let Some(slot) = entry.iter_mut().find(|(deg, _)| *deg == d) {
                    slot.1 += &v;
                } else {
                    entry.push((d, v));
                }
            }
        }
        out
    }

    /// Evaluates the predicted *parity-reduced* matrix at a concrete rank:
    /// entry = sum over terms of `value * N^{(half - parity)/2} *
    /// (action coefficient)`, a rational multiple of `sqrt(N)^parity`.
    pub fn parity_reduced_matrix(
        &self,
        domain: &Basis,
        codomain: &Basis,
        parity: i32,
    ) -> Vec<Vec<Rational>> {
        let n_rat = Rational::from_integer(domain.params.rank.into());
        let mut out = vec![vec![Rational::zero(); codomain.len()]; domain.len()];
        for (j, label) in domain.states.iter().enumerate() {
            for (image, v, half) in self.apply(label) {
                let Some(i) = codomain.position(&image) else {
                    continue;
                };
                assert!((half - parity) % 2 == 0, "parity mismatch");
                let mut val = v;
                let e = (half - parity) / 2;
                for _ in 0..e.abs() {
                    if e > 0 {
                        val *= &n_rat;
                    } else {
                        val /= &n_rat;
                    }
                }
                out[j][i] += &val;
            }
        }
        out
    }
}

/// Leading form of `t_{m,n}` in the normalized basis, per the three
/// branches (net creator, diagonal, net annihilator), together with the
/// raw-entry leading degree in `N`.
pub fn leading_form(m: u32, n: u32, k: u32) -> (DiffOpForm, i32) {
    let kp1 = rat_int(k as i64 + 1);
    let mut form = DiffOpForm::default();
    if m < n {
        // t_{m,n} ~ sqrt(N)^{m+n} (k+1)^m p_{n-m}
        form.push(pow(&kp1, m), (m + n) as i32, &[n - m], &[]);
        (form, m as i32)
    } else if m == n {
        // t_{n,n} ~ sqrt(N)^{2n+2} (k+1)^n / (n+1)
        form.push(
            &pow(&kp1, n) * &rat(1, n as i64 + 1),
            (2 * n + 2) as i32,
            &[],
            &[],
        );
        (form, n as i32 + 1)
    } else {
        // t_{m,n} ~ sqrt(N)^{m+n} (k+1)^{m-1} (m-n) d/dp_{m-n}
        form.push(
            &pow(&kp1, m - 1) * &rat_int((m - n) as i64),
            (m + n) as i32,
            &[],
            &[m - n],
        );
        (form, m as i32)
    }
}

/// The exact form of `t_{1,0}` below a part cap:
/// `sqrt(N) d/dp_1 + (1/sqrt(N)) sum_{i>=2} i p_{i-1} d/dp_i`.
pub fn exact_t10(max_part: u32) -> DiffOpForm {
    let mut form = DiffOpForm::default();
    form.push(rat_int(1), 1, &[], &[1]);
    for i in 2..=max_part {
        form.push(rat_int(i as i64), -1, &[i - 1], &[i]);
    }
    form
}

/// The exact form of `t_{0,1}`: `sqrt(N) p_1`.
pub fn exact_t01() -> DiffOpForm {
    let mut form = DiffOpForm::default();
    form.push(rat_int(1), 1, &[1], &[]);
    form
}

/// The refined form of `t_{2,1}` (remainder `O(1/sqrt(N))`):
/// `(N(k+1) - k) t_{1,0} + (k+1) sqrt(N) sum_{i>=2} i p_{i-1} d/dp_i`.
pub fn refined_t21(k: u32, max_part: u32) -> DiffOpForm {
    let kp1 = rat_int(k as i64 + 1);
    let neg_k = rat_int(-(k as i64));
    let mut form = DiffOpForm::default();
    // (N(k+1) - k) * sqrt(N) d/dp_1
    form.push(kp1.clone(), 3, &[], &[1]);
    form.push(neg_k.clone(), 1, &[], &[1]);
    for i in 2..=max_part {
        let i_rat = rat_int(i as i64);
        // (N(k+1) - k) * (1/sqrt(N)) i p_{i-1} d/dp_i
        form.push(&kp1 * &i_rat, 1, &[i - 1], &[i]);
        form.push(&neg_k * &i_rat, -1, &[i - 1], &[i]);
        // (k+1) sqrt(N) i p_{i-1} d/dp_i
        form.push(&kp1 * &i_rat, 1, &[i - 1], &[i]);
    }
    form
}

/// The refined form of `t_{1,2}` (remainder decays in `N`):
/// `(k+1) sqrt(N)^3 p_1 - k sqrt(N) p_1 + sqrt(N) sum_{i>=1} i p_{i+1} d/dp_i`.
pub fn refined_t12(k: u32, max_part: u32) -> DiffOpForm {
    let mut form = DiffOpForm::default();
    form.push(rat_int(k as i64 + 1), 3, &[1], &[]);
    form.push(rat_int(-(k as i64)), 1, &[1], &[]);
    for i in 1..=max_part {
        form.push(rat_int(i as i64), 1, &[i + 1], &[i]);
    }
    form
}

fn pow(base: &Rational, e: u32) -> Rational {
    let mut out = rat_int(1);
    for _ in 0..e {
        out *= base;
    }
    out
}
