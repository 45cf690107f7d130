//! Deferred-index application of operator words.
//!
//! A word is a sequence of matrix letters (`Z` or `Zdag`) chained by shared
//! indices.  Three closures of the index chain are supported:
//! * [`WordShape::Trace`] — `Tr(s_L ... s_1)`;
//! * [`WordShape::Sandwich`] — `lamdag^a (s_L ... s_1) lam_b`;
//! * [`WordShape::Open`] — `(s_L ... s_1)^out_in` with concrete endpoints.
//!
//! The word is processed rightmost letter first (operator order).  Each
//! internal contraction index is represented by a wire; a creation letter
//! welds a fresh `Zdag` onto the pending wire, and an annihilation letter
//! differentiates the whole intermediate state with the pending wires as
//! derivative indices.  No sum over `N` index values is ever materialized.

use csmm_exact::Rational;

use crate::monomial::{Chain, Head, Monomial, Tail};
use crate::orbit::{canonicalize_orbit, OrbitState};
use crate::poly::{
    close_head_wire, diff_lam_mono, diff_z_mono, mul_chain_mono, subst_head_wire, End, FockPoly,
};

/// One matrix letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// Annihilation matrix `Z`.
    Z,
    /// Creation matrix `Zdag`.
    ZDag,
}

/// How the free indices of a word are closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordShape {
    /// `Tr(W)`.
    Trace,
    /// `lamdag^{out} W lam_{in}` (flavor indices 0-based).
    Sandwich {
        /// Flavor of the left (creation) vector.
        out_flavor: u8,
        /// Flavor of the right (annihilation) vector.
        in_flavor: u8,
    },
    /// `W^{out}_{in}` with concrete row/column endpoints.
    Open {
        /// Upper (row) endpoint.
        out_row: u8,
        /// Lower (column) endpoint.
        in_col: u8,
    },
}

/// A single primitive transformation of the intermediate state.
#[derive(Clone, Copy, Debug)]
enum Step {
    MulChain(Chain),
    DiffZ(End, End),
    DiffLam(u8, End),
    CloseTrace { from: u32, to: u32 },
    SubstHead { wire: u32, row: u8 },
}

/// Compiles a word into primitive steps.  Wire ids `0..=len` are reserved
/// for the word; input states must be closed.
fn build_steps(word: &[Letter], shape: WordShape) -> Vec<Step> {
    let len = word.len() as u32;
    let mut steps = Vec::new();
    let mut prev = match shape {
        WordShape::Trace => {
            assert!(!word.is_empty(), "empty traced word (use a scalar N instead)");
            End::Wire(0)
        }
        WordShape::Sandwich { in_flavor, .. } => {
            steps.push(Step::DiffLam(in_flavor, End::Wire(0)));
            End::Wire(0)
        }
        WordShape::Open { in_col, .. } => {
            assert!(!word.is_empty(), "empty open word (a bare delta)");
            End::Conc(in_col)
        }
    };
    for (t, letter) in word.iter().rev().enumerate() {
        let upper = End::Wire(t as u32 + 1);
        match letter {
            Letter::ZDag => steps.push(Step::MulChain(Chain {
                head: upper.as_head(),
                z: 1,
                tail: prev.as_tail(),
            })),
            Letter::Z => steps.push(Step::DiffZ(prev, upper)),
        }
        prev = upper;
    }
    match shape {
        WordShape::Trace => steps.push(Step::CloseTrace { from: len, to: 0 }),
        WordShape::Sandwich { out_flavor, .. } => steps.push(Step::MulChain(Chain {
            head: Head::Lam(out_flavor),
            z: 0,
            tail: Tail::Wire(len),
        })),
        WordShape::Open { out_row, .. } => steps.push(Step::SubstHead {
            wire: len,
            row: out_row,
        }),
    }
    steps
}

/// Applies one step to a single monomial, emitting `(factor, monomial)`
/// pairs (the overall `eps1 = 1` per annihilation letter is kept explicit
/// at the call site for clarity, but is unity throughout).
fn step_emissions(step: &Step, mon: &Monomial, rank: u32) -> Vec<(Rational, Monomial)> {
    match *step {
        Step::MulChain(chain) => mul_chain_mono(mon, chain, rank).into_iter().collect(),
        Step::DiffZ(x, y) => diff_z_mono(mon, x, y, rank),
        Step::DiffLam(a, x) => diff_lam_mono(mon, a, x, rank),
        Step::CloseTrace { from, to } => close_head_wire(mon, from, to, rank)
            .into_iter()
            .collect(),
        Step::SubstHead { wire, row } => subst_head_wire(mon, wire, row, rank)
            .into_iter()
            .collect(),
    }
}

/// Applies the word `s_L ... s_1` (rightmost first) in the given shape to a
/// closed state.
pub fn apply_word(word: &[Letter], shape: WordShape, state: &FockPoly) -> FockPoly {
    let params = state.params;
    debug_assert!(
        state.terms.keys().all(Monomial::is_closed),
        "input state must be closed"
    );
    let steps = build_steps(word, shape);
    let mut cur = state.clone();
    for step in &steps {
        let mut next = FockPoly::zero(params);
        for (m, c) in &cur.terms {
            for (f, nm) in step_emissions(step, m, params.rank) {
                next.add_term(nm, c * f);
            }
        }
        cur = next;
    }
    debug_assert!(cur.terms.keys().all(Monomial::is_closed));
    cur
}

/// Applies the word in the given shape to an orbit-compressed state.
///
/// Only permutation-equivariant shapes are allowed (`Trace`, `Sandwich`);
/// every intermediate monomial is re-canonicalized onto its gauge orbit so
/// the term count stays orbit-sized throughout.
pub fn apply_word_orbit(word: &[Letter], shape: WordShape, state: &OrbitState) -> OrbitState {
    assert!(
        !matches!(shape, WordShape::Open { .. }),
        "open words carry concrete indices and are not gauge-equivariant"
    );
    let params = state.params;
    let steps = build_steps(word, shape);
    let mut cur = state.clone();
    for step in &steps {
        let mut next = OrbitState::zero(params);
        for (om, s) in &cur.terms {
            let rep = om.to_monomial();
            for (f, nm) in step_emissions(step, &rep, params.rank) {
                if let Some((sign, om2)) = canonicalize_orbit(&nm, params) {
                    next.add_term(om2, s * f * Rational::from_integer(sign.into()));
                }
            }
        }
        cur = next;
    }
    cur
}

/// Convenience: applies a word given as a string of letters, `'z'` for the
/// annihilation matrix and `'d'` for the creation matrix, leftmost symbol
/// being the leftmost (last applied) letter.
pub fn letters(spec: &str) -> Vec<Letter> {
    spec.chars()
        .map(|ch| match ch {
            'z' => Letter::Z,
            'd' => Letter::ZDag,
            other => panic!("unknown letter {other:?}"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use csmm_exact::rat_int;

    #[test]
    fn traced_zzdag_on_vacuum_counts_rank_squared() {
        // Tr(Z Zdag) |vac> = eps1 * N^2 |vac>.
        for n in 1..5u32 {
            let params = ModelParams::new(n, 1, 1);
            let v = FockPoly::vacuum(params);
            let out = apply_word(&letters("zd"), WordShape::Trace, &v);
            assert_eq!(
                out.terms.get(&Monomial::one()).cloned(),
                Some(rat_int((n * n) as i64))
            );
            assert_eq!(out.len(), 1);
        }
    }

    #[test]
    fn traced_creation_word_builds_loops() {
        // Tr(Zdag^2) |vac> is the loop monomial of length 2.
        let params = ModelParams::new(3, 1, 1);
        let v = FockPoly::vacuum(params);
        let out = apply_word(&letters("dd"), WordShape::Trace, &v);
        let expect = Monomial {
            chains: vec![],
            loops: vec![2],
        };
        assert_eq!(out.terms.get(&expect).cloned(), Some(rat_int(1)));
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn normal_ordered_vanishes_on_vacuum() {
        // Tr(Zdag Z) |vac> = 0.
        let params = ModelParams::new(3, 1, 1);
        let v = FockPoly::vacuum(params);
        let out = apply_word(&letters("dz"), WordShape::Trace, &v);
        assert!(out.is_zero());
    }

    #[test]
    fn sandwich_number_operator() {
        // lamdag^a W lam_b with empty W acting on lamdag^b_i |vac>
        // replaces the flavor: result lamdag^a_i |vac>.
        let params = ModelParams::new(2, 2, 1);
        let v = FockPoly::vacuum(params);
        let state = v.apply_symbol(crate::poly::ElementarySymbol::LamDag(1, 0));
        let out = apply_word(
            &[],
            WordShape::Sandwich {
                out_flavor: 0,
                in_flavor: 1,
            },
            &state,
        );
        let expect = Monomial {
            chains: vec![Chain {
                head: Head::Lam(0),
                z: 0,
                tail: Tail::Conc(0),
            }],
            loops: vec![],
        };
        assert_eq!(out.terms.get(&expect).cloned(), Some(rat_int(1)));
        assert_eq!(out.len(), 1);
        // Mismatched incoming flavor annihilates.
        let out2 = apply_word(
            &[],
            WordShape::Sandwich {
                out_flavor: 0,
                in_flavor: 0,
            },
            &state,
        );
        assert!(out2.is_zero());
    }

    #[test]
    fn open_word_matches_elementary_action() {
        // (Zdag)^i_j as an open word equals the elementary creation.
        let params = ModelParams::new(2, 1, 1);
        let v = FockPoly::vacuum(params);
        for i in 0..2 {
            for j in 0..2 {
                let via_word = apply_word(
                    &letters("d"),
                    WordShape::Open {
                        out_row: i,
                        in_col: j,
                    },
                    &v,
                );
                let direct = v.apply_symbol(crate::poly::ElementarySymbol::ZDag(i, j));
                assert_eq!(via_word, direct);
            }
        }
    }

    #[test]
    fn trace_word_splits_loops() {
        // Tr(Z) on Tr(Zdag^2)|vac> = 2 Tr(Zdag) |vac> (derivative of the loop).
        let params = ModelParams::new(3, 1, 1);
        let v = FockPoly::vacuum(params);
        let state = apply_word(&letters("dd"), WordShape::Trace, &v);
        let out = apply_word(&letters("z"), WordShape::Trace, &state);
        let expect = Monomial {
            chains: vec![],
            loops: vec![1],
        };
        assert_eq!(out.terms.get(&expect).cloned(), Some(rat_int(2)));
        assert_eq!(out.len(), 1);
    }
}
