//! Explicit (uncompressed) ground states.
//!
//! The one-flavor ground state is the `k`-th power of the antisymmetrized
//! staircase `eps^{i_1..i_N} (lamdag)_{i_1} (lamdag Zdag)_{i_2} ...
//! (lamdag Zdag^{N-1})_{i_N}`.  For `p` flavors and rank `N = p*M` it is
//! built from `M` blocks, each an `eps`-contraction of the `p` flavor rows
//! dressed with the same `Zdag` power.  These expansions scale like
//! `(N!)^k`, so they are only constructed at desk ranks; large-rank
//! pipelines use the orbit-compressed constructor instead.

use csmm_exact::rat_int;

use crate::monomial::{Chain, Head, Monomial, Tail};
use crate::orbit::{all_permutations, permutation_sign};
use crate::params::ModelParams;
use crate::poly::{FockError, FockPoly};

/// Size guard for eager expansion.
const MAX_TERMS: usize = 2_000_000;

/// Builds the physical ground state as a concrete state polynomial.
///
/// Errors when the rank is not a multiple of the flavor count (the ground
/// level is degenerate there and needs explicit flavor labels), or when the
/// eager expansion would exceed the desk-scale budget.
pub fn ground_state(params: ModelParams) -> Result<FockPoly, FockError> {
    let n = params.rank as usize;
    let p = params.flavors as usize;
    let k = params.level as usize;
    if !n.is_multiple_of(p) {
        return Err(FockError::Unsupported(format!(
            "rank {n} is not a multiple of the flavor count {p}; the ground state needs explicit flavor labels"
        )));
    }
    let mut fact = 1usize;
    for i in 2..=n {
        fact = fact.saturating_mul(i);
    }
    if fact.saturating_pow(k as u32) > MAX_TERMS {
        return Err(FockError::Unsupported(format!(
            "eager ground-state expansion too large at rank {n}, level {k}; use the orbit constructor"
        )));
    }

    let single = single_factor(params);
    let mut out = single.clone();
    for _ in 1..k {
        out = mul_poly(&out, &single);
    }
    Ok(out)
}

/// One `eps`-contracted factor (level 1).
fn single_factor(params: ModelParams) -> FockPoly {
    let n = params.rank as usize;
    let p = params.flavors as usize;
    let blocks = n / p;
    let mut out = FockPoly::zero(params);
    let flavor_perms = all_permutations(p);
    let mut flavor_assignment = vec![0usize; blocks];
    loop {
        // Row content for each of the N slots: (flavor, zdag power).
        let mut slot_content = Vec::with_capacity(n);
        let mut fsign = 1i64;
        for (b, &ai) in flavor_assignment.iter().enumerate() {
            let tau = &flavor_perms[ai];
            fsign *= permutation_sign(tau);
            for t in 0..p {
                slot_content.push((tau[t] as u8, b as u32));
            }
        }
        for sigma in all_permutations(n) {
            let sgn = permutation_sign(&sigma);
            let mut chains = Vec::with_capacity(n);
            for (slot, &(flavor, z)) in slot_content.iter().enumerate() {
                chains.push(Chain {
                    head: Head::Lam(flavor),
                    z,
                    tail: Tail::Conc(sigma[slot] as u8),
                });
            }
            let mut m = Monomial { chains, loops: vec![] };
            m.normalize_order();
            out.add_term(m, rat_int(fsign * sgn));
        }
        // Advance flavor assignment.
        let mut pos = 0;
        loop {
            if pos == blocks {
                return out;
            }
            flavor_assignment[pos] += 1;
            if flavor_assignment[pos] < flavor_perms.len() {
                break;
            }
            flavor_assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Product of two creation polynomials (concatenation of monomials).
pub fn mul_poly(a: &FockPoly, b: &FockPoly) -> FockPoly {
    assert_eq!(a.params, b.params);
    let mut out = FockPoly::zero(a.params);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let mut m = ma.clone();
            m.chains.extend_from_slice(&mb.chains);
            m.loops.extend_from_slice(&mb.loops);
            m.normalize_order();
            out.add_term(m, ca * cb);
        }
    }
    out
}

/// Helper used across crates: the product of `Tr(Zdag^i)` loops as a
/// creation monomial.
pub fn loops_monomial(loops: &[u32]) -> Monomial {
    let mut m = Monomial {
        chains: vec![],
        loops: loops.to_vec(),
    };
    m.normalize_order();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mu::is_physical;
    use crate::poly::inner_product;
    use csmm_exact::Rational;
    use num_traits::Zero;

    #[test]
    fn one_flavor_ground_is_physical() {
        for (n, k) in [(2u32, 1u32), (3, 1), (2, 2), (3, 2)] {
            let params = ModelParams::new(n, 1, k);
            let g = ground_state(params).unwrap();
            assert!(!g.is_zero());
            let report = is_physical(&g);
            assert!(report.is_physical(), "rank {n}, level {k}: {report:?}");
            // Energy of the staircase: k * (0 + 1 + ... + N-1).
            for m in g.terms.keys() {
                assert_eq!(m.energy(), k * n * (n - 1) / 2);
                assert_eq!(m.flavor_count(), k * n);
            }
        }
    }

    #[test]
    fn multi_flavor_ground_is_physical() {
        for (n, p) in [(2u32, 2u32), (4, 2), (3, 3)] {
            let params = ModelParams::new(n, p, 1);
            let g = ground_state(params).unwrap();
            assert!(!g.is_zero(), "({n},{p})");
            let report = is_physical(&g);
            assert!(report.is_physical(), "({n},{p}): {report:?}");
        }
    }

    #[test]
    fn ground_norm_positive() {
        for (n, k) in [(2u32, 1u32), (3, 1), (2, 2)] {
            let params = ModelParams::new(n, 1, k);
            let g = ground_state(params).unwrap();
            let norm = inner_product(&g, &g);
            assert!(norm > Rational::zero(), "norm^2 = {norm} at ({n},{k})");
        }
    }

    #[test]
    fn mismatched_rank_flavors_is_an_error() {
        let params = ModelParams::new(3, 2, 1);
        assert!(ground_state(params).is_err());
    }
}
