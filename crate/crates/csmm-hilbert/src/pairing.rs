//! Faithful scalar extraction for orbit-compressed states.
//!
//! Compressed chain coordinates are not linearly independent as states (the
//! flavor-vector contractions satisfy straightening identities at every
//! rank), so expressing a state in the loop basis cannot be done by formal
//! coordinate matching.  Instead every required inner product is reduced to
//! one faithful linear functional:
//!
//! * `<p_nu g, x> = <g, W_nu x>` where `W_nu` multiplies in the annihilation
//!   loops `Tr(Z^i)`, and
//! * `<g, y> = c * <g, g>` because the physical subspace at the ground
//!   energy is one-dimensional, so `y = c*g` for a scalar `c`.
//!
//! The scalar `c` is extracted by the *diagonal coefficient* `phi`: the
//! coefficient, in the elementary-oscillator expansion, of the single
//! monomial in which every chain index path is constant (the path of the
//! chain ending on column `c` stays at color `c`, a loop sits entirely at
//! one color).  A chain admits exactly one constant path, so `phi` is
//! computable directly on orbit terms by counting column-to-color
//! assignments -- no exponential expansion.  `phi` is linear and faithful
//! by construction, and `phi(ground) != 0`, so `c = phi(y) / phi(ground)`.

use std::collections::HashMap;

use num_traits::Zero;

use csmm_exact::{rat_int, Rational};
use csmm_fock::monomial::Head;
use csmm_fock::orbit::{ground_orbit, OrbitMono, OrbitState};
use csmm_fock::ModelParams;
use csmm_observables::{apply_op, op_t};

use crate::HilbertError;

/// The per-color `Zdag` requirements of the diagonal elementary monomial of
/// the ground state: color `c` carries `k` flavor vectors and `k*c`
/// diagonal `Zdag` entries.
fn ground_requirements(params: ModelParams) -> Vec<u32> {
    let k = params.level;
    (0..params.rank).map(|c| k * c).collect()
}

/// Diagonal coefficient of an orbit state against the per-color `Zdag`
/// requirement vector `req_z` (one entry per color, flavor count `k` per
/// color is implied).
fn phi(state: &OrbitState, req_z: &[u32]) -> Rational {
    let params = state.params;
    let n = params.rank as usize;
    let k = params.level;
    let k_odd = k % 2 == 1;
    let total: u32 = req_z.iter().sum();
    debug_assert_eq!(params.flavors, 1, "diagonal functional is single-flavor");

    let mut acc = Rational::zero();
    'terms: for (om, coeff) in &state.terms {
        if om.energy() != total || !om.free.is_empty() || om.columns.len() != n {
            continue;
        }
        // Per-column flavor counts and Zdag sums.
        let mut col_z = Vec::with_capacity(n);
        for col in &om.columns {
            let mut lam = 0u32;
            let mut z_sum = 0u32;
            for &(head, z) in col {
                match head {
                    Head::Lam(0) => lam += 1,
                    // A pending wire cannot appear in a finished state; any
                    // other head carries no flavor vector, so the diagonal
                    // monomial (k flavor vectors per color) is missed.
                    _ => continue 'terms,
                }
                z_sum += z;
            }
            if lam != k {
                continue 'terms;
            }
            col_z.push(z_sum);
        }
        let weight = assignment_weight(&col_z, req_z, &om.loops, k_odd);
        if !weight.is_zero() {
            acc += coeff * &weight;
        }
    }
    acc
}

/// Sum over injective column-to-color assignments of `sgn^k * fills`, where
/// `fills` counts the ways the loops can absorb the per-color deficits.
fn assignment_weight(col_z: &[u32], req_z: &[u32], loops: &[u32], k_odd: bool) -> Rational {
    let n = col_z.len();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut deficits = vec![0u32; n];
    let mut total = 0i64;
    fn rec(
        i: usize,
        col_z: &[u32],
        req_z: &[u32],
        loops: &[u32],
        k_odd: bool,
        perm: &mut [usize],
        used: &mut [bool],
        deficits: &mut [u32],
        total: &mut i64,
    ) {
        let n = col_z.len();
        if i == n {
            let fills = count_loop_fills(loops, 0, deficits);
            if fills != 0 {
                let sgn = if k_odd { perm_sign(perm) } else { 1 };
                *total += sgn * fills;
            }
            return;
        }
        for c in 0..n {
            if used[c] || col_z[i] > req_z[c] {
                continue;
            }
            used[c] = true;
            perm[i] = c;
            deficits[c] = req_z[c] - col_z[i];
            rec(i + 1, col_z, req_z, loops, k_odd, perm, used, deficits, total);
            deficits[c] = 0;
            used[c] = false;
        }
    }
    rec(
        0, col_z, req_z, loops, k_odd, &mut perm, &mut used, &mut deficits, &mut total,
    );
    rat_int(total)
}

/// Number of maps from the loop list to colors with the prescribed
/// per-color length sums.
fn count_loop_fills(loops: &[u32], idx: usize, deficits: &mut [u32]) -> i64 {
    if idx == loops.len() {
        return if deficits.iter().all(|&d| d == 0) { 1 } else { 0 };
    }
    let d = loops[idx];
    let mut total = 0i64;
    for c in 0..deficits.len() {
        if deficits[c] >= d {
            deficits[c] -= d;
            total += count_loop_fills(loops, idx + 1, deficits);
            deficits[c] += d;
        }
    }
    total
}

/// Sign of a permutation given as an image array.
fn perm_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cur = start;
        let mut len = 0;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Faithful scalar extractor at one parameter set.
#[derive(Clone, Debug)]
pub struct GroundExtractor {
    params: ModelParams,
    req_z: Vec<u32>,
    phi_ground: Rational,
}

impl GroundExtractor {
    /// Builds the extractor; fails if the diagonal coefficient of the
    /// ground state vanishes (never observed for `p = 1`).
    pub fn new(params: ModelParams) -> Result<Self, HilbertError> {
        assert_eq!(params.flavors, 1, "loop-basis pairing is single-flavor");
        let req_z = ground_requirements(params);
        let ground = ground_orbit(params)?;
        let phi_ground = phi(&ground, &req_z);
        if phi_ground.is_zero() {
            return Err(HilbertError::DegenerateFunctional { params });
        }
        Ok(Self {
            params,
            req_z,
            phi_ground,
        })
    }

    /// Model parameters.
    pub fn params(&self) -> ModelParams {
        self.params
    }

    /// The scalar `c` with `y = c * ground`, for `y` physical at the ground
    /// energy.  States that miss the diagonal monomial entirely (e.g. the
    /// zero state) give `0`.
    pub fn ground_coefficient(&self, y: &OrbitState) -> Rational {
        &phi(y, &self.req_z) / &self.phi_ground
    }

    /// Annihilation pairing `<prod_i Tr(Zdag^{nu_i}) g, x> / <g, g>`:
    /// applies the adjoint loops `Tr(Z^{nu_i})` and extracts the ground
    /// coefficient.  `x` must be physical with energy component `|nu|`
    /// above the ground state (other components pair to zero and are
    /// rejected by the energy filter inside `phi`).
    pub fn pair(&self, nu: &[u32], x: &OrbitState) -> Result<Rational, HilbertError> {
        let mut y = x.clone();
        for &part in nu {
            y = apply_op(&op_t(part, 0), &y)?;
        }
        Ok(self.ground_coefficient(&y))
    }
}

/// Cache of extractors keyed by parameters.
#[derive(Default)]
pub struct ExtractorCache {
    map: HashMap<ModelParams, GroundExtractor>,
}

impl ExtractorCache {
    /// Empty cache.
    pub fn new() -> Self {
        Self::default()
    }

    /// Gets or builds the extractor for `params`.
    pub fn get(&mut self, params: ModelParams) -> Result<&GroundExtractor, HilbertError> {
        if !self.map.contains_key(&params) {
            let e = GroundExtractor::new(params)?;
            self.map.insert(params, e);
        }
        Ok(self.map.get(&params).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use csmm_observables::GaugeState;

    #[test]
    fn ground_coefficient_of_ground_is_one() {
        for (n, k) in [(2u32, 1u32), (3, 1), (4, 1), (2, 2), (3, 2), (5, 2)] {
            let params = ModelParams::new(n, 1, k);
            let ex = GroundExtractor::new(params).unwrap();
            let g = ground_orbit(params).unwrap();
            assert_eq!(ex.ground_coefficient(&g), rat_int(1), "N={n} k={k}");
        }
    }

    #[test]
    fn extractor_is_linear_and_faithful_on_small_ranks() {
        // t_{1,1} ground eigenvalue: Tr Sym(Z Zdag) g = (E_g + N^2/2) g.
        for (n, k) in [(2u32, 1u32), (3, 1), (3, 2)] {
            let params = ModelParams::new(n, 1, k);
            let ex = GroundExtractor::new(params).unwrap();
            let g = ground_orbit(params).unwrap();
            let y = apply_op(&op_t(1, 1), &g).unwrap();
            let c = ex.ground_coefficient(&y);
            let expected = Rational::new(
                ((k * n * (n - 1)) as i64 + (n * n) as i64).into(),
                2.into(),
            );
            assert_eq!(c, expected, "N={n} k={k}");
            // Faithfulness cross-check by elementary expansion.
            let mut diff = y.clone();
            diff.add_scaled(&g, &-&c);
            assert!(GaugeState::is_null(&diff), "N={n} k={k}");
        }
    }

    #[test]
    fn pairing_matches_exact_inner_products() {
        // <p_nu g, p_mu g> / <g,g> against the elementary-expansion inner
        // product at rank 3.
        use csmm_fock::poly::inner_product;
        for k in [1u32, 2] {
            let params = ModelParams::new(3, 1, k);
            let ex = GroundExtractor::new(params).unwrap();
            let g = ground_orbit(params).unwrap();
            let gf = g.to_fock();
            let gg = inner_product(&gf, &gf);
            for nu in [vec![1u32], vec![2], vec![1, 1], vec![2, 1], vec![3]] {
                for mu in [vec![1u32], vec![2], vec![1, 1], vec![2, 1], vec![3]] {
                    if nu.iter().sum::<u32>() != mu.iter().sum::<u32>() {
                        continue;
                    }
                    let b = g.mul_loops(&mu);
                    let lhs = ex.pair(&nu, &b).unwrap();
                    let nf = g.mul_loops(&nu).to_fock();
                    let rhs = &inner_product(&nf, &b.to_fock()) / &gg;
                    assert_eq!(lhs, rhs, "k={k} nu={nu:?} mu={mu:?}");
                }
            }
        }
    }
}
