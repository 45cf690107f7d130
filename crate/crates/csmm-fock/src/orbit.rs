//! Gauge-orbit compression for permutation-covariant states.
//!
//! Physical states transform under the permutation subgroup of the gauge
//! group by the character `sgn^k` (one determinant weight per antisymmetric
//! ground-state factor).  Their coefficients are therefore constant along
//! orbits of the column-relabeling action, up to that sign.  An
//! [`OrbitState`] stores one coefficient per orbit, in the *group-averaged*
//! normalization: a state `S` is represented as
//!
//! ```text
//! S = sum_orbits shat(o) * sum_{pi in S_N} sgn(pi)^k * pi . rep(o)
//! ```
//!
//! With this normalization an equivariant operation transports coefficients
//! with no stabilizer bookkeeping: applying a step to the representative and
//! re-canonicalizing each output with its sorting sign is exact.
//!
//! Only "tail-indexed" monomials participate (concrete indices appear in
//! chain tails only); this covers everything built from dressed flavor rows
//! and traces, which is the entire gauge-invariant pipeline.  Monomials
//! fixed by an odd permutation (a repeated column content, or two or more
//! empty columns) drop out identically when `k` is odd.

use std::collections::HashMap;

use num_traits::Zero;

use csmm_exact::{rat_int, Rational};

use crate::monomial::{Chain, Head, Monomial, Tail};
use crate::params::ModelParams;
use crate::poly::{FockError, FockPoly};

/// Canonical representative of a gauge orbit of tail-indexed monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMono {
    /// Sorted list of non-empty column contents; content = sorted
    /// `(head, z)` pairs of the chains ending on that column.
    pub columns: Vec<Vec<(Head, u32)>>,
    /// Chains with pending wire tails (column-independent), sorted.
    pub free: Vec<Chain>,
    /// Loop lengths, sorted.
    pub loops: Vec<u32>,
}

impl OrbitMono {
    /// Reconstructs the representative concrete monomial: column contents
    /// are placed on columns `0..m` in canonical order.
    pub fn to_monomial(&self) -> Monomial {
        let mut chains = Vec::new();
        for (col, content) in self.columns.iter().enumerate() {
            for &(head, z) in content {
                chains.push(Chain {
                    head,
                    z,
                    tail: Tail::Conc(col as u8),
                });
            }
        }
        chains.extend_from_slice(&self.free);
        let mut m = Monomial {
            chains,
            loops: self.loops.clone(),
        };
        m.normalize_order();
        m
    }

    /// Total `Zdag` count.
    pub fn energy(&self) -> u32 {
        self.columns
            .iter()
            .flatten()
            .map(|&(_, z)| z)
            .sum::<u32>()
            + self.free.iter().map(|c| c.z).sum::<u32>()
            + self.loops.iter().sum::<u32>()
    }
}

/// Canonicalizes a tail-indexed monomial onto its orbit.
///
/// Returns `None` when the orbit dies for odd `k` (repeated column content
/// or at least two empty columns); otherwise `(sign, orbit)` where `sign`
/// is `sgn(pi)^k` for the relabeling `pi` taking the monomial to the
/// representative.
pub fn canonicalize_orbit(mon: &Monomial, params: ModelParams) -> Option<(i64, OrbitMono)> {
    let n = params.rank as usize;
    let k_odd = params.level % 2 == 1;
    let mut columns: Vec<Vec<(Head, u32)>> = vec![Vec::new(); n];
    let mut free: Vec<Chain> = Vec::new();
    for c in &mon.chains {
        debug_assert!(
            !matches!(c.head, Head::Conc(_)),
            "orbit layer requires tail-indexed monomials"
        );
        match c.tail {
            Tail::Conc(i) => columns[i as usize].push((c.head, c.z)),
            Tail::Wire(_) => free.push(*c),
        }
    }
    for col in columns.iter_mut() {
        col.sort_unstable();
    }
    free.sort_unstable();

    // Order the used columns by content; remember their original indices.
    let mut used: Vec<(usize, &Vec<(Head, u32)>)> = columns
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .collect();
    used.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
    let m = used.len();

    let sign = if k_odd {
        if used.windows(2).any(|w| w[0].1 == w[1].1) {
            return None; // repeated content: killed by an odd stabilizer
        }
        if n - m >= 2 {
            return None; // two empty columns: same
        }
        // Permutation sending original columns to canonical slots.
        let mut perm = vec![usize::MAX; n];
        for (slot, (orig, _)) in used.iter().enumerate() {
            perm[*orig] = slot;
        }
        let mut next = m;
        for entry in perm.iter_mut() {
            if *entry == usize::MAX {
                *entry = next;
                next += 1;
            }
        }
        permutation_sign(&perm)
    } else {
        1
    };

    Some((
        sign,
        OrbitMono {
            columns: used.into_iter().map(|(_, c)| c.clone()).collect(),
            free,
            loops: mon.loops.clone(),
        },
    ))
}

/// Sign of a permutation given as an image array.
pub(crate) fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
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

/// An orbit-compressed state in the group-averaged normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitState {
    /// Model parameters.
    pub params: ModelParams,
    /// Orbit representative -> group-averaged coefficient.
    pub terms: HashMap<OrbitMono, Rational>,
}

impl OrbitState {
    /// The zero state.
    pub fn zero(params: ModelParams) -> Self {
        Self {
            params,
            terms: HashMap::new(),
        }
    }

    /// Adds `c` to the orbit coefficient.
    pub fn add_term(&mut self, om: OrbitMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(om) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &OrbitState, c: &Rational) {
        assert_eq!(self.params, other.params);
        for (om, v) in &other.terms {
            self.add_term(om.clone(), v * c);
        }
    }

    /// Multiplies every coefficient.
    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// True iff identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies in trace loops (gauge invariant, so orbit coefficients
    /// transport unchanged).
    pub fn mul_loops(&self, extra: &[u32]) -> OrbitState {
        let mut out = OrbitState::zero(self.params);
        for (om, c) in &self.terms {
            let mut nm = om.clone();
            nm.loops.extend_from_slice(extra);
            nm.loops.sort_unstable();
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Expands into a concrete state by summing the permutation action.
    /// Only feasible for small ranks; used by cross-validation tests.
    pub fn to_fock(&self) -> FockPoly {
        let n = self.params.rank as usize;
        let k_odd = self.params.level % 2 == 1;
        let mut out = FockPoly::zero(self.params);
        let perms = all_permutations(n);
        for (om, shat) in &self.terms {
            let rep = om.to_monomial();
            for perm in &perms {
                let chi = if k_odd { permutation_sign(perm) } else { 1 };
                let mut m = rep.clone();
                for c in m.chains.iter_mut() {
                    if let Tail::Conc(i) = c.tail {
                        c.tail = Tail::Conc(perm[i as usize] as u8);
                    }
                }
                m.normalize_order();
                out.add_term(m, shat * rat_int(chi));
            }
        }
        out
    }

    /// Compresses a concrete permutation-covariant state.  Exactness is the
    /// caller's responsibility in general; tests verify the round trip.
    pub fn from_fock(state: &FockPoly) -> Self {
        let params = state.params;
        let n = params.rank as usize;
        let mut out = OrbitState::zero(params);
        let mut seen: HashMap<OrbitMono, ()> = HashMap::new();
        for (m, c) in &state.terms {
            let (sign, om) = match canonicalize_orbit(m, params) {
                Some(v) => v,
                None => continue,
            };
            if seen.contains_key(&om) {
                continue;
            }
            seen.insert(om.clone(), ());
            // shat = chi(pi) * coeff(m) / |Stab(rep)|, independent of which
            // orbit member we met first.
            let stab = stabilizer_order(&om, n);
            out.add_term(om, c * rat_int(sign) / Rational::from_integer(stab.into()));
        }
        out
    }
}

/// `|Stab(rep)| = prod(content multiplicities)! * (empty columns)!`.
fn stabilizer_order(om: &OrbitMono, n: usize) -> u64 {
    let mut order = 1u64;
    let mut run = 1u64;
    for w in 1..om.columns.len() {
        if om.columns[w] == om.columns[w - 1] {
            run += 1;
            order *= run;
        } else {
            run = 1;
        }
    }
    let empty = (n - om.columns.len()) as u64;
    for i in 2..=empty {
        order *= i;
    }
    order
}

/// All permutations of `0..n` as image arrays.
pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(cur: &mut Vec<usize>, pos: usize, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in pos..cur.len() {
            cur.swap(pos, i);
            rec(cur, pos + 1, out);
            cur.swap(pos, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    out
}

/// Builds the orbit-compressed physical ground state.
///
/// Supported windows: one flavor with `k <= 2`, or several flavors with
/// `k = 1` and rank a multiple of the flavor count.  Everything the desk
/// pipelines need falls in this window; other corners report an error.
pub fn ground_orbit(params: ModelParams) -> Result<OrbitState, FockError> {
    let n = params.rank as usize;
    let p = params.flavors as usize;
    let k = params.level;
    let mut out = OrbitState::zero(params);
    if p == 1 && k == 1 {
        // Single determinant factor: the identity arrangement, shat = +1.
        let mono = staircase_monomial(n, &[0]);
        let (sign, om) = canonicalize_orbit(&mono, params).expect("distinct contents");
        out.add_term(om, rat_int(sign));
        return Ok(out);
    }
    if p == 1 && k == 2 {
        // Two determinant factors; sum over the relative permutation.
        for perm in all_permutations(n) {
            let sgn = permutation_sign(&perm);
            let mut chains = Vec::with_capacity(2 * n);
            for c in 0..n {
                chains.push(Chain {
                    head: Head::Lam(0),
                    z: c as u32,
                    tail: Tail::Conc(c as u8),
                });
                chains.push(Chain {
                    head: Head::Lam(0),
                    z: perm[c] as u32,
                    tail: Tail::Conc(c as u8),
                });
            }
            let mut m = Monomial { chains, loops: vec![] };
            m.normalize_order();
            if let Some((sign, om)) = canonicalize_orbit(&m, params) {
                out.add_term(om, rat_int(sgn * sign));
            }
        }
        return Ok(out);
    }
    if p >= 2 && k == 1 {
        if !n.is_multiple_of(p) {
            return Err(FockError::Unsupported(format!(
                "rank {n} is not a multiple of the flavor count {p}; the ground state needs explicit flavor labels"
            )));
        }
        let blocks = n / p;
        // Sum over one flavor permutation per block.
        let flavor_perms = all_permutations(p);
        let mut assignment = vec![0usize; blocks];
        loop {
            let mut chains = Vec::with_capacity(n);
            let mut fsign = 1i64;
            for (b, &ai) in assignment.iter().enumerate() {
                let tau = &flavor_perms[ai];
                fsign *= permutation_sign(tau);
                for t in 0..p {
                    chains.push(Chain {
                        head: Head::Lam(tau[t] as u8),
                        z: b as u32,
                        tail: Tail::Conc((b * p + t) as u8),
                    });
                }
            }
            let mut m = Monomial { chains, loops: vec![] };
            m.normalize_order();
            if let Some((sign, om)) = canonicalize_orbit(&m, params) {
                out.add_term(om, rat_int(fsign * sign));
            }
            // Advance the mixed-radix assignment.
            let mut pos = 0;
            loop {
                if pos == blocks {
                    return Ok(out);
                }
                assignment[pos] += 1;
                if assignment[pos] < flavor_perms.len() {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }
    Err(FockError::Unsupported(format!(
        "orbit ground state outside the supported window: p={p}, k={k}"
    )))
}

/// The single-determinant arrangement: column `c` carries the chain of
/// length `c` for each listed flavor (all flavors stacked when `flavors`
/// has several entries — used only by the one-flavor constructors).
fn staircase_monomial(n: usize, flavors: &[u8]) -> Monomial {
    let mut chains = Vec::new();
    for &a in flavors {
        for c in 0..n {
            chains.push(Chain {
                head: Head::Lam(a),
                z: c as u32,
                tail: Tail::Conc(c as u8),
            });
        }
    }
    let mut m = Monomial { chains, loops: vec![] };
    m.normalize_order();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::ground_state;

    #[test]
    fn orbit_round_trip_matches_concrete_ground() {
        // p = 1, k = 1, small ranks: expanding the orbit form reproduces the
        // concrete antisymmetrized ground state.
        for n in 2..=4u32 {
            let params = ModelParams::new(n, 1, 1);
            let concrete = ground_state(params).unwrap();
            let orbit = ground_orbit(params).unwrap();
            assert_eq!(orbit.to_fock(), concrete, "rank {n}");
            // And compressing the concrete state gives the orbit form back.
            assert_eq!(OrbitState::from_fock(&concrete), orbit);
        }
    }

    #[test]
    fn orbit_round_trip_two_factors() {
        for n in 2..=3u32 {
            let params = ModelParams::new(n, 1, 2);
            let concrete = ground_state(params).unwrap();
            let orbit = ground_orbit(params).unwrap();
            assert_eq!(orbit.to_fock(), concrete, "rank {n}");
            assert_eq!(OrbitState::from_fock(&concrete), orbit);
        }
    }

    #[test]
    fn orbit_round_trip_two_flavors() {
        let params = ModelParams::new(4, 2, 1);
        let concrete = ground_state(params).unwrap();
        let orbit = ground_orbit(params).unwrap();
        assert_eq!(orbit.to_fock(), concrete);
        assert_eq!(OrbitState::from_fock(&concrete), orbit);
    }

    #[test]
    fn odd_character_kills_repeated_contents() {
        // Two identical columns with k odd must canonicalize to nothing.
        let params = ModelParams::new(3, 1, 1);
        let m = Monomial {
            chains: vec![
                Chain {
                    head: Head::Lam(0),
                    z: 1,
                    tail: Tail::Conc(0),
                },
                Chain {
                    head: Head::Lam(0),
                    z: 1,
                    tail: Tail::Conc(1),
                },
            ],
            loops: vec![],
        };
        assert!(canonicalize_orbit(&m, params).is_none());
        // With k even it survives.
        let params2 = ModelParams::new(3, 1, 2);
        assert!(canonicalize_orbit(&m, params2).is_some());
    }
}
