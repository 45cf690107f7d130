//! The thirteen printed commutation-relation families of the
//! gauge-invariant generator algebra, verified exactly by action on
//! physical states.
//!
//! Each family is expanded into a list of weighted generator words
//! (LHS − RHS, commutators written out), which is then applied
//! right-to-left to each state of a certified physical spanning set.  The
//! result must be the exact zero state; no tolerance is involved.
//!
//! Conventions: `eps1 = 1`, `eps2 = k + p`, `eps3 = k`.  Generators with a
//! negative index do not exist and their terms vanish; binomial
//! coefficients `binom(x, y)` vanish unless `0 <= y <= x`.

use csmm_exact::{binomial, rat_int, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::op::{apply_op, GaugeOpSpec, ObsError};
use crate::spanning::PhysicalStates;
use crate::state::GaugeState;
use csmm_fock::ModelParams;

/// Identifier of a printed relation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelationFamily {
    /// `sum_a e^a_{a;n,m} = eps3 t_{n,m}`.
    RTrace,
    /// `[e^a_{b;0,0}, e^c_{d;n,m}]`.
    RE00,
    /// `[t_{2,0}, e^a_{b;n,m}]`.
    RT20E,
    /// `[t_{1,1}, e^a_{b;n,m}]`.
    RT11E,
    /// `[t_{0,2}, e^a_{b;n,m}]`.
    RT02E,
    /// `[e^a_{b;1,0}, e^c_{d;m,n}]`.
    RE10E,
    /// `[t_{3,0}, e^a_{b;m,n}]`.
    RT30E,
    /// `[t_{2,1}, e^a_{b;m,n}]`.
    RT21E,
    /// `[t_{1,2}, e^a_{b;m,n}]`.
    RT12E,
    /// `[t_{3,0}, t_{m,n}]`.
    RT30T,
    /// `[t_{2,1}, t_{m,n}]`.
    RT21T,
    /// `[t_{1,2}, t_{m,n}]`.
    RT12T,
    /// `[t_{0,3}, t_{m,n}]`.
    RT03T,
}

impl RelationFamily {
    /// All thirteen families.
    pub fn all() -> [RelationFamily; 13] {
        use RelationFamily::*;
        [
            RTrace, RE00, RT20E, RT11E, RT02E, RE10E, RT30E, RT21E, RT12E, RT30T, RT21T, RT12T,
            RT03T,
        ]
    }

    /// Whether the family takes four flavor indices (`a,b,c,d`) rather
    /// than two (`a,b`) or none.
    pub fn flavor_arity(&self) -> usize {
        match self {
            RelationFamily::RE00 | RelationFamily::RE10E => 4,
            RelationFamily::RT20E
            | RelationFamily::RT11E
            | RelationFamily::RT02E
            | RelationFamily::RT30E
            | RelationFamily::RT21E
            | RelationFamily::RT12E => 2,
            _ => 0,
        }
    }
}

/// Index parameters of a relation instance.  `m` and `n` carry exactly the
/// meaning of the letters in the printed formula of each family (for the
/// first five families the right operand is `e_{n,m}` / `t_{n,m}` with `n`
/// annihilations; for the remaining families it is `e_{m,n}` / `t_{m,n}`
/// with `m` annihilations).
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct RelIndices {
    /// First flavor index.
    pub a: u8,
    /// Second flavor index.
    pub b: u8,
    /// Third flavor index (four-flavor families only).
    pub c: u8,
    /// Fourth flavor index (four-flavor families only).
    pub d: u8,
    /// Printed letter `m`.
    pub m: i64,
    /// Printed letter `n`.
    pub n: i64,
}

/// A single generator appearing in a relation term.
#[derive(Clone, Copy, Debug)]
enum Gen {
    /// `e^a_{b; z, zdag}`.
    E(u8, u8, u32, u32),
    /// `t_{z, zdag}`.
    T(u32, u32),
}

/// One additive term: coefficient times a product of generators
/// (rightmost applied first).
type Term = (Rational, Vec<Gen>);

/// `e` generator if both degree indices are admissible.
fn ge(a: u8, b: u8, z: i64, zd: i64) -> Option<Gen> {
    if z < 0 || zd < 0 {
        None
    } else {
        Some(Gen::E(a, b, z as u32, zd as u32))
    }
}

/// `t` generator if both degree indices are admissible.
fn gt(z: i64, zd: i64) -> Option<Gen> {
    if z < 0 || zd < 0 {
        None
    } else {
        Some(Gen::T(z as u32, zd as u32))
    }
}

/// `binom(x, y)` with the vanishing convention outside `0 <= y <= x`.
fn bin(x: i64, y: i64) -> Rational {
    if y < 0 || x < 0 || y > x {
        Rational::zero()
    } else {
        Rational::from_integer(binomial(x as u64, y as u64))
    }
}

/// Pushes `coeff * g1` when the generator exists and the coefficient is
/// nonzero.
fn push1(terms: &mut Vec<Term>, coeff: Rational, g1: Option<Gen>) {
    if coeff.is_zero() {
        return;
    }
    if let Some(g) = g1 {
        terms.push((coeff, vec![g]));
    }
}

/// Pushes `coeff * g1 g2` (g2 applied first) when both exist.
fn push2(terms: &mut Vec<Term>, coeff: Rational, g1: Option<Gen>, g2: Option<Gen>) {
    if coeff.is_zero() {
        return;
    }
    if let (Some(x), Some(y)) = (g1, g2) {
        terms.push((coeff, vec![x, y]));
    }
}

/// Pushes the expanded commutator `coeff * [g1, g2]`.
fn push_comm(terms: &mut Vec<Term>, coeff: Rational, g1: Gen, g2: Gen) {
    terms.push((coeff.clone(), vec![g1, g2]));
    terms.push((-coeff, vec![g2, g1]));
}

/// All splits `x1 + x2 = total` with both parts nonnegative (empty when
/// `total < 0`).
fn splits(total: i64) -> Vec<(i64, i64)> {
    if total < 0 {
        Vec::new()
    } else {
        (0..=total).map(|x| (x, total - x)).collect()
    }
}

/// The default symmetric weight of the quadratic double sums.
fn weight(m1: i64, n1: i64, m2: i64, n2: i64) -> Rational {
    rat_int(1 + m1 + n1) * rat_int(1 + m2 + n2) * bin(m1 + n1, m1) * bin(m2 + n2, m2)
}

/// Builds the term list of `LHS - RHS` for one relation instance, with the
/// coupling values supplied explicitly (the mirrored-relation test feeds
/// negated couplings through here).
fn relation_terms_eps(
    family: RelationFamily,
    idx: RelIndices,
    p: u8,
    eps1: &Rational,
    eps2: &Rational,
    eps3: &Rational,
) -> Result<Vec<Term>, ObsError> {
    let eps1 = eps1.clone();
    let eps2 = eps2.clone();
    let eps3 = eps3.clone();
    let RelIndices { a, b, c, d, m, n } = idx;
    let check = |arity: usize| -> Result<(), ObsError> {
        let used: &[u8] = match arity {
            4 => &[a, b, c, d],
            2 => &[a, b],
            _ => &[],
        };
        if used.iter().any(|&f| f >= p) {
            return Err(ObsError::InvalidIndices(format!(
                "flavor indices {used:?} out of range for p = {p}"
            )));
        }
        if m < 0 || n < 0 {
            return Err(ObsError::InvalidIndices(format!(
                "degree indices (m, n) = ({m}, {n}) must be nonnegative"
            )));
        }
        Ok(())
    };
    check(family.flavor_arity())?;

    let mut terms: Vec<Term> = Vec::new();
    let one = Rational::one();
    let delta = |x: u8, y: u8| x == y;

    match family {
        RelationFamily::RTrace => {
            // sum_a e^a_{a;n,m} - eps3 t_{n,m} = 0.
            for f in 0..p {
                push1(&mut terms, one.clone(), ge(f, f, n, m));
            }
            push1(&mut terms, -eps3, gt(n, m));
        }
        RelationFamily::RE00 => {
            // [e^a_{b;0,0}, e^c_{d;n,m}] = d^c_b e^a_{d;n,m} - d^a_d e^c_{b;n,m}.
            push_comm(
                &mut terms,
                one.clone(),
                ge(a, b, 0, 0).unwrap(),
                ge(c, d, n, m).unwrap(),
            );
            if delta(c, b) {
                push1(&mut terms, -one.clone(), ge(a, d, n, m));
            }
            if delta(a, d) {
                push1(&mut terms, one.clone(), ge(c, b, n, m));
            }
        }
        RelationFamily::RT20E => {
            // [t_{2,0}, e^a_{b;n,m}] = 2m e^a_{b;n+1,m-1}.
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(2, 0),
                ge(a, b, n, m).unwrap(),
            );
            push1(&mut terms, rat_int(-2 * m), ge(a, b, n + 1, m - 1));
        }
        RelationFamily::RT11E => {
            // [t_{1,1}, e^a_{b;n,m}] = (m-n) e^a_{b;n,m}.
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(1, 1),
                ge(a, b, n, m).unwrap(),
            );
            push1(&mut terms, rat_int(n - m), ge(a, b, n, m));
        }
        RelationFamily::RT02E => {
            // [t_{0,2}, e^a_{b;n,m}] = -2n e^a_{b;n-1,m+1}.
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(0, 2),
                ge(a, b, n, m).unwrap(),
            );
            push1(&mut terms, rat_int(2 * n), ge(a, b, n - 1, m + 1));
        }
        RelationFamily::RE10E => {
            // [e^a_{b;1,0}, e^c_{d;m,n}] = d^c_b e^a_{d;m+1,n} - d^a_d e^c_{b;m+1,n}
            //   + (n eps2 / 2) { d^c_b e^a_{d;m,n-1} + d^a_d e^c_{b;m,n-1} }
            //   - eps1 / ((1+m+n) binom(m+n, m)) * double sum
            //   - n eps1 d^c_d e^a_{b;m,n-1}.
            push_comm(
                &mut terms,
                one.clone(),
                ge(a, b, 1, 0).unwrap(),
                ge(c, d, m, n).unwrap(),
            );
            if delta(c, b) {
                push1(&mut terms, -one.clone(), ge(a, d, m + 1, n));
            }
            if delta(a, d) {
                push1(&mut terms, one.clone(), ge(c, b, m + 1, n));
            }
            let half_ne2 = rat_int(n) * &eps2 / rat_int(2);
            if delta(c, b) {
                push1(&mut terms, -half_ne2.clone(), ge(a, d, m, n - 1));
            }
            if delta(a, d) {
                push1(&mut terms, -half_ne2, ge(c, b, m, n - 1));
            }
            // In the flavor-contracted groups the derivation-ladder weight
            // attaches to the factor carrying the unit shift, i.e. the
            // (m2, n2) slot; attaching it to (m1, n1) in those two groups
            // breaks Jacobi consistency with the verified [t_{2,1}, e] and
            // [e^a_{b;0,0}, e] families for two or more flavors.  The
            // uncontracted group keeps the (m1, n1) weight.
            let pref = &eps1 / (rat_int(1 + m + n) * bin(m + n, m));
            for (m1, m2) in splits(m) {
                for (n1, n2) in splits(n - 1) {
                    let bb = bin(m1 + n1, m1) * bin(m2 + n2, m2);
                    let cw_contracted = &pref * (rat_int(1 + m2 + n2) * &bb);
                    let cw_direct = &pref * (rat_int(1 + m1 + n1) * &bb);
                    if !cw_contracted.is_zero() {
                        for e in 0..p {
                            if delta(c, b) {
                                push2(
                                    &mut terms,
                                    cw_contracted.clone(),
                                    ge(a, e, m1, n1),
                                    ge(e, d, m2, n2),
                                );
                            }
                            if delta(a, d) {
                                push2(
                                    &mut terms,
                                    cw_contracted.clone(),
                                    ge(c, e, m2, n2),
                                    ge(e, b, m1, n1),
                                );
                            }
                        }
                    }
                    if !cw_direct.is_zero() {
                        push2(&mut terms, -cw_direct.clone(), ge(a, d, m1, n1), ge(c, b, m2, n2));
                        push2(&mut terms, -cw_direct.clone(), ge(a, d, m2, n2), ge(c, b, m1, n1));
                    }
                }
            }
            if delta(c, d) {
                push1(&mut terms, rat_int(n) * &eps1, ge(a, b, m, n - 1));
            }
        }
        RelationFamily::RT30E => {
            // [t_{3,0}, e^a_{b;m,n}] = 3n e^a_{b;m+2,n-1} + quadratic sums
            //   + eps2^2 n(n-1)(n-2)/4 e^a_{b;m,n-3}.
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(3, 0),
                ge(a, b, m, n).unwrap(),
            );
            push1(&mut terms, rat_int(-3 * n), ge(a, b, m + 2, n - 1));
            let pref = &eps1 / (rat_int(m + n + 1) * bin(m + n, m));
            for (m1, m2) in splits(m) {
                for (n1, n2) in splits(n) {
                    let w = rat_int(1 + m1 + n1)
                        * bin(m1 + n1, m1)
                        * rat_int(3 * m2 + 3)
                        * bin(m2 + 1 + n2 - 2, m2 + 1);
                    let cw = &pref * w;
                    if cw.is_zero() {
                        continue;
                    }
                    for e in 0..p {
                        push2(
                            &mut terms,
                            -cw.clone(),
                            ge(a, e, m1, n1),
                            ge(e, b, m2 + 1, n2 - 2),
                        );
                        push2(
                            &mut terms,
                            cw.clone(),
                            ge(a, e, m2 + 1, n2 - 2),
                            ge(e, b, m1, n1),
                        );
                    }
                }
            }
            let pref2 = rat_int(3) / rat_int(2) * &eps1 * &eps2 / bin(m + n, m);
            for (m1, m2) in splits(m) {
                for (n1, n2) in splits(n - 3) {
                    let cw = &pref2 * weight(m1, n1, m2, n2);
                    for e in 0..p {
                        push2(&mut terms, cw.clone(), ge(a, e, m1, n1), ge(e, b, m2, n2));
                    }
                }
            }
            let cubic = &eps2 * &eps2 * rat_int(n * (n - 1) * (n - 2)) / rat_int(4);
            push1(&mut terms, -cubic, ge(a, b, m, n - 3));
        }
        RelationFamily::RT21E => {
            // [t_{2,1}, e^a_{b;m,n}] = (2n-m) e^a_{b;m+1,n} + quadratic sums
            //   - eps2^2 m n (n-1)/4 e^a_{b;m-1,n-2}.
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(2, 1),
                ge(a, b, m, n).unwrap(),
            );
            push1(&mut terms, rat_int(m - 2 * n), ge(a, b, m + 1, n));
            let pref = &eps1 / (rat_int(m + n + 1) * bin(m + n, m));
            for (m1, m2) in splits(m) {
                for (n1, n2) in splits(n) {
                    // Linear factor (n2 - 2 m2 - 1): coefficient extraction
                    // from the generating-function form of this commutator;
                    // the slot-1 variant (n2 - 2 m1) fails the recursion
                    // 6 t_{2,1} = [t_{3,0}, t_{0,2}] at (m,n) = (1,2).
                    let w = rat_int(1 + m1 + n1)
                        * bin(m1 + n1, m1)
                        * rat_int(n2 - 2 * m2 - 1)
                        * bin(m2 + n2 - 1, m2);
                    let cw = &pref * w;
                    if cw.is_zero() {
                        continue;
                    }
                    for e in 0..p {
                        push2(
                            &mut terms,
                            -cw.clone(),
                            ge(a, e, m1, n1),
                            ge(e, b, m2, n2 - 1),
                        );
                        push2(
                            &mut terms,
                            cw.clone(),
                            ge(a, e, m2, n2 - 1),
                            ge(e, b, m1, n1),
                        );
                    }
                }
            }
            let pref2 = rat_int(3) / rat_int(2) * &eps1 * &eps2 / bin(m + n, m);
            for (m1, m2) in splits(m - 1) {
                for (n1, n2) in splits(n - 2) {
                    let cw = &pref2 * weight(m1, n1, m2, n2);
                    for e in 0..p {
                        push2(&mut terms, -cw.clone(), ge(a, e, m1, n1), ge(e, b, m2, n2));
                    }
                }
            }
            let cubic = &eps2 * &eps2 * rat_int(m * n * (n - 1)) / rat_int(4);
            push1(&mut terms, cubic, ge(a, b, m - 1, n - 2));
        }
        RelationFamily::RT12E => {
            // [t_{1,2}, e^a_{b;m,n}] = (n-2m) e^a_{b;m,n+1} + quadratic sums
            //   + eps2^2 m(m-1) n /4 e^a_{b;m-2,n-1}.
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(1, 2),
                ge(a, b, m, n).unwrap(),
            );
            push1(&mut terms, rat_int(2 * m - n), ge(a, b, m, n + 1));
            let pref = &eps1 / (rat_int(m + n + 1) * bin(m + n, m));
            for (m1, m2) in splits(m) {
                for (n1, n2) in splits(n) {
                    // Linear factor (m2 - 2 n2 - 1): image of the
                    // [t_{2,1}, e] quadratic factor under the Z <-> Zdag
                    // symmetry of the algebra.
                    let w = rat_int(1 + m1 + n1)
                        * bin(m1 + n1, m1)
                        * rat_int(m2 - 2 * n2 - 1)
                        * bin(m2 - 1 + n2, m2 - 1);
                    let cw = &pref * w;
                    if cw.is_zero() {
                        continue;
                    }
                    for e in 0..p {
                        push2(
                            &mut terms,
                            -cw.clone(),
                            ge(a, e, m1, n1),
                            ge(e, b, m2 - 1, n2),
                        );
                        push2(
                            &mut terms,
                            cw.clone(),
                            ge(a, e, m2 - 1, n2),
                            ge(e, b, m1, n1),
                        );
                    }
                }
            }
            let pref2 = rat_int(3) / rat_int(2) * &eps1 * &eps2 / bin(m + n, m);
            for (m1, m2) in splits(m - 2) {
                for (n1, n2) in splits(n - 1) {
                    let cw = &pref2 * weight(m1, n1, m2, n2);
                    for e in 0..p {
                        push2(&mut terms, cw.clone(), ge(a, e, m1, n1), ge(e, b, m2, n2));
                    }
                }
            }
            let cubic = &eps2 * &eps2 * rat_int(m * (m - 1) * n) / rat_int(4);
            push1(&mut terms, -cubic, ge(a, b, m - 2, n - 1));
        }
        RelationFamily::RT30T
        | RelationFamily::RT21T
        | RelationFamily::RT12T
        | RelationFamily::RT03T => {
            // The four traced families share one shape:
            // [t_{r,s}, t_{m,n}] = lin t_{M,Ndx}
            //   + s_ee * (3/2) eps1 / binom(m+n,m) * sum_{window} W ee
            //   + s_tt * (3/2) eps1^2 eps3 / binom(m+n,m) * sum_{window} W tt
            //   + s_c * (eps1^2 + eps2 eps3) * cubic/4 * t_{M3,N3}.
            struct TShape {
                left: (u32, u32),
                lin_coeff: i64,
                lin_idx: (i64, i64),
                window: (i64, i64),
                s_ee: i64,
                s_tt: i64,
                cubic: i64,
                cubic_idx: (i64, i64),
            }
            let shape = match family {
                RelationFamily::RT30T => TShape {
                    left: (3, 0),
                    lin_coeff: 3 * n,
                    lin_idx: (m + 2, n - 1),
                    window: (m, n - 3),
                    s_ee: -1,
                    s_tt: -1,
                    cubic: n * (n - 1) * (n - 2),
                    cubic_idx: (m, n - 3),
                },
                RelationFamily::RT21T => TShape {
                    left: (2, 1),
                    lin_coeff: 2 * n - m,
                    lin_idx: (m + 1, n),
                    window: (m - 1, n - 2),
                    s_ee: 1,
                    s_tt: 1,
                    cubic: -m * n * (n - 1),
                    cubic_idx: (m - 1, n - 2),
                },
                RelationFamily::RT12T => TShape {
                    left: (1, 2),
                    lin_coeff: n - 2 * m,
                    lin_idx: (m, n + 1),
                    window: (m - 2, n - 1),
                    s_ee: -1,
                    s_tt: -1,
                    cubic: m * (m - 1) * n,
                    cubic_idx: (m - 2, n - 1),
                },
                RelationFamily::RT03T => TShape {
                    left: (0, 3),
                    lin_coeff: -3 * m,
                    lin_idx: (m - 1, n + 2),
                    window: (m - 3, n),
                    s_ee: 1,
                    s_tt: 1,
                    cubic: -m * (m - 1) * (m - 2),
                    cubic_idx: (m - 3, n),
                },
                _ => unreachable!(),
            };
            push_comm(
                &mut terms,
                one.clone(),
                Gen::T(shape.left.0, shape.left.1),
                gt(m, n).unwrap(),
            );
            push1(
                &mut terms,
                rat_int(-shape.lin_coeff),
                gt(shape.lin_idx.0, shape.lin_idx.1),
            );
            let pref_ee =
                rat_int(shape.s_ee) * rat_int(3) / rat_int(2) * &eps1 / bin(m + n, m);
            let pref_tt = rat_int(shape.s_tt) * rat_int(3) / rat_int(2) * &eps1 * &eps1 * &eps3
                / bin(m + n, m);
            for (m1, m2) in splits(shape.window.0) {
                for (n1, n2) in splits(shape.window.1) {
                    let w = weight(m1, n1, m2, n2);
                    let cw_ee = &pref_ee * &w;
                    let cw_tt = &pref_tt * &w;
                    for f in 0..p {
                        for e in 0..p {
                            push2(
                                &mut terms,
                                -cw_ee.clone(),
                                ge(f, e, m1, n1),
                                ge(e, f, m2, n2),
                            );
                        }
                    }
                    push2(&mut terms, -cw_tt.clone(), gt(m1, n1), gt(m2, n2));
                }
            }
            let c_coeff = (&eps1 * &eps1 + &eps2 * &eps3) * rat_int(shape.cubic) / rat_int(4);
            push1(&mut terms, -c_coeff, gt(shape.cubic_idx.0, shape.cubic_idx.1));
        }
    }
    Ok(terms)
}

/// Builds the term list of `LHS - RHS` with couplings taken from the model
/// parameters.
fn relation_terms(
    family: RelationFamily,
    idx: RelIndices,
    params: ModelParams,
) -> Result<Vec<Term>, ObsError> {
    relation_terms_eps(
        family,
        idx,
        params.flavors as u8,
        &params.eps1(),
        &params.eps2(),
        &params.eps3(),
    )
}

/// Image of a term list under the index-swap symmetry of the algebra
/// (`Z <-> Zdag`, couplings negated by the caller): every generator swaps
/// its two degree indices, `e` keeps its sign and `t` flips it.
fn involution_image(terms: Vec<Term>) -> Vec<Term> {
    terms
        .into_iter()
        .map(|(mut coeff, gens)| {
            let gens = gens
                .into_iter()
                .map(|g| match g {
                    Gen::E(a, b, z, zd) => Gen::E(a, b, zd, z),
                    Gen::T(z, zd) => {
                        coeff = -coeff.clone();
                        Gen::T(zd, z)
                    }
                })
                .collect();
            (coeff, gens)
        })
        .collect()
}

/// The mirrored residual of a relation instance: term coefficients are
/// rebuilt with all three couplings negated and every generator has its
/// degree indices swapped (`t` also flips sign).  The algebra's
/// `Z <-> Zdag` symmetry sends valid relations to valid relations, so this
/// residual must also annihilate every physical state.
pub fn mirrored_relation_residual_op(
    family: RelationFamily,
    idx: RelIndices,
    params: ModelParams,
) -> Result<GaugeOpSpec, ObsError> {
    let terms = relation_terms_eps(
        family,
        idx,
        params.flavors as u8,
        &-params.eps1(),
        &-params.eps2(),
        &-params.eps3(),
    )?;
    Ok(terms_to_spec(&involution_image(terms)))
}

/// Converts a term list into an operator spec (sum of scaled products).
fn terms_to_spec(terms: &[Term]) -> GaugeOpSpec {
    let parts = terms
        .iter()
        .map(|(c, gens)| {
            let factors = gens
                .iter()
                .map(|g| match *g {
                    Gen::E(a, b, z, zd) => GaugeOpSpec::E { a, b, n: z, m: zd },
                    Gen::T(z, zd) => GaugeOpSpec::T { n: z, m: zd },
                })
                .collect();
            GaugeOpSpec::ScalarMul(c.clone(), Box::new(GaugeOpSpec::Product(factors)))
        })
        .collect();
    GaugeOpSpec::Sum(parts)
}

/// The residual operator `LHS - RHS` of a relation instance.
pub fn relation_residual_op(
    family: RelationFamily,
    idx: RelIndices,
    params: ModelParams,
) -> Result<GaugeOpSpec, ObsError> {
    Ok(terms_to_spec(&relation_terms(family, idx, params)?))
}

/// Verification report, serializable to JSON.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    /// Relation family identifier.
    pub family: RelationFamily,
    /// Index parameters of the instance.
    pub indices: RelIndices,
    /// Model parameters.
    pub params: ModelParams,
    /// Number of physical states the residual was applied to.
    pub states_checked: usize,
    /// True iff the residual annihilated every state exactly.
    pub residual_zero: bool,
    /// A surviving term of the first nonzero residual, if any.
    pub witness_term: Option<String>,
}

/// Applies `LHS - RHS` of the relation instance to every state of a
/// certified physical spanning set and demands the exact zero state.
pub fn verify_relation<S: GaugeState>(
    family: RelationFamily,
    idx: RelIndices,
    params: ModelParams,
    states: &PhysicalStates<S>,
) -> Result<RelationReport, ObsError> {
    let terms = relation_terms(family, idx, params)?;
    let mut report = RelationReport {
        family,
        indices: idx,
        params,
        states_checked: 0,
        residual_zero: true,
        witness_term: None,
    };
    for s in states.states() {
        let mut residual = S::zero(params);
        for (coeff, gens) in &terms {
            let mut cur = s.clone();
            for g in gens.iter().rev() {
                let spec = match *g {
                    Gen::E(a, b, z, zd) => GaugeOpSpec::E { a, b, n: z, m: zd },
                    Gen::T(z, zd) => GaugeOpSpec::T { n: z, m: zd },
                };
                cur = apply_op(&spec, &cur)?;
            }
            residual.add_scaled(&cur, coeff);
        }
        report.states_checked += 1;
        if !residual.is_null() {
            report.residual_zero = false;
            report.witness_term = residual.witness_term();
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning::physical_spanning_set;
    use csmm_fock::poly::FockPoly;

    fn check<S: GaugeState>(
        family: RelationFamily,
        idx: RelIndices,
        params: ModelParams,
        states: &PhysicalStates<S>,
    ) {
        let rep = verify_relation(family, idx, params, states).unwrap();
        assert!(
            rep.residual_zero,
            "{family:?} at {idx:?}, params {params:?}: witness {:?}",
            rep.witness_term
        );
    }

    #[test]
    fn linear_families_small_window() {
        let params = ModelParams::new(2, 1, 1);
        let states = physical_spanning_set::<FockPoly>(params, 3).unwrap();
        for (n, m) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            let idx = RelIndices {
                m,
                n,
                ..Default::default()
            };
            check(RelationFamily::RTrace, idx, params, &states);
            check(RelationFamily::RE00, idx, params, &states);
            check(RelationFamily::RT20E, idx, params, &states);
            check(RelationFamily::RT11E, idx, params, &states);
            check(RelationFamily::RT02E, idx, params, &states);
        }
    }

    #[test]
    fn quadratic_e_families_spot_checks() {
        let params = ModelParams::new(2, 1, 1);
        let states = physical_spanning_set::<FockPoly>(params, 3).unwrap();
        // Every index with m + n <= 3: partial index lists have hidden
        // families of instances whose extra terms first activate at
        // specific (m, n), e.g. the [t_{2,1}, e] quadratic sum at (1, 2).
        for m in 0..=3 {
            for n in 0..=(3 - m) {
                let idx = RelIndices {
                    m,
                    n,
                    ..Default::default()
                };
                check(RelationFamily::RE10E, idx, params, &states);
                check(RelationFamily::RT30E, idx, params, &states);
                check(RelationFamily::RT21E, idx, params, &states);
                check(RelationFamily::RT12E, idx, params, &states);
            }
        }
    }

    #[test]
    fn traced_families_spot_checks() {
        let params = ModelParams::new(2, 1, 1);
        let states = physical_spanning_set::<FockPoly>(params, 3).unwrap();
        for m in 0..=4 {
            for n in 0..=(4 - m) {
                let idx = RelIndices {
                    m,
                    n,
                    ..Default::default()
                };
                check(RelationFamily::RT30T, idx, params, &states);
                check(RelationFamily::RT21T, idx, params, &states);
                check(RelationFamily::RT12T, idx, params, &states);
                check(RelationFamily::RT03T, idx, params, &states);
            }
        }
    }

    #[test]
    fn multi_flavor_spot_checks() {
        let params = ModelParams::new(2, 2, 1);
        let states = physical_spanning_set::<FockPoly>(params, 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        for (m, n) in [(1, 1), (0, 2), (1, 2)] {
                            let idx = RelIndices { a, b, c, d, m, n };
                            check(RelationFamily::RE00, idx, params, &states);
                            check(RelationFamily::RE10E, idx, params, &states);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_flavor_rejected() {
        let params = ModelParams::new(2, 1, 1);
        let idx = RelIndices {
            a: 1,
            ..Default::default()
        };
        assert!(matches!(
            relation_residual_op(RelationFamily::RT11E, idx, params),
            Err(ObsError::InvalidIndices(_))
        ));
    }
}
