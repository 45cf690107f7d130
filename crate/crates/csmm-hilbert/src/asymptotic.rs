//! Large-rank checks for the trace-observable matrices: exact residual
//! decay against the leading differential-operator forms, guarded
//! polynomial interpolation of raw entries in the rank, and commutator
//! closure rates for the two ladder observables.

use csmm_exact::{rat_int, Rational};
use num_traits::Zero;
use serde::Serialize;

use crate::diffop::{leading_form, DiffOpForm};
use crate::rep::{fold_even_half_power, rep_matrix, rep_matrix_with_cutoffs, compose_raw, RepMatrix};
use crate::HilbertError;

/// Per-rank maximum of the squared scaled residual (an exact rational,
/// rendered as a string).
#[derive(Debug, Serialize)]
pub struct ResidualSample {
    /// Gauge rank `N`.
    pub rank: u32,
    /// `max over entries of residual^2 * N^{-(claimed rate)}` (exact).
    pub max_scaled_residual_sq: String,
}

/// Result of comparing `t_{m,n}` against its leading form over a rank
/// window.
#[derive(Debug, Serialize)]
pub struct AsymptoticReport {
    /// Number of annihilators.
    pub m: u32,
    /// Number of creators.
    pub n: u32,
    /// Level.
    pub level: u32,
    /// Energy cutoff of the domain.
    pub cutoff: u32,
    /// Which of the three branches applies.
    pub branch: String,
    /// Per-rank residual maxima at the claimed rate `sqrt(N)^{m+n-2}`.
    pub samples: Vec<ResidualSample>,
    /// True iff the scaled residual maxima are non-increasing over the
    /// last three ranks of the window.
    pub decay_nonincreasing: bool,
    /// Expected leading degree of raw entries in `N`.
    pub expected_leading_degree: i32,
    /// Number of matrix entries whose rank dependence was interpolated.
    pub interpolated_entries: usize,
    /// True iff every interpolated entry has degree at most the expected
    /// leading degree and the exact predicted leading coefficient.
    pub interpolation_leading_ok: bool,
    /// True iff the window was too short to both fit and cross-validate
    /// the interpolation (the residual-decay samples then stand alone).
    pub interpolation_fallback: bool,
}

/// Compares `t_{m,n}` on `H^{<=e}` against its leading form for each rank
/// in `ranks` (ascending).  The residual is measured entrywise in the
/// normalized basis, scaled by the claimed remainder rate
/// `sqrt(N)^{m+n-2}`, and squared so that it is an exact rational.
pub fn asymptotic_check(
    m: u32,
    n: u32,
    k: u32,
    e: u32,
    ranks: &[u32],
) -> Result<AsymptoticReport, HilbertError> {
    assert!(ranks.windows(2).all(|w| w[0] < w[1]), "ranks must ascend");
    let (form, expected_degree) = leading_form(m, n, k);
    let parity = (n as i32 - m as i32).rem_euclid(2);
    let rate = m as i32 + n as i32 - 2;
    let branch = match m.cmp(&n) {
        std::cmp::Ordering::Less => "creator",
        std::cmp::Ordering::Equal => "diagonal",
        std::cmp::Ordering::Greater => "annihilator",
    };

    let mut samples = Vec::new();
    let mut maxima = Vec::new();
    let mut reps = Vec::new();
    for &rank in ranks {
        let rep = rep_matrix(m, n, rank, k, e)?;
        let predicted = form.parity_reduced_matrix(&rep.domain, &rep.codomain, parity);
        let mut max_sq = Rational::zero();
        for j in 0..rep.domain.len() {
            for i in 0..rep.codomain.len() {
                if !entry_allowed(&rep, i, j) {
                    debug_assert!(rep.raw_entry(i, j).is_zero());
                    continue;
                }
                let r = &rep.parity_reduced(i, j) - &predicted[j][i];
                let sq = fold_even_half_power(&(&r * &r), 2 * (parity - rate), rank);
                if sq > max_sq {
                    max_sq = sq;
                }
            }
        }
        samples.push(ResidualSample {
            rank,
            max_scaled_residual_sq: max_sq.to_string(),
        });
        maxima.push(max_sq);
        reps.push(rep);
    }

    let (interp_ok, interp_count, fallback) =
        interpolate_leading(&reps, &form, expected_degree, (m + n) as usize);

    Ok(AsymptoticReport {
        m,
        n,
        level: k,
        cutoff: e,
        branch: branch.to_string(),
        samples,
        decay_nonincreasing: nonincreasing_tail(&maxima),
        expected_leading_degree: expected_degree,
        interpolated_entries: interp_count,
        interpolation_leading_ok: interp_ok,
        interpolation_fallback: fallback,
    })
}

/// Result of checking one ladder commutator identity over a rank window.
#[derive(Debug, Serialize)]
pub struct LadderRateReport {
    /// The ladder observable: `(2,1)` or `(1,2)`.
    pub ladder: (u32, u32),
    /// Number of annihilators of the probed observable.
    pub m: u32,
    /// Number of creators of the probed observable.
    pub n: u32,
    /// Level.
    pub level: u32,
    /// Energy cutoff of the domain.
    pub cutoff: u32,
    /// Structure constant in front of the target observable.
    pub coefficient: i64,
    /// Claimed remainder rate: the residual is `O(sqrt(N)^{rate})` in the
    /// normalized basis.
    pub rate_half_power: i32,
    /// Per-rank maxima of `residual^2 * N^{-rate}`.
    pub samples: Vec<ResidualSample>,
    /// True iff the scaled maxima are non-increasing over the last three
    /// ranks of the window.
    pub decay_nonincreasing: bool,
}

/// Checks the commutator of a ladder observable (`t_{2,1}` when
/// `ladder_down`, else `t_{1,2}`) with `t_{m,n}` against its claimed
/// leading multiple of the shifted observable:
/// `[t_{2,1}, t_{m,n}] = (2n - m) t_{m+1,n} + remainder` and
/// `[t_{1,2}, t_{m,n}] = (n - 2m) t_{m,n+1} + remainder`, where the
/// normalized remainder is `O(sqrt(N)^{m+n-1})` generically and
/// `O(sqrt(N)^{m+n+1})` in the resonant case (`m + 1 = n` for the first,
/// `n + 1 = m` for the second).  Compositions are built on exact
/// per-stage cutoffs, so no truncation error enters.
pub fn ladder_rate_check(
    ladder_down: bool,
    m: u32,
    n: u32,
    k: u32,
    e: u32,
    ranks: &[u32],
) -> Result<LadderRateReport, HilbertError> {
    assert!(ranks.windows(2).all(|w| w[0] < w[1]), "ranks must ascend");
    let (lm, ln) = if ladder_down { (2, 1) } else { (1, 2) };
    let (tm, tn) = if ladder_down { (m + 1, n) } else { (m, n + 1) };
    let coefficient = if ladder_down {
        2 * n as i64 - m as i64
    } else {
        n as i64 - 2 * m as i64
    };
    let resonant = if ladder_down { m + 1 == n } else { n + 1 == m };
    let rate = if resonant {
        m as i32 + n as i32 + 1
    } else {
        m as i32 + n as i32 - 1
    };
    let shift_mn = n as i64 - m as i64;
    let shift_l = ln as i64 - lm as i64;
    let total = shift_mn + shift_l;
    let e1 = (e as i64 + shift_mn).max(0) as u32;
    let e2 = (e as i64 + shift_l).max(0) as u32;
    let ef = (e as i64 + total).max(0) as u32;
    let parity = (total.rem_euclid(2)) as i32;

    let mut samples = Vec::new();
    let mut maxima = Vec::new();
    for &rank in ranks {
        let b_first = rep_matrix_with_cutoffs(m, n, rank, k, e, e1)?;
        let l_second = rep_matrix_with_cutoffs(lm, ln, rank, k, e1, ef)?;
        let l_first = rep_matrix_with_cutoffs(lm, ln, rank, k, e, e2)?;
        let b_second = rep_matrix_with_cutoffs(m, n, rank, k, e2, ef)?;
        let target = rep_matrix_with_cutoffs(tm, tn, rank, k, e, ef)?;
        let p1 = compose_raw(&l_second, &b_first);
        let p2 = compose_raw(&b_second, &l_first);
        let coeff = rat_int(coefficient);
        let mut max_sq = Rational::zero();
        for j in 0..target.domain.len() {
            let ej = target.domain.states[j].energy() as i64;
            for i in 0..target.codomain.len() {
                let d = &(&p1[j][i] - &p2[j][i]) - &(&coeff * target.raw_entry(i, j));
                if d.is_zero() {
                    continue;
                }
                let ei = target.codomain.states[i].energy() as i64;
                assert_eq!(ei - ej, total, "inhomogeneous commutator residual");
                let r = fold_even_half_power(&d, total as i32 - parity, rank);
                let sq = fold_even_half_power(&(&r * &r), 2 * (parity - rate), rank);
                if sq > max_sq {
                    max_sq = sq;
                }
            }
        }
        samples.push(ResidualSample {
            rank,
            max_scaled_residual_sq: max_sq.to_string(),
        });
        maxima.push(max_sq);
    }

    Ok(LadderRateReport {
        ladder: (lm, ln),
        m,
        n,
        level: k,
        cutoff: e,
        coefficient,
        rate_half_power: rate,
        samples,
        decay_nonincreasing: nonincreasing_tail(&maxima),
    })
}

/// True iff the last `min(3, len)` values are non-increasing.
fn nonincreasing_tail(vals: &[Rational]) -> bool {
    let start = vals.len().saturating_sub(3);
    vals[start..].windows(2).all(|w| w[1] <= w[0])
}

/// True iff the raw entry `(i, j)` is structurally allowed (energies
/// differ exactly by `n - m`).
fn entry_allowed(rep: &RepMatrix, i: usize, j: usize) -> bool {
    let shift = rep.n as i64 - rep.m as i64;
    rep.codomain.states[i].energy() as i64 == rep.domain.states[j].energy() as i64 + shift
}

/// Interpolates raw entries of the reps (one per rank) as polynomials in
/// the rank, and checks each against the leading form: degree at most the
/// expected leading degree, with the exact predicted coefficient there
/// (zero when the form has no term for the entry).  Only entries whose
/// row and column labels exist in every sampled basis are compared.
/// Returns `(all_ok, entries_checked, fallback)`; `fallback` is true when
/// the window cannot both fit (degree `fit_degree`) and cross-validate.
fn interpolate_leading(
    reps: &[RepMatrix],
    form: &DiffOpForm,
    expected_degree: i32,
    fit_degree: usize,
) -> (bool, usize, bool) {
    if reps.len() < fit_degree + 2 {
        return (true, 0, true);
    }
    let base = &reps[0];
    let shift = base.n as i32 - base.m as i32;
    let predicted = form.raw_polynomials(&base.domain, &base.codomain, shift);
    let mut ok = true;
    let mut count = 0usize;
    for j in 0..base.domain.len() {
        for i in 0..base.codomain.len() {
            if !entry_allowed(base, i, j) {
                continue;
            }
            // Collect (rank, raw entry) across the window; labels of the
            // base (smallest-rank) bases exist in all larger ones.
            let mut points = Vec::with_capacity(reps.len());
            let mut present = true;
            for rep in reps {
                let (Some(jj), Some(ii)) = (
                    rep.domain.position(&base.domain.states[j]),
                    rep.codomain.position(&base.codomain.states[i]),
                ) else {
                    present = false;
                    break;
                };
                points.push((rep.params.rank as i64, rep.raw_entry(ii, jj).clone()));
            }
            if !present {
                continue;
            }
            count += 1;
            let poly = lagrange_fit(&points[..fit_degree + 1]);
            // Cross-validate on the held-out ranks.
            for (x, y) in &points[fit_degree + 1..] {
                if &poly_eval(&poly, *x) != y {
                    ok = false;
                }
            }
            // Degree bound and exact leading coefficient.
            let pred = &predicted[j][i];
            for (d, c) in poly.iter().enumerate() {
                let want = pred
                    .iter()
                    .find(|(deg, _)| *deg == d as i32)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(Rational::zero);
                if d as i32 == expected_degree {
                    if *c != want {
                        ok = false;
                    }
                } else if d as i32 > expected_degree && !c.is_zero() {
                    ok = false;
                }
            }
        }
    }
    (ok, count, false)
}

/// Exact Lagrange interpolation through the given points; returns
/// power-basis coefficients (index = degree), trimmed of trailing zeros.
fn lagrange_fit(points: &[(i64, Rational)]) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); points.len()];
    for (a, (xa, ya)) in points.iter().enumerate() {
        let mut basis = vec![rat_int(1)];
        let mut denom = rat_int(1);
        for (b, (xb, _)) in points.iter().enumerate() {
            if a == b {
                continue;
            }
            basis = poly_mul_linear(&basis, -*xb);
            denom *= rat_int(xa - xb);
        }
        let scale = ya / &denom;
        for (d, c) in basis.iter().enumerate() {
            let add = c * &scale;
            acc[d] += &add;
        }
    }
    while acc.last().map_or(false, Zero::is_zero) {
        acc.pop();
    }
    acc
}

/// Multiplies a power-basis polynomial by `(x + c)`.
fn poly_mul_linear(p: &[Rational], c: i64) -> Vec<Rational> {
    let cr = rat_int(c);
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (d, v) in p.iter().enumerate() {
        out[d + 1] += v;
        let add = v * &cr;
        out[d] += &add;
    }
    out
}

/// Evaluates a power-basis polynomial at an integer point.
fn poly_eval(p: &[Rational], x: i64) -> Rational {
    let xr = rat_int(x);
    let mut out = Rational::zero();
    for v in p.iter().rev() {
        out = &(&out * &xr) + v;
    }
    out
}
