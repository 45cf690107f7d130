//! Cross-validation of the border-strip combinatorics against literal
//! polynomial algebra, plus the label-side consistency identities.

use csmm_symfun::oracle::{expansion_to_poly, poly_mul, power_sum_poly, schur_poly};
use csmm_symfun::{
    c_to_schur, mn_expand, partitions_up_to, power_times_c, schur_to_c, Partition, SchurExpansion,
};

use csmm_exact::{rat_int, Rational};
use num_traits::Zero;

/// Every border-strip expansion `p_n * s_mu` with `n + |mu| <= 7` matches
/// the explicit polynomial product, both unrestricted (enough variables)
/// and with a binding row cap.
#[test]
fn mn_rule_matches_polynomial_oracle() {
    for total in 1..=7u32 {
        for n in 1..=total {
            let rest = total - n;
            for mu in partitions_up_to(rest, None, None) {
                if mu.size() != rest {
                    continue;
                }
                // Unrestricted: work in `total` variables, which is enough
                // for every label of size `total`.
                let m = total as usize;
                let lhs = poly_mul(&power_sum_poly(n, m), &schur_poly(&mu, m));
                let rhs = expansion_to_poly(&mn_expand(n, &mu, Some(m)), m);
                assert_eq!(lhs, rhs, "mismatch at n={n}, mu={:?}", mu.parts());
            }
        }
    }
}

/// Row caps model a finite number of variables: for small ranks the capped
/// expansion reproduces the finite-rank trace reduction exactly.
#[test]
fn row_cap_matches_small_rank_reduction() {
    for rank in 1..=4usize {
        for extra in 0..=2u32 {
            let n = rank as u32 + extra;
            for mu in partitions_up_to(2, Some(rank), None) {
                let lhs = poly_mul(&power_sum_poly(n, rank), &schur_poly(&mu, rank));
                let rhs = expansion_to_poly(&mn_expand(n, &mu, Some(rank)), rank);
                assert_eq!(
                    lhs, rhs,
                    "capped mismatch at rank={rank}, n={n}, mu={:?}",
                    mu.parts()
                );
            }
        }
    }
}

/// The two routes around the label/Schur square commute: bumping a C-label
/// by a trace and converting to Schur labels equals converting first and
/// applying the border-strip rule.
#[test]
fn label_bump_commutes_with_strip_rule() {
    for rows in 3..=5usize {
        for mu in partitions_up_to(4, Some(rows), None) {
            let label = schur_to_c(&mu, rows);
            for n in 1..=4u32 {
                // Route 1: bump the label, then convert.
                let mut via_labels = SchurExpansion::default();
                for bumped in power_times_c(&label, n) {
                    if let Some((sign, nu)) = c_to_schur(&bumped) {
                        via_labels.add_term(nu, rat_int(sign));
                    }
                }
                // Route 2: convert, then expand with the row cap `rows`.
                let via_strips = mn_expand(n, &mu, Some(rows));
                assert_eq!(
                    via_labels, via_strips,
                    "square does not commute at rows={rows}, mu={:?}, n={n}",
                    mu.parts()
                );
            }
        }
    }
}

/// Expansion coefficients do not depend on the rank once the rank exceeds
/// the total degree (finite-rank corrections are rank-independent above
/// the energy window).
#[test]
fn coefficients_stabilize_above_the_degree() {
    for energy in 1..=5u32 {
        for n in 1..=energy {
            for mu in partitions_up_to(energy - n, None, None) {
                let reference = mn_expand(n, &mu, Some((energy + 1) as usize));
                for rank in (energy + 2)..=(energy + 4) {
                    assert_eq!(
                        reference,
                        mn_expand(n, &mu, Some(rank as usize)),
                        "coefficients moved between ranks at n={n}, mu={:?}",
                        mu.parts()
                    );
                }
            }
        }
    }
}

/// The documented three-row example: bumping the staircase label by a
/// degree-2 trace kills the repeated label and leaves a signed pair.
#[test]
fn staircase_bump_example() {
    use csmm_symfun::CLabel;
    let ground = CLabel(vec![0, 1, 2]);
    let bumped = power_times_c(&ground, 2);
    let mut total = SchurExpansion::default();
    for b in &bumped {
        if let Some((sign, nu)) = c_to_schur(b) {
            total.add_term(nu, rat_int(sign));
        }
    }
    // -C(0,2,3) + C(0,1,4) = -s_(1,1) + s_(2).
    let mut expect = SchurExpansion::unit(Partition::new(vec![2]));
    expect.add_term(Partition::new(vec![1, 1]), rat_int(-1));
    assert_eq!(total, expect);
    // And the repeated label C(2,1,2) is the one that vanished.
    assert!(c_to_schur(&bumped[0]).is_none());
}

/// Power sums of degree above the rank still expand consistently: the
/// polynomial `p_(rank+i)` in `rank` variables equals its capped Schur
/// expansion (the finite-rank reduction of a high trace).
#[test]
fn high_traces_reduce_at_finite_rank() {
    for rank in 1..=4usize {
        for i in 1..=2u32 {
            let n = rank as u32 + i;
            let lhs = power_sum_poly(n, rank);
            let rhs = expansion_to_poly(&mn_expand(n, &Partition::empty(), Some(rank)), rank);
            assert_eq!(lhs, rhs, "high-trace reduction failed at rank={rank}, n={n}");
        }
    }
}

/// Schur coefficients of a power sum are character values divided by the
/// centralizer order: `p_mu = sum_nu chi^nu_mu s_nu` checked for one-row
/// classes against the strip expansion.
#[test]
fn single_cycle_characters_from_strips() {
    use csmm_symfun::char_value;
    for n in 1..=6u32 {
        let e = mn_expand(n, &Partition::empty(), None);
        for (nu, c) in &e.0 {
            let chi = char_value(nu, &Partition::new(vec![n]));
            assert_eq!(c, &Rational::from_integer(chi));
        }
        // All labels of size n with non-zero single-cycle character appear.
        let appearing = e.0.len();
        let expected = partitions_up_to(n, None, None)
            .into_iter()
            .filter(|nu| {
                nu.size() == n && !char_value(nu, &Partition::new(vec![n])).is_zero()
            })
            .count();
        assert_eq!(appearing, expected);
    }
}
