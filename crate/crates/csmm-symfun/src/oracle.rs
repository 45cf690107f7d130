//! Brute-force reference implementation on explicit multivariate polynomials.
//!
//! This module deliberately shares no combinatorics with the production
//! code: Schur polynomials are built by enumerating semistandard tableaux,
//! power sums are literal `sum_i z_i^n`, and products are plain polynomial
//! multiplication.  It is the independent yardstick the border-strip rule
//! is measured against, and it is only ever called from tests and the
//! acceptance suite.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use csmm_exact::Rational;

use crate::mn::SchurExpansion;
use crate::partition::Partition;

/// Dense-exponent sparse polynomial in `m` variables: monomial exponent
/// vector -> coefficient.
pub type MPoly = BTreeMap<Vec<u32>, Rational>;

/// Adds `c * z^expo` into `p`.
fn add_mono(p: &mut MPoly, expo: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match p.entry(expo) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// The power sum `p_n = sum_{i<m} z_i^n` in `m` variables.
pub fn power_sum_poly(n: u32, m: usize) -> MPoly {
    let mut p = MPoly::new();
    for i in 0..m {
        let mut expo = vec![0u32; m];
        expo[i] = n;
        add_mono(&mut p, expo, Rational::from_integer(BigInt::from(1)));
    }
    p
}

/// The Schur polynomial `s_mu` in `m` variables, by summing `z^weight`
/// over all semistandard tableaux of shape `mu` with entries in `1..=m`.
pub fn schur_poly(mu: &Partition, m: usize) -> MPoly {
    let mut out = MPoly::new();
    if mu.num_rows() > m {
        return out;
    }
    let shape: Vec<usize> = mu.parts().iter().map(|&p| p as usize).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    fill_rows(&shape, 0, &mut rows, m as u32, &mut out);
    out
}

fn fill_rows(shape: &[usize], r: usize, rows: &mut Vec<Vec<u32>>, m: u32, out: &mut MPoly) {
    if r == shape.len() {
        let mut expo = vec![0u32; m as usize];
        for row in rows.iter() {
            for &v in row {
                expo[(v - 1) as usize] += 1;
            }
        }
        add_mono(out, expo, Rational::from_integer(BigInt::from(1)));
        return;
    }
    let len = shape[r];
    let mut row = vec![0u32; len];
    fill_cells(shape, r, 0, &mut row, rows, m, out);
}

fn fill_cells(
    shape: &[usize],
    r: usize,
    c: usize,
    row: &mut Vec<u32>,
    rows: &mut Vec<Vec<u32>>,
    m: u32,
    out: &mut MPoly,
) {
    if c == shape[r] {
        rows.push(row.clone());
        fill_rows(shape, r + 1, rows, m, out);
        rows.pop();
        return;
    }
    // Weakly increasing along the row, strictly increasing down the column.
    let mut lo = 1u32;
    if c > 0 {
        lo = lo.max(row[c - 1]);
    }
    if r > 0 {
        lo = lo.max(rows[r - 1][c] + 1);
    }
    for v in lo..=m {
        row[c] = v;
        fill_cells(shape, r, c + 1, row, rows, m, out);
    }
}

/// Product of two polynomials.
pub fn poly_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_mono(&mut out, expo, ca * cb);
        }
    }
    out
}

/// Realizes a Schur-basis expansion as an explicit polynomial in `m`
/// variables (labels taller than `m` rows contribute zero).
pub fn expansion_to_poly(e: &SchurExpansion, m: usize) -> MPoly {
    let mut out = MPoly::new();
    for (mu, c) in &e.0 {
        for (expo, sc) in schur_poly(mu, m) {
            add_mono(&mut out, expo, c * &sc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use csmm_exact::rat_int;

    #[test]
    fn schur_dimensions_in_two_variables() {
        // s_(a) in 2 variables has a+1 monomials; s_(1,1) = z1 z2.
        for a in 1..5u32 {
            assert_eq!(schur_poly(&Partition::new(vec![a]), 2).len(), a as usize + 1);
        }
        let p = schur_poly(&Partition::new(vec![1, 1]), 2);
        assert_eq!(p.len(), 1);
        assert_eq!(p.get(&vec![1, 1]), Some(&rat_int(1)));
    }

    #[test]
    fn pieri_for_single_boxes() {
        // p_1 * s_(1) = s_(2) + s_(1,1) as polynomials in 3 variables.
        let lhs = poly_mul(
            &power_sum_poly(1, 3),
            &schur_poly(&Partition::new(vec![1]), 3),
        );
        let mut e = SchurExpansion::unit(Partition::new(vec![2]));
        e.add_term(Partition::new(vec![1, 1]), rat_int(1));
        assert_eq!(lhs, expansion_to_poly(&e, 3));
    }
}
