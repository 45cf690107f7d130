//! Border-strip expansion of a single trace against a Schur label, and the
//! symmetric-group character values it generates.
//!
//! Multiplying a power sum `p_n` into a Schur function is implemented on
//! beta numbers: bump one beta number by `n`, drop results that collide,
//! and pick up a sign counting the beta numbers jumped over.  This is the
//! same combinatorics as adding a connected rim hook of `n` cells with sign
//! `(-1)^(rows - 1)`, but needs no explicit diagram surgery.  Iterating the
//! rule downward yields the irreducible character values.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use csmm_exact::Rational;

use crate::partition::{partitions_of, Partition};

/// A finite Schur-basis expansion with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SchurExpansion(pub BTreeMap<Partition, Rational>);

impl SchurExpansion {
    /// The single term `1 * s_mu`.
    pub fn unit(mu: Partition) -> Self {
        let mut m = BTreeMap::new();
        m.insert(mu, Rational::one());
        Self(m)
    }

    /// Adds `c * s_mu` into the expansion, dropping cancellations.
    pub fn add_term(&mut self, mu: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(mu) {
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

    /// True iff every coefficient cancelled.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Expands `p_n * s_mu` in the Schur basis.
///
/// With `num_rows_cap = Some(N)` the expansion is taken in the ring of
/// symmetric polynomials in `N` variables: labels needing more than `N`
/// rows are dropped, which is exactly the finite-rank trace reduction.
pub fn mn_expand(n: u32, mu: &Partition, num_rows_cap: Option<usize>) -> SchurExpansion {
    assert!(n > 0, "trace degree must be positive");
    // Work with a beta window long enough that row growth is representable:
    // a strip of n cells adds at most n rows.
    let len = mu.num_rows() + n as usize;
    let beta = mu.beta_numbers(len);
    let mut out = SchurExpansion::default();
    for j in 0..len {
        let target = beta[j] + n;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta
            .iter()
            .filter(|&&b| b > beta[j] && b < target)
            .count();
        let sign = if jumped % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut new_beta = beta.clone();
        new_beta.remove(j);
        let pos = new_beta.partition_point(|&b| b < target);
        new_beta.insert(pos, target);
        let nu = Partition::from_beta_numbers(&new_beta);
        if let Some(cap) = num_rows_cap {
            if nu.num_rows() > cap {
                continue;
            }
        }
        out.add_term(nu, sign);
    }
    out
}

/// Removes a border strip of `n` cells from `nu` in all possible ways,
/// returning `(sign, remaining partition)` pairs.
fn strip_removals(nu: &Partition, n: u32) -> Vec<(i64, Partition)> {
    let len = nu.num_rows().max(1);
    let beta = nu.beta_numbers(len);
    let mut out = Vec::new();
    for j in 0..len {
        if beta[j] < n {
            continue;
        }
        let target = beta[j] - n;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta
            .iter()
            .filter(|&&b| b < beta[j] && b > target)
            .count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut new_beta = beta.clone();
        new_beta.remove(j);
        let pos = new_beta.partition_point(|&b| b < target);
        new_beta.insert(pos, target);
        out.push((sign, Partition::from_beta_numbers(&new_beta)));
    }
    out
}

/// Irreducible symmetric-group character value `chi^nu_mu`.
///
/// # Panics
/// Panics if `|nu| != |mu|`.
pub fn char_value(nu: &Partition, mu: &Partition) -> BigInt {
    assert_eq!(nu.size(), mu.size(), "character of mismatched sizes");
    let mut memo: HashMap<(Partition, Vec<u32>), BigInt> = HashMap::new();
    char_rec(nu, mu.parts(), &mut memo)
}

fn char_rec(
    nu: &Partition,
    cycles: &[u32],
    memo: &mut HashMap<(Partition, Vec<u32>), BigInt>,
) -> BigInt {
    if cycles.is_empty() {
        return BigInt::one();
    }
    let key = (nu.clone(), cycles.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let (first, rest) = (cycles[0], &cycles[1..]);
    let mut acc = BigInt::zero();
    for (sign, smaller) in strip_removals(nu, first) {
        acc += BigInt::from(sign) * char_rec(&smaller, rest, memo);
    }
    memo.insert(key, acc.clone());
    acc
}

/// Writes the full character table of the symmetric group on `n` letters
/// as CSV: one row per irreducible label `nu`, one column per class `mu`.
pub fn write_char_table_csv<W: Write>(n: u32, sink: W) -> csv::Result<()> {
    let classes = partitions_of(n);
    let mut w = csv::Writer::from_writer(sink);
    let mut header = vec!["irrep".to_string()];
    header.extend(classes.iter().map(|mu| format!("{:?}", mu.parts())));
    w.write_record(&header)?;
    for nu in partitions_of(n) {
        let mut row = vec![format!("{:?}", nu.parts())];
        for mu in &classes {
            row.push(char_value(&nu, mu).to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use csmm_exact::{factorial, rat_int};

    #[test]
    fn strip_growth_counts() {
        // p_1 * s_() = s_(1); p_2 * s_() = s_(2) - s_(1,1).
        let e = mn_expand(1, &Partition::empty(), None);
        assert_eq!(e, SchurExpansion::unit(Partition::new(vec![1])));
        let e = mn_expand(2, &Partition::empty(), None);
        let mut expect = SchurExpansion::unit(Partition::new(vec![2]));
        expect.add_term(Partition::new(vec![1, 1]), rat_int(-1));
        assert_eq!(e, expect);
    }

    #[test]
    fn row_cap_drops_tall_labels() {
        // In 1 variable, p_2 * 1 = s_(2) only.
        let e = mn_expand(2, &Partition::empty(), Some(1));
        assert_eq!(e, SchurExpansion::unit(Partition::new(vec![2])));
    }

    #[test]
    fn known_character_values() {
        // Trivial and sign characters.
        for mu in partitions_of(4) {
            assert_eq!(char_value(&Partition::new(vec![4]), &mu), BigInt::one());
        }
        assert_eq!(
            char_value(&Partition::new(vec![1, 1, 1]), &Partition::new(vec![2, 1])),
            BigInt::from(-1)
        );
        // Standard rep of S4 on class (2,1,1): chi = fixed points - 1 = 1.
        assert_eq!(
            char_value(&Partition::new(vec![3, 1]), &Partition::new(vec![2, 1, 1])),
            BigInt::one()
        );
        // Dimension of (2,2) in S4 is 2.
        assert_eq!(
            char_value(
                &Partition::new(vec![2, 2]),
                &Partition::new(vec![1, 1, 1, 1])
            ),
            BigInt::from(2)
        );
    }

    #[test]
    fn character_row_orthogonality() {
        for n in 1..=5u32 {
            let classes = partitions_of(n);
            let irreps = partitions_of(n);
            let order = factorial(n as u64);
            for a in &irreps {
                for b in &irreps {
                    let mut acc = Rational::zero();
                    for mu in &classes {
                        let class_size =
                            Rational::from_integer(order.clone()) /
                            Rational::from_integer(mu.centralizer_order());
                        acc += class_size
                            * Rational::from_integer(char_value(a, mu) * char_value(b, mu));
                    }
                    let expect = if a == b {
                        Rational::from_integer(order.clone())
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(acc, expect, "orthogonality failed at {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn csv_table_has_expected_shape() {
        let mut buf = Vec::new();
        write_char_table_csv(4, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.trim().lines().collect();
        // 5 irreps + header.
        assert_eq!(lines.len(), 6);
    }
}
