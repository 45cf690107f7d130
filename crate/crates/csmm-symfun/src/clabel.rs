//! Antisymmetrized creation labels and their Schur dictionary.
//!
//! A C-label is the exponent tuple `(n_1, ..., n_N)` of an antisymmetrized
//! product of `N` dressed creation rows; it is totally antisymmetric in its
//! entries, vanishes when two entries coincide, and is, after sorting, the
//! beta-number encoding of a Schur label.  A single-trace insertion of
//! degree `n` acts by bumping one exponent by `n`, summed over positions.

use crate::partition::Partition;

/// Exponent tuple of an antisymmetrized dressed-row product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CLabel(pub Vec<u32>);

impl CLabel {
    /// Number of rows `N`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True iff the label has no entries.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Converts a C-label to `(sign, partition)`, or `None` if the label has a
/// repeated exponent (in which case it vanishes identically).
///
/// The sign is the parity of the permutation sorting the exponents into
/// increasing order; the partition is recovered from the sorted exponents
/// read as beta numbers.
pub fn c_to_schur(label: &CLabel) -> Option<(i64, Partition)> {
    let n = label.0.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| label.0[i]);
    let sorted: Vec<u32> = idx.iter().map(|&i| label.0[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    // Parity of the sorting permutation via cycle decomposition.
    let mut seen = vec![false; n];
    let mut sign = 1i64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = idx[cur];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Some((sign, Partition::from_beta_numbers(&sorted)))
}

/// Converts a Schur label to the canonical (sorted, positive-sign) C-label
/// on `num_rows` rows.
///
/// # Panics
/// Panics if the partition needs more than `num_rows` rows.
pub fn schur_to_c(mu: &Partition, num_rows: usize) -> CLabel {
    CLabel(mu.beta_numbers(num_rows))
}

/// Multiplies a C-label by a degree-`n` single trace: the result is the
/// formal sum of the labels with one exponent bumped by `n` (unit
/// coefficients; labels with repeats are retained and vanish only when
/// converted to Schur form).
pub fn power_times_c(label: &CLabel, n: u32) -> Vec<CLabel> {
    (0..label.0.len())
        .map(|j| {
            let mut bumped = label.0.clone();
            bumped[j] += n;
            CLabel(bumped)
        })
        .collect()
}
