//! Integer partitions and their beta-number (first-column hook) encoding.

use num_bigint::BigInt;
use num_traits::One;

use csmm_exact::factorial;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, validating monotonicity and stripping zero parts.
    ///
    /// # Panics
    /// Panics if the parts are not weakly decreasing.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        parts.retain(|&p| p > 0);
        Self(parts)
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts (rows).
    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    /// Sum of parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Beta numbers `mu_i + (len - i)` for a fixed display length `len`,
    /// returned strictly increasing.
    ///
    /// # Panics
    /// Panics if `len` is smaller than the number of rows.
    pub fn beta_numbers(&self, len: usize) -> Vec<u32> {
        assert!(len >= self.0.len(), "beta length shorter than partition");
        let mut beta = Vec::with_capacity(len);
        for slot in 0..len {
            // slot 0 is the *last* row of the padded partition.
            let row_from_bottom = slot;
            let part = if row_from_bottom < len {
                let idx = len - 1 - row_from_bottom;
                self.0.get(idx).copied().unwrap_or(0)
            } else {
                0
            };
            beta.push(part + row_from_bottom as u32);
        }
        debug_assert!(beta.windows(2).all(|w| w[0] < w[1]));
        beta
    }

    /// Reconstructs a partition from strictly increasing beta numbers.
    ///
    /// # Panics
    /// Panics if the numbers are not strictly increasing.
    pub fn from_beta_numbers(beta: &[u32]) -> Self {
        assert!(
            beta.windows(2).all(|w| w[0] < w[1]),
            "beta numbers must be strictly increasing: {beta:?}"
        );
        let mut parts: Vec<u32> = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - i as u32)
            .collect();
        parts.reverse();
        Self::new(parts)
    }

    /// Centralizer order `z_mu = prod_i i^{m_i} m_i!` where `m_i` is the
    /// multiplicity of the part `i`.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut mult: std::collections::BTreeMap<u32, u64> = Default::default();
        for &p in &self.0 {
            *mult.entry(p).or_insert(0) += 1;
        }
        for (p, m) in mult {
            for _ in 0..m {
                z *= BigInt::from(p);
            }
            z *= factorial(m);
        }
        z
    }
}

/// All partitions of `n`, lexicographically largest-first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    fn rec(remaining: u32, max: u32, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::new(buf.clone()));
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            buf.push(next);
            rec(remaining - next, next, buf, out);
            buf.pop();
        }
    }
    rec(n, n.max(1), &mut buf, &mut out);
    out
}

/// All partitions of size at most `n` (including the empty partition),
/// optionally with at most `max_rows` rows and parts at most `max_part`.
pub fn partitions_up_to(n: u32, max_rows: Option<usize>, max_part: Option<u32>) -> Vec<Partition> {
    let mut out = Vec::new();
    for size in 0..=n {
        for p in partitions_of(size) {
            if let Some(r) = max_rows {
                if p.num_rows() > r {
                    continue;
                }
            }
            if let Some(mp) = max_part {
                if p.parts().first().copied().unwrap_or(0) > mp {
                    continue;
                }
            }
            out.push(p);
        }
    }
    out
}
