//! Model parameters and the induced coupling constants.

use serde::{Deserialize, Serialize};

use csmm_exact::{rat_int, Rational};

/// Parameters of a concrete model instance.
///
/// The quantization scale is fixed to `eps1 = 1`; the other couplings are
/// then `eps2 = k + p` and `eps3 = eps2 - p * eps1 = k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelParams {
    /// Gauge rank `N`.
    pub rank: u32,
    /// Number of flavors `p >= 1`.
    pub flavors: u32,
    /// Background level `k >= 1`.
    pub level: u32,
}

impl ModelParams {
    /// Builds a parameter set, validating positivity.
    pub fn new(rank: u32, flavors: u32, level: u32) -> Self {
        assert!(rank >= 1, "rank must be positive");
        assert!(flavors >= 1, "flavor count must be positive");
        assert!(level >= 1, "level must be positive");
        Self { rank, flavors, level }
    }

    /// The quantization scale `eps1` (fixed to 1).
    pub fn eps1(&self) -> Rational {
        rat_int(1)
    }

    /// The coupling `eps2 = k + p`.
    pub fn eps2(&self) -> Rational {
        rat_int((self.level + self.flavors) as i64)
    }

    /// The coupling `eps3 = eps2 - p * eps1 = k`.
    pub fn eps3(&self) -> Rational {
        rat_int(self.level as i64)
    }

    /// Number of flavor-vector creation operators a physical state carries:
    /// `k * N`.
    pub fn physical_flavor_count(&self) -> u32 {
        self.level * self.rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn couplings() {
        let p = ModelParams::new(4, 2, 3);
        assert_eq!(p.eps1(), rat_int(1));
        assert_eq!(p.eps2(), rat_int(5));
        assert_eq!(p.eps3(), rat_int(3));
        assert_eq!(p.physical_flavor_count(), 12);
    }
}
