//! Chain monomials: the structured creation-operator basis.
//!
//! A monomial is a product of
//! * chains `(head)(Zdag^z)(tail)` where the head is a contracted flavor
//!   vector `lamdag^a`, a concrete row index, or a pending wire, and the
//!   tail is a concrete column index or a pending wire;
//! * closed loops `Tr(Zdag^d)`, `d >= 1`.
//!
//! Wires are contraction indices that have been introduced by one side of
//! an operator word but not yet closed by the other side.  A given wire id
//! appears at most once in head position and at most once in tail position;
//! *welding* joins the two occurrences into a longer chain (or a loop, or a
//! factor of `N` for a zero-length loop) as soon as both are present.

use serde::{Deserialize, Serialize};

use csmm_exact::{rat_int, Rational};

/// Head of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Head {
    /// Contracted flavor creation vector `lamdag^a`.
    Lam(u8),
    /// Concrete row index (0-based).
    Conc(u8),
    /// Pending contraction index.
    Wire(u32),
}

/// Tail of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tail {
    /// Concrete column index (0-based).
    Conc(u8),
    /// Pending contraction index.
    Wire(u32),
}

/// One chain `(head)(Zdag^z)(tail)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Chain {
    /// Head decoration.
    pub head: Head,
    /// Number of `Zdag` factors in the chain body.
    pub z: u32,
    /// Tail decoration.
    pub tail: Tail,
}

/// A product of chains and loops.  Kept sorted so equal monomials compare
/// equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    /// Chains, sorted.
    pub chains: Vec<Chain>,
    /// Loop lengths `Tr(Zdag^d)`, each `>= 1`, sorted.
    pub loops: Vec<u32>,
}

impl Monomial {
    /// The empty product (the Fock vacuum's monomial).
    pub fn one() -> Self {
        Self::default()
    }

    /// Total `Zdag` count.
    pub fn energy(&self) -> u32 {
        self.chains.iter().map(|c| c.z).sum::<u32>() + self.loops.iter().sum::<u32>()
    }

    /// Number of flavor creation vectors.
    pub fn flavor_count(&self) -> u32 {
        self.chains
            .iter()
            .filter(|c| matches!(c.head, Head::Lam(_)))
            .count() as u32
    }

    /// True iff no pending wires remain.
    pub fn is_closed(&self) -> bool {
        self.chains.iter().all(|c| {
            !matches!(c.head, Head::Wire(_)) && !matches!(c.tail, Tail::Wire(_))
        })
    }

    /// Restores sorted order after edits.
    pub fn normalize_order(&mut self) {
        self.chains.sort_unstable();
        self.loops.sort_unstable();
    }

    /// Welds every wire that occurs in both head and tail position, turns
    /// closed zero-length loops into factors of `N`, and eliminates
    /// zero-length concrete chains (the Kronecker deltas).
    ///
    /// Returns the accumulated scalar factor, or `None` if the monomial
    /// vanishes (a delta between distinct concrete indices).
    pub fn weld(&mut self, rank: u32) -> Option<Rational> {
        let mut factor = rat_int(1);
        loop {
            // Find a wire occurring as some chain's tail and some chain's head.
            let mut found: Option<(usize, usize)> = None;
            'outer: for (i, a) in self.chains.iter().enumerate() {
                if let Tail::Wire(w) = a.tail {
                    for (j, b) in self.chains.iter().enumerate() {
                        if let Head::Wire(w2) = b.head {
                            if w2 == w {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                }
            }
            match found {
                None => break,
                Some((i, j)) if i == j => {
                    // A chain biting its own tail: a closed loop.
                    let z = self.chains[i].z;
                    self.chains.swap_remove(i);
                    if z == 0 {
                        factor *= rat_int(rank as i64);
                    } else {
                        self.loops.push(z);
                    }
                }
                Some((i, j)) => {
                    let a = self.chains[i];
                    let b = self.chains[j];
                    let merged = Chain {
                        head: a.head,
                        z: a.z + b.z,
                        tail: b.tail,
                    };
                    // Remove the higher index first to keep positions valid.
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    self.chains.swap_remove(hi);
                    self.chains.swap_remove(lo);
                    self.chains.push(merged);
                }
            }
        }
        // Resolve concrete deltas.
        let mut keep = Vec::with_capacity(self.chains.len());
        for c in self.chains.drain(..) {
            if c.z == 0 {
                if let (Head::Conc(i), Tail::Conc(j)) = (c.head, c.tail) {
                    if i == j {
                        continue; // delta^i_i = 1
                    } else {
                        return None; // delta between distinct indices
                    }
                }
            }
            keep.push(c);
        }
        self.chains = keep;
        self.normalize_order();
        Some(factor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam_chain(a: u8, z: u32, col: u8) -> Chain {
        Chain {
            head: Head::Lam(a),
            z,
            tail: Tail::Conc(col),
        }
    }

    #[test]
    fn welding_joins_chains() {
        // (lam^0 Zdag^2)_w  *  (Zdag^1)^w_3  ->  (lam^0 Zdag^3)_3
        let mut m = Monomial {
            chains: vec![
                Chain {
                    head: Head::Lam(0),
                    z: 2,
                    tail: Tail::Wire(7),
                },
                Chain {
                    head: Head::Wire(7),
                    z: 1,
                    tail: Tail::Conc(3),
                },
            ],
            loops: vec![],
        };
        let f = m.weld(5).unwrap();
        assert_eq!(f, rat_int(1));
        assert_eq!(m.chains, vec![lam_chain(0, 3, 3)]);
    }

    #[test]
    fn self_weld_makes_loops_and_rank_factors() {
        // (Zdag^2)^w_w -> Tr(Zdag^2); (Zdag^0)^w_w -> N.
        let mut m = Monomial {
            chains: vec![Chain {
                head: Head::Wire(1),
                z: 2,
                tail: Tail::Wire(1),
            }],
            loops: vec![],
        };
        assert_eq!(m.weld(4), Some(rat_int(1)));
        assert_eq!(m.loops, vec![2]);
        assert!(m.chains.is_empty());

        let mut m = Monomial {
            chains: vec![Chain {
                head: Head::Wire(2),
                z: 0,
                tail: Tail::Wire(2),
            }],
            loops: vec![],
        };
        assert_eq!(m.weld(4), Some(rat_int(4)));
        assert!(m.chains.is_empty() && m.loops.is_empty());
    }

    #[test]
    fn concrete_deltas_resolve() {
        let mut same = Monomial {
            chains: vec![Chain {
                head: Head::Conc(2),
                z: 0,
                tail: Tail::Conc(2),
            }],
            loops: vec![],
        };
        assert_eq!(same.weld(3), Some(rat_int(1)));
        assert!(same.chains.is_empty());

        let mut diff = Monomial {
            chains: vec![Chain {
                head: Head::Conc(1),
                z: 0,
                tail: Tail::Conc(2),
            }],
            loops: vec![],
        };
        assert_eq!(diff.weld(3), None);
    }

    #[test]
    fn grading() {
        let m = Monomial {
            chains: vec![lam_chain(0, 2, 0), lam_chain(1, 0, 1)],
            loops: vec![3, 1],
        };
        assert_eq!(m.energy(), 6);
        assert_eq!(m.flavor_count(), 2);
        assert!(m.is_closed());
    }
}
