//! Physical spanning sets of the energy-truncated physical subspace.
//!
//! For a single flavor the physical states are spanned by products of
//! creation traces on the ground state, one state per partition with parts
//! of size at most `N`.  For several flavors the set is generated by
//! letting the creation-side generators `t_{0,j}` and `e^a_{b;0,j}` act on
//! the ground state and keeping an exactly linearly independent subset.

use std::collections::BTreeMap;

use csmm_exact::{Rational, RowSpace};
use csmm_symfun::partition::partitions_up_to;

use crate::op::{apply_op, op_e, op_t, GaugeOpSpec, ObsError};
use crate::state::GaugeState;

/// A list of states certified physical (Gauss law + flavor grading).
#[derive(Clone, Debug)]
pub struct PhysicalStates<S: GaugeState> {
    states: Vec<S>,
}

impl<S: GaugeState> PhysicalStates<S> {
    /// Certifies each state; refuses the whole list on the first failure.
    pub fn certify(states: Vec<S>) -> Result<Self, ObsError> {
        for (i, s) in states.iter().enumerate() {
            if !s.check_physical() {
                return Err(ObsError::NonPhysical(format!(
                    "state {i} of {} violates the gauge constraint or flavor grading",
                    states.len()
                )));
            }
        }
        Ok(Self { states })
    }

    /// The certified states.
    pub fn states(&self) -> &[S] {
        &self.states
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Inserts a state's coordinates into the rank filter; true iff independent.
fn independent<S: GaugeState>(
    rs: &mut RowSpace,
    col_ids: &mut BTreeMap<S::Key, usize>,
    state: &S,
) -> bool {
    let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
    for (key, c) in state.coords() {
        let next = col_ids.len();
        let id = *col_ids.entry(key).or_insert(next);
        row.insert(id, c);
    }
    rs.insert(row)
}

/// Builds a physical spanning set for the energy window `<= e_max`.
///
/// Every returned state is physical and homogeneous in energy; the list is
/// exactly linearly independent in the state coordinates.
pub fn physical_spanning_set<S: GaugeState>(
    params: csmm_fock::ModelParams,
    e_max: u32,
) -> Result<PhysicalStates<S>, ObsError> {
    let ground = S::ground(params)?;
    let ground_energy = ground.max_energy().unwrap_or(0);
    let mut out: Vec<S> = Vec::new();
    let mut rs = RowSpace::new();
    let mut col_ids: BTreeMap<S::Key, usize> = BTreeMap::new();

    if params.flavors == 1 {
        // One state per partition with parts <= N: apply Tr(Zdag^part) per
        // part to the ground state.
        for mu in partitions_up_to(e_max, None, Some(params.rank)) {
            let mut s = ground.clone();
            for &part in mu.parts() {
                s = apply_op(&op_t(0, part), &s)?;
            }
            let fresh = independent(&mut rs, &mut col_ids, &s);
            debug_assert!(fresh, "partition states are independent");
            out.push(s);
        }
    } else {
        // Breadth-first closure under the creation-side generators,
        // rank-filtered exactly.
        let mut gens: Vec<GaugeOpSpec> = Vec::new();
        for j in 1..=e_max {
            gens.push(op_t(0, j));
        }
        for a in 0..params.flavors as u8 {
            for b in 0..params.flavors as u8 {
                for j in 0..=e_max {
                    gens.push(op_e(a, b, 0, j));
                }
            }
        }
        let mut frontier = vec![ground.clone()];
        independent(&mut rs, &mut col_ids, &ground);
        out.push(ground.clone());
        for _round in 0..=e_max {
            let mut next = Vec::new();
            for s in &frontier {
                for g in &gens {
                    let img = apply_op(g, s)?;
                    if img.is_zero() {
                        continue;
                    }
                    if img.max_energy().unwrap_or(0) > ground_energy + e_max {
                        continue;
                    }
                    if independent(&mut rs, &mut col_ids, &img) {
                        out.push(img.clone());
                        next.push(img);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
    }
    PhysicalStates::certify(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use csmm_fock::orbit::OrbitState;
    use csmm_fock::poly::FockPoly;
    use csmm_fock::ModelParams;

    #[test]
    fn single_flavor_counts_partitions() {
        // (N=3, p=1, k=1, E=2): partitions of 0,1,2 with parts <= 3 give
        // 1 + 1 + 2 = 4 states.
        let params = ModelParams::new(3, 1, 1);
        let set = physical_spanning_set::<FockPoly>(params, 2).unwrap();
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn single_flavor_part_cap() {
        // (N=1, p=1, k=1, E=1): partitions of <= 1 with parts <= 1 -> 2.
        let params = ModelParams::new(1, 1, 1);
        let set = physical_spanning_set::<FockPoly>(params, 1).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn orbit_and_concrete_agree_on_dimension() {
        let params = ModelParams::new(2, 2, 1);
        let a = physical_spanning_set::<FockPoly>(params, 2).unwrap();
        let b = physical_spanning_set::<OrbitState>(params, 2).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.len() > 1);
    }
}
