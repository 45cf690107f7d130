//! Exact Gaussian elimination for sparse, possibly overdetermined systems.
//!
//! Downstream callers express a state in a basis by collecting one equation
//! per monomial coordinate: the systems are tall (thousands of rows) and
//! narrow (tens of unknowns).  The solver processes rows incrementally,
//! keeping a reduced pivot row per column, so memory stays proportional to
//! the number of unknowns.  After back-substitution every input row is
//! re-checked against the solution, so a returned solution is a certificate,
//! not a best effort.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rational;

/// One sparse equation `sum_j coeffs[j] * x_j = rhs`.
#[derive(Clone, Debug, Default)]
pub struct SparseRow {
    /// Map column index -> coefficient; zeros need not be stored.
    pub coeffs: BTreeMap<usize, Rational>,
    /// Right-hand side.
    pub rhs: Rational,
}

impl SparseRow {
    /// Builds a row from `(column, coefficient)` pairs and a right-hand side.
    pub fn new(entries: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        for (j, c) in entries {
            if !c.is_zero() {
                let e = coeffs.entry(j).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    coeffs.remove(&j);
                }
            }
        }
        Self { coeffs, rhs }
    }
}

/// Failure modes of [`solve_exact`].
#[derive(Debug, Error)]
pub enum SolveError {
    /// The system is inconsistent; carries a witness residual.
    #[error("inconsistent system: residual row with rhs {rhs} and empty lhs")]
    Inconsistent {
        /// Non-zero right-hand side left after full elimination of a row.
        rhs: Rational,
    },
    /// The system is consistent but does not determine all unknowns.
    #[error("rank-deficient system: {rank} pivots for {unknowns} unknowns; free columns {free:?}")]
    RankDeficient {
        /// Number of pivot columns found.
        rank: usize,
        /// Number of unknowns requested.
        unknowns: usize,
        /// Columns with no pivot.
        free: Vec<usize>,
    },
}

/// Solves `A x = b` exactly for a system given as sparse rows over
/// `unknowns` columns.  Overdetermined systems are accepted; every row is
/// verified against the returned solution.
pub fn solve_exact(rows: &[SparseRow], unknowns: usize) -> Result<Vec<Rational>, SolveError> {
    // pivot_rows[j] = Some(row reduced so that its leading column is j with
    // coefficient 1 and no other pivot columns present).
    let mut pivot_rows: Vec<Option<SparseRow>> = vec![None; unknowns];

    for row in rows {
        let mut r = row.clone();
        reduce(&mut r, &pivot_rows);
        match r.coeffs.iter().next() {
            None => {
                if !r.rhs.is_zero() {
                    return Err(SolveError::Inconsistent { rhs: r.rhs });
                }
            }
            Some((&lead, c)) => {
                let inv = c.clone();
                for v in r.coeffs.values_mut() {
                    *v /= &inv;
                }
                r.rhs /= &inv;
                // Eliminate the new pivot column from existing pivot rows.
                for j in 0..unknowns {
                    if j == lead {
                        continue;
                    }
                    if let Some(p) = pivot_rows[j].as_mut() {
                        if let Some(f) = p.coeffs.get(&lead).cloned() {
                            axpy(p, &r, &-f);
                        }
                    }
                }
                pivot_rows[lead] = Some(r);
            }
        }
    }

    let free: Vec<usize> = (0..unknowns).filter(|&j| pivot_rows[j].is_none()).collect();
    if !free.is_empty() {
        return Err(SolveError::RankDeficient {
            rank: unknowns - free.len(),
            unknowns,
            free,
        });
    }

    let mut x = vec![Rational::zero(); unknowns];
    for (j, p) in pivot_rows.iter().enumerate() {
        let p = p.as_ref().expect("all pivots present");
        debug_assert_eq!(p.coeffs.len(), 1, "pivot rows fully reduced");
        x[j] = p.rhs.clone();
    }

    // Certificate: every original row must be satisfied exactly.
    for row in rows {
        let mut acc = Rational::zero();
        for (&j, c) in &row.coeffs {
            acc += c * &x[j];
        }
        if acc != row.rhs {
            return Err(SolveError::Inconsistent {
                rhs: acc - &row.rhs,
            });
        }
    }
    Ok(x)
}

/// Incremental exact row space for linear-independence (rank) filtering.
///
/// Rows live in a space of arbitrarily many columns; each inserted row is
/// reduced against the stored pivot rows, and is kept iff something nonzero
/// survives.  All arithmetic is exact, so "independent" is a certificate.
#[derive(Debug, Default)]
pub struct RowSpace {
    /// Pivot column -> reduced row whose minimal column is the key, with
    /// leading coefficient 1.
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl RowSpace {
    /// An empty row space.
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of independent rows absorbed so far.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored rows; returns `true` (and absorbs
    /// the remainder) iff the row was linearly independent of them.
    pub fn insert(&mut self, mut row: BTreeMap<usize, Rational>) -> bool {
        loop {
            let lead = match row.iter().next() {
                None => return false,
                Some((&j, _)) => j,
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = row[&lead].clone();
                    for v in row.values_mut() {
                        *v /= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let f = -row[&lead].clone();
                    let p = p.clone();
                    for (&j, c) in &p {
                        let e = row.entry(j).or_insert_with(Rational::zero);
                        *e += &f * c;
                        if e.is_zero() {
                            row.remove(&j);
                        }
                    }
                }
            }
        }
    }
}

/// `target += factor * source` on sparse rows.
fn axpy(target: &mut SparseRow, source: &SparseRow, factor: &Rational) {
    if factor.is_zero() {
        return;
    }
    for (&j, c) in &source.coeffs {
        let e = target.coeffs.entry(j).or_insert_with(Rational::zero);
        *e += factor * c;
        if e.is_zero() {
            target.coeffs.remove(&j);
        }
    }
    target.rhs += factor * &source.rhs;
}

/// Reduces `r` against all current pivot rows.
fn reduce(r: &mut SparseRow, pivot_rows: &[Option<SparseRow>]) {
    loop {
        let hit = r
            .coeffs
            .iter()
            .find(|(&j, _)| pivot_rows[j].is_some())
            .map(|(&j, c)| (j, c.clone()));
        match hit {
            None => return,
            Some((j, c)) => {
                let p = pivot_rows[j].as_ref().expect("checked above");
                axpy(r, p, &-c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn diagonal_system() {
        let rows = vec![
            SparseRow::new([(0, rat_int(2))], rat_int(6)),
            SparseRow::new([(1, rat_int(3))], rat_int(-3)),
        ];
        let x = solve_exact(&rows, 2).unwrap();
        assert_eq!(x, vec![rat_int(3), rat_int(-1)]);
    }

    #[test]
    fn overdetermined_consistent() {
        // x + y = 3, x - y = 1, 2x = 4 (redundant but consistent).
        let rows = vec![
            SparseRow::new([(0, rat_int(1)), (1, rat_int(1))], rat_int(3)),
            SparseRow::new([(0, rat_int(1)), (1, rat_int(-1))], rat_int(1)),
            SparseRow::new([(0, rat_int(2))], rat_int(4)),
        ];
        let x = solve_exact(&rows, 2).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
    }

    #[test]
    fn inconsistent_detected() {
        // [[1,1],[1,1]] x = (1,2) has no solution.
        let rows = vec![
            SparseRow::new([(0, rat_int(1)), (1, rat_int(1))], rat_int(1)),
            SparseRow::new([(0, rat_int(1)), (1, rat_int(1))], rat_int(2)),
        ];
        match solve_exact(&rows, 2) {
            Err(SolveError::Inconsistent { rhs }) => assert_eq!(rhs, rat_int(1)),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn rank_deficiency_reported() {
        let rows = vec![SparseRow::new([(0, rat_int(1)), (1, rat_int(1))], rat_int(1))];
        match solve_exact(&rows, 2) {
            Err(SolveError::RankDeficient { rank, unknowns, free }) => {
                assert_eq!(rank, 1);
                assert_eq!(unknowns, 2);
                assert_eq!(free, vec![1]);
            }
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn rational_entries() {
        // (1/2)x + (1/3)y = 5/6 ; (1/4)x - y = -3/4  => x = 1, y = 1.
        let rows = vec![
            SparseRow::new([(0, rat(1, 2)), (1, rat(1, 3))], rat(5, 6)),
            SparseRow::new([(0, rat(1, 4)), (1, rat_int(-1))], rat(-3, 4)),
        ];
        let x = solve_exact(&rows, 2).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
    }
}
