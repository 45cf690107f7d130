//! Temporary probe: is the formal orbit-coordinate linear system for
//! expressing t_{m,n} * (loop basis state) in the loop basis consistent?

use std::collections::BTreeMap;
use std::time::Instant;

use csmm_exact::{rat_int, solve_exact, Rational, SparseRow};
use csmm_fock::orbit::{ground_orbit, OrbitMono, OrbitState};
use csmm_fock::ModelParams;
use csmm_observables::{apply_op, op_t};

fn partitions_up_to(e_max: u32, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    fn rec(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for part in (1..=max_part.min(remaining)).rev() {
            cur.push(part);
            out.push(cur.clone());
            rec(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    for e in 1..=e_max {
        // enumerate partitions with total exactly e by taking first parts
        let before = out.len();
        rec(e, max_part, &mut cur, &mut out);
        let _ = before;
        break; // rec with remaining=e_max already enumerates all totals <= e_max? no.
    }
    out
}

fn all_partitions_le(e_max: u32, max_part: u32) -> Vec<Vec<u32>> {
    // partitions (as sorted-descending part lists) of every total <= e_max
    let mut out = Vec::new();
    fn rec(budget: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for part in 1..=max_part.min(budget) {
            if let Some(&last) = cur.last() {
                if part > last {
                    continue;
                }
            }
            cur.push(part);
            rec(budget - part, max_part, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(e_max, max_part, &mut cur, &mut out);
    let _ = partitions_up_to(0, 0);
    out
}

fn basis(params: ModelParams, e_max: u32) -> Vec<(Vec<u32>, OrbitState)> {
    let g = ground_orbit(params).unwrap();
    all_partitions_le(e_max, params.rank)
        .into_iter()
        .map(|mu| {
            let st = g.mul_loops(&mu);
            (mu, st)
        })
        .collect()
}

fn try_express(
    state: &OrbitState,
    codomain: &[(Vec<u32>, OrbitState)],
) -> Result<Vec<Rational>, String> {
    let mut row_index: BTreeMap<OrbitMono, usize> = BTreeMap::new();
    let mut rows_lhs: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut rows_rhs: Vec<Rational> = Vec::new();
    let row_of = |om: &OrbitMono,
                      rows_lhs: &mut Vec<BTreeMap<usize, Rational>>,
                      rows_rhs: &mut Vec<Rational>,
                      row_index: &mut BTreeMap<OrbitMono, usize>| {
        *row_index.entry(om.clone()).or_insert_with(|| {
            rows_lhs.push(BTreeMap::new());
            rows_rhs.push(rat_int(0));
            rows_lhs.len() - 1
        })
    };
    for (j, (_, b)) in codomain.iter().enumerate() {
        for (om, c) in &b.terms {
            let r = row_of(om, &mut rows_lhs, &mut rows_rhs, &mut row_index);
            *rows_lhs[r].entry(j).or_insert_with(|| rat_int(0)) += c;
        }
    }
    for (om, c) in &state.terms {
        let r = row_of(om, &mut rows_lhs, &mut rows_rhs, &mut row_index);
        rows_rhs[r] += c;
    }
    let rows: Vec<SparseRow> = rows_lhs
        .into_iter()
        .zip(rows_rhs)
        .map(|(coeffs, rhs)| SparseRow { coeffs, rhs })
        .collect();
    solve_exact(&rows, codomain.len()).map_err(|e| format!("{e}"))
}

#[test]
fn probe_formal_solvability() {
    let e_cut = 4u32;
    for &k in &[1u32, 2] {
        for n_rank in [4u32, 5, 6, 8] {
            let params = ModelParams::new(n_rank, 1, k);
            let t0 = Instant::now();
            for &(m, n) in &[
                (1u32, 0u32),
                (0, 1),
                (1, 1),
                (2, 0),
                (0, 2),
                (2, 1),
                (1, 2),
                (3, 0),
                (0, 3),
            ] {
                let dom = basis(params, e_cut);
                let cod_cut = (e_cut as i64 + n as i64 - m as i64).max(0) as u32;
                let cod = basis(params, cod_cut);
                let mut n_ok = 0usize;
                let mut n_fail = 0usize;
                for (_, b) in &dom {
                    let img = apply_op(&op_t(m, n), b).unwrap();
                    match try_express(&img, &cod) {
                        Ok(_) => n_ok += 1,
                        Err(_) => n_fail += 1,
                    }
                }
                if n_fail > 0 {
                    println!(
                        "N={n_rank} k={k} t({m},{n}): {n_ok} ok, {n_fail} FAIL"
                    );
                }
            }
            println!(
                "N={n_rank} k={k}: all ops done in {:?}",
                t0.elapsed()
            );
        }
    }
}
