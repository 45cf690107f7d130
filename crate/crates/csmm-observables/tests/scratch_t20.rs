//! Temporary probe: exact scalar of t_{2,0} Tr(Zdag^2) |ground> = c |ground>.

use csmm_exact::rat_int;
use csmm_fock::orbit::ground_orbit;
use csmm_fock::ModelParams;
use csmm_observables::{apply_op, op_t, GaugeState};

#[test]
fn t20_on_p2_ground() {
    for (n, k) in [(3u32, 1u32), (4, 1), (5, 1), (3, 2), (4, 2)] {
        let params = ModelParams::new(n, 1, k);
        let g = ground_orbit(params).unwrap();
        let p2g = g.mul_loops(&[2]);
        let y = apply_op(&op_t(2, 0), &p2g).unwrap();
        // candidate c = 2(k+1)N^2 - 2kN
        let c = rat_int(2 * ((k + 1) * n * n) as i64 - 2 * (k * n) as i64);
        let mut diff = y.clone();
        diff.add_scaled(&g, &-&c);
        println!(
            "N={n} k={k}: y - c*g is_null = {}",
            GaugeState::is_null(&diff)
        );
    }
}
