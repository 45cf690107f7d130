//! Cross-checks of the orbit-compressed word engine against the concrete
//! one: applying a gauge-invariant word to a compressed state and
//! decompressing must equal applying the same word to the eagerly expanded
//! state.  This is the load-bearing consistency for every large-`N` run
//! that only the compressed representation can afford.

use csmm_exact::rat_int;
use csmm_fock::orbit::OrbitState;
use csmm_fock::word::letters;
use csmm_fock::*;

fn assert_same(concrete: &FockPoly, compressed: &OrbitState, ctx: &str) {
    let mut diff = compressed.to_fock();
    diff.add_scaled(concrete, &rat_int(-1));
    assert!(diff.is_zero(), "orbit/concrete mismatch: {ctx}");
    // And the reverse compression agrees term-for-term.
    let re = OrbitState::from_fock(concrete);
    let mut odiff = re;
    odiff.add_scaled(compressed, &rat_int(-1));
    assert!(odiff.is_zero(), "recompression mismatch: {ctx}");
}

fn check_words(params: ModelParams) {
    let g = ground_state(params).expect("eager ground state");
    let og = ground_orbit(params).expect("orbit ground state");
    assert_same(&g, &og, &format!("ground state, params {params:?}"));

    let words: &[&str] = &["d", "dd", "zd", "dzd", "ddz", "zzdd", "dzdz"];
    for w in words {
        let word = letters(w);
        let concrete = apply_word(&word, WordShape::Trace, &g);
        let compressed = apply_word_orbit(&word, WordShape::Trace, &og);
        assert_same(
            &concrete,
            &compressed,
            &format!("trace word {w:?}, params {params:?}"),
        );
    }
    // Flavor-sandwiched words for every flavor pair.
    for a in 0..params.flavors as u8 {
        for b in 0..params.flavors as u8 {
            for w in ["", "d", "zd", "dd"] {
                let word = letters(w);
                let shape = WordShape::Sandwich {
                    out_flavor: a,
                    in_flavor: b,
                };
                let concrete = apply_word(&word, shape, &g);
                let compressed = apply_word_orbit(&word, shape, &og);
                assert_same(
                    &concrete,
                    &compressed,
                    &format!("sandwich ({a},{b}) word {w:?}, params {params:?}"),
                );
            }
        }
    }
}

#[test]
fn words_on_single_flavor_level_one_grounds() {
    for n in 2..=4 {
        check_words(ModelParams::new(n, 1, 1));
    }
}

#[test]
fn words_on_level_two_grounds() {
    for n in 2..=3 {
        check_words(ModelParams::new(n, 1, 2));
    }
}

#[test]
fn words_on_two_flavor_grounds() {
    check_words(ModelParams::new(2, 2, 1));
    check_words(ModelParams::new(4, 2, 1));
}

#[test]
fn iterated_words_stay_consistent() {
    // Deeper states: apply two traced words in sequence.
    let params = ModelParams::new(3, 1, 1);
    let g = ground_state(params).unwrap();
    let og = ground_orbit(params).unwrap();
    let s1 = apply_word(&letters("dd"), WordShape::Trace, &g);
    let o1 = apply_word_orbit(&letters("dd"), WordShape::Trace, &og);
    let s2 = apply_word(&letters("zzd"), WordShape::Trace, &s1);
    let o2 = apply_word_orbit(&letters("zzd"), WordShape::Trace, &o1);
    assert_same(&s2, &o2, "iterated word");
}
