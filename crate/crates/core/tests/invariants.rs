use std::collections::BTreeSet;

use num_complex::Complex64;
use proptest::prelude::*;
use wordseries::autonomous::{build_gamma_u, group_law_deviation_u};
use wordseries::quasiperiodic::{build_gamma, group_law_deviation, GammaTable};
use wordseries::words::{
    convolve, shuffle, unit, words_up_to, CoefficientTable, EigenvalueModel, Letter, MembershipMode, Word,
};

const ORDER: usize = 3;

fn alphabet() -> BTreeSet<Letter> {
    [vec![0, 0], vec![1, 0], vec![-1, 1], vec![0, -1]].into_iter().map(Letter::new).collect()
}

fn gamma() -> GammaTable {
    build_gamma(&[1.0, 2f64.sqrt()], &alphabet(), ORDER).unwrap()
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::collection::vec(-4i64..=4, 2).prop_map(Letter::new)
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word::new)
}

/// Arbitrary table over `alphabet()` with entries in the unit box.
fn table() -> impl Strategy<Value = CoefficientTable> {
    let words = words_up_to(&alphabet(), ORDER);
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), words.len()).prop_map(move |vals| {
        let mut t = CoefficientTable::zero(ORDER, 2);
        for (w, (re, im)) in words.iter().zip(vals) {
            t.set(w.clone(), Complex64::new(re, im));
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_roundtrip_through_text(w in word(5)) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn word_order_is_by_length_first(a in word(4), b in word(4)) {
        if a.len() < b.len() {
            prop_assert!(a < b);
        }
    }

    #[test]
    fn shuffle_has_binomial_mass(a in word(3), b in word(3)) {
        let ab = shuffle(&a, &b);
        let total: u64 = ab.values().sum();
        let (n, m) = (a.len() as u64, b.len() as u64);
        let binom = (1..=m).fold(1u64, |acc, k| acc * (n + k) / k);
        prop_assert_eq!(total, binom);
        prop_assert_eq!(ab, shuffle(&b, &a));
    }

    #[test]
    fn convolution_is_associative_with_unit(a in table(), b in table(), c in table()) {
        let e = unit(ORDER, 2);
        prop_assert!(convolve(&a, &e).unwrap().max_diff(&a) < 1e-15);
        prop_assert!(convolve(&e, &a).unwrap().max_diff(&a) < 1e-15);
        let left = convolve(&convolve(&a, &b).unwrap(), &c).unwrap();
        let right = convolve(&a, &convolve(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_diff(&right) < 1e-13);
    }

    #[test]
    fn coefficients_are_characters(t in -2.0..2.0f64, t0 in -2.0..2.0f64, s in -2.0..2.0f64) {
        let g = gamma();
        let a = g.eval_alpha(t, t0);
        let b = g.eval_alpha(s, t0);
        prop_assert!(a.membership(MembershipMode::Group, 1e-10).passed());
        // Characters are closed under convolution.
        let ab = convolve(&a, &b).unwrap();
        prop_assert!(ab.membership(MembershipMode::Group, 1e-10).passed());
    }

    #[test]
    fn gamma_group_law(
        t1 in -1.0..1.0f64,
        t2 in -1.0..1.0f64,
        th in prop::array::uniform6(-3.0..3.0f64),
    ) {
        let g = gamma();
        let dev = group_law_deviation(&g, (t1, &th[0..2], &th[2..4]), (t2, &th[4..6]));
        prop_assert!(dev < 1e-11, "deviation {dev:e}");
    }

    #[test]
    fn gamma_u_group_law(t1 in -1.0..1.0f64, t2 in -1.0..1.0f64, u in prop::array::uniform8(-0.5..0.5f64)) {
        let model = EigenvalueModel::linear_projector(&[Complex64::new(0.4, 1.0), Complex64::new(0.7, 1.3)]);
        let support = [vec![0, 0], vec![1, 0], vec![2, -1]].into_iter().map(Letter::new).collect();
        let gu = build_gamma_u(&model, &support, ORDER).unwrap();
        let u1 = [Complex64::new(u[0], u[1]), Complex64::new(u[2], u[3])];
        let u2 = [Complex64::new(u[4], u[5]), Complex64::new(u[6], u[7])];
        let dev = group_law_deviation_u(&gu, (t1, &u1), (t2, &u2));
        prop_assert!(dev < 1e-11, "deviation {dev:e}");
    }
}
