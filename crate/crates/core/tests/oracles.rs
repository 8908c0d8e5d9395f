use std::collections::BTreeSet;
use std::path::PathBuf;

use num_complex::Complex64;
use wordseries::autonomous::build_gamma_u;
use wordseries::cli::Problem;
use wordseries::oracle::{alpha_by_ode, alpha_by_quadrature, richardson_ratio, LambdaSpec};
use wordseries::polyfield::WordBasis;
use wordseries::quasiperiodic::build_gamma;
use wordseries::words::{words_up_to, xi_shift, CoefficientTable, EigenvalueModel, Letter};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letters(list: &[[i64; 2]]) -> BTreeSet<Letter> {
    list.iter().map(|l| Letter::new(l.to_vec())).collect()
}

fn problem(name: &str) -> Problem {
    Problem::load(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

#[test]
fn ode_and_quadrature_agree_on_short_words() {
    let omega = [1.0, 2f64.sqrt()];
    let support = letters(&[[0, 0], [1, 0], [-1, 1], [0, -1]]);
    let (t, t0) = (0.8, -0.3);
    let ls = LambdaSpec::quasiperiodic(&omega);
    let ode = alpha_by_ode(&ls, &support, 3, t, t0, 400);
    let exact = build_gamma(&omega, &support, 3).unwrap().eval_alpha(t, t0);
    for w in words_up_to(&support, 3) {
        let q = alpha_by_quadrature(&ls, &w, t, t0, 24).unwrap();
        assert!((q - ode.get(&w)).norm() < 1e-9, "{w}: quadrature {q}, ode {}", ode.get(&w));
        assert!((q - exact.get(&w)).norm() < 1e-12, "{w}");
    }
}

#[test]
fn autonomous_coefficients_match_the_ode() {
    let model = EigenvalueModel::linear_projector(&[c(0.4, 1.0), c(0.7, 1.3)]);
    let support = letters(&[[0, 0], [1, 0], [2, -1], [0, 1]]);
    let gu = build_gamma_u(&model, &support, 4).unwrap();
    let ode = alpha_by_ode(&LambdaSpec::autonomous(model), &support, 4, 0.9, 0.0, 800);
    let diff = gu.eval_alpha(0.9).max_diff(&ode);
    assert!(diff < 1e-9, "{diff:e}");
}

#[test]
fn series_pull_back_along_the_unperturbed_flow() {
    let p = problem("example1.json");
    let spec = &p.spec;
    let basis = WordBasis::new(spec, 3).unwrap();
    let mut delta = CoefficientTable::zero(3, spec.d());
    for (i, w) in words_up_to(&spec.support(), 3).into_iter().enumerate() {
        let value = if w.is_empty() { c(1.0, 0.0) } else { c(0.3 - 0.1 * i as f64, 0.05 * i as f64) };
        delta.set(w, value);
    }
    let x = [c(0.2, -0.1), c(-0.3, 0.25)];
    for u in [[c(0.3, -0.2), c(-0.1, 0.4)], [c(-0.5, 0.1), c(0.2, -0.3)]] {
        let lhs = basis.eval_series(&delta, 0.5, &spec.flow_phi(&u, &x).unwrap()).unwrap();
        let shifted = xi_shift(spec.model(), &u, &delta).unwrap();
        let rhs = spec.flow_phi(&u, &basis.eval_series(&shifted, 0.5, &x).unwrap()).unwrap();
        let dev = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(dev < 1e-12, "{dev:e}");
    }
}

#[test]
fn flows_compose() {
    let p = problem("example1.json");
    let spec = &p.spec;
    let order = 4;
    let eps = 1e-2;
    let gu = build_gamma_u(spec.model(), &spec.support(), order).unwrap();
    let basis = WordBasis::new(spec, order).unwrap();
    let flow = |tau: f64, u: &[Complex64], x: &[Complex64]| {
        let moved = basis.eval_series(&gu.eval(tau, u), eps, x).unwrap();
        spec.flow_phi(u, &moved).unwrap()
    };
    let x = [c(0.4, 0.1), c(-0.2, 0.3)];
    let (t1, u1) = (0.7, [c(0.2, 0.5), c(-0.1, 0.3)]);
    let (t2, u2) = (-0.4, [c(-0.3, 0.2), c(0.25, -0.4)]);
    let sum: Vec<Complex64> = u1.iter().zip(&u2).map(|(a, b)| a + b).collect();
    let composed = flow(t1, &u1, &flow(t2, &u2, &x));
    let direct = flow(t1 + t2, &sum, &x);
    let dev = composed.iter().zip(&direct).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(dev < 1e-9, "{dev:e}");
}

#[test]
fn direct_solver_converges_at_fourth_order() {
    let p = problem("averaging.json");
    let x0 = [c(0.3, 0.1)];
    let ratio = richardson_ratio(&p.spec, 0.5, &x0, 0.0, 2.0, 20);
    assert!((ratio - 16.0).abs() < 1.5, "ratio {ratio}");
}
