//! The eight acceptance criteria, one test each. Every test prints a single
//! `PASS criterion N: …` or `FAIL criterion N: …` line before asserting.
//! Run with `cargo test --test acceptance -- --nocapture --test-threads 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wordseries::autonomous::{
    build_gamma_u, extended_group_law_deviation, group_law_deviation_u, solve_general_beta, transport_residual_u,
};
use wordseries::oracle::{alpha_by_ode, scaling_harness, Horizon, LambdaSpec, AVERAGING_REPRESENTATION, NORMAL_FORM_RESIDUAL};
use wordseries::polyfield::{f2_f3_reference, normal_form, GKind, MultiPoly, PolyMap, ProblemSpec, WordBasis};
use wordseries::quasiperiodic::{beta_bar, build_gamma, group_law_deviation, transport_residual, GammaTable};
use wordseries::words::{CoefficientTable, EigenvalueModel, Letter, MembershipMode};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn verdict(n: usize, passed: bool, detail: String) -> bool {
    println!("{} criterion {n}: {detail}", if passed { "PASS" } else { "FAIL" });
    passed
}

const OMEGA: [f64; 2] = [1.0, std::f64::consts::SQRT_2];

fn qp_support() -> BTreeSet<Letter> {
    [vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]].into_iter().map(Letter::new).collect()
}

/// Every letter sum of the projector support has `|ν^v| ≥ 0.7`, so entries
/// stay of order one and absolute tolerances are meaningful.
fn projector_model() -> EigenvalueModel {
    EigenvalueModel::linear_projector(&[c(0.4, 1.0), c(0.7, 1.3)])
}

fn projector_support() -> BTreeSet<Letter> {
    [vec![0, 0], vec![1, 0], vec![2, -1], vec![0, 1]].into_iter().map(Letter::new).collect()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(2024)
}

fn reals(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-r..r)).collect()
}

/// Shifts `u` for the autonomous tables. Entries carry `exp(ℓ·u)`, so the
/// box is kept small enough for them to stay of order ten.
const U_BOX: f64 = 0.5;

fn complexes(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<Complex64> {
    (0..n).map(|_| c(rng.gen_range(-r..r), rng.gen_range(-r..r))).collect()
}

fn max_entry(t: &CoefficientTable) -> f64 {
    t.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max)
}

#[test]
fn criterion_1_oracle_agreement() {
    let start = Instant::now();
    let gamma = build_gamma(&OMEGA, &qp_support(), 4).unwrap();
    let ls = LambdaSpec::quasiperiodic(&OMEGA);
    let mut rng = rng();
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let (t, t0) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let ode = alpha_by_ode(&ls, &qp_support(), 4, t, t0, 400);
        worst = worst.max(gamma.eval_alpha(t, t0).max_diff(&ode));
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = verdict(
        1,
        worst < 1e-8 && secs < 10.0,
        format!("max |eval_alpha - alpha_by_ode| = {worst:.2e} over {} words (< 1e-8), {secs:.2} s (< 10 s)", gamma.num_entries()),
    );
    assert!(ok);
}

fn worst_violation(tables: &[CoefficientTable], mode: MembershipMode, tol: f64) -> (f64, bool) {
    tables.iter().fold((0.0, true), |(w, ok), t| {
        let r = t.membership_up_to(mode, tol, 5);
        (w.max(r.max_violation), ok && r.passed())
    })
}

#[test]
fn criterion_2_characters_and_algebra() {
    let mut rng = rng();
    let support = qp_support();
    let gamma = build_gamma(&OMEGA, &support, 5).unwrap();
    let gu_qp = build_gamma_u(&EigenvalueModel::quasiperiodic(&OMEGA), &support, 5).unwrap();
    let gu_lp = build_gamma_u(&projector_model(), &projector_support(), 5).unwrap();

    let (mut group, mut algebra) = (Vec::new(), Vec::new());
    for _ in 0..5 {
        let (t, t0) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        group.push(gamma.eval_alpha(t, t0));
        group.push(gamma.eval_alpha_bar(t, t0));
        group.push(gamma.kappa(&reals(&mut rng, 2, 3.0), t0));
        let tau = rng.gen_range(-1.0..1.0);
        group.push(gu_qp.eval(tau, &complexes(&mut rng, 2, U_BOX)));
        group.push(gu_lp.eval(tau, &complexes(&mut rng, 2, U_BOX)));
        algebra.push(beta_bar(&OMEGA, &support, 5, t0).unwrap());
        algebra.push(gu_lp.rho(&complexes(&mut rng, 2, U_BOX)));
        algebra.push(gu_qp.rho(&complexes(&mut rng, 2, U_BOX)));
    }
    algebra.push(gu_qp.beta_bar());
    algebra.push(gu_lp.beta_bar());

    let (g_worst, g_ok) = worst_violation(&group, MembershipMode::Group, 1e-10);
    let (a_worst, a_ok) = worst_violation(&algebra, MembershipMode::Algebra, 1e-12);
    let ok = verdict(
        2,
        g_ok && a_ok,
        format!(
            "group relations {g_worst:.2e} (< 1e-10) on {} tables, algebra relations {a_worst:.2e} (< 1e-12) on {} tables, pairs up to total length 5",
            group.len(),
            algebra.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_3_group_laws() {
    let mut rng = rng();
    let gamma = build_gamma(&OMEGA, &qp_support(), 4).unwrap();
    let gu = build_gamma_u(&projector_model(), &projector_support(), 4).unwrap();
    let (mut thm_qp, mut thm_u, mut thm_ext, mut size) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..20 {
        let (t1, t2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (th0, th1, th2) = (reals(&mut rng, 2, 3.0), reals(&mut rng, 2, 3.0), reals(&mut rng, 2, 3.0));
        thm_qp = thm_qp.max(group_law_deviation(&gamma, (t1, &th1, &th0), (t2, &th2)));
        let (u1, u2) = (complexes(&mut rng, 2, U_BOX), complexes(&mut rng, 2, U_BOX));
        let sum: Vec<Complex64> = u1.iter().zip(&u2).map(|(a, b)| a + b).collect();
        size = size.max(max_entry(&gu.eval(t1 + t2, &sum)));
        thm_u = thm_u.max(group_law_deviation_u(&gu, (t1, &u1), (t2, &u2)));
        thm_ext = thm_ext.max(extended_group_law_deviation(&gu, (t1, &u1), (t2, &u2)));
    }
    let worst = thm_qp.max(thm_u).max(thm_ext);
    let ok = verdict(
        3,
        worst < 1e-11,
        format!(
            "Gamma law {thm_qp:.2e}, gamma_u law {thm_u:.2e}, extended law {thm_ext:.2e} (all < 1e-11), N = 4, |gamma_u| up to {size:.1}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_transport() {
    let mut rng = rng();
    let gamma = build_gamma(&OMEGA, &qp_support(), 4).unwrap();
    let gu = build_gamma_u(&projector_model(), &projector_support(), 4).unwrap();
    let (mut qp, mut auto, mut size) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..20 {
        let tau = rng.gen_range(-1.0..1.0);
        qp = qp.max(transport_residual(&gamma, tau, &reals(&mut rng, 2, 3.0), &reals(&mut rng, 2, 3.0)));
        let u = complexes(&mut rng, 2, U_BOX);
        auto = auto.max(transport_residual_u(&gu, tau, &u));
        size = size.max(max_entry(&gu.eval(tau, &u)));
    }
    let ok = verdict(
        4,
        qp.max(auto) < 1e-11,
        format!("Gamma residual {qp:.2e}, gamma_u residual {auto:.2e} (< 1e-11), N = 4, |gamma_u| up to {size:.1}"),
    );
    assert!(ok);
}

fn two_mode_problem() -> ProblemSpec {
    let q = |a: f64, b: f64, e: f64| {
        PolyMap::new(vec![
            &MultiPoly::monomial(2, vec![2, 0], c(a, b)) + &MultiPoly::monomial(2, vec![0, 1], c(e, 0.0)),
            &MultiPoly::monomial(2, vec![1, 1], c(b, -a)) + &MultiPoly::monomial(2, vec![1, 0], c(0.0, e)),
        ])
    };
    let mut modes = BTreeMap::new();
    modes.insert(Letter::new(vec![1]), q(0.5, -0.4, 0.7));
    modes.insert(Letter::new(vec![-1]), q(-0.3, 0.6, 0.2));
    ProblemSpec::forced(&[1.7], modes).unwrap()
}

#[test]
fn criterion_5_cross_derivation() {
    let support = qp_support();
    let qp = beta_bar(&OMEGA, &support, 4, 0.0).unwrap();
    let auto = build_gamma_u(&EigenvalueModel::quasiperiodic(&OMEGA), &support, 4).unwrap().beta_bar();
    let beta_diff = qp.max_diff(&auto);

    let spec = two_mode_problem();
    let b = beta_bar(&[1.7], &spec.support(), 3, 0.0).unwrap();
    let dsw = WordBasis::new(&spec, 3).unwrap().dsw_graded(&b).unwrap();
    let (f2, f3) = f2_f3_reference(&spec).unwrap();
    let d2 = (&dsw[2] - &f2).max_abs_coeff();
    let d3 = (&dsw[3] - &f3).max_abs_coeff();
    let ok = verdict(
        5,
        beta_diff < 1e-12 && d2 < 1e-10 && d3 < 1e-10,
        format!(
            "beta_bar vs beta_bar_auto {beta_diff:.2e} (< 1e-12); F2 {d2:.2e}, F3 {d3:.2e} (< 1e-10, nonzero fields: {})",
            !f2.is_zero() && !f3.is_zero()
        ),
    );
    assert!(ok);
}

fn averaging_problem() -> ProblemSpec {
    let y2 = MultiPoly::monomial(1, vec![2], c(1.0, 0.0));
    let mut modes = BTreeMap::new();
    modes.insert(Letter::new(vec![1]), PolyMap::new(vec![y2.scale(c(0.0, -0.5))]));
    modes.insert(Letter::new(vec![-1]), PolyMap::new(vec![y2.scale(c(0.0, 0.5))]));
    modes.insert(Letter::new(vec![0]), PolyMap::new(vec![MultiPoly::var(1, 0).scale(c(0.25, 0.0))]));
    ProblemSpec::forced(&[1.0], modes).unwrap()
}

const EPS: [f64; 3] = [0.04, 0.02, 0.01];

#[test]
fn criterion_6_averaging_order() {
    let start = Instant::now();
    let spec = averaging_problem();
    let mut parts = Vec::new();
    let mut ok = true;
    for order in [2, 3] {
        let report = scaling_harness(&spec, &EPS, order, Horizon::OverEps(1.0), &[c(0.1, 0.0)], 0.0).unwrap();
        let fit = report.fit(AVERAGING_REPRESENTATION).unwrap();
        let slope = fit.slope.unwrap_or(f64::INFINITY);
        let min = order as f64 + 0.5;
        ok &= slope >= min;
        let errs: Vec<String> = fit.errors.iter().map(|e| format!("{e:.2e}")).collect();
        parts.push(format!("N = {order}: slope {slope:.2} (need >= {min}), errors [{}]", errs.join(", ")));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    let ok = verdict(6, ok, format!("{}; {secs:.2} s (< 60 s)", parts.join("; ")));
    assert!(ok, "averaging error over t = 1/eps scales as eps^N, one power short of the stated bound");
}

fn example_one() -> ProblemSpec {
    let f = PolyMap::new(vec![
        MultiPoly::monomial(2, vec![2, 0], c(1.0, 0.0)),
        &MultiPoly::monomial(2, vec![1, 1], c(0.5, 0.0)) + &MultiPoly::monomial(2, vec![2, 0], c(0.0, -0.3)),
    ]);
    ProblemSpec::diagonal_linear(&[c(0.0, 1.0), c(0.0, -1.0)], &f).unwrap()
}

/// `y' = ε(…)`, `θ' = 1.7` with `β̄ ≠ 0`, where the commutator check is not
/// vacuous.
fn angle_problem() -> ProblemSpec {
    let q = |a: f64, b: f64| {
        PolyMap::new(vec![&MultiPoly::monomial(2, vec![2, 0], c(a, b)) + &MultiPoly::monomial(2, vec![1, 0], c(b, 0.0)), MultiPoly::monomial(2, vec![1, 0], c(0.1 * a, 0.0))])
    };
    let mut modes = BTreeMap::new();
    modes.insert(Letter::new(vec![0]), q(0.2, 0.3));
    modes.insert(Letter::new(vec![1]), q(0.5, -0.4));
    modes.insert(Letter::new(vec![-1]), q(-0.3, 0.6));
    ProblemSpec::new(2, EigenvalueModel::quasiperiodic(&[1.7]), modes, GKind::AngleShift).unwrap()
}

#[test]
fn criterion_7_normal_form() {
    let spec = example_one();
    let report = scaling_harness(&spec, &EPS, 3, Horizon::Fixed(1.0), &[c(0.1, 0.05), c(-0.08, 0.1)], 0.0).unwrap();
    let fit = report.fit(NORMAL_FORM_RESIDUAL).unwrap();
    let residual_ok = fit.passes(3.5);
    let residual = match fit.slope {
        Some(s) => format!("residual slope {s:.2} (need >= 3.5)"),
        None => format!("residual {:.1e}, {}", fit.errors.iter().cloned().fold(0.0, f64::max), fit.note.as_deref().unwrap_or("")),
    };
    let nf = normal_form(&spec, &build_gamma_u(spec.model(), &spec.support(), 3).unwrap()).unwrap();
    let commutator = nf.commutator_by_grade().into_iter().fold(0.0, f64::max);

    let angle = angle_problem();
    let nf_angle = normal_form(&angle, &build_gamma_u(angle.model(), &angle.support(), 3).unwrap()).unwrap();
    let commutator_angle = nf_angle.commutator_by_grade().into_iter().fold(0.0, f64::max);
    let beta_size = nf_angle.beta_bar().iter().map(|(_, z)| z.norm()).fold(0.0, f64::max);

    let ok = verdict(
        7,
        residual_ok && commutator < 1e-9 && commutator_angle < 1e-9,
        format!(
            "{residual}; graded [g~, W_beta] {commutator:.2e} through eps^3 (< 1e-9); angle-shift problem with |beta_bar| up to {beta_size:.2}: {commutator_angle:.2e}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_general_solver() {
    let model = projector_model();
    let support = projector_support();
    let gu = build_gamma_u(&model, &support, 4).unwrap();
    let beta = CoefficientTable::letters_only(4, 2, &support, c(1.0, 0.0));
    let mut worst = 0.0_f64;
    for t in [0.5, 1.0, -0.7] {
        let numeric = solve_general_beta(&model, &beta, 4, t, 10_000).unwrap();
        worst = worst.max(numeric.max_diff(&gu.eval_alpha(t)));
    }
    let qp = EigenvalueModel::quasiperiodic(&OMEGA);
    let gq: GammaTable = build_gamma(&OMEGA, &qp_support(), 3).unwrap();
    let numeric = solve_general_beta(&qp, &CoefficientTable::letters_only(3, 2, &qp_support(), c(1.0, 0.0)), 3, 1.0, 10_000).unwrap();
    worst = worst.max(numeric.max_diff(&gq.eval_alpha(1.0, 0.0)));
    let ok = verdict(8, worst < 1e-8, format!("letters-only solve vs gamma_u(t, tv): {worst:.2e} (< 1e-8) at 10^4 steps"));
    assert!(ok);
}
