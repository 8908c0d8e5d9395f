use std::fmt;

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::problem::{Problem, ProblemKind};
use crate::autonomous::{build_gamma_u, extended_group_law_deviation, group_law_deviation_u, transport_residual_u};
use crate::oracle::{scaling_harness, Horizon};
use crate::polyfield::{normal_form, GKind};
use crate::quasiperiodic::{
    beta_bar_with_model, gamma_shift_identity_with, group_law_deviation, transport_residual, GammaTable,
};
use crate::words::{CoefficientTable, MembershipMode};
use crate::{Error, Result};

pub const GROUP_TOL: f64 = 1e-10;
pub const ALGEBRA_TOL: f64 = 1e-12;
pub const IDENTITY_TOL: f64 = 1e-11;
pub const COMMUTATOR_TOL: f64 = 1e-9;
/// Shuffle relations are checked on word pairs up to this total length.
pub const MAX_PAIR_LENGTH: usize = 5;
pub const SAMPLES: usize = 20;
pub const SCALING_EPS: [f64; 3] = [0.04, 0.02, 0.01];
/// Sampled shifts `u` have real and imaginary parts in `[-U_BOX, U_BOX]`;
/// table entries carry `exp(ℓ·u)` and absolute tolerances assume they stay
/// moderate.
pub const U_BOX: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Suite {
    Algebra,
    Transport,
    Grouplaw,
    Normalform,
    Scaling,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
}

/// One named quantity and the bound it must satisfy.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub detail: Option<String>,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Check { name: name.into(), value, bound: Bound::AtMost(tol), detail: None }
    }

    fn with_detail(mut self, detail: Option<String>) -> Self {
        self.detail = detail;
        self
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost(t) => self.value <= t,
            Bound::AtLeast(t) => self.value >= t,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        match self.bound {
            Bound::AtMost(t) => write!(f, "{}: {:.3e} (tol {:e}) {verdict}", self.name, self.value, t)?,
            Bound::AtLeast(t) => write!(f, "{}: {:.3} (min {}) {verdict}", self.name, self.value, t)?,
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

struct Sampler(ChaCha8Rng);

impl Sampler {
    fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }

    fn reals(&mut self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|_| self.real(lo, hi)).collect()
    }

    fn complexes(&mut self, n: usize, r: f64) -> Vec<Complex64> {
        (0..n).map(|_| Complex64::new(self.real(-r, r), self.real(-r, r))).collect()
    }
}

/// Worst shuffle-relation violation over several tables; the detail names
/// the first failing table and word pair.
fn membership(name: &str, tables: &[CoefficientTable], mode: MembershipMode, tol: f64) -> Check {
    let mut worst = 0.0_f64;
    let mut detail = None;
    for t in tables {
        let r = t.membership_up_to(mode, tol, MAX_PAIR_LENGTH);
        worst = worst.max(r.max_violation);
        if detail.is_none() {
            detail = r.first_violation.map(|(a, b)| format!("words {a} and {b}"));
        }
    }
    Check::at_most(name, worst, tol).with_detail(detail)
}

fn quasiperiodic_table(problem: &Problem, order: usize) -> Result<Option<GammaTable>> {
    match problem.kind {
        ProblemKind::Quasiperiodic => {
            Ok(Some(GammaTable::build(problem.spec.model().clone(), &problem.spec.support(), order)?))
        }
        ProblemKind::Autonomous => Ok(None),
    }
}

pub fn run_suite(problem: &Problem, suite: Suite, order: usize, seed: u64) -> Result<SuiteReport> {
    let spec = &problem.spec;
    let model = spec.model();
    let support = spec.support();
    let d = model.d;
    let mut rng = Sampler(ChaCha8Rng::seed_from_u64(seed));
    let mut checks = Vec::new();
    match suite {
        Suite::Algebra => {
            if let Some(g) = quasiperiodic_table(problem, order)? {
                let (mut alpha, mut alphabar, mut kappa, mut beta) = (vec![], vec![], vec![], vec![]);
                for _ in 0..SAMPLES {
                    let (t, t0) = (rng.real(-1.0, 1.0), rng.real(-1.0, 1.0));
                    alpha.push(g.eval_alpha(t, t0));
                    alphabar.push(g.eval_alpha_bar(t, t0));
                    let theta = rng.reals(d, -3.0, 3.0);
                    kappa.push(g.kappa(&theta, t0));
                    beta.push(beta_bar_with_model(model, &support, order, t0)?);
                }
                checks.push(membership("alpha in group", &alpha, MembershipMode::Group, GROUP_TOL));
                checks.push(membership("alphabar in group", &alphabar, MembershipMode::Group, GROUP_TOL));
                checks.push(membership("kappa in group", &kappa, MembershipMode::Group, GROUP_TOL));
                checks.push(membership("betabar in algebra", &beta, MembershipMode::Algebra, ALGEBRA_TOL));
            }
            let gu = build_gamma_u(model, &support, order)?;
            let (mut gamma, mut rho) = (vec![], vec![]);
            for _ in 0..SAMPLES {
                let u = rng.complexes(d, U_BOX);
                gamma.push(gu.eval(rng.real(-1.0, 1.0), &u));
                rho.push(gu.rho(&u));
            }
            checks.push(membership("gamma_u in group", &gamma, MembershipMode::Group, GROUP_TOL));
            checks.push(membership("betabar_auto in algebra", &[gu.beta_bar()], MembershipMode::Algebra, ALGEBRA_TOL));
            checks.push(membership("rho in algebra", &rho, MembershipMode::Algebra, ALGEBRA_TOL));
        }
        Suite::Transport => {
            if let Some(g) = quasiperiodic_table(problem, order)? {
                let mut worst = 0.0_f64;
                for _ in 0..SAMPLES {
                    let tau = rng.real(-1.0, 1.0);
                    let theta = rng.reals(d, -3.0, 3.0);
                    let theta0 = rng.reals(d, -3.0, 3.0);
                    worst = worst.max(transport_residual(&g, tau, &theta, &theta0));
                }
                checks.push(Check::at_most("Gamma transport residual", worst, IDENTITY_TOL));
            }
            let gu = build_gamma_u(model, &support, order)?;
            let mut worst = 0.0_f64;
            for _ in 0..SAMPLES {
                let u = rng.complexes(d, U_BOX);
                worst = worst.max(transport_residual_u(&gu, rng.real(-1.0, 1.0), &u));
            }
            checks.push(Check::at_most("gamma_u transport residual", worst, IDENTITY_TOL));
        }
        Suite::Grouplaw => {
            if let Some(g) = quasiperiodic_table(problem, order)? {
                let mut worst = 0.0_f64;
                for _ in 0..SAMPLES {
                    let (t1, t2) = (rng.real(-1.0, 1.0), rng.real(-1.0, 1.0));
                    let (th0, th1, th2) = (rng.reals(d, -3.0, 3.0), rng.reals(d, -3.0, 3.0), rng.reals(d, -3.0, 3.0));
                    worst = worst.max(group_law_deviation(&g, (t1, &th1, &th0), (t2, &th2)));
                }
                checks.push(Check::at_most("Gamma group law", worst, IDENTITY_TOL));
                let theta0 = rng.reals(d, -3.0, 3.0);
                let shift = gamma_shift_identity_with(&g, &theta0, SAMPLES, rng.0.gen());
                checks.push(Check::at_most("Gamma initial-phase shift", shift.shift_deviation, IDENTITY_TOL));
                checks.push(Check::at_most("Gamma shifted product", shift.corollary_deviation, IDENTITY_TOL));
            }
            let gu = build_gamma_u(model, &support, order)?;
            let (mut plain, mut extended) = (0.0_f64, 0.0_f64);
            for _ in 0..SAMPLES {
                let (t1, t2) = (rng.real(-1.0, 1.0), rng.real(-1.0, 1.0));
                let (u1, u2) = (rng.complexes(d, U_BOX), rng.complexes(d, U_BOX));
                plain = plain.max(group_law_deviation_u(&gu, (t1, &u1), (t2, &u2)));
                extended = extended.max(extended_group_law_deviation(&gu, (t1, &u1), (t2, &u2)));
            }
            checks.push(Check::at_most("gamma_u group law", plain, IDENTITY_TOL));
            checks.push(Check::at_most("extended group law", extended, IDENTITY_TOL));
        }
        Suite::Normalform => {
            if spec.gkind() == &GKind::Forced {
                return Err(Error::Unsupported("the normal-form suite needs an unperturbed field".into()));
            }
            let gu = build_gamma_u(model, &support, order)?;
            let nf = normal_form(spec, &gu)?;
            let (grade, worst) = nf
                .commutator_by_grade()
                .into_iter()
                .enumerate()
                .fold((0, 0.0_f64), |acc, (m, v)| if v > acc.1 { (m, v) } else { acc });
            checks.push(
                Check::at_most("graded commutator", worst, COMMUTATOR_TOL).with_detail(Some(format!("worst at grade {grade}"))),
            );
            let (mut residual, mut pullback) = (0.0_f64, 0.0_f64);
            for _ in 0..SAMPLES {
                let x = rng.complexes(spec.dim(), 0.5);
                residual = residual.max(nf.decomposition_residual(spec, problem.defaults.eps, &x));
                let u = rng.complexes(d, U_BOX);
                pullback = pullback.max(spec.mode_pullback_deviation(&u, &x)?);
            }
            checks.push(Check::at_most("decomposition residual", residual, IDENTITY_TOL));
            checks.push(Check::at_most("mode pullback", pullback, COMMUTATOR_TOL));
        }
        Suite::Scaling => {
            let x0 = vec![Complex64::new(0.1, 0.0); spec.dim()];
            let report = scaling_harness(spec, &SCALING_EPS, order, Horizon::OverEps(1.0), &x0, problem.defaults.t0)?;
            let min = order as f64 + 0.5;
            for fit in &report.fits {
                let errs: Vec<String> = fit.errors.iter().map(|e| format!("{e:.3e}")).collect();
                let detail = Some(format!("errors {}", errs.join(" ")));
                let check = match fit.slope {
                    Some(s) => Check { name: format!("{} slope", fit.identity), value: s, bound: Bound::AtLeast(min), detail },
                    None => Check::at_most(format!("{} error", fit.identity), fit.errors.iter().cloned().fold(0.0, f64::max), crate::oracle::NOISE_FLOOR)
                        .with_detail(fit.note.clone()),
                };
                checks.push(check);
            }
        }
    }
    Ok(SuiteReport { suite, checks })
}
