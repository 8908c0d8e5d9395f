use num_complex::Complex64;
use serde::Serialize;

use super::{direct_solve_with_tol, solve_with_halving};
use crate::autonomous::build_gamma_u;
use crate::polyfield::{GKind, NormalForm, ProblemSpec, WordBasis};
use crate::quasiperiodic::{beta_bar_with_model, GammaTable};
use crate::Result;

/// Errors at or below this are treated as exact.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Reference solutions are converged well below the truncation errors
/// being measured.
const REFERENCE_TOL: f64 = 1e-13;

const SAMPLES_PER_UNIT: f64 = 4.0;

/// The truncated solution series carries secular terms `(εt)^n`, so it is
/// compared over a fixed unit time rather than the requested horizon.
pub const SOLUTION_HORIZON: f64 = 1.0;

/// How far to integrate for a given `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Horizon {
    Fixed(f64),
    /// `t_end − t₀ = c / ε`.
    OverEps(f64),
}

impl Horizon {
    pub fn length(&self, eps: f64) -> f64 {
        match *self {
            Horizon::Fixed(t) => t,
            Horizon::OverEps(c) => c / eps,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingFit {
    pub identity: String,
    pub eps: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `log error` against `log ε`; `None` when every
    /// error sits below the noise floor.
    pub slope: Option<f64>,
    pub note: Option<String>,
}

impl ScalingFit {
    fn from_errors(identity: &str, eps: &[f64], errors: Vec<f64>) -> Self {
        let (slope, note) = if errors.iter().all(|&e| e <= NOISE_FLOOR) {
            (None, Some(format!("below noise floor {NOISE_FLOOR:e}")))
        } else {
            (Some(fit_slope(eps, &errors)), None)
        };
        ScalingFit { identity: identity.to_string(), eps: eps.to_vec(), errors, slope, note }
    }

    /// Slope at least `min`, or an exact identity.
    pub fn passes(&self, min: f64) -> bool {
        self.slope.is_none_or(|s| s >= min)
    }
}

pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x.ln(), y.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub order: usize,
    pub horizon: Horizon,
    pub fits: Vec<ScalingFit>,
}

impl ScalingReport {
    pub fn fit(&self, identity: &str) -> Option<&ScalingFit> {
        self.fits.iter().find(|f| f.identity == identity)
    }
}

pub const SOLUTION_REPRESENTATION: &str = "solution representation";
pub const AVERAGING_REPRESENTATION: &str = "averaging representation";
pub const NORMAL_FORM_RESIDUAL: &str = "normal-form residual";

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

/// Errors of the truncated representations against the direct solution for
/// each `ε`, with fitted log-log slopes.
///
/// Forced problems report the solution and averaging representations;
/// autonomous ones the solution representation and the normal-form
/// decomposition residual at `x₀`. The solution representation is always
/// measured at `t₀ + SOLUTION_HORIZON`; the averaging one at the end of
/// `horizon`.
pub fn scaling_harness(
    spec: &ProblemSpec,
    eps_list: &[f64],
    order: usize,
    horizon: Horizon,
    x0: &[Complex64],
    t0: f64,
) -> Result<ScalingReport> {
    let basis = WordBasis::new(spec, order)?;
    let support = spec.support();
    let mut fits = Vec::new();
    match spec.gkind() {
        GKind::Forced => {
            let gamma = GammaTable::build(spec.model().clone(), &support, order)?;
            let beta = beta_bar_with_model(spec.model(), &support, order, t0)?;
            let mut sol = Vec::new();
            let mut avg = Vec::new();
            for &eps in eps_list {
                let t_short = t0 + SOLUTION_HORIZON;
                let reference = direct_solve_with_tol(spec, eps, x0, t0, t_short, samples_for(SOLUTION_HORIZON), REFERENCE_TOL);
                let alpha = gamma.eval_alpha(t_short, t0);
                sol.push(distance(&basis.eval_series(&alpha, eps, x0)?, reference.last()));

                let t_end = t0 + horizon.length(eps);
                let samples = samples_for(t_end - t0);
                let reference = direct_solve_with_tol(spec, eps, x0, t0, t_end, samples, REFERENCE_TOL);
                let exact = reference.last();

                let averaged = basis.series_field(&beta, eps)?;
                let slow = solve_with_halving(|_, y, out| out.copy_from_slice(&averaged.eval(y)), x0, t0, t_end, samples, REFERENCE_TOL);
                let omega: Vec<f64> = spec.model().v.iter().map(|z| z.re * t_end).collect();
                let kappa = gamma.kappa(&omega, t0);
                avg.push(distance(&basis.eval_series(&kappa, eps, slow.last())?, exact));
            }
            fits.push(ScalingFit::from_errors(SOLUTION_REPRESENTATION, eps_list, sol));
            fits.push(ScalingFit::from_errors(AVERAGING_REPRESENTATION, eps_list, avg));
        }
        _ => {
            let gu = build_gamma_u(spec.model(), &support, order)?;
            let nf: NormalForm = crate::polyfield::normal_form(spec, &gu)?;
            let mut sol = Vec::new();
            let mut nfr = Vec::new();
            for &eps in eps_list {
                let length = SOLUTION_HORIZON;
                let reference = direct_solve_with_tol(spec, eps, x0, 0.0, length, samples_for(length), REFERENCE_TOL);
                let alpha = gu.eval_alpha(length);
                let tv: Vec<Complex64> = spec.model().v.iter().map(|z| z * length).collect();
                let rep = spec.flow_phi(&tv, &basis.eval_series(&alpha, eps, x0)?)?;
                sol.push(distance(&rep, reference.last()));
                nfr.push(nf.decomposition_residual(spec, eps, x0));
            }
            fits.push(ScalingFit::from_errors(SOLUTION_REPRESENTATION, eps_list, sol));
            fits.push(ScalingFit::from_errors(NORMAL_FORM_RESIDUAL, eps_list, nfr));
        }
    }
    Ok(ScalingReport { order, horizon, fits })
}

fn samples_for(length: f64) -> usize {
    ((length.abs() * SAMPLES_PER_UNIT).ceil() as usize).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let eps = [0.04, 0.02, 0.01];
        let errs: Vec<f64> = eps.iter().map(|e: &f64| 3.0 * e.powi(4)).collect();
        assert!((fit_slope(&eps, &errs) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn exact_identity_is_flagged() {
        let f = ScalingFit::from_errors("x", &[0.1, 0.05, 0.02], vec![1e-16, 0.0, 3e-17]);
        assert!(f.slope.is_none());
        assert_eq!(f.note.as_deref(), Some("below noise floor 1e-12"));
        assert!(f.passes(10.0));
    }
}
