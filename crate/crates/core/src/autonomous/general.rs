use num_complex::Complex64;

use crate::words::{CoefficientTable, EigenvalueModel, MembershipMode, WordIndex};
use crate::{Error, Result};

/// Tolerance of the shuffle check applied to the input perturbation.
const ALGEBRA_TOL: f64 = 1e-10;

pub const DEFAULT_STEPS: usize = 10_000;

/// Integrates `α' = α ⋆ Ξ_{t·v} β`, `α(0) = 1 1`, with classical RK4 on
/// `steps` equal steps up to `t_end`.
///
/// This covers perturbations `W_β` with arbitrary `β` in the Lie algebra,
/// where the closed-form recursions no longer apply.
pub fn solve_general_beta(
    model: &EigenvalueModel,
    beta: &CoefficientTable,
    order: usize,
    t_end: f64,
    steps: usize,
) -> Result<CoefficientTable> {
    if beta.order() < order {
        return Err(Error::OrderMismatch(beta.order(), order));
    }
    if beta.d() != model.d {
        return Err(Error::DimensionMismatch { expected: model.d, got: beta.d() });
    }
    let report = beta.membership_up_to(MembershipMode::Algebra, ALGEBRA_TOL, order);
    if !report.passed() {
        let (a, b) = report.first_violation.unwrap();
        return Err(Error::NotInLieAlgebra(format!(
            "shuffle relation for ({a}, {b}) off by {:e}",
            report.max_violation
        )));
    }
    let index = WordIndex::new(&beta.alphabet(), order, model.d);
    let n = index.len();
    // β_w and the eigenvalue of its letter sum; the empty word has β_∅ = 0.
    let beta_at: Vec<(Complex64, Complex64)> = index
        .words()
        .iter()
        .map(|w| {
            let rate = w.letter_sum().map(|s| model.nu_v(&s)).unwrap_or_default();
            (beta.get(w), rate)
        })
        .collect();
    let splits: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|i| {
            index
                .splits(i)
                .into_iter()
                .filter(|&(_, s)| beta_at[s].0 != Complex64::default())
                .collect()
        })
        .collect();
    let rhs = |t: f64, a: &[Complex64], out: &mut [Complex64]| {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = splits[i]
                .iter()
                .map(|&(p, s)| a[p] * beta_at[s].0 * (beta_at[s].1 * t).exp())
                .sum();
        }
    };
    let mut state = vec![Complex64::default(); n];
    state[0] = Complex64::new(1.0, 0.0);
    if steps > 0 && t_end != 0.0 {
        crate::oracle::rk4(rhs, &mut state, 0.0, t_end, steps);
    }
    Ok(index.scatter(&state))
}
