use std::collections::BTreeSet;

use num_complex::Complex64;

use super::{gauss_legendre, rk4};
use crate::words::{CoefficientTable, EigenvalueModel, Letter, Word, WordIndex};
use crate::{Error, Result};

/// Longest word the nested quadrature accepts; cost grows as `nodes^len`.
pub const MAX_QUADRATURE_LEN: usize = 4;

pub const DEFAULT_NODES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaKind {
    /// `λ_k(t) = e^{i k·ω t}` with `ω` the real part of `v`.
    Quasiperiodic,
    /// `λ_ℓ(t) = exp(t ν_ℓ^v)`.
    Autonomous,
}

/// The scalar weights `λ_ℓ(t)` multiplying each mode in the original system.
#[derive(Clone, Debug)]
pub struct LambdaSpec {
    pub model: EigenvalueModel,
    pub kind: LambdaKind,
}

impl LambdaSpec {
    pub fn quasiperiodic(omega: &[f64]) -> Self {
        LambdaSpec { model: EigenvalueModel::quasiperiodic(omega), kind: LambdaKind::Quasiperiodic }
    }

    pub fn autonomous(model: EigenvalueModel) -> Self {
        LambdaSpec { model, kind: LambdaKind::Autonomous }
    }

    pub fn eval(&self, letter: &Letter, t: f64) -> Complex64 {
        match self.kind {
            LambdaKind::Quasiperiodic => {
                let omega: Vec<f64> = self.model.v.iter().map(|z| z.re).collect();
                Complex64::from_polar(1.0, letter.dot(&omega) * t)
            }
            LambdaKind::Autonomous => (self.model.nu_v(letter) * t).exp(),
        }
    }
}

/// Integrates `α'_{wℓ}(t) = λ_ℓ(t) α_w(t)`, `α(t₀) = 1 1`, with RK4 for every
/// word up to length `order` over `support`.
pub fn alpha_by_ode(
    ls: &LambdaSpec,
    support: &BTreeSet<Letter>,
    order: usize,
    t: f64,
    t0: f64,
    steps: usize,
) -> CoefficientTable {
    let index = WordIndex::new(support, order, ls.model.d);
    let letters = index.letters().to_vec();
    let parents: Vec<Option<(usize, usize)>> = (0..index.len()).map(|i| index.parent(i)).collect();
    let mut lam = vec![Complex64::default(); letters.len()];
    let rhs = |s: f64, a: &[Complex64], out: &mut [Complex64]| {
        for (l, slot) in letters.iter().zip(lam.iter_mut()) {
            *slot = ls.eval(l, s);
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o = match parents[i] {
                None => Complex64::default(),
                Some((p, l)) => lam[l] * a[p],
            };
        }
    };
    let mut state = vec![Complex64::default(); index.len()];
    state[0] = Complex64::new(1.0, 0.0);
    if t != t0 {
        rk4(rhs, &mut state, t0, t, steps.max(1));
    }
    index.scatter(&state)
}

/// The iterated integral `∫_{t₀}^{t} λ_{ℓₙ}(tₙ) ⋯ ∫_{t₀}^{t₂} λ_{ℓ₁}(t₁) dt₁ ⋯ dtₙ`
/// by nested Gauss–Legendre quadrature.
pub fn alpha_by_quadrature(ls: &LambdaSpec, w: &Word, t: f64, t0: f64, nodes: usize) -> Result<Complex64> {
    if w.len() > MAX_QUADRATURE_LEN {
        return Err(Error::WordTooLong(w.len(), MAX_QUADRATURE_LEN));
    }
    let rule = gauss_legendre(nodes);
    Ok(nested(ls, w.letters(), t, t0, &rule))
}

fn nested(ls: &LambdaSpec, letters: &[Letter], upper: f64, t0: f64, rule: &(Vec<f64>, Vec<f64>)) -> Complex64 {
    let Some((last, rest)) = letters.split_last() else {
        return Complex64::new(1.0, 0.0);
    };
    let half = (upper - t0) / 2.0;
    let mid = (upper + t0) / 2.0;
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, wt)| {
            let s = mid + half * x;
            ls.eval(last, s) * nested(ls, rest, s, t0, rule) * (wt * half)
        })
        .sum()
}
