use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use super::gamma::merge_at;
use crate::words::{words_up_to, CoefficientTable, EigenvalueModel, Letter, Word};
use crate::{Error, Result};

/// Coefficients `β̄(t₀)` of the averaged vector field, computed directly by
/// their own recursions rather than by differentiating `Γ`.
pub fn beta_bar(omega: &[f64], support: &BTreeSet<Letter>, order: usize, t0: f64) -> Result<CoefficientTable> {
    beta_bar_with_model(&EigenvalueModel::quasiperiodic(omega), support, order, t0)
}

pub fn beta_bar_with_model(
    model: &EigenvalueModel,
    support: &BTreeSet<Letter>,
    order: usize,
    t0: f64,
) -> Result<CoefficientTable> {
    let omega: Vec<f64> = model.v.iter().map(|z| z.re).collect();
    let d = omega.len();
    if let Some(l) = support.iter().find(|l| l.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: l.dim() });
    }
    let mut rec = BetaRecursion { model, omega: &omega, t0, memo: HashMap::new() };
    let mut table = CoefficientTable::zero(order, d);
    for w in words_up_to(support, order) {
        let v = rec.beta(&w)?;
        table.set(w, v);
    }
    Ok(table)
}

struct BetaRecursion<'a> {
    model: &'a EigenvalueModel,
    omega: &'a [f64],
    t0: f64,
    memo: HashMap<Word, Complex64>,
}

impl BetaRecursion<'_> {
    fn beta(&mut self, w: &Word) -> Result<Complex64> {
        if let Some(v) = self.memo.get(w) {
            return Ok(*v);
        }
        let v = self.compute(w)?;
        self.memo.insert(w.clone(), v);
        Ok(v)
    }

    fn compute(&mut self, w: &Word) -> Result<Complex64> {
        let n = w.len();
        let r = w.leading_zeros();
        if n == 0 {
            return Ok(Complex64::default());
        }
        if r == n {
            return Ok(if n == 1 { Complex64::new(1.0, 0.0) } else { Complex64::default() });
        }
        let k = &w.letters()[r];
        let s = n - r - 1;
        if r == 0 && s == 0 {
            return Ok(Complex64::default());
        }
        self.model.divisor(k)?;
        let k_omega = k.dot(self.omega);
        let factor = Complex64::new(0.0, 1.0 / k_omega);
        let phase = Complex64::from_polar(1.0, k_omega * self.t0);
        let value = match (r, s) {
            (0, _) => phase * self.beta(&w.tail(1))? - self.beta(&merge_at(w, 0))?,
            (_, 0) => self.beta(&w.tail(1))? - self.beta(&w.slice(0, r))? * phase,
            _ => self.beta(&w.tail(1))? - self.beta(&merge_at(w, r))?,
        };
        Ok(factor * value)
    }
}
