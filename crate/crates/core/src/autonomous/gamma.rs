use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use super::PolySmoothFn;
use crate::quasiperiodic::merge_at;
use crate::words::{words_up_to, CoefficientTable, EigenvalueModel, Letter, Word};
use crate::{Error, Result};

/// Universal coefficients `γ_w(τ, u)` of a perturbed system whose unperturbed
/// flows act diagonally on the perturbation modes.
#[derive(Clone, Debug)]
pub struct GammaUTable {
    order: usize,
    model: EigenvalueModel,
    support: BTreeSet<Letter>,
    words: Vec<Word>,
    entries: HashMap<Word, PolySmoothFn>,
}

pub fn build_gamma_u(model: &EigenvalueModel, support: &BTreeSet<Letter>, order: usize) -> Result<GammaUTable> {
    if let Some(l) = support.iter().find(|l| l.dim() != model.d) {
        return Err(Error::DimensionMismatch { expected: model.d, got: l.dim() });
    }
    let words = words_up_to(support, order);
    let mut builder = Builder { model, memo: HashMap::new() };
    for w in &words {
        builder.gamma(w)?;
    }
    Ok(GammaUTable {
        order,
        model: model.clone(),
        support: support.clone(),
        words,
        entries: builder.memo,
    })
}

impl GammaUTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn d(&self) -> usize {
        self.model.d
    }

    pub fn model(&self) -> &EigenvalueModel {
        &self.model
    }

    pub fn support(&self) -> &BTreeSet<Letter> {
        &self.support
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, w: &Word) -> Option<&PolySmoothFn> {
        self.entries.get(w)
    }

    /// `γ(τ, u)` on the support words.
    pub fn eval(&self, tau: f64, u: &[Complex64]) -> CoefficientTable {
        self.collect(|f| f.eval(&self.model, tau, u))
    }

    /// Solution coefficients `α(t) = γ(t, t·v)`.
    pub fn eval_alpha(&self, t: f64) -> CoefficientTable {
        let u: Vec<Complex64> = self.model.v.iter().map(|z| z * t).collect();
        self.eval(t, &u)
    }

    /// `β̄ = d/dt γ(t, 0)` at `t = 0`, the averaged perturbation.
    pub fn beta_bar(&self) -> CoefficientTable {
        self.collect(PolySmoothFn::tau_slope_at_origin)
    }

    /// `ρ(u) = d/dt γ(0, t·u)` at `t = 0`, the correction to `g^u`.
    pub fn rho(&self, u: &[Complex64]) -> CoefficientTable {
        self.collect(|f| f.u_slope_at_origin(&self.model, u))
    }

    fn collect(&self, mut f: impl FnMut(&PolySmoothFn) -> Complex64) -> CoefficientTable {
        let mut t = CoefficientTable::zero(self.order, self.model.d);
        for w in &self.words {
            t.set(w.clone(), f(&self.entries[w]));
        }
        t
    }
}

pub fn eval_gamma_u(g: &GammaUTable, tau: f64, u: &[Complex64]) -> CoefficientTable {
    g.eval(tau, u)
}

pub fn beta_bar_auto(g: &GammaUTable) -> CoefficientTable {
    g.beta_bar()
}

pub fn rho(g: &GammaUTable, u: &[Complex64]) -> CoefficientTable {
    g.rho(u)
}

struct Builder<'a> {
    model: &'a EigenvalueModel,
    memo: HashMap<Word, PolySmoothFn>,
}

impl Builder<'_> {
    fn gamma(&mut self, w: &Word) -> Result<PolySmoothFn> {
        if let Some(f) = self.memo.get(w) {
            return Ok(f.clone());
        }
        let f = self.compute(w)?;
        self.memo.insert(w.clone(), f.clone());
        Ok(f)
    }

    fn compute(&mut self, w: &Word) -> Result<PolySmoothFn> {
        let d = self.model.d;
        let zero = Letter::zero(d);
        let n = w.len();
        if n == 0 {
            return Ok(PolySmoothFn::constant(Complex64::new(1.0, 0.0), d));
        }
        let r = w.leading_zeros();
        if r == n {
            let fact: f64 = (1..=n).map(|i| i as f64).product();
            return Ok(PolySmoothFn::monomial(Complex64::new(1.0 / fact, 0.0), n as u32, zero));
        }
        let lead = &w.letters()[r];
        let inv = 1.0 / self.model.divisor(lead)?;
        let s = n - r - 1;
        let numerator = match (r, s) {
            (0, 0) => {
                let e = PolySmoothFn::monomial(Complex64::new(1.0, 0.0), 0, lead.clone());
                &e - &PolySmoothFn::constant(Complex64::new(1.0, 0.0), d)
            }
            (_, 0) => {
                let zeros = self.gamma(&w.slice(0, r))?.shift(lead);
                &zeros - &self.gamma(&w.tail(1))?
            }
            _ => {
                let merged = self.gamma(&merge_at(w, r))?;
                &merged - &self.gamma(&w.tail(1))?
            }
        };
        Ok(numerator.scale(inv))
    }
}
