use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::words::{EigenvalueModel, Letter};

/// Sparse sum `Σ c · τ^p · exp(ν_ℓ^u)`.
///
/// Exponentials are keyed by the letter rather than by the value of its
/// eigenvalue, so distinct letters never merge by numerical coincidence.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolySmoothFn {
    terms: BTreeMap<(u32, Letter), Complex64>,
}

impl PolySmoothFn {
    pub fn zero() -> Self {
        PolySmoothFn::default()
    }

    pub fn monomial(c: Complex64, p: u32, letter: Letter) -> Self {
        let mut out = PolySmoothFn::zero();
        out.add_term(p, letter, c);
        out
    }

    pub fn constant(c: Complex64, d: usize) -> Self {
        PolySmoothFn::monomial(c, 0, Letter::zero(d))
    }

    fn add_term(&mut self, p: u32, letter: Letter, c: Complex64) {
        let key = (p, letter);
        let v = self.terms.get(&key).copied().unwrap_or_default() + c;
        if v == Complex64::default() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Letter, Complex64)> {
        self.terms.iter().map(|((p, l), c)| (*p, l, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = PolySmoothFn::zero();
        for ((p, l), c) in &self.terms {
            out.add_term(*p, l.clone(), c * s);
        }
        out
    }

    /// Multiplies by `exp(ν_k^u)`; additivity of `ν` turns this into a shift
    /// of every exponent letter.
    pub fn shift(&self, k: &Letter) -> Self {
        let mut out = PolySmoothFn::zero();
        for ((p, l), c) in &self.terms {
            out.add_term(*p, l + k, *c);
        }
        out
    }

    pub fn eval(&self, model: &EigenvalueModel, tau: f64, u: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|((p, l), c)| c * tau.powi(*p as i32) * model.nu_u(l, u).exp())
            .sum()
    }

    /// `∂/∂τ + v·∇_u`, exactly.
    pub fn transport_derivative(&self, model: &EigenvalueModel) -> Self {
        let mut out = PolySmoothFn::zero();
        for ((p, l), c) in &self.terms {
            if *p > 0 {
                out.add_term(p - 1, l.clone(), c * *p as f64);
            }
            let rate = model.nu_v(l);
            if rate != Complex64::default() {
                out.add_term(*p, l.clone(), c * rate);
            }
        }
        out
    }

    /// `d/dt f(t, 0)` at `t = 0`: the sum of the linear-in-τ coefficients.
    pub fn tau_slope_at_origin(&self) -> Complex64 {
        self.terms.iter().filter(|((p, _), _)| *p == 1).map(|(_, c)| *c).sum()
    }

    /// `d/dt f(0, t·u)` at `t = 0`: `Σ c · ν_ℓ^u` over the τ-free terms.
    pub fn u_slope_at_origin(&self, model: &EigenvalueModel, u: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .filter(|((p, _), _)| *p == 0)
            .map(|((_, l), c)| c * model.nu_u(l, u))
            .sum()
    }
}

impl Add for &PolySmoothFn {
    type Output = PolySmoothFn;

    fn add(self, rhs: &PolySmoothFn) -> PolySmoothFn {
        let mut out = self.clone();
        for ((p, l), c) in &rhs.terms {
            out.add_term(*p, l.clone(), *c);
        }
        out
    }
}

impl Sub for &PolySmoothFn {
    type Output = PolySmoothFn;

    fn sub(self, rhs: &PolySmoothFn) -> PolySmoothFn {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}
