use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::words::Letter;

/// Sparse sum `Σ c · τ^p · e^{i m·θ} · e^{i n·θ₀}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigTauPoly {
    terms: BTreeMap<(u32, Letter, Letter), Complex64>,
}

impl TrigTauPoly {
    pub fn zero() -> Self {
        TrigTauPoly::default()
    }

    /// `c · τ^p · e^{i m·θ} · e^{i n·θ₀}`.
    pub fn monomial(c: Complex64, p: u32, m: Letter, n: Letter) -> Self {
        let mut out = TrigTauPoly::zero();
        out.add_term(p, m, n, c);
        out
    }

    pub fn constant(c: Complex64, d: usize) -> Self {
        TrigTauPoly::monomial(c, 0, Letter::zero(d), Letter::zero(d))
    }

    fn add_term(&mut self, p: u32, m: Letter, n: Letter, c: Complex64) {
        let key = (p, m, n);
        let v = self.terms.get(&key).copied().unwrap_or_default() + c;
        if v == Complex64::default() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Letter, &Letter, Complex64)> {
        self.terms.iter().map(|((p, m, n), c)| (*p, m, n, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TrigTauPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(k, c)| {
                    let v = c * s;
                    (v != Complex64::default()).then(|| (k.clone(), v))
                })
                .collect(),
        }
    }

    /// Multiplies by `e^{i k·θ}`.
    pub fn shift_theta(&self, k: &Letter) -> Self {
        let mut out = TrigTauPoly::zero();
        for ((p, m, n), c) in &self.terms {
            out.add_term(*p, m + k, n.clone(), *c);
        }
        out
    }

    /// Multiplies by `e^{i k·θ₀}`.
    pub fn shift_theta0(&self, k: &Letter) -> Self {
        let mut out = TrigTauPoly::zero();
        for ((p, m, n), c) in &self.terms {
            out.add_term(*p, m.clone(), n + k, *c);
        }
        out
    }

    pub fn eval(&self, tau: f64, theta: &[f64], theta0: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|((p, m, n), c)| {
                c * tau.powi(*p as i32) * Complex64::from_polar(1.0, m.dot(theta) + n.dot(theta0))
            })
            .sum()
    }

    /// `∂/∂τ + ω·∇_θ`, applied exactly term by term.
    pub fn transport_derivative(&self, omega: &[f64]) -> Self {
        let mut out = TrigTauPoly::zero();
        for ((p, m, n), c) in &self.terms {
            if *p > 0 {
                out.add_term(p - 1, m.clone(), n.clone(), c * *p as f64);
            }
            let rate = Complex64::new(0.0, m.dot(omega));
            if rate != Complex64::default() {
                out.add_term(*p, m.clone(), n.clone(), c * rate);
            }
        }
        out
    }

    /// Exact `∂/∂τ` at `τ = 0`, as a function of `(θ, θ₀)`.
    pub fn tau_derivative_at_zero(&self, theta: &[f64], theta0: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .filter(|((p, _, _), _)| *p == 1)
            .map(|((_, m, n), c)| c * Complex64::from_polar(1.0, m.dot(theta) + n.dot(theta0)))
            .sum()
    }
}

impl Add for &TrigTauPoly {
    type Output = TrigTauPoly;

    fn add(self, rhs: &TrigTauPoly) -> TrigTauPoly {
        let mut out = self.clone();
        for ((p, m, n), c) in &rhs.terms {
            out.add_term(*p, m.clone(), n.clone(), *c);
        }
        out
    }
}

impl Sub for &TrigTauPoly {
    type Output = TrigTauPoly;

    fn sub(self, rhs: &TrigTauPoly) -> TrigTauPoly {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}
