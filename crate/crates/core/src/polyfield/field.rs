use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_complex::Complex64;

use super::PolyMap;
use crate::words::Letter;

/// Vector field `x ↦ Σ_k e^{i k·θ} P_k(x)` where `θ` is the block of the last
/// `phase_dim` coordinates of `x` and each `P_k` is a polynomial map.
///
/// With `phase_dim = 0` this is just a polynomial field. Angle coordinates
/// stay exact under differentiation because `∂_θ e^{ik·θ} = i k e^{ik·θ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    dim: usize,
    phase_dim: usize,
    terms: BTreeMap<Letter, PolyMap>,
}

impl Field {
    pub fn zero(dim: usize, phase_dim: usize) -> Self {
        assert!(phase_dim <= dim, "angles are a subset of the coordinates");
        Field { dim, phase_dim, terms: BTreeMap::new() }
    }

    pub fn polynomial(p: PolyMap, phase_dim: usize) -> Self {
        Field::phased(Letter::zero(phase_dim), p)
    }

    /// `e^{i k·θ} P(x)`.
    pub fn phased(k: Letter, p: PolyMap) -> Self {
        let mut f = Field::zero(p.dim(), k.dim());
        f.add_term(k, p);
        f
    }

    pub fn identity(dim: usize, phase_dim: usize) -> Self {
        Field::polynomial(PolyMap::identity(dim), phase_dim)
    }

    fn add_term(&mut self, k: Letter, p: PolyMap) {
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phase_dim(&self) -> usize {
        self.phase_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Letter, &PolyMap)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(PolyMap::max_abs_coeff).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Field::zero(self.dim, self.phase_dim);
        if s != Complex64::default() {
            for (k, p) in &self.terms {
                out.add_term(k.clone(), p.scale(s));
            }
        }
        out
    }

    fn angles<'a>(&self, x: &'a [Complex64]) -> &'a [Complex64] {
        &x[self.dim - self.phase_dim..]
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        let theta = self.angles(x);
        let mut out = vec![Complex64::default(); self.dim];
        for (k, p) in &self.terms {
            let phase = (Complex64::i() * k.dot_complex(theta)).exp();
            for (o, v) in out.iter_mut().zip(p.eval(x)) {
                *o += phase * v;
            }
        }
        out
    }

    /// `f'(x) g(x)`.
    pub fn jacobian_times(&self, g: &Field) -> Field {
        let offset = self.dim - self.phase_dim;
        let mut out = Field::zero(self.dim, self.phase_dim);
        for (k, pk) in &self.terms {
            for (m, gm) in &g.terms {
                let mut prod = pk.jacobian_times(gm);
                for (a, &ka) in k.components().iter().enumerate() {
                    if ka != 0 {
                        // i k_a P_k · g_{θ_a}
                        let ga = gm.component(offset + a);
                        if !ga.is_zero() {
                            let comps = pk
                                .components()
                                .iter()
                                .map(|pi| (pi * ga).scale(Complex64::new(0.0, ka as f64)))
                                .collect();
                            prod = &prod + &PolyMap::new(comps);
                        }
                    }
                }
                out.add_term(k + m, prod);
            }
        }
        out
    }

    /// `[f, g] = g'f − f'g`.
    pub fn bracket(&self, g: &Field) -> Field {
        &g.jacobian_times(self) - &self.jacobian_times(g)
    }
}

impl Add for &Field {
    type Output = Field;

    fn add(self, rhs: &Field) -> Field {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(k.clone(), p.clone());
        }
        out
    }
}

impl Sub for &Field {
    type Output = Field;

    fn sub(self, rhs: &Field) -> Field {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}
