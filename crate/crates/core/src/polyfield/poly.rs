use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Sparse multivariate polynomial with complex coefficients, keyed by
/// exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        MultiPoly::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(nvars, e, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, c: Complex64) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = MultiPoly::zero(nvars);
        p.add_term(exponents, c);
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Complex64) {
        let v = self.terms.get(&exponents).copied().unwrap_or_default() + c;
        if v == Complex64::default() {
            self.terms.remove(&exponents);
        } else {
            self.terms.insert(exponents, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Complex64 {
        self.terms.get(exponents).copied().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn deriv(&self, i: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * e[i] as f64);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .filter(|(k, _)| **k > 0)
                    .fold(*c, |acc, (k, xi)| acc * xi.powu(*k))
            })
            .sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(MultiPoly::constant(self.nvars, Complex64::new(1.0, 0.0)), |acc, _| &acc * self)
    }

    /// Substitutes `x_i ↦ subs[i]`; the result lives in the variables of
    /// `subs`.
    pub fn compose(&self, subs: &[MultiPoly]) -> Self {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let nvars = subs.first().map_or(0, |p| p.nvars);
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(nvars, *c);
            for (k, s) in e.iter().zip(subs) {
                if *k > 0 {
                    term = &term * &s.pow(*k);
                }
            }
            out = &out + &term;
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// A `D`-tuple of polynomials in `D` variables: a polynomial vector field.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    components: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new(components: Vec<MultiPoly>) -> Self {
        let n = components.len();
        assert!(components.iter().all(|p| p.nvars() == n), "square polynomial map");
        PolyMap { components }
    }

    pub fn zero(dim: usize) -> Self {
        PolyMap { components: vec![MultiPoly::zero(dim); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        PolyMap { components: (0..dim).map(|i| MultiPoly::var(dim, i)).collect() }
    }

    /// `x ↦ M x`.
    pub fn linear(matrix: &[Vec<Complex64>]) -> Self {
        let dim = matrix.len();
        let components = matrix
            .iter()
            .map(|row| {
                let mut p = MultiPoly::zero(dim);
                for (j, c) in row.iter().enumerate() {
                    p = &p + &MultiPoly::var(dim, j).scale(*c);
                }
                p
            })
            .collect();
        PolyMap { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.components.iter().map(MultiPoly::max_abs_coeff).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        PolyMap { components: self.components.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    /// Jacobian-vector product `f'(x) g(x)` as a polynomial map.
    pub fn jacobian_times(&self, g: &PolyMap) -> PolyMap {
        let components = self
            .components
            .iter()
            .map(|fi| {
                let mut acc = MultiPoly::zero(self.dim());
                for (j, gj) in g.components.iter().enumerate() {
                    if !gj.is_zero() {
                        acc = &acc + &(&fi.deriv(j) * gj);
                    }
                }
                acc
            })
            .collect();
        PolyMap { components }
    }

    /// `[f, g] = g'f − f'g`.
    pub fn bracket(&self, g: &PolyMap) -> PolyMap {
        &g.jacobian_times(self) - &self.jacobian_times(g)
    }

    /// Substitutes `x ↦ subs(x)` into every component.
    pub fn compose(&self, subs: &PolyMap) -> PolyMap {
        PolyMap { components: self.components.iter().map(|p| p.compose(&subs.components)).collect() }
    }

    /// `x ↦ M · f(x)`.
    pub fn left_multiply(&self, matrix: &[Vec<Complex64>]) -> PolyMap {
        let components = matrix
            .iter()
            .map(|row| {
                let mut acc = MultiPoly::zero(self.dim());
                for (c, p) in row.iter().zip(&self.components) {
                    if *c != Complex64::default() {
                        acc = &acc + &p.scale(*c);
                    }
                }
                acc
            })
            .collect();
        PolyMap { components }
    }
}

impl Add for &PolyMap {
    type Output = PolyMap;

    fn add(self, rhs: &PolyMap) -> PolyMap {
        PolyMap { components: self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &PolyMap {
    type Output = PolyMap;

    fn sub(self, rhs: &PolyMap) -> PolyMap {
        PolyMap { components: self.components.iter().zip(&rhs.components).map(|(a, b)| a - b).collect() }
    }
}
