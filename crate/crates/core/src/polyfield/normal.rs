use num_complex::Complex64;

use super::series::collapse;
use super::{Field, ProblemSpec, WordBasis};
use crate::autonomous::GammaUTable;
use crate::words::CoefficientTable;
use crate::{Error, Result};

/// Splitting `g + εf = g̃^v + W_β̄` into two commuting fields, both graded
/// by powers of `ε`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    order: usize,
    /// `g^v` at grade 0, then `Σ_{|w|=n} ρ(v)_w f_w`.
    gtilde: Vec<Field>,
    /// `Σ_{|w|=n} β̄_w f_w`; grade 0 is zero.
    wbar: Vec<Field>,
    beta_bar: CoefficientTable,
    rho_v: CoefficientTable,
}

pub fn normal_form(spec: &ProblemSpec, gu: &GammaUTable) -> Result<NormalForm> {
    let report = spec.eigen_check(gu.order());
    if let Some(msg) = report.resonance {
        return Err(Error::Hypothesis(msg));
    }
    if !report.hypotheses_hold() {
        return Err(Error::Hypothesis(format!(
            "eigen relations off by {:e}, projectors by {:e}",
            report.eigen_deviation, report.projector_deviation
        )));
    }
    if spec.g_fields().is_empty() {
        return Err(Error::Unsupported("normal forms need an unperturbed field".into()));
    }
    let basis = WordBasis::new(spec, gu.order())?;
    let beta_bar = gu.beta_bar();
    let rho_v = gu.rho(&spec.model().v);
    let mut gtilde = basis.graded(&rho_v)?;
    gtilde[0] = &gtilde[0] + &spec.g_v();
    let wbar = basis.graded(&beta_bar)?;
    Ok(NormalForm { order: gu.order(), gtilde, wbar, beta_bar, rho_v })
}

impl NormalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn beta_bar(&self) -> &CoefficientTable {
        &self.beta_bar
    }

    pub fn rho_v(&self) -> &CoefficientTable {
        &self.rho_v
    }

    pub fn gtilde_field(&self, eps: f64) -> Field {
        collapse(&self.gtilde, eps)
    }

    pub fn wbar_field(&self, eps: f64) -> Field {
        collapse(&self.wbar, eps)
    }

    pub fn gtilde(&self, eps: f64, x: &[Complex64]) -> Vec<Complex64> {
        self.gtilde_field(eps).eval(x)
    }

    pub fn wbar(&self, eps: f64, x: &[Complex64]) -> Vec<Complex64> {
        self.wbar_field(eps).eval(x)
    }

    /// `max |(g̃^v + W_β̄)(x) − (g + εf)(x)|` over the components.
    pub fn decomposition_residual(&self, spec: &ProblemSpec, eps: f64, x: &[Complex64]) -> f64 {
        let lhs = (&self.gtilde_field(eps) + &self.wbar_field(eps)).eval(x);
        let rhs = (&spec.g_v() + &spec.perturbation().scale(Complex64::new(eps, 0.0))).eval(x);
        lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient of the `ε^m` part of `[g̃^v, W_β̄]`, for
    /// `m = 0..=order`.
    pub fn commutator_by_grade(&self) -> Vec<f64> {
        (0..=self.order)
            .map(|m| {
                let mut acc = Field::zero(self.gtilde[0].dim(), self.gtilde[0].phase_dim());
                for a in 0..=m {
                    acc = &acc + &self.gtilde[a].bracket(&self.wbar[m - a]);
                }
                acc.max_abs_coeff()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autonomous::build_gamma_u;
    use crate::polyfield::{MultiPoly, PolyMap};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example() -> ProblemSpec {
        let f = PolyMap::new(vec![
            MultiPoly::monomial(2, vec![2, 0], c(1.0, 0.0)),
            &MultiPoly::monomial(2, vec![1, 1], c(0.5, 0.0)) + &MultiPoly::monomial(2, vec![2, 0], c(0.0, -0.3)),
        ]);
        ProblemSpec::diagonal_linear(&[c(0.0, 1.0), c(0.0, -1.0)], &f).unwrap()
    }

    #[test]
    fn decomposition_and_commutation() {
        let spec = example();
        let gu = build_gamma_u(spec.model(), &spec.support(), 3).unwrap();
        let nf = normal_form(&spec, &gu).unwrap();
        let x = [c(0.3, -0.1), c(0.2, 0.25)];
        for eps in [0.0, 1e-2, 0.1] {
            assert!(nf.decomposition_residual(&spec, eps, &x) < 1e-13);
        }
        for dev in nf.commutator_by_grade() {
            assert!(dev < 1e-9, "{dev}");
        }
        assert_eq!(nf.wbar(0.0, &x), vec![c(0.0, 0.0); 2]);
        assert_eq!(nf.gtilde(0.0, &x), spec.g_v().eval(&x));
    }
}
