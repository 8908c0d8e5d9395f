use num_complex::Complex64;

use super::GammaUTable;
use crate::words::{convolve, ext_product, xi_shift, ExtendedElement};

/// Largest word-wise residual of `∂_τγ + v·∇_uγ − γ⋆B(u)` with
/// `B_ℓ(u) = exp(ν_ℓ^u)`, both sides differentiated exactly.
pub fn transport_residual_u(g: &GammaUTable, tau: f64, u: &[Complex64]) -> f64 {
    let model = g.model();
    let mut worst = 0.0_f64;
    for w in g.words() {
        let Some(last) = w.last() else { continue };
        let lhs = g.get(w).unwrap().transport_derivative(model).eval(model, tau, u);
        let rhs = g.get(&w.prefix()).unwrap().eval(model, tau, u) * model.nu_u(last, u).exp();
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

/// `γ(τ,u) ⋆ Ξ_u γ(τ',u')` against `γ(τ+τ', u+u')`.
pub fn group_law_deviation_u(g: &GammaUTable, (tau, u): (f64, &[Complex64]), (tau2, u2): (f64, &[Complex64])) -> f64 {
    let shifted = xi_shift(g.model(), u, &g.eval(tau2, u2)).expect("dimension checked by caller");
    let lhs = convolve(&g.eval(tau, u), &shifted).expect("tables share order");
    let sum: Vec<Complex64> = u.iter().zip(u2).map(|(a, b)| a + b).collect();
    lhs.max_diff(&g.eval(tau + tau2, &sum))
}

/// The same law phrased in the extended group:
/// `(u, γ(τ,u)) ★ (u', γ(τ',u')) = (u+u', γ(τ+τ', u+u'))`.
pub fn extended_group_law_deviation(
    g: &GammaUTable,
    (tau, u): (f64, &[Complex64]),
    (tau2, u2): (f64, &[Complex64]),
) -> f64 {
    let p = ExtendedElement::new(u.to_vec(), g.eval(tau, u));
    let q = ExtendedElement::new(u2.to_vec(), g.eval(tau2, u2));
    let prod = ext_product(g.model(), &p, &q).expect("dimension checked by caller");
    let sum: Vec<Complex64> = u.iter().zip(u2).map(|(a, b)| a + b).collect();
    let shift_err = prod.shift.iter().zip(&sum).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    shift_err.max(prod.table.max_diff(&g.eval(tau + tau2, &sum)))
}
