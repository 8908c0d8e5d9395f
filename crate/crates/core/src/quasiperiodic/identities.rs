use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GammaTable;
use crate::words::{convolve, xi_shift, CoefficientTable};

/// Largest word-wise residual of `∂_τΓ + ω·∇_θΓ − Γ⋆B(θ)` at one point,
/// with both sides differentiated exactly.
pub fn transport_residual(g: &GammaTable, tau: f64, theta: &[f64], theta0: &[f64]) -> f64 {
    let mut worst = 0.0_f64;
    for w in g.words() {
        let Some(last) = w.last() else { continue };
        let lhs = g.get(w).unwrap().transport_derivative(g.omega()).eval(tau, theta, theta0);
        let prefix = g.get(&w.prefix()).unwrap().eval(tau, theta, theta0);
        let rhs = prefix * Complex64::from_polar(1.0, last.dot(theta));
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

fn as_complex(x: &[f64]) -> Vec<Complex64> {
    x.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// `Γ(τ₁,θ₁;θ₀) ⋆ Γ(τ₂,θ₂;θ₁)` against `Γ(τ₁+τ₂,θ₂;θ₀)`.
pub fn group_law_deviation(
    g: &GammaTable,
    (tau1, theta1, theta0): (f64, &[f64], &[f64]),
    (tau2, theta2): (f64, &[f64]),
) -> f64 {
    let lhs = convolve(&g.eval(tau1, theta1, theta0), &g.eval(tau2, theta2, theta1))
        .expect("tables from one GammaTable share order and dimension");
    lhs.max_diff(&g.eval(tau1 + tau2, theta2, theta0))
}

fn xi(g: &GammaTable, theta: &[f64], t: &CoefficientTable) -> CoefficientTable {
    xi_shift(g.model(), &as_complex(theta), t).expect("dimensions checked at build")
}

#[derive(Clone, Debug)]
pub struct ShiftIdentityReport {
    /// `max |Γ(τ,θ;θ₀) − Ξ_{θ₀}Γ(τ,θ−θ₀;0)|` over the samples.
    pub shift_deviation: f64,
    /// `max |Γ(τ₁,θ₁;0)⋆Ξ_{θ₁}Γ(τ₂,θ₂;0) − Γ(τ₁+τ₂,θ₁+θ₂;0)|`.
    pub corollary_deviation: f64,
    pub samples: usize,
}

impl ShiftIdentityReport {
    pub fn max_deviation(&self) -> f64 {
        self.shift_deviation.max(self.corollary_deviation)
    }
}

/// Checks the initial-phase shift identity and its corollary at `samples`
/// random points drawn from a seeded generator.
pub fn gamma_shift_identity_with(g: &GammaTable, theta0: &[f64], samples: usize, seed: u64) -> ShiftIdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = g.d();
    let zero = vec![0.0; d];
    let angle = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect() };
    let mut shift_deviation = 0.0_f64;
    let mut corollary_deviation = 0.0_f64;
    for _ in 0..samples {
        let tau = rng.gen_range(-1.0..1.0);
        let theta = angle(&mut rng);
        let diff: Vec<f64> = theta.iter().zip(theta0).map(|(a, b)| a - b).collect();
        let lhs = g.eval(tau, &theta, theta0);
        let rhs = xi(g, theta0, &g.eval(tau, &diff, &zero));
        shift_deviation = shift_deviation.max(lhs.max_diff(&rhs));

        let tau2 = rng.gen_range(-1.0..1.0);
        let theta2 = angle(&mut rng);
        let sum: Vec<f64> = theta.iter().zip(&theta2).map(|(a, b)| a + b).collect();
        let prod = convolve(&g.eval(tau, &theta, &zero), &xi(g, &theta, &g.eval(tau2, &theta2, &zero)))
            .expect("compatible tables");
        corollary_deviation = corollary_deviation.max(prod.max_diff(&g.eval(tau + tau2, &sum, &zero)));
    }
    ShiftIdentityReport { shift_deviation, corollary_deviation, samples }
}

pub fn gamma_shift_identity(g: &GammaTable, theta0: &[f64]) -> ShiftIdentityReport {
    gamma_shift_identity_with(g, theta0, 8, 0)
}
