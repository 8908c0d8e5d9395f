//! Brute-force references: RK4 integration of the coefficient equations,
//! nested quadrature of the iterated integrals, fine-step solutions of the
//! full systems and `ε`-scaling fits.

mod alpha;
mod direct;
mod rk4;
mod scaling;

pub use alpha::{alpha_by_ode, alpha_by_quadrature, LambdaKind, LambdaSpec, DEFAULT_NODES, MAX_QUADRATURE_LEN};
pub use direct::{direct_solve, direct_solve_with_tol, richardson_ratio, solve_with_halving, Trajectory, DEFAULT_HALVING_TOL};
pub use rk4::{gauss_legendre, rk4, rk4_sampled};
pub use scaling::{
    fit_slope, scaling_harness, Horizon, ScalingFit, ScalingReport, AVERAGING_REPRESENTATION, NOISE_FLOOR, SOLUTION_HORIZON,
    NORMAL_FORM_RESIDUAL, SOLUTION_REPRESENTATION,
};
