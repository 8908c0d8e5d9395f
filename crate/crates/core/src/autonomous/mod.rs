//! Universal coefficients for `x' = g(x) + f(x)`, where `g = Σ v_j g_j` is a
//! combination of commuting fields and each mode `f_ℓ` is an eigenvector of
//! every `g_j` under the Lie bracket.
//!
//! The coefficients `γ(τ, u)` are finite sums of `τ^p · exp(ν_ℓ^u)`; the
//! averaged perturbation `β̄` and the correction `ρ(u)` are read off them by
//! exact differentiation. Perturbations by arbitrary Lie-algebra elements go
//! through [`solve_general_beta`] instead.

mod gamma;
mod general;
mod identities;
mod smooth;

pub use gamma::{beta_bar_auto, build_gamma_u, eval_gamma_u, rho, GammaUTable};
pub use general::{solve_general_beta, DEFAULT_STEPS};
pub use identities::{extended_group_law_deviation, group_law_deviation_u, transport_residual_u};
pub use smooth::PolySmoothFn;
