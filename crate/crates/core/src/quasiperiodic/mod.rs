//! Universal coefficients for quasiperiodically forced systems
//! `dy/dt = ε f(y, tω)`.
//!
//! Everything is derived from `Γ_w(τ, θ; θ₀)`, a polynomial in `τ` and a
//! trigonometric polynomial in `θ` and `θ₀`: the oscillatory solution
//! coefficients `α`, the averaged ones `ᾱ`, the periodic change of variables
//! `κ`, and (through a separate recursion) the averaged field `β̄`.

mod beta;
mod gamma;
mod identities;
mod trig;

pub use beta::{beta_bar, beta_bar_with_model};
pub use gamma::{build_gamma, eval_alpha, eval_alpha_bar, kappa, GammaTable};
pub(crate) use gamma::merge_at;
pub use identities::{
    gamma_shift_identity, gamma_shift_identity_with, group_law_deviation, transport_residual,
    ShiftIdentityReport,
};
pub use trig::TrigTauPoly;
