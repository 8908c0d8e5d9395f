use num_complex::Complex64;

use super::{convolve, CoefficientTable, EigenvalueModel};
use crate::{Error, Result};

/// `Ξ_u`: multiplies the coefficient of `ℓ₁⋯ℓₙ` by `exp(ν^u_{ℓ₁+⋯+ℓₙ})`
/// and leaves the empty word alone. It is an automorphism of `⋆`.
pub fn xi_shift(model: &EigenvalueModel, u: &[Complex64], t: &CoefficientTable) -> Result<CoefficientTable> {
    model.check_dim(u)?;
    if t.d() != model.d {
        return Err(Error::DimensionMismatch { expected: model.d, got: t.d() });
    }
    Ok(t.map_values(|w, v| match w.letter_sum() {
        None => v,
        Some(sum) => v * model.nu_u(&sum, u).exp(),
    }))
}

/// Element `(u, γ)` of `C^d × C^W`, acting as `φ_u ∘ W_γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedElement {
    pub shift: Vec<Complex64>,
    pub table: CoefficientTable,
}

impl ExtendedElement {
    pub fn new(shift: Vec<Complex64>, table: CoefficientTable) -> Self {
        ExtendedElement { shift, table }
    }

    pub fn unit(order: usize, d: usize) -> Self {
        ExtendedElement {
            shift: vec![Complex64::default(); d],
            table: super::unit(order, d),
        }
    }
}

/// `(u,γ)★(v,δ) = (v + δ_∅ u, γ ⋆ Ξ_u δ)`. The first factor is expected to
/// be a character.
pub fn ext_product(
    model: &EigenvalueModel,
    p: &ExtendedElement,
    q: &ExtendedElement,
) -> Result<ExtendedElement> {
    model.check_dim(&p.shift)?;
    model.check_dim(&q.shift)?;
    let delta_empty = q.table.get(&super::Word::empty());
    let shift = q
        .shift
        .iter()
        .zip(&p.shift)
        .map(|(v, u)| v + delta_empty * u)
        .collect();
    let table = convolve(&p.table, &xi_shift(model, &p.shift, &q.table)?)?;
    Ok(ExtendedElement { shift, table })
}
