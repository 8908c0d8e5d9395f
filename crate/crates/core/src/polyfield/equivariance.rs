use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{GKind, PolyMap, ProblemSpec, WordBasis};
use crate::words::{CoefficientTable, MembershipMode};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    /// `max |C(W̄_t(ȳ)) − W_t(Cȳ)|` over the components.
    pub deviation: f64,
    /// Whether `t` satisfies the shuffle relations of a character; the
    /// identity is only guaranteed when it does.
    pub is_character: bool,
}

fn to_rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|s| m[(r, s)]).collect()).collect()
}

/// Changes variables `y = C ȳ` in every mode, `f̄_ℓ(ȳ) = C⁻¹ f_ℓ(C ȳ)`, and
/// compares the two sides of `C(W̄_t(ȳ)) = W_t(C ȳ)`.
pub fn equivariance_check(
    spec: &ProblemSpec,
    change: &[Vec<Complex64>],
    t: &CoefficientTable,
    eps: f64,
    ybar: &[Complex64],
) -> Result<EquivarianceReport> {
    if spec.phase_dim() != 0 {
        return Err(Error::Unsupported("linear changes of variables would mix angle coordinates".into()));
    }
    let n = spec.dim();
    if change.len() != n || change.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: change.len() });
    }
    let c = DMatrix::from_fn(n, n, |r, s| change[r][s]);
    let c_inv = c.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let c_inv_rows = to_rows(&c_inv);
    let linear = PolyMap::linear(change);
    let modes = spec
        .modes()
        .iter()
        .map(|(l, f)| (l.clone(), f.compose(&linear).left_multiply(&c_inv_rows)))
        .collect();
    let gkind = match spec.gkind() {
        GKind::LinearProjector { projectors } => GKind::LinearProjector {
            projectors: projectors
                .iter()
                .map(|p| to_rows(&(&c_inv * DMatrix::from_fn(n, n, |r, s| p[r][s]) * &c)))
                .collect(),
        },
        other => other.clone(),
    };
    let pulled = ProblemSpec::new(n, spec.model().clone(), modes, gkind)?;

    let transformed = |v: &[Complex64]| -> Vec<Complex64> {
        (0..n).map(|r| (0..n).map(|s| c[(r, s)] * v[s]).sum()).collect()
    };
    let lhs = transformed(&WordBasis::new(&pulled, t.order())?.eval_series(t, eps, ybar)?);
    let rhs = WordBasis::new(spec, t.order())?.eval_series(t, eps, &transformed(ybar))?;
    Ok(EquivarianceReport {
        deviation: lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max),
        is_character: t.membership(MembershipMode::Group, 1e-10).passed(),
    })
}
