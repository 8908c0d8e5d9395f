use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Letter;
use crate::{Error, Result};

/// Eigenvalue structure of the unperturbed flows acting on the letters.
///
/// `ν_{j,ℓ} = (nu · ℓ)_j`, so `ν` is additive in the letter by construction.
/// `ν_ℓ^u = Σ_j u_j ν_{j,ℓ}`. The quasiperiodic case is `nu = i·I`, `v = ω`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueModel {
    pub d: usize,
    pub v: Vec<Complex64>,
    pub nu: Vec<Vec<Complex64>>,
    /// Relative resonance threshold; a letter is rejected when
    /// `|ν_ℓ^v| <= resonance_tol · ‖v‖ · ‖ℓ‖₁`.
    pub resonance_tol: f64,
}

pub const DEFAULT_RESONANCE_TOL: f64 = 1e-10;

impl EigenvalueModel {
    pub fn new(v: Vec<Complex64>, nu: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = v.len();
        if nu.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: nu.len() });
        }
        if let Some(row) = nu.iter().find(|row| row.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: row.len() });
        }
        Ok(EigenvalueModel { d, v, nu, resonance_tol: DEFAULT_RESONANCE_TOL })
    }

    /// `nu = i·I`, `v = ω`: letters are Fourier multi-indices.
    pub fn quasiperiodic(omega: &[f64]) -> Self {
        let d = omega.len();
        let nu = (0..d)
            .map(|j| {
                (0..d)
                    .map(|k| if j == k { Complex64::i() } else { Complex64::new(0.0, 0.0) })
                    .collect()
            })
            .collect();
        EigenvalueModel {
            d,
            v: omega.iter().map(|&w| Complex64::new(w, 0.0)).collect(),
            nu,
            resonance_tol: DEFAULT_RESONANCE_TOL,
        }
    }

    /// `nu = I`, `v = μ`: letters count eigen-degrees for a linear part
    /// `Σ μ_j L_j` with projectors `L_j`.
    pub fn linear_projector(mu: &[Complex64]) -> Self {
        let d = mu.len();
        let nu = (0..d)
            .map(|j| {
                (0..d)
                    .map(|k| Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        EigenvalueModel { d, v: mu.to_vec(), nu, resonance_tol: DEFAULT_RESONANCE_TOL }
    }

    pub fn with_resonance_tol(mut self, tol: f64) -> Self {
        self.resonance_tol = tol;
        self
    }

    /// `(ν_{1,ℓ}, …, ν_{d,ℓ})`.
    pub fn nu_letter(&self, letter: &Letter) -> Vec<Complex64> {
        self.nu
            .iter()
            .map(|row| letter.dot_complex(row))
            .collect()
    }

    /// `ν_ℓ^u = Σ_j u_j ν_{j,ℓ}`.
    pub fn nu_u(&self, letter: &Letter, u: &[Complex64]) -> Complex64 {
        self.nu_letter(letter)
            .iter()
            .zip(u)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn nu_v(&self, letter: &Letter) -> Complex64 {
        self.nu_u(letter, &self.v)
    }

    fn threshold(&self, letter: &Letter) -> f64 {
        let vnorm = self.v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let nunorm = self
            .nu
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        self.resonance_tol * vnorm * nunorm * letter.l1_norm() as f64
    }

    /// Returns `ν_ℓ^v` for a nonzero letter, or a resonance error.
    pub fn divisor(&self, letter: &Letter) -> Result<Complex64> {
        if letter.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: letter.dim() });
        }
        let value = self.nu_v(letter);
        let threshold = self.threshold(letter);
        if letter.is_zero() || value.norm() <= threshold {
            return Err(Error::Resonance {
                letter: letter.clone(),
                re: value.re,
                im: value.im,
                threshold,
            });
        }
        Ok(value)
    }

    pub fn check_dim(&self, u: &[Complex64]) -> Result<()> {
        if u.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: u.len() });
        }
        Ok(())
    }
}
