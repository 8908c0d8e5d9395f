use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Field, MultiPoly, PolyMap};
use crate::words::{letter_sums, EigenvalueModel, Letter};
use crate::{Error, Result};

/// Tolerance for the polynomial identities checked on load.
pub const HYPOTHESIS_TOL: f64 = 1e-12;

/// How the unperturbed dynamics enters.
#[derive(Clone, Debug, PartialEq)]
pub enum GKind {
    /// `y' = ε Σ_k e^{ik·ωt} f̂_k(y)`: the oscillation is an external forcing
    /// and there is no unperturbed field.
    Forced,
    /// `x' = Σ_j μ_j L_j x + f(x)` with projectors `L_j`; `g_j(x) = L_j x`.
    LinearProjector { projectors: Vec<Vec<Vec<Complex64>>> },
    /// `x = (y, θ)` with the last `d` coordinates angles, `g_j = e_{θ_j}`.
    AngleShift,
}

/// A perturbed problem with polynomial modes.
///
/// Modes are stored unscaled; the perturbation size `ε` is supplied at
/// evaluation time. For [`GKind::AngleShift`] the mode of letter `k` is
/// `e^{ik·θ} f̂_k(x)` where `f̂_k` is the stored polynomial map.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    dim: usize,
    model: EigenvalueModel,
    modes: BTreeMap<Letter, PolyMap>,
    gkind: GKind,
}

impl ProblemSpec {
    pub fn new(dim: usize, model: EigenvalueModel, modes: BTreeMap<Letter, PolyMap>, gkind: GKind) -> Result<Self> {
        for (l, p) in &modes {
            if l.dim() != model.d {
                return Err(Error::DimensionMismatch { expected: model.d, got: l.dim() });
            }
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
        }
        match &gkind {
            GKind::LinearProjector { projectors } => {
                if projectors.len() != model.d {
                    return Err(Error::DimensionMismatch { expected: model.d, got: projectors.len() });
                }
                for m in projectors {
                    if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                        return Err(Error::DimensionMismatch { expected: dim, got: m.len() });
                    }
                }
            }
            GKind::AngleShift if model.d > dim => {
                return Err(Error::DimensionMismatch { expected: dim, got: model.d });
            }
            _ => {}
        }
        Ok(ProblemSpec { dim, model, modes, gkind })
    }

    /// `y' = ε Σ e^{ik·ωt} f̂_k(y)`.
    pub fn forced(omega: &[f64], modes: BTreeMap<Letter, PolyMap>) -> Result<Self> {
        let dim = modes.values().next().map_or(0, PolyMap::dim);
        ProblemSpec::new(dim, EigenvalueModel::quasiperiodic(omega), modes, GKind::Forced)
    }

    /// `x' = Σ μ_j x_j e_j + f(x)` with one simple eigenvalue per coordinate;
    /// `f` is split into modes by the degree bookkeeping
    /// `k_j = a_j − [j = m]` for a monomial `x^a e_m`.
    pub fn diagonal_linear(mu: &[Complex64], f: &PolyMap) -> Result<Self> {
        let dim = mu.len();
        if f.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: f.dim() });
        }
        let mut modes: BTreeMap<Letter, PolyMap> = BTreeMap::new();
        for (m, comp) in f.components().iter().enumerate() {
            for (exps, c) in comp.terms() {
                let k: Vec<i64> = (0..dim).map(|j| exps[j] as i64 - i64::from(j == m)).collect();
                let mut comps = vec![MultiPoly::zero(dim); dim];
                comps[m] = MultiPoly::monomial(dim, exps.to_vec(), c);
                let piece = PolyMap::new(comps);
                let entry = modes.entry(Letter::new(k)).or_insert_with(|| PolyMap::zero(dim));
                *entry = &*entry + &piece;
            }
        }
        let projectors = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|r| {
                        (0..dim)
                            .map(|s| Complex64::new(if r == j && s == j { 1.0 } else { 0.0 }, 0.0))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ProblemSpec::new(dim, EigenvalueModel::linear_projector(mu), modes, GKind::LinearProjector { projectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d(&self) -> usize {
        self.model.d
    }

    pub fn model(&self) -> &EigenvalueModel {
        &self.model
    }

    pub fn gkind(&self) -> &GKind {
        &self.gkind
    }

    pub fn modes(&self) -> &BTreeMap<Letter, PolyMap> {
        &self.modes
    }

    pub fn support(&self) -> BTreeSet<Letter> {
        self.modes.keys().cloned().collect()
    }

    /// Number of trailing angle coordinates.
    pub fn phase_dim(&self) -> usize {
        match self.gkind {
            GKind::AngleShift => self.model.d,
            _ => 0,
        }
    }

    pub fn with_modes(&self, modes: BTreeMap<Letter, PolyMap>) -> Result<Self> {
        ProblemSpec::new(self.dim, self.model.clone(), modes, self.gkind.clone())
    }

    /// The mode `f_ℓ` as a field.
    pub fn mode_field(&self, letter: &Letter) -> Result<Field> {
        let p = self.modes.get(letter).ok_or_else(|| Error::UnknownLetter(letter.clone()))?;
        Ok(match self.gkind {
            GKind::AngleShift => Field::phased(letter.clone(), p.clone()),
            _ => Field::polynomial(p.clone(), 0),
        })
    }

    /// `Σ_ℓ f_ℓ`, unscaled.
    pub fn perturbation(&self) -> Field {
        self.modes
            .keys()
            .map(|l| self.mode_field(l).expect("own letter"))
            .fold(Field::zero(self.dim, self.phase_dim()), |acc, f| &acc + &f)
    }

    /// The commuting fields `g_1, …, g_d`; empty for forced problems.
    pub fn g_fields(&self) -> Vec<Field> {
        let p = self.phase_dim();
        match &self.gkind {
            GKind::Forced => Vec::new(),
            GKind::LinearProjector { projectors } => {
                projectors.iter().map(|m| Field::polynomial(PolyMap::linear(m), p)).collect()
            }
            GKind::AngleShift => (0..self.model.d)
                .map(|j| {
                    let mut comps = vec![MultiPoly::zero(self.dim); self.dim];
                    comps[self.dim - self.model.d + j] = MultiPoly::constant(self.dim, Complex64::new(1.0, 0.0));
                    Field::polynomial(PolyMap::new(comps), p)
                })
                .collect(),
        }
    }

    /// `g^u = Σ u_j g_j`.
    pub fn g_u(&self, u: &[Complex64]) -> Field {
        self.g_fields()
            .iter()
            .zip(u)
            .fold(Field::zero(self.dim, self.phase_dim()), |acc, (g, uj)| &acc + &g.scale(*uj))
    }

    /// `g = g^v`.
    pub fn g_v(&self) -> Field {
        self.g_u(&self.model.v)
    }

    /// Matrix of the linear flow `φ_u` at time one; `φ_u(x) = M x + c`.
    fn flow_affine(&self, u: &[Complex64]) -> Result<(Vec<Vec<Complex64>>, Vec<Complex64>)> {
        self.model.check_dim(u)?;
        let n = self.dim;
        let mut m: Vec<Vec<Complex64>> = (0..n)
            .map(|r| (0..n).map(|s| Complex64::new(if r == s { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        let mut shift = vec![Complex64::default(); n];
        match &self.gkind {
            GKind::Forced => return Err(Error::Unsupported("forced problems have no unperturbed flow".into())),
            GKind::LinearProjector { projectors } => {
                for (l, uj) in projectors.iter().zip(u) {
                    let factor = uj.exp() - 1.0;
                    for r in 0..n {
                        for s in 0..n {
                            m[r][s] += factor * l[r][s];
                        }
                    }
                }
            }
            GKind::AngleShift => {
                for (j, uj) in u.iter().enumerate() {
                    shift[n - self.model.d + j] = *uj;
                }
            }
        }
        Ok((m, shift))
    }

    /// Time-one flow `φ_u` of `g^u`.
    pub fn flow_phi(&self, u: &[Complex64], x: &[Complex64]) -> Result<Vec<Complex64>> {
        let (m, shift) = self.flow_affine(u)?;
        Ok(m.iter()
            .zip(shift)
            .map(|(row, c)| row.iter().zip(x).map(|(a, b)| a * b).sum::<Complex64>() + c)
            .collect())
    }

    /// Largest deviation in `φ_u'(x)⁻¹ f_ℓ(φ_u(x)) = exp(ν_ℓ^u) f_ℓ(x)` over
    /// the modes.
    pub fn mode_pullback_deviation(&self, u: &[Complex64], x: &[Complex64]) -> Result<f64> {
        let (m, _) = self.flow_affine(u)?;
        let inv = DMatrix::from_fn(self.dim, self.dim, |r, s| m[r][s])
            .try_inverse()
            .ok_or(Error::SingularMatrix)?;
        let moved = self.flow_phi(u, x)?;
        let mut worst = 0.0_f64;
        for l in self.modes.keys() {
            let f = self.mode_field(l)?;
            let lhs = &inv * nalgebra::DVector::from_vec(f.eval(&moved));
            let factor = self.model.nu_u(l, u).exp();
            for (a, b) in lhs.iter().zip(f.eval(x)) {
                worst = worst.max((a - factor * b).norm());
            }
        }
        Ok(worst)
    }

    /// Checks the eigenvector relations `[g_j, f_ℓ] = ν_{j,ℓ} f_ℓ`, the
    /// projector algebra, and nonresonance over letter sums of up to
    /// `order` support letters.
    pub fn eigen_check(&self, order: usize) -> EigenReport {
        let mut report = EigenReport::default();
        for (j, g) in self.g_fields().iter().enumerate() {
            for l in self.modes.keys() {
                let f = self.mode_field(l).expect("own letter");
                let nu = self.model.nu_letter(l)[j];
                let dev = (&g.bracket(&f) - &f.scale(nu)).max_abs_coeff();
                if dev > report.eigen_deviation {
                    report.eigen_deviation = dev;
                    if dev > HYPOTHESIS_TOL {
                        report.worst_eigen = Some((j, l.clone()));
                    }
                }
            }
        }
        if let GKind::LinearProjector { projectors } = &self.gkind {
            let mats: Vec<DMatrix<Complex64>> = projectors
                .iter()
                .map(|m| DMatrix::from_fn(self.dim, self.dim, |r, s| m[r][s]))
                .collect();
            for (j, a) in mats.iter().enumerate() {
                for (k, b) in mats.iter().enumerate() {
                    let prod = a * b;
                    let expected = if j == k { a.clone() } else { DMatrix::zeros(self.dim, self.dim) };
                    let dev = (prod - expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
                    report.projector_deviation = report.projector_deviation.max(dev);
                }
            }
        }
        for l in letter_sums(&self.support(), order.max(1)) {
            if let Err(e) = self.model.divisor(&l) {
                report.resonance = Some(e.to_string());
                report.resonant_letter = Some(l);
                break;
            }
        }
        report
    }
}

#[derive(Clone, Debug, Default)]
pub struct EigenReport {
    /// Largest coefficient of `[g_j, f_ℓ] − ν_{j,ℓ} f_ℓ`.
    pub eigen_deviation: f64,
    /// `(j, ℓ)` attaining the deviation when it exceeds the tolerance.
    pub worst_eigen: Option<(usize, Letter)>,
    /// Largest entry of `L_j L_k − δ_{jk} L_j`.
    pub projector_deviation: f64,
    pub resonant_letter: Option<Letter>,
    pub resonance: Option<String>,
}

impl EigenReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.worst_eigen.is_none() && self.projector_deviation <= HYPOTHESIS_TOL
    }

    pub fn nonresonant(&self) -> bool {
        self.resonant_letter.is_none()
    }

    pub fn passed(&self) -> bool {
        self.hypotheses_hold() && self.nonresonant()
    }
}
