use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::polyfield::{GKind, MultiPoly, PolyMap, ProblemSpec};
use crate::words::{EigenvalueModel, Letter};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Quasiperiodic,
    Autonomous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GKindTag {
    Forced,
    LinearProjector,
    AngleShift,
}

/// One monomial `c·x^a` of a mode component.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub exponents: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub letter: Vec<i64>,
    /// One list of terms per state component.
    pub components: Vec<Vec<TermEntry>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    #[serde(rename = "N", default = "Defaults::order")]
    pub order: usize,
    #[serde(default = "Defaults::eps")]
    pub eps: f64,
    #[serde(default)]
    pub t0: f64,
    #[serde(default = "Defaults::resonance_tol")]
    pub resonance_tol: f64,
}

impl Defaults {
    fn order() -> usize {
        3
    }
    fn eps() -> f64 {
        0.01
    }
    fn resonance_tol() -> f64 {
        1e-10
    }
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { order: Self::order(), eps: Self::eps(), t0: 0.0, resonance_tol: Self::resonance_tol() }
    }
}

/// The on-disk JSON problem description. Complex numbers are `[re, im]`
/// pairs; mode coefficients use explicit `re`/`im` fields.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub kind: ProblemKind,
    #[serde(rename = "D")]
    pub dim: usize,
    pub d: usize,
    #[serde(default)]
    pub omega: Option<Vec<f64>>,
    #[serde(default)]
    pub v: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub nu: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    pub gkind: Option<GKindTag>,
    #[serde(default)]
    pub projectors: Option<Vec<Vec<Vec<[f64; 2]>>>>,
    pub modes: Vec<ModeEntry>,
    #[serde(default)]
    pub defaults: Defaults,
}

/// A parsed problem ready for computation.
#[derive(Clone, Debug)]
pub struct Problem {
    pub kind: ProblemKind,
    pub spec: ProblemSpec,
    pub defaults: Defaults,
}

fn complex(z: &[f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

fn missing(field: &str, kind: &str) -> Error {
    Error::Parse(format!("`{field}` is required for {kind} problems"))
}

impl ProblemFile {
    pub fn into_problem(self) -> Result<Problem> {
        let model = match self.kind {
            ProblemKind::Quasiperiodic => {
                let omega = self.omega.as_ref().ok_or_else(|| missing("omega", "quasiperiodic"))?;
                EigenvalueModel::quasiperiodic(omega)
            }
            ProblemKind::Autonomous => {
                let v = self.v.as_ref().ok_or_else(|| missing("v", "autonomous"))?;
                let nu = self.nu.as_ref().ok_or_else(|| missing("nu", "autonomous"))?;
                EigenvalueModel::new(
                    v.iter().map(complex).collect(),
                    nu.iter().map(|row| row.iter().map(complex).collect()).collect(),
                )?
            }
        }
        .with_resonance_tol(self.defaults.resonance_tol);
        if model.d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: model.d });
        }

        let tag = self.gkind.unwrap_or(match self.kind {
            ProblemKind::Quasiperiodic => GKindTag::Forced,
            ProblemKind::Autonomous => GKindTag::LinearProjector,
        });
        let gkind = match (self.kind, tag) {
            (ProblemKind::Autonomous, GKindTag::Forced) => {
                return Err(Error::Parse("autonomous problems need linear_projector or angle_shift".into()))
            }
            (_, GKindTag::Forced) => GKind::Forced,
            (_, GKindTag::AngleShift) => GKind::AngleShift,
            (_, GKindTag::LinearProjector) => {
                let projectors = self.projectors.as_ref().ok_or_else(|| missing("projectors", "linear_projector"))?;
                GKind::LinearProjector {
                    projectors: projectors
                        .iter()
                        .map(|m| m.iter().map(|row| row.iter().map(complex).collect()).collect())
                        .collect(),
                }
            }
        };

        let mut modes = BTreeMap::new();
        for entry in &self.modes {
            if entry.letter.len() != self.d {
                return Err(Error::DimensionMismatch { expected: self.d, got: entry.letter.len() });
            }
            if entry.components.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: entry.components.len() });
            }
            let mut comps = Vec::with_capacity(self.dim);
            for terms in &entry.components {
                let mut p = MultiPoly::zero(self.dim);
                for t in terms {
                    if t.exponents.len() != self.dim {
                        return Err(Error::DimensionMismatch { expected: self.dim, got: t.exponents.len() });
                    }
                    p.add_term(t.exponents.clone(), Complex64::new(t.re, t.im));
                }
                comps.push(p);
            }
            let letter = Letter::new(entry.letter.clone());
            if modes.insert(letter.clone(), PolyMap::new(comps)).is_some() {
                return Err(Error::Parse(format!("letter {letter} listed twice")));
            }
        }
        if self.defaults.order == 0 {
            return Err(Error::Parse("defaults.N must be at least 1".into()));
        }
        let spec = ProblemSpec::new(self.dim, model, modes, gkind)?;
        Ok(Problem { kind: self.kind, spec, defaults: self.defaults })
    }
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_problem()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }
}
