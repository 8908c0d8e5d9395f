use std::cmp::Ordering;
use std::collections::HashMap;

use num_complex::Complex64;

use super::{Field, ProblemSpec};
use crate::words::{words_up_to, CoefficientTable, Letter, MembershipMode, Word};
use crate::{Error, Result};

/// Shuffle tolerance for inputs that must be Lie-algebra elements.
const ALGEBRA_TOL: f64 = 1e-10;

/// `f_w` for a single word: `f_∅ = id`, `f_{ℓ₁⋯ℓₙ} = f'_{ℓ₂⋯ℓₙ} f_{ℓ₁}`.
pub fn word_basis(spec: &ProblemSpec, w: &Word) -> Result<Field> {
    match w.first() {
        None => Ok(Field::identity(spec.dim(), spec.phase_dim())),
        Some(first) => {
            let head = spec.mode_field(first)?;
            Ok(word_basis(spec, &w.tail(1))?.jacobian_times(&head))
        }
    }
}

/// All word basis functions up to a given length over the support of a
/// problem, built once and shared by every evaluation.
#[derive(Clone, Debug)]
pub struct WordBasis {
    dim: usize,
    phase_dim: usize,
    order: usize,
    fields: HashMap<Word, Field>,
    modes: HashMap<Letter, Field>,
}

impl WordBasis {
    pub fn new(spec: &ProblemSpec, order: usize) -> Result<Self> {
        let modes: HashMap<Letter, Field> = spec
            .modes()
            .keys()
            .map(|l| Ok((l.clone(), spec.mode_field(l)?)))
            .collect::<Result<_>>()?;
        let mut fields = HashMap::new();
        fields.insert(Word::empty(), Field::identity(spec.dim(), spec.phase_dim()));
        // Word order puts every suffix before the word itself.
        for w in words_up_to(&spec.support(), order).into_iter().skip(1) {
            let head = &modes[w.first().unwrap()];
            let f = fields[&w.tail(1)].jacobian_times(head);
            fields.insert(w, f);
        }
        Ok(WordBasis { dim: spec.dim(), phase_dim: spec.phase_dim(), order, fields, modes })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, w: &Word) -> Option<&Field> {
        self.fields.get(w)
    }

    pub fn mode(&self, l: &Letter) -> Option<&Field> {
        self.modes.get(l)
    }

    fn zero(&self) -> Field {
        Field::zero(self.dim, self.phase_dim)
    }

    fn lookup(&self, w: &Word) -> Result<&Field> {
        if w.len() > self.order {
            return Err(Error::WordTooLong(w.len(), self.order));
        }
        self.fields.get(w).ok_or_else(|| {
            let l = w.letters().iter().find(|l| !self.modes.contains_key(*l)).cloned();
            Error::UnknownLetter(l.unwrap_or_else(|| w.letters()[0].clone()))
        })
    }

    /// `[Σ_{|w|=n} t_w f_w for n in 0..=order]`.
    pub fn graded(&self, t: &CoefficientTable) -> Result<Vec<Field>> {
        let order = t.order().min(self.order);
        let mut out = vec![self.zero(); order + 1];
        for (w, c) in t.iter() {
            if w.len() <= order {
                out[w.len()] = &out[w.len()] + &self.lookup(w)?.scale(*c);
            }
        }
        Ok(out)
    }

    /// `W_t` with words of length `n` weighted by `ε^n`, as one field.
    pub fn series_field(&self, t: &CoefficientTable, eps: f64) -> Result<Field> {
        Ok(collapse(&self.graded(t)?, eps))
    }

    pub fn eval_series(&self, t: &CoefficientTable, eps: f64, y: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::default(); self.dim];
        for (w, c) in t.iter() {
            if w.len() > self.order.min(t.order()) {
                continue;
            }
            let weight = c * eps.powi(w.len() as i32);
            for (o, v) in out.iter_mut().zip(self.lookup(w)?.eval(y)) {
                *o += weight * v;
            }
        }
        Ok(out)
    }

    /// Left-normed bracket `[[⋯[f_{ℓ₁}, f_{ℓ₂}], ⋯], f_{ℓ_r}]`.
    pub fn left_bracket(&self, w: &Word) -> Result<Field> {
        let mut letters = w.letters().iter();
        let Some(first) = letters.next() else {
            return Ok(self.zero());
        };
        let get = |l: &Letter| self.modes.get(l).ok_or_else(|| Error::UnknownLetter(l.clone()));
        let mut acc = get(first)?.clone();
        for l in letters {
            acc = acc.bracket(get(l)?);
        }
        Ok(acc)
    }

    /// The same series rewritten through iterated brackets, graded by word
    /// length: `Σ_{|w|=r} (b_w / r) [[⋯[f_{ℓ₁}, f_{ℓ₂}], ⋯], f_{ℓ_r}]`.
    /// Valid only for Lie-algebra elements.
    pub fn dsw_graded(&self, b: &CoefficientTable) -> Result<Vec<Field>> {
        let report = b.membership(MembershipMode::Algebra, ALGEBRA_TOL);
        if !report.passed() {
            let (w1, w2) = report.first_violation.unwrap();
            return Err(Error::NotInLieAlgebra(format!("relation for ({w1}, {w2}) off by {:e}", report.max_violation)));
        }
        let order = b.order().min(self.order);
        let mut out = vec![self.zero(); order + 1];
        let mut cache: HashMap<Word, Field> = HashMap::new();
        for (w, c) in b.iter() {
            let r = w.len();
            if r == 0 || r > order {
                continue;
            }
            let br = match cache.get(w) {
                Some(f) => f.clone(),
                None => {
                    let f = match r {
                        1 => self.left_bracket(w)?,
                        _ => {
                            let prefix = w.prefix();
                            let head = match cache.get(&prefix) {
                                Some(f) => f.clone(),
                                None => self.left_bracket(&prefix)?,
                            };
                            let last = w.last().unwrap();
                            head.bracket(self.modes.get(last).ok_or_else(|| Error::UnknownLetter(last.clone()))?)
                        }
                    };
                    cache.insert(w.clone(), f.clone());
                    f
                }
            };
            out[r] = &out[r] + &br.scale(c / r as f64);
        }
        Ok(out)
    }

    pub fn dsw_bracket_series(&self, b: &CoefficientTable, eps: f64, y: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(collapse(&self.dsw_graded(b)?, eps).eval(y))
    }
}

/// `Σ ε^n F_n`.
pub fn collapse(graded: &[Field], eps: f64) -> Field {
    let mut iter = graded.iter().enumerate();
    let (_, first) = iter.next().expect("at least the constant grade");
    iter.fold(first.clone(), |acc, (n, f)| &acc + &f.scale(Complex64::new(eps.powi(n as i32), 0.0)))
}

/// Point evaluation of `Σ ε^{|w|} t_w f_w(y)`; builds the basis on the fly.
pub fn eval_series(spec: &ProblemSpec, t: &CoefficientTable, eps: f64, y: &[Complex64]) -> Result<Vec<Complex64>> {
    WordBasis::new(spec, t.order())?.eval_series(t, eps, y)
}

pub fn lie_bracket(f: &Field, g: &Field) -> Result<Field> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: g.dim() });
    }
    Ok(f.bracket(g))
}

pub fn dsw_bracket_series(spec: &ProblemSpec, b: &CoefficientTable, eps: f64, y: &[Complex64]) -> Result<Vec<Complex64>> {
    WordBasis::new(spec, b.order())?.dsw_bracket_series(b, eps, y)
}

/// Reference second- and third-order averaged fields, written directly as
/// bracket sums (initial time zero), for forced quasiperiodic problems.
///
/// Sums run over the letters whose modes are present and their negatives;
/// terms involving an absent mode vanish.
pub fn f2_f3_reference(spec: &ProblemSpec) -> Result<(Field, Field)> {
    let model = spec.model();
    let omega: Vec<f64> = model.v.iter().map(|z| z.re).collect();
    let d = spec.d();
    let zero_letter = Letter::zero(d);
    let zero_field = Field::zero(spec.dim(), spec.phase_dim());
    let f = |k: &Letter| -> Field { spec.mode_field(k).unwrap_or_else(|_| zero_field.clone()) };
    let present = |k: &Letter| spec.modes().contains_key(k);
    let freq = |k: &Letter| -> Result<f64> {
        model.divisor(k)?;
        Ok(k.dot(&omega))
    };
    let gt = |a: &Letter, b: &Letter| a.graded_cmp(b) == Ordering::Greater;
    let lt = |a: &Letter, b: &Letter| a.graded_cmp(b) == Ordering::Less;

    let mut candidates: Vec<Letter> = spec
        .modes()
        .keys()
        .flat_map(|k| [k.clone(), k.neg()])
        .filter(|k| !k.is_zero())
        .collect();
    candidates.sort_by(|a, b| a.graded_cmp(b));
    candidates.dedup();
    let i = Complex64::i();
    let f0 = f(&zero_letter);

    let mut f2 = zero_field.clone();
    for k in &candidates {
        let mk = k.neg();
        if !gt(k, &mk) || !(present(k) || present(&mk)) {
            continue;
        }
        let c = i / freq(k)?;
        let term = &(&f(k) - &f(&mk)).bracket(&f0) + &f(&mk).bracket(&f(k));
        f2 = &f2 + &term.scale(c);
    }

    let mut f3 = zero_field.clone();
    for k in candidates.iter().filter(|k| present(k)) {
        let (fk, fmk) = (f(k), f(&k.neg()));
        let w = freq(k)?;
        let mut inner = f0.bracket(&f0.bracket(&fk));
        inner = &inner + &fk.bracket(&fk.bracket(&fmk));
        inner = &inner - &fk.bracket(&fk.bracket(&f(&k.scaled(-2)))).scale(Complex64::new(0.5, 0.0));
        inner = &inner + &fmk.bracket(&fk.bracket(&f0));
        f3 = &f3 + &inner.scale(Complex64::new(1.0 / (w * w), 0.0));
    }
    for m in &candidates {
        for l in &candidates {
            let ml = m + l;
            // 0 ≠ m ≠ −l ≠ 0
            if !ml.is_zero() && present(m) && present(l) {
                let c = -1.0 / (freq(l)? * freq(&ml)?);
                f3 = &f3 + &f(m).bracket(&f(l).bracket(&f0)).scale(Complex64::new(c, 0.0));
            }
        }
    }
    for k in &candidates {
        for l in &candidates {
            // −l > k < l
            if gt(&l.neg(), k) && lt(k, l) && present(k) && present(l) && present(&l.neg()) {
                let c = 1.0 / (freq(k)? * freq(l)?);
                f3 = &f3 + &f(&l.neg()).bracket(&f(l).bracket(&f(k))).scale(Complex64::new(c, 0.0));
            }
        }
    }
    let mut with_zero = candidates.clone();
    with_zero.push(zero_letter.clone());
    for m in &with_zero {
        for k in &candidates {
            // m > k < −k, m + k ≠ 0
            if gt(m, k) && lt(k, &k.neg()) && !(m + k).is_zero() && present(m) && present(k) && present(&k.neg()) {
                let c = -1.0 / (freq(k)? * freq(m)?);
                f3 = &f3 + &f(m).bracket(&f(&k.neg()).bracket(&f(k))).scale(Complex64::new(c, 0.0));
            }
        }
    }
    for m in &candidates {
        for l in &candidates {
            let n = (m + l).neg();
            // 0 ≠ m ≠ ±l ≠ 0, m > −m−l < l
            if *m != *l && *m != l.neg() && gt(m, &n) && lt(&n, l) && present(m) && present(l) && present(&n) {
                let c = -1.0 / (freq(m)? * freq(&(m + l))?);
                f3 = &f3 + &f(m).bracket(&f(l).bracket(&f(&n))).scale(Complex64::new(c, 0.0));
            }
        }
    }
    Ok((f2, f3))
}
