use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use super::TrigTauPoly;
use crate::words::{words_up_to, CoefficientTable, EigenvalueModel, Letter, Word};
use crate::{Error, Result};

/// Universal coefficient functions `Γ_w(τ, θ; θ₀)` for every word of length
/// at most `order` over the support alphabet.
///
/// Words over sums of support letters that the recursion needed along the
/// way are kept too, but evaluation only reports words over the support.
#[derive(Clone, Debug)]
pub struct GammaTable {
    order: usize,
    omega: Vec<f64>,
    model: EigenvalueModel,
    support: BTreeSet<Letter>,
    words: Vec<Word>,
    entries: HashMap<Word, TrigTauPoly>,
}

/// Builds `Γ` by induction on word length with the default resonance
/// tolerance.
pub fn build_gamma(omega: &[f64], support: &BTreeSet<Letter>, order: usize) -> Result<GammaTable> {
    GammaTable::build(EigenvalueModel::quasiperiodic(omega), support, order)
}

impl GammaTable {
    /// `model` must be the quasiperiodic model (`nu = i·I`, `v = ω`); its
    /// resonance tolerance is honoured.
    pub fn build(model: EigenvalueModel, support: &BTreeSet<Letter>, order: usize) -> Result<Self> {
        let omega: Vec<f64> = model.v.iter().map(|z| z.re).collect();
        let d = omega.len();
        if let Some(l) = support.iter().find(|l| l.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: l.dim() });
        }
        let words = words_up_to(support, order);
        let mut builder = Builder { model: &model, omega: &omega, d, memo: HashMap::new() };
        for w in &words {
            builder.gamma(w)?;
        }
        Ok(GammaTable {
            order,
            entries: builder.memo,
            omega,
            model,
            support: support.clone(),
            words,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn d(&self) -> usize {
        self.omega.len()
    }

    pub fn model(&self) -> &EigenvalueModel {
        &self.model
    }

    pub fn support(&self) -> &BTreeSet<Letter> {
        &self.support
    }

    /// Words over the support, in word order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, w: &Word) -> Option<&TrigTauPoly> {
        self.entries.get(w)
    }

    /// Number of stored functions, auxiliary words included.
    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// `Γ(τ, θ; θ₀)` on the support words.
    pub fn eval(&self, tau: f64, theta: &[f64], theta0: &[f64]) -> CoefficientTable {
        let mut t = CoefficientTable::zero(self.order, self.d());
        for w in &self.words {
            t.set(w.clone(), self.entries[w].eval(tau, theta, theta0));
        }
        t
    }

    fn scaled_omega(&self, t: f64) -> Vec<f64> {
        self.omega.iter().map(|w| w * t).collect()
    }

    /// `α(t; t₀) = Γ(t − t₀, tω; t₀ω)`.
    pub fn eval_alpha(&self, t: f64, t0: f64) -> CoefficientTable {
        self.eval(t - t0, &self.scaled_omega(t), &self.scaled_omega(t0))
    }

    /// `ᾱ(t; t₀) = Γ(t − t₀, t₀ω; t₀ω)`.
    pub fn eval_alpha_bar(&self, t: f64, t0: f64) -> CoefficientTable {
        let th0 = self.scaled_omega(t0);
        self.eval(t - t0, &th0, &th0)
    }

    /// `κ(θ; t₀) = Γ(0, θ; t₀ω)`.
    pub fn kappa(&self, theta: &[f64], t0: f64) -> CoefficientTable {
        self.eval(0.0, theta, &self.scaled_omega(t0))
    }
}

pub fn eval_alpha(g: &GammaTable, t: f64, t0: f64) -> CoefficientTable {
    g.eval_alpha(t, t0)
}

pub fn eval_alpha_bar(g: &GammaTable, t: f64, t0: f64) -> CoefficientTable {
    g.eval_alpha_bar(t, t0)
}

pub fn kappa(g: &GammaTable, theta: &[f64], t0: f64) -> CoefficientTable {
    g.kappa(theta, t0)
}

struct Builder<'a> {
    model: &'a EigenvalueModel,
    omega: &'a [f64],
    d: usize,
    memo: HashMap<Word, TrigTauPoly>,
}

impl Builder<'_> {
    fn gamma(&mut self, w: &Word) -> Result<TrigTauPoly> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let value = self.compute(w)?;
        self.memo.insert(w.clone(), value.clone());
        Ok(value)
    }

    /// `i / (k·ω)` after screening `k` for resonance.
    fn factor(&self, k: &Letter) -> Result<Complex64> {
        self.model.divisor(k)?;
        Ok(Complex64::new(0.0, 1.0 / k.dot(self.omega)))
    }

    fn compute(&mut self, w: &Word) -> Result<TrigTauPoly> {
        let zero = Letter::zero(self.d);
        let n = w.len();
        if n == 0 {
            return Ok(TrigTauPoly::constant(Complex64::new(1.0, 0.0), self.d));
        }
        let r = w.leading_zeros();
        if r == n {
            let fact: f64 = (1..=n).map(|i| i as f64).product();
            return Ok(TrigTauPoly::monomial(
                Complex64::new(1.0 / fact, 0.0),
                n as u32,
                zero.clone(),
                zero,
            ));
        }
        let k = &w.letters()[r];
        let s = n - r - 1;
        let factor = self.factor(k)?;
        let value = match (r, s) {
            // (i/k·ω)(e^{ik·θ₀} − e^{ik·θ})
            (0, 0) => {
                let a = TrigTauPoly::monomial(Complex64::new(1.0, 0.0), 0, zero.clone(), k.clone());
                let b = TrigTauPoly::monomial(Complex64::new(1.0, 0.0), 0, k.clone(), zero);
                &a - &b
            }
            // (i/k·ω)(e^{ik·θ₀} Γ_{l₁⋯l_s} − Γ_{(k+l₁)l₂⋯l_s})
            (0, _) => {
                let rest = self.gamma(&w.tail(1))?.shift_theta0(k);
                let merged = self.gamma(&merge_at(w, 0))?;
                &rest - &merged
            }
            // (i/k·ω)(Γ_{0^{r−1}k} − Γ_{0^r} e^{ik·θ})
            (_, 0) => {
                let shorter = self.gamma(&w.tail(1))?;
                let zeros = self.gamma(&w.slice(0, r))?.shift_theta(k);
                &shorter - &zeros
            }
            // (i/k·ω)(Γ_{0^{r−1}k l₁⋯l_s} − Γ_{0^r (k+l₁) l₂⋯l_s})
            _ => {
                let shorter = self.gamma(&w.tail(1))?;
                let merged = self.gamma(&merge_at(w, r))?;
                &shorter - &merged
            }
        };
        Ok(value.scale(factor))
    }
}

/// Replaces letters `i` and `i+1` of `w` by their sum.
pub(crate) fn merge_at(w: &Word, i: usize) -> Word {
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len() - 1);
    out.extend_from_slice(&letters[..i]);
    out.push(&letters[i] + &letters[i + 1]);
    out.extend_from_slice(&letters[i + 2..]);
    Word::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn periodic_support() -> BTreeSet<Letter> {
        [vec![0], vec![1], vec![-1]].into_iter().map(Letter::new).collect()
    }

    fn w(ls: &[i64]) -> Word {
        Word::new(ls.iter().map(|&k| Letter::new(vec![k])).collect())
    }

    #[test]
    fn empty_word_is_one() {
        let g = build_gamma(&[1.0], &periodic_support(), 3).unwrap();
        let p = g.get(&Word::empty()).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.eval(0.7, &[0.2], &[1.1]), c(1.0, 0.0));
    }

    #[test]
    fn zero_words_are_tau_powers() {
        let g = build_gamma(&[1.0], &periodic_support(), 3).unwrap();
        let p = g.get(&w(&[0, 0])).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (pow, m, n, coeff) = p.terms().next().unwrap();
        assert_eq!(pow, 2);
        assert!(m.is_zero() && n.is_zero());
        assert_eq!(coeff, c(0.5, 0.0));
    }

    #[test]
    fn k_minus_k_closed_form() {
        // Word (−k)(k), k·ω = 1: iτ + 1 − e^{iθ}e^{−iθ₀}.
        // Word (k)(−k) is its mirror: −iτ + 1 − e^{−iθ}e^{iθ₀}.
        let g = build_gamma(&[1.0], &periodic_support(), 2).unwrap();
        let minus_plus = g.get(&w(&[-1, 1])).unwrap();
        let plus_minus = g.get(&w(&[1, -1])).unwrap();
        for &(tau, th, th0) in &[(0.3, 0.5, -0.2), (1.7, 2.0, 0.4), (-0.8, -1.0, 3.0)] {
            let expected = c(0.0, tau) + c(1.0, 0.0) - Complex64::from_polar(1.0, th - th0);
            assert!((minus_plus.eval(tau, &[th], &[th0]) - expected).norm() < 1e-14);
            let mirrored = c(0.0, -tau) + c(1.0, 0.0) - Complex64::from_polar(1.0, th0 - th);
            assert!((plus_minus.eval(tau, &[th], &[th0]) - mirrored).norm() < 1e-14);
        }
    }

    #[test]
    fn alpha_closed_forms() {
        let g = build_gamma(&[1.0], &periodic_support(), 2).unwrap();
        let a = g.eval_alpha(1.0, 0.0);
        assert!((a.get(&w(&[0])) - c(1.0, 0.0)).norm() < 1e-15);
        // α_k = i(1 − e^{i}) for k = 1, t = 1, t₀ = 0
        let expected = c(0.0, 1.0) * (c(1.0, 0.0) - Complex64::from_polar(1.0, 1.0));
        assert!((a.get(&w(&[1])) - expected).norm() < 1e-15);
        assert!((a.get(&w(&[0, 0])) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn initial_time_gives_unit() {
        let g = build_gamma(&[1.0], &periodic_support(), 3).unwrap();
        let a = g.eval_alpha(0.4, 0.4);
        assert!(a.max_diff(&crate::words::unit(3, 1)) < 1e-14);
        let ab = g.eval_alpha_bar(0.4, 0.4);
        assert!(ab.max_diff(&crate::words::unit(3, 1)) < 1e-14);
        let k = g.kappa(&[0.4], 0.4);
        assert!(k.max_diff(&crate::words::unit(3, 1)) < 1e-14);
    }

    #[test]
    fn kappa_single_letter() {
        // κ_k(θ; 0) = i(1 − e^{ikθ})/k for ω = 1
        let support: BTreeSet<Letter> = [vec![2]].into_iter().map(Letter::new).collect();
        let g = build_gamma(&[1.0], &support, 1).unwrap();
        let theta = 0.9;
        let kap = g.kappa(&[theta], 0.0);
        let expected = c(0.0, 0.5) * (c(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * theta));
        assert!((kap.get(&w(&[2])) - expected).norm() < 1e-15);
    }

    #[test]
    fn kappa_is_periodic() {
        let support: BTreeSet<Letter> = [vec![0, 0], vec![1, 0], vec![0, -1], vec![1, 1]]
            .into_iter()
            .map(Letter::new)
            .collect();
        let g = build_gamma(&[1.0, 2f64.sqrt()], &support, 3).unwrap();
        let theta = [0.3, -0.8];
        let a = g.kappa(&theta, 0.2);
        for j in 0..2 {
            let mut shifted = theta;
            shifted[j] += 2.0 * std::f64::consts::PI;
            assert!(g.kappa(&shifted, 0.2).max_diff(&a) < 1e-13);
        }
    }

    #[test]
    fn periodic_alpha_bar_matches_alpha_at_periods() {
        let g = build_gamma(&[1.0], &periodic_support(), 3).unwrap();
        let t0 = 0.3;
        let t = t0 + 2.0 * std::f64::consts::PI;
        assert!(g.eval_alpha_bar(t, t0).max_diff(&g.eval_alpha(t, t0)) < 1e-12);
    }

    #[test]
    fn resonant_frequencies_rejected() {
        let support: BTreeSet<Letter> = [vec![1, 0], vec![0, -1]].into_iter().map(Letter::new).collect();
        let err = build_gamma(&[1.0, 1.0], &support, 2).unwrap_err();
        match err {
            Error::Resonance { letter, .. } => assert_eq!(letter, Letter::new(vec![1, -1])),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn merge_replaces_pair() {
        assert_eq!(merge_at(&w(&[0, 1, 2, 3]), 1), w(&[0, 3, 3]));
    }
}
