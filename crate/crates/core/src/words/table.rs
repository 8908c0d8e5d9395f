use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{shuffle, words_up_to, Letter, Word};
use crate::{Error, Result};

/// Truncated element of `C^W`: a sparse map from words of length at most
/// `order` to complex values. Absent words are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    order: usize,
    d: usize,
    entries: BTreeMap<Word, Complex64>,
}

impl CoefficientTable {
    pub fn zero(order: usize, d: usize) -> Self {
        CoefficientTable { order, d, entries: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, w: &Word) -> Complex64 {
        self.entries.get(w).copied().unwrap_or_default()
    }

    /// Stores `value` at `w`; zero values and words longer than the order are
    /// dropped.
    pub fn set(&mut self, w: Word, value: Complex64) {
        if w.len() > self.order {
            return;
        }
        debug_assert!(w.letters().iter().all(|l| l.dim() == self.d));
        if value == Complex64::default() {
            self.entries.remove(&w);
        } else {
            self.entries.insert(w, value);
        }
    }

    pub fn add_to(&mut self, w: Word, value: Complex64) {
        let v = self.get(&w) + value;
        self.set(w, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Letters that occur in some stored word.
    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.entries
            .keys()
            .flat_map(|w| w.letters().iter().cloned())
            .collect()
    }

    /// Letters-only table: `value` at every single letter of `letters`.
    pub fn letters_only(order: usize, d: usize, letters: &BTreeSet<Letter>, value: Complex64) -> Self {
        let mut t = CoefficientTable::zero(order, d);
        for l in letters {
            t.set(Word::single(l.clone()), value);
        }
        t
    }

    pub fn map_values(&self, mut f: impl FnMut(&Word, Complex64) -> Complex64) -> Self {
        let mut out = CoefficientTable::zero(self.order, self.d);
        for (w, v) in &self.entries {
            out.set(w.clone(), f(w, *v));
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_values(|_, v| v * s)
    }

    pub fn add(&self, other: &CoefficientTable) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, v) in &other.entries {
            out.add_to(w.clone(), *v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CoefficientTable) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest `|a_w − b_w|` over all words.
    pub fn max_diff(&self, other: &CoefficientTable) -> f64 {
        let words: BTreeSet<&Word> = self.entries.keys().chain(other.entries.keys()).collect();
        words
            .into_iter()
            .map(|w| (self.get(w) - other.get(w)).norm())
            .fold(0.0, f64::max)
    }

    /// Entries with words of length at most `order`, re-labelled with that order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut out = CoefficientTable::zero(order, self.d);
        for (w, v) in &self.entries {
            out.set(w.clone(), *v);
        }
        out
    }

    fn check_compatible(&self, other: &CoefficientTable) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.d != other.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: other.d });
        }
        Ok(())
    }

    /// Group-mode (`mode = Group`) or algebra-mode shuffle relations over
    /// every pair of words on the table's alphabet with total length at most
    /// the order.
    pub fn membership(&self, mode: MembershipMode, tol: f64) -> MembershipReport {
        self.membership_up_to(mode, tol, self.order)
    }

    /// As [`membership`](Self::membership), restricted to pairs of total
    /// length at most `max_total`.
    pub fn membership_up_to(&self, mode: MembershipMode, tol: f64, max_total: usize) -> MembershipReport {
        let max_total = max_total.min(self.order);
        let empty_value = self.get(&Word::empty());
        let expected_empty = match mode {
            MembershipMode::Group => Complex64::new(1.0, 0.0),
            MembershipMode::Algebra => Complex64::default(),
        };
        let mut report = MembershipReport {
            mode,
            tol,
            max_violation: (empty_value - expected_empty).norm(),
            first_violation: None,
            pairs_checked: 0,
        };
        if report.max_violation > tol {
            report.first_violation = Some((Word::empty(), Word::empty()));
        }
        let alphabet = self.alphabet();
        if max_total < 2 || alphabet.is_empty() {
            return report;
        }
        let words: Vec<Word> = words_up_to(&alphabet, max_total - 1)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        for (i, w) in words.iter().enumerate() {
            for w2 in &words[i..] {
                if w.len() + w2.len() > max_total {
                    // words are sorted by length; nothing further fits
                    break;
                }
                let sum: Complex64 = shuffle(w, w2)
                    .iter()
                    .map(|(wj, &mult)| self.get(wj) * mult as f64)
                    .sum();
                let violation = match mode {
                    MembershipMode::Group => (self.get(w) * self.get(w2) - sum).norm(),
                    MembershipMode::Algebra => sum.norm(),
                };
                report.pairs_checked += 1;
                if violation > report.max_violation {
                    report.max_violation = violation;
                }
                if violation > tol && report.first_violation.is_none() {
                    report.first_violation = Some((w.clone(), w2.clone()));
                }
            }
        }
        report
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipMode {
    /// Characters: `t_∅ = 1`, `t_w t_w' = Σ t_{w_j}`.
    Group,
    /// Infinitesimal characters: `t_∅ = 0`, `Σ t_{w_j} = 0` for nonempty pairs.
    Algebra,
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub mode: MembershipMode,
    pub tol: f64,
    pub max_violation: f64,
    /// First pair whose relation fails; `(∅, ∅)` flags the empty-word value.
    pub first_violation: Option<(Word, Word)>,
    pub pairs_checked: usize,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// The unit `1 1` of the convolution product.
pub fn unit(order: usize, d: usize) -> CoefficientTable {
    let mut t = CoefficientTable::zero(order, d);
    t.set(Word::empty(), Complex64::new(1.0, 0.0));
    t
}

/// Convolution product: `(a⋆b)_w = Σ a_prefix · b_suffix` over all
/// deconcatenations of `w`.
pub fn convolve(a: &CoefficientTable, b: &CoefficientTable) -> Result<CoefficientTable> {
    a.check_compatible(b)?;
    let mut out = CoefficientTable::zero(a.order, a.d);
    for (wa, va) in &a.entries {
        for (wb, vb) in &b.entries {
            if wa.len() + wb.len() <= a.order {
                out.add_to(wa.concat(wb), va * vb);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn l(k: i64) -> Letter {
        Letter::new(vec![k])
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_table(rng: &mut ChaCha8Rng, order: usize, empty: Option<Complex64>) -> CoefficientTable {
        let alphabet: BTreeSet<Letter> = [l(0), l(1), l(-1)].into_iter().collect();
        let mut t = CoefficientTable::zero(order, 1);
        for w in words_up_to(&alphabet, order) {
            t.set(w, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        if let Some(e) = empty {
            t.set(Word::empty(), e);
        }
        t
    }

    #[test]
    fn unit_values() {
        let u = unit(4, 1);
        assert_eq!(u.get(&Word::empty()), c(1.0, 0.0));
        assert_eq!(u.get(&Word::single(l(1))), c(0.0, 0.0));
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn unit_is_two_sided() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = random_table(&mut rng, 4, None);
        let u = unit(4, 1);
        assert!(convolve(&d, &u).unwrap().max_diff(&d) < 1e-15);
        assert!(convolve(&u, &d).unwrap().max_diff(&d) < 1e-15);
    }

    #[test]
    fn two_letter_splitting() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_table(&mut rng, 3, None);
        let b = random_table(&mut rng, 3, None);
        let p = convolve(&a, &b).unwrap();
        let (w1, w2) = (Word::single(l(1)), Word::single(l(-1)));
        let w = w1.concat(&w2);
        let e = Word::empty();
        let expected = a.get(&e) * b.get(&w) + a.get(&w1) * b.get(&w2) + a.get(&w) * b.get(&e);
        assert!((p.get(&w) - expected).norm() < 1e-15);
    }

    #[test]
    fn vanishing_empty_entries_kill_short_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_table(&mut rng, 4, Some(c(0.0, 0.0)));
        let b = random_table(&mut rng, 4, Some(c(0.0, 0.0)));
        let p = convolve(&a, &b).unwrap();
        assert!(p.iter().all(|(w, _)| w.len() >= 2));
    }

    #[test]
    fn associativity_on_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_table(&mut rng, 5, None);
        let b = random_table(&mut rng, 5, None);
        let cc = random_table(&mut rng, 5, None);
        let left = convolve(&convolve(&a, &b).unwrap(), &cc).unwrap();
        let right = convolve(&a, &convolve(&b, &cc).unwrap()).unwrap();
        assert!(left.max_diff(&right) < 1e-12);
    }

    #[test]
    fn mismatched_orders_rejected() {
        assert!(matches!(convolve(&unit(3, 1), &unit(4, 1)), Err(Error::OrderMismatch(3, 4))));
        assert!(convolve(&unit(3, 1), &unit(3, 2)).is_err());
    }

    #[test]
    fn unit_is_a_character() {
        assert!(unit(4, 1).membership(MembershipMode::Group, 1e-12).passed());
    }

    #[test]
    fn single_letter_table_is_infinitesimal_character() {
        let letters: BTreeSet<Letter> = [l(1), l(2)].into_iter().collect();
        let t = CoefficientTable::letters_only(3, 1, &letters, c(1.0, 0.0));
        assert!(t.membership(MembershipMode::Algebra, 1e-14).passed());
        // a symmetric 2-letter value violates t_ab + t_ba = 0
        let mut bad = t.clone();
        bad.set(Word::new(vec![l(1), l(2)]), c(1.0, 0.0));
        let r = bad.membership(MembershipMode::Algebra, 1e-14);
        assert!(!r.passed());
        assert!((r.max_violation - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_of_letter_is_a_character() {
        // t_w = x^n / n! for w = a^n is the character exp(x a).
        let a = l(1);
        let mut t = unit(5, 1);
        let mut w = Word::empty();
        let x = c(0.3, -0.7);
        let mut fact = 1.0;
        let mut pow = c(1.0, 0.0);
        for n in 1..=5 {
            w.push(a.clone());
            fact *= n as f64;
            pow *= x;
            t.set(w.clone(), pow / fact);
        }
        assert!(t.membership(MembershipMode::Group, 1e-14).passed());
    }
}
