//! Letters, words and the shuffle/convolution algebra of coefficient families.
//!
//! A letter is an integer multi-index in `Z^d`; letters form an additive
//! monoid with neutral element `0`. Words are finite sequences of letters and
//! index both the word basis functions of a problem and the universal
//! coefficients attached to them.

mod extended;
mod index;
mod model;
mod shuffle;
mod table;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

pub use extended::{ext_product, xi_shift, ExtendedElement};
pub use index::WordIndex;
pub use model::EigenvalueModel;
pub use shuffle::{shuffle, FormalWordSum};
pub use table::{convolve, unit, CoefficientTable, MembershipMode, MembershipReport};

pub use num_complex::Complex64;

/// An integer multi-index `k ∈ Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Vec<i64>);

impl Letter {
    pub fn new(components: Vec<i64>) -> Self {
        Letter(components)
    }

    pub fn zero(d: usize) -> Self {
        Letter(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    /// `k · x` for a real vector `x`.
    pub fn dot(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&k, &xi)| k as f64 * xi).sum()
    }

    /// `k · x` for a complex vector `x`.
    pub fn dot_complex(&self, x: &[Complex64]) -> Complex64 {
        self.0.iter().zip(x).map(|(&k, &xi)| xi * k as f64).sum()
    }

    pub fn neg(&self) -> Letter {
        Letter(self.0.iter().map(|c| -c).collect())
    }

    pub fn scaled(&self, s: i64) -> Letter {
        Letter(self.0.iter().map(|c| c * s).collect())
    }

    /// Total order on multi-indices: by `‖k‖₁`, then lexicographically.
    /// The zero letter is the unique minimum.
    pub fn graded_cmp(&self, other: &Letter) -> Ordering {
        self.l1_norm()
            .cmp(&other.l1_norm())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Add for &Letter {
    type Output = Letter;

    fn add(self, rhs: &Letter) -> Letter {
        debug_assert_eq!(self.dim(), rhs.dim());
        Letter(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<i64>> for Letter {
    fn from(v: Vec<i64>) -> Self {
        Letter(v)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite, possibly empty, sequence of letters.
///
/// Words are ordered by length first and then lexicographically by letters,
/// which is the row order used for every exported table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<&Letter> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Letter> {
        self.0.last()
    }

    /// Word without its last letter.
    pub fn prefix(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn tail(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// `ℓ₁ + ⋯ + ℓₙ`, or `None` for the empty word.
    pub fn letter_sum(&self) -> Option<Letter> {
        let mut it = self.0.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, l| &acc + l))
    }

    /// Number of leading zero letters.
    pub fn leading_zeros(&self) -> usize {
        self.0.iter().take_while(|l| l.is_zero()).count()
    }

    pub fn from_components(letters: &[&[i64]]) -> Self {
        Word(letters.iter().map(|l| Letter(l.to_vec())).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Letters joined by `;`, components by `,`; the empty word is `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(';')
            .map(|l| {
                l.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map_err(|e| crate::Error::Parse(format!("letter `{l}`: {e}")))
                    })
                    .collect::<crate::Result<Vec<_>>>()
                    .map(Letter)
            })
            .collect::<crate::Result<Vec<_>>>()
            .map(Word)
    }
}

/// All words over `alphabet` with length at most `max_len`, in word order.
pub fn words_up_to(alphabet: &BTreeSet<Letter>, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for l in alphabet {
                let mut w2 = w.clone();
                w2.push(l.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// All words over `alphabet` of length exactly `len`.
pub fn words_of_len(alphabet: &BTreeSet<Letter>, len: usize) -> Vec<Word> {
    words_up_to(alphabet, len)
        .into_iter()
        .filter(|w| w.len() == len)
        .collect()
}

/// Nonzero sums of between 1 and `max_terms` letters drawn (with repetition)
/// from `support`. These are exactly the letters that can occur as contiguous
/// sub-sums of words of length `max_terms`.
pub fn letter_sums(support: &BTreeSet<Letter>, max_terms: usize) -> BTreeSet<Letter> {
    let mut all = BTreeSet::new();
    let mut layer: BTreeSet<Letter> = support.clone();
    for _ in 0..max_terms {
        all.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for a in &layer {
            for b in support {
                next.insert(a + b);
            }
        }
        layer = next;
    }
    all.retain(|l| !l.is_zero());
    all
}
