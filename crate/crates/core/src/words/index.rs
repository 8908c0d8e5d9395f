use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use super::{words_up_to, CoefficientTable, Letter, Word};

/// Dense numbering of all words up to a given length over a fixed alphabet,
/// for solvers that advance whole tables at once.
///
/// Words are numbered in word order, so every proper prefix of a word has a
/// smaller index than the word itself.
#[derive(Clone, Debug)]
pub struct WordIndex {
    order: usize,
    d: usize,
    letters: Vec<Letter>,
    words: Vec<Word>,
    position: HashMap<Word, usize>,
    /// `(prefix, last letter)` for every nonempty word.
    parent: Vec<Option<(usize, usize)>>,
}

impl WordIndex {
    pub fn new(alphabet: &BTreeSet<Letter>, order: usize, d: usize) -> Self {
        let letters: Vec<Letter> = alphabet.iter().cloned().collect();
        let words = words_up_to(alphabet, order);
        let position: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let parent = words
            .iter()
            .map(|w| {
                let last = w.last()?;
                let li = letters.iter().position(|l| l == last).expect("alphabet letter");
                Some((position[&w.prefix()], li))
            })
            .collect();
        WordIndex { order, d, letters, words, position, parent }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.position.get(w).copied()
    }

    /// Prefix index and last-letter index of word `i`; `None` for the empty word.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Pairs `(prefix, suffix)` of indices for every deconcatenation of word
    /// `i` with a nonempty suffix.
    pub fn splits(&self, i: usize) -> Vec<(usize, usize)> {
        let w = &self.words[i];
        (0..w.len())
            .map(|cut| (self.position[&w.slice(0, cut)], self.position[&w.tail(cut)]))
            .collect()
    }

    pub fn gather(&self, t: &CoefficientTable) -> Vec<Complex64> {
        self.words.iter().map(|w| t.get(w)).collect()
    }

    pub fn scatter(&self, values: &[Complex64]) -> CoefficientTable {
        let mut t = CoefficientTable::zero(self.order, self.d);
        for (w, v) in self.words.iter().zip(values) {
            t.set(w.clone(), *v);
        }
        t
    }
}
