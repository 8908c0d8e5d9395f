use std::collections::BTreeMap;

use super::{Letter, Word};

/// A formal sum of words with positive integer multiplicities.
pub type FormalWordSum = BTreeMap<Word, u64>;

/// Shuffle product `w ⧢ w2`: every interleaving of the two words that keeps
/// the internal order of each, counted with multiplicity.
pub fn shuffle(w: &Word, w2: &Word) -> FormalWordSum {
    let mut out = FormalWordSum::new();
    let mut buf = Vec::with_capacity(w.len() + w2.len());
    interleave(w.letters(), w2.letters(), &mut buf, &mut out);
    out
}

fn interleave(a: &[Letter], b: &[Letter], buf: &mut Vec<Letter>, out: &mut FormalWordSum) {
    if a.is_empty() || b.is_empty() {
        let mut letters = buf.clone();
        letters.extend_from_slice(a);
        letters.extend_from_slice(b);
        *out.entry(Word::new(letters)).or_insert(0) += 1;
        return;
    }
    buf.push(a[0].clone());
    interleave(&a[1..], b, buf, out);
    buf.pop();
    buf.push(b[0].clone());
    interleave(a, &b[1..], buf, out);
    buf.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(k: i64) -> Letter {
        Letter::new(vec![k])
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn two_by_one() {
        let (a, b, c) = (l(1), l(2), l(3));
        let s = shuffle(&Word::new(vec![a.clone(), b.clone()]), &Word::single(c.clone()));
        let expected: FormalWordSum = [
            (Word::new(vec![a.clone(), b.clone(), c.clone()]), 1),
            (Word::new(vec![a.clone(), c.clone(), b.clone()]), 1),
            (Word::new(vec![c, a, b]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn empty_is_identity() {
        let w = Word::new(vec![l(1), l(-1)]);
        let s = shuffle(&Word::empty(), &w);
        assert_eq!(s.len(), 1);
        assert_eq!(s[&w], 1);
    }

    #[test]
    fn repeated_letter() {
        let s = shuffle(&Word::single(l(5)), &Word::single(l(5)));
        assert_eq!(s.len(), 1);
        assert_eq!(s[&Word::new(vec![l(5), l(5)])], 2);
    }

    proptest! {
        #[test]
        fn multiplicity_is_binomial(
            a in proptest::collection::vec(-2i64..=2, 0..=4),
            b in proptest::collection::vec(-2i64..=2, 0..=4),
        ) {
            let wa = Word::new(a.iter().map(|&k| l(k)).collect());
            let wb = Word::new(b.iter().map(|&k| l(k)).collect());
            let total: u64 = shuffle(&wa, &wb).values().sum();
            let n = (a.len() + b.len()) as u64;
            prop_assert_eq!(total, binomial(n, a.len() as u64));
        }
    }
}
