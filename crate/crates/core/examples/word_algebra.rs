//! Words, coefficient tables, the convolution product and the shuffle
//! relations that single out characters and infinitesimal characters.

use std::collections::BTreeSet;

use num_complex::Complex64;
use wordseries::words::{convolve, unit, words_up_to, CoefficientTable, Letter, MembershipMode, Word};

fn main() -> wordseries::Result<()> {
    let alphabet: BTreeSet<Letter> = [vec![-1], vec![0], vec![1]].into_iter().map(Letter::new).collect();
    let words = words_up_to(&alphabet, 2);
    println!("{} words of length <= 2, first few:", words.len());
    for w in words.iter().take(6) {
        println!("  {w}");
    }

    let w: Word = "1;-1;0".parse()?;
    println!("parsed {w}: length {}, letter sum {:?}", w.len(), w.letter_sum());

    // δ_w = t^{|w|}/|w|! for the letters-only family is a character.
    let t: f64 = 0.7;
    let mut char_table = CoefficientTable::zero(4, 1);
    for w in words_up_to(&alphabet, 4) {
        let n = w.len() as i32;
        let fact: f64 = (1..=n).map(f64::from).product();
        char_table.set(w, Complex64::new(t.powi(n) / fact, 0.0));
    }
    let report = char_table.membership(MembershipMode::Group, 1e-12);
    println!("letters-only exponential: group relations hold = {} (max {:.1e})", report.passed(), report.max_violation);

    let gen = CoefficientTable::letters_only(4, 1, &alphabet, Complex64::new(1.0, 0.0));
    let report = gen.membership(MembershipMode::Algebra, 1e-12);
    println!("letters-only generator: algebra relations hold = {}", report.passed());

    let product = convolve(&char_table, &unit(4, 1))?;
    println!("δ ⋆ 1 equals δ: {}", product.max_diff(&char_table) == 0.0);
    Ok(())
}
