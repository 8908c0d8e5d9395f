//! Word basis functions of a forced problem, truncated word series and the
//! closed-form second- and third-order averaged fields.

use std::collections::BTreeMap;

use num_complex::Complex64;
use wordseries::polyfield::{f2_f3_reference, MultiPoly, PolyMap, ProblemSpec, WordBasis};
use wordseries::quasiperiodic::{beta_bar, build_gamma};
use wordseries::words::Word;

fn main() -> wordseries::Result<()> {
    let c = Complex64::new;
    // y' = ε (y² sin t + y/4)
    let y2 = MultiPoly::monomial(1, vec![2], c(1.0, 0.0));
    let mut modes = BTreeMap::new();
    modes.insert("1".parse::<Word>()?.letters()[0].clone(), PolyMap::new(vec![y2.scale(c(0.0, -0.5))]));
    modes.insert("-1".parse::<Word>()?.letters()[0].clone(), PolyMap::new(vec![y2.scale(c(0.0, 0.5))]));
    modes.insert("0".parse::<Word>()?.letters()[0].clone(), PolyMap::new(vec![MultiPoly::var(1, 0).scale(c(0.25, 0.0))]));
    let spec = ProblemSpec::forced(&[1.0], modes)?;

    let basis = WordBasis::new(&spec, 3)?;
    for w in ["1", "1;-1", "0;1;-1"] {
        let w: Word = w.parse()?;
        println!("f_{w}(0.3) = {:.6}", basis.get(&w).expect("tabulated").eval(&[c(0.3, 0.0)])[0]);
    }

    let support = spec.support();
    let alpha = build_gamma(&[1.0], &support, 3)?.eval_alpha(1.0, 0.0);
    let y = basis.eval_series(&alpha, 0.05, &[c(0.3, 0.0)])?;
    println!("W_α(y0) at ε = 0.05: {:.8}", y[0]);

    let beta = beta_bar(&[1.0], &support, 3, 0.0)?;
    let graded = basis.graded(&beta)?;
    let (f2, f3) = f2_f3_reference(&spec)?;
    println!("grade-2 averaged field vs closed form: {:.1e}", (&graded[2] - &f2).max_abs_coeff());
    println!("grade-3 averaged field vs closed form: {:.1e}", (&graded[3] - &f3).max_abs_coeff());
    Ok(())
}
