//! Error of the averaged representation `y(t) = W_κ(Y(t))` against a
//! fine-step solution on `[0, 1/ε]`, and its fitted order in `ε`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use wordseries::oracle::{scaling_harness, Horizon, AVERAGING_REPRESENTATION, SOLUTION_REPRESENTATION};
use wordseries::polyfield::{MultiPoly, PolyMap, ProblemSpec};
use wordseries::words::Letter;

fn main() -> wordseries::Result<()> {
    let c = Complex64::new;
    let y2 = MultiPoly::monomial(1, vec![2], c(1.0, 0.0));
    let mut modes = BTreeMap::new();
    modes.insert(Letter::new(vec![1]), PolyMap::new(vec![y2.scale(c(0.0, -0.5))]));
    modes.insert(Letter::new(vec![-1]), PolyMap::new(vec![y2.scale(c(0.0, 0.5))]));
    modes.insert(Letter::new(vec![0]), PolyMap::new(vec![MultiPoly::var(1, 0).scale(c(0.25, 0.0))]));
    let spec = ProblemSpec::forced(&[1.0], modes)?;

    // cargo run --example averaging_order -- 0.08 0.04 0.02
    let mut eps: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric eps")).collect();
    if eps.is_empty() {
        eps = vec![0.04, 0.02, 0.01];
    }
    for order in 1..=4 {
        let report = scaling_harness(&spec, &eps, order, Horizon::OverEps(1.0), &[c(0.1, 0.0)], 0.0)?;
        for name in [AVERAGING_REPRESENTATION, SOLUTION_REPRESENTATION] {
            let fit = report.fit(name).expect("forced problems report both");
            let errs: Vec<String> = fit.errors.iter().map(|e| format!("{e:.3e}")).collect();
            let slope = fit.slope.map_or_else(|| "exact".to_string(), |s| format!("{s:.2}"));
            println!("N = {order}  {name:<24} errors [{}]  slope {slope}", errs.join(", "));
        }
    }
    Ok(())
}
