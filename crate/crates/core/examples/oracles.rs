//! Brute-force references: RK4 integration of the coefficient equations and
//! nested quadrature, compared with the closed-form recursion.

use std::collections::BTreeSet;

use wordseries::oracle::{alpha_by_ode, alpha_by_quadrature, LambdaSpec};
use wordseries::quasiperiodic::build_gamma;
use wordseries::words::{Letter, Word};

fn main() -> wordseries::Result<()> {
    let omega = [1.0, 2f64.sqrt()];
    let support: BTreeSet<Letter> =
        [vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]].into_iter().map(Letter::new).collect();
    let (t, t0) = (0.9, -0.4);
    let exact = build_gamma(&omega, &support, 4)?.eval_alpha(t, t0);
    let ls = LambdaSpec::quasiperiodic(&omega);
    let ode = alpha_by_ode(&ls, &support, 4, t, t0, 400);
    println!("recursion vs RK4 over {} words: {:.1e}", exact.len(), exact.max_diff(&ode));

    for w in ["1,0;-1,0", "0,1;1,0;0,0"] {
        let w: Word = w.parse()?;
        let q = alpha_by_quadrature(&ls, &w, t, t0, 32)?;
        println!("α_{w}: recursion {:.10}, quadrature {:.10}", exact.get(&w), q);
    }
    Ok(())
}
