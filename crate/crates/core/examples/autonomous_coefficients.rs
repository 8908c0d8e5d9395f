//! Coefficients `γ(τ, u)` for perturbed autonomous systems, the averaged
//! coefficients `β̄`, the correction `ρ(u)` and the group laws, plus the
//! numerical solver for arbitrary infinitesimal characters.

use std::collections::BTreeSet;

use num_complex::Complex64;
use wordseries::autonomous::{build_gamma_u, extended_group_law_deviation, solve_general_beta, transport_residual_u};
use wordseries::words::{CoefficientTable, EigenvalueModel, Letter};

fn main() -> wordseries::Result<()> {
    let c = Complex64::new;
    let model = EigenvalueModel::linear_projector(&[c(0.0, 1.0), c(0.0, -1.0)]);
    let support: BTreeSet<Letter> = [vec![1, 0], vec![2, -1]].into_iter().map(Letter::new).collect();
    let g = build_gamma_u(&model, &support, 3)?;

    let u = [c(0.2, 0.1), c(-0.3, 0.4)];
    let table = g.eval(0.5, &u);
    for (w, z) in table.iter().take(5) {
        println!("γ_{w}(0.5, u) = {z:.6}");
    }
    println!("β̄ entries: {}", g.beta_bar().len());
    println!("ρ(v) entries: {}", g.rho(&model.v).len());
    println!("transport residual: {:.1e}", transport_residual_u(&g, 0.5, &u));
    println!("extended group law: {:.1e}", extended_group_law_deviation(&g, (0.5, &u), (-0.2, &[c(0.1, 0.0), c(0.0, 0.3)])));

    // The generic solver recovers α(t) = γ(t, tv) from the letters-only β.
    let beta = CoefficientTable::letters_only(3, 2, &support, c(1.0, 0.0));
    let numeric = solve_general_beta(&model, &beta, 3, 1.0, 2000)?;
    println!("general solver vs recursion: {:.1e}", numeric.max_diff(&g.eval_alpha(1.0)));
    Ok(())
}
