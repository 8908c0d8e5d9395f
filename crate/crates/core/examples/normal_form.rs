//! Normal form of `x' = Lx + εf(x)` with `L = diag(i, −i)`: the split into
//! commuting fields `g̃ + W_β̄` and its checks.

use num_complex::Complex64;
use wordseries::autonomous::build_gamma_u;
use wordseries::polyfield::{normal_form, MultiPoly, PolyMap, ProblemSpec};

fn main() -> wordseries::Result<()> {
    let c = Complex64::new;
    let f = PolyMap::new(vec![
        MultiPoly::monomial(2, vec![2, 0], c(1.0, 0.0)),
        &MultiPoly::monomial(2, vec![1, 1], c(0.5, 0.0)) + &MultiPoly::monomial(2, vec![2, 0], c(0.0, -0.3)),
    ]);
    let spec = ProblemSpec::diagonal_linear(&[c(0.0, 1.0), c(0.0, -1.0)], &f)?;
    println!("modes by letter: {:?}", spec.modes().keys().map(|l| l.to_string()).collect::<Vec<_>>());
    let report = spec.eigen_check(3);
    println!("eigen relations off by {:.1e}, nonresonant: {}", report.eigen_deviation, report.nonresonant());

    let gu = build_gamma_u(spec.model(), &spec.support(), 3)?;
    let nf = normal_form(&spec, &gu)?;
    for (w, z) in nf.beta_bar().iter().filter(|(_, z)| z.norm() > 0.0) {
        println!("β̄_{w} = {z:.6}");
    }
    let x = [c(0.2, -0.1), c(0.05, 0.3)];
    for eps in [0.04, 0.01] {
        println!("ε = {eps}: decomposition residual {:.1e}", nf.decomposition_residual(&spec, eps, &x));
    }
    let grades: Vec<String> = nf.commutator_by_grade().iter().map(|v| format!("{v:.1e}")).collect();
    println!("[g̃, W_β̄] by grade: {}", grades.join(" "));
    Ok(())
}
