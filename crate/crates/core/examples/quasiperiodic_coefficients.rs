//! Universal coefficients of a quasiperiodically forced system: `Γ`, the
//! solution coefficients `α`, the change of variables `κ` and the averaged
//! field coefficients `β̄`.

use std::collections::BTreeSet;

use wordseries::quasiperiodic::{beta_bar, build_gamma, gamma_shift_identity, transport_residual};
use wordseries::words::{Letter, MembershipMode, Word};

fn main() -> wordseries::Result<()> {
    let omega = [1.0, 2f64.sqrt()];
    let support: BTreeSet<Letter> =
        [vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]].into_iter().map(Letter::new).collect();
    let gamma = build_gamma(&omega, &support, 3)?;
    println!("Γ tabulated on {} words", gamma.num_entries());

    let k: Word = "1,0;-1,0".parse()?;
    println!("Γ_{k} = {} terms", gamma.get(&k).map_or(0, |p| p.num_terms()));

    let alpha = gamma.eval_alpha(0.8, 0.1);
    println!("α({k}; t=0.8, t0=0.1) = {:.6}", alpha.get(&k));
    println!("α is a character: {}", alpha.membership(MembershipMode::Group, 1e-10).passed());

    let kappa = gamma.kappa(&[0.3, -1.2], 0.0);
    println!("κ(θ) is a character: {}", kappa.membership(MembershipMode::Group, 1e-10).passed());

    let beta = beta_bar(&omega, &support, 3, 0.0)?;
    for w in ["0,0", "1,0;-1,0", "-1,0;1,0", "0,1;0,0;0,-1"] {
        let w: Word = w.parse()?;
        println!("β̄_{w} = {:.6}", beta.get(&w));
    }
    println!("β̄ is an infinitesimal character: {}", beta.membership(MembershipMode::Algebra, 1e-12).passed());

    println!("transport residual: {:.1e}", transport_residual(&gamma, 0.4, &[0.2, 1.1], &[-0.5, 0.3]));
    println!("phase-shift identity: {:.1e}", gamma_shift_identity(&gamma, &[0.7, -0.2]).max_deviation());
    Ok(())
}
