use num_complex::Complex64;

use super::rk4_sampled;
use crate::polyfield::{Field, GKind, PolyMap, ProblemSpec};

/// Successive halvings stop once sampled states agree to this.
pub const DEFAULT_HALVING_TOL: f64 = 1e-10;

const MAX_HALVINGS: u32 = 18;

/// States sampled on an equispaced grid.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    /// RK4 steps per sampling interval in the accepted run.
    pub substeps: usize,
    /// Largest sampled difference between the accepted run and the one with
    /// twice the step; at most the tolerance unless the halving budget ran out.
    pub halving_diff: f64,
}

impl Trajectory {
    pub fn last(&self) -> &[Complex64] {
        self.states.last().expect("at least the initial state")
    }
}

pub(crate) fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

/// Integrates `f` on `samples` intervals, doubling the number of RK4 steps
/// until two successive runs agree to `tol` at every sample.
pub fn solve_with_halving<F>(mut f: F, x0: &[Complex64], t0: f64, t_end: f64, samples: usize, tol: f64) -> Trajectory
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let samples = samples.max(1);
    let times = (0..=samples).map(|i| t0 + (t_end - t0) * i as f64 / samples as f64).collect();
    let mut substeps = 1;
    let mut prev = rk4_sampled(&mut f, x0, t0, t_end, samples, substeps);
    let mut diff = f64::INFINITY;
    for _ in 0..MAX_HALVINGS {
        substeps *= 2;
        let next = rk4_sampled(&mut f, x0, t0, t_end, samples, substeps);
        diff = max_diff(&prev, &next);
        prev = next;
        if diff < tol {
            break;
        }
    }
    Trajectory { times, states: prev, substeps, halving_diff: diff }
}

enum Rhs {
    /// `ε Σ e^{ik·ωt} f̂_k(y)`.
    Forced { omega: Vec<f64>, modes: Vec<(Vec<i64>, PolyMap)>, eps: f64 },
    /// `g(x) + ε f(x)` assembled into one field.
    Autonomous(Field),
}

impl Rhs {
    fn new(spec: &ProblemSpec, eps: f64) -> Self {
        match spec.gkind() {
            GKind::Forced => Rhs::Forced {
                omega: spec.model().v.iter().map(|z| z.re).collect(),
                modes: spec.modes().iter().map(|(l, p)| (l.components().to_vec(), p.clone())).collect(),
                eps,
            },
            _ => Rhs::Autonomous(&spec.g_v() + &spec.perturbation().scale(Complex64::new(eps, 0.0))),
        }
    }

    fn eval(&self, t: f64, x: &[Complex64], out: &mut [Complex64]) {
        match self {
            Rhs::Forced { omega, modes, eps } => {
                out.iter_mut().for_each(|o| *o = Complex64::default());
                for (k, p) in modes {
                    let phase: f64 = k.iter().zip(omega).map(|(a, b)| *a as f64 * b).sum::<f64>() * t;
                    let w = Complex64::from_polar(*eps, phase);
                    for (o, v) in out.iter_mut().zip(p.eval(x)) {
                        *o += w * v;
                    }
                }
            }
            Rhs::Autonomous(field) => out.copy_from_slice(&field.eval(x)),
        }
    }
}

/// Reference solution of the full system: `y' = ε f(y, tω)` for forced
/// problems, `x' = g(x) + ε f(x)` otherwise.
pub fn direct_solve(spec: &ProblemSpec, eps: f64, x0: &[Complex64], t0: f64, t_end: f64, samples: usize) -> Trajectory {
    direct_solve_with_tol(spec, eps, x0, t0, t_end, samples, DEFAULT_HALVING_TOL)
}

pub fn direct_solve_with_tol(
    spec: &ProblemSpec,
    eps: f64,
    x0: &[Complex64],
    t0: f64,
    t_end: f64,
    samples: usize,
    tol: f64,
) -> Trajectory {
    let rhs = Rhs::new(spec, eps);
    solve_with_halving(|t, x, out| rhs.eval(t, x, out), x0, t0, t_end, samples, tol)
}

/// `|x_h − x_{h/2}| / |x_{h/2} − x_{h/4}|` at `t_end` for `steps` steps of
/// size `h`; close to 16 for a fourth-order method on a smooth problem.
pub fn richardson_ratio(spec: &ProblemSpec, eps: f64, x0: &[Complex64], t0: f64, t_end: f64, steps: usize) -> f64 {
    let rhs = Rhs::new(spec, eps);
    let run = |n: usize| rk4_sampled(|t, x, out| rhs.eval(t, x, out), x0, t0, t_end, 1, n).pop().unwrap();
    let (a, b, c) = (run(steps), run(2 * steps), run(4 * steps));
    let d1 = max_diff(&[a], std::slice::from_ref(&b));
    let d2 = max_diff(&[b], &[c]);
    d1 / d2
}
