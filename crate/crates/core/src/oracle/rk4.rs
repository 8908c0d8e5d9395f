use num_complex::Complex64;

/// Classical four-stage Runge–Kutta with `steps` equal steps from `t0` to
/// `t1`, in place. `f(t, x, out)` writes the derivative into `out`.
pub fn rk4<F>(mut f: F, state: &mut [Complex64], t0: f64, t1: f64, steps: usize)
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = state.len();
    let h = (t1 - t0) / steps as f64;
    let mut k1 = vec![Complex64::default(); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();
    for step in 0..steps {
        let t = t0 + step as f64 * h;
        f(t, state, &mut k1);
        for i in 0..n {
            tmp[i] = state[i] + k1[i] * (h / 2.0);
        }
        f(t + h / 2.0, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = state[i] + k2[i] * (h / 2.0);
        }
        f(t + h / 2.0, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = state[i] + k3[i] * h;
        }
        f(t + h, &tmp, &mut k4);
        for i in 0..n {
            state[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }
}

/// Runs [`rk4`] over `samples` equal intervals with `substeps` steps each
/// and returns the state at every sample time, the initial one included.
pub fn rk4_sampled<F>(
    mut f: F,
    x0: &[Complex64],
    t0: f64,
    t1: f64,
    samples: usize,
    substeps: usize,
) -> Vec<Vec<Complex64>>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let mut out = Vec::with_capacity(samples + 1);
    let mut state = x0.to_vec();
    out.push(state.clone());
    let dt = (t1 - t0) / samples as f64;
    for s in 0..samples {
        let a = t0 + s as f64 * dt;
        rk4(&mut f, &mut state, a, a + dt, substeps);
        out.push(state.clone());
    }
    out
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
