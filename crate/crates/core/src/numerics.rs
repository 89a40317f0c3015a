//! Quadrature rules and a fixed-step fourth-order Runge–Kutta integrator.

const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Eight-point Gauss–Legendre rule on `[lo, hi]`.
pub fn gauss_legendre8<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (node, weight) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
        acc += weight * (f(mid - half * node) + f(mid + half * node));
    }
    acc * half
}

/// Composite Gauss–Legendre rule with `panels` equal sub-intervals.
pub fn composite_gauss_legendre<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let width = (hi - lo) / panels as f64;
    (0..panels)
        .map(|i| {
            let a = lo + i as f64 * width;
            let b = if i + 1 == panels { hi } else { a + width };
            gauss_legendre8(&f, a, b)
        })
        .sum()
}

/// Composite Simpson rule over `panels` panels (each panel spans two
/// sub-intervals, so `2 * panels + 1` nodes are evaluated).
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let n = 2 * panels.max(1);
    let h = (hi - lo) / n as f64;
    simpson_weights_sum(n, h, |i| f(lo + i as f64 * h))
}

/// Composite Simpson rule on pre-sampled, equally spaced values. The number
/// of sub-intervals `values.len() - 1` must be even.
pub fn simpson_samples(values: &[f64], spacing: f64) -> f64 {
    let n = values.len().saturating_sub(1);
    assert!(n >= 2 && n.is_multiple_of(2), "simpson needs an even number of sub-intervals");
    simpson_weights_sum(n, spacing, |i| values[i])
}

fn simpson_weights_sum<G: Fn(usize) -> f64>(n: usize, h: f64, value: G) -> f64 {
    let mut acc = value(0) + value(n);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * value(i);
    }
    acc * h / 3.0
}

/// One classical RK4 step of `y' = f(s, y)` from `s` with step `h`.
pub fn rk4_step<const N: usize, F>(f: &F, s: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(s + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(s + h, &axpy(y, h, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates `y' = f(s, y)` with `steps` fixed RK4 steps from `s0` to `s1`,
/// returning every state including the initial one.
pub fn rk4_trajectory<const N: usize, F>(f: F, s0: f64, s1: f64, y0: [f64; N], steps: usize) -> Vec<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let h = (s1 - s0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push(y);
    for i in 0..steps {
        y = rk4_step(&f, s0 + i as f64 * h, &y, h);
        out.push(y);
    }
    out
}

fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_degree_15() {
        let f = |x: f64| x.powi(15) + 3.0 * x.powi(14) - x;
        let exact = |x: f64| x.powi(16) / 16.0 + 3.0 * x.powi(15) / 15.0 - x * x / 2.0;
        let got = gauss_legendre8(f, -0.3, 1.7);
        assert!((got - (exact(1.7) - exact(-0.3))).abs() < 1e-10);
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let got = simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1);
        assert!((got - 0.0).abs() < 1e-14);
        let samples: Vec<f64> = (0..=4).map(|i| (i as f64 * 0.5).powi(3)).collect();
        assert!((simpson_samples(&samples, 0.5) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        // y' = y cos s, y(0) = 1  =>  y = exp(sin s)
        let f = |s: f64, y: &[f64; 1]| [y[0] * s.cos()];
        let exact = 3.0f64.sin().exp();
        let err = |steps| (rk4_trajectory(f, 0.0, 3.0, [1.0], steps).last().unwrap()[0] - exact).abs();
        let ratio = err(40) / err(80);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rk4_reproduces_unit_circle_arc() {
        // (x, z, theta)' = (cos theta, sin theta, 1)
        let f = |_s: f64, y: &[f64; 3]| [y[2].cos(), y[2].sin(), 1.0];
        let traj = rk4_trajectory(f, 0.0, 1.8, [0.0, 0.0, 0.0], 1800);
        let end = traj.last().unwrap();
        assert!((end[0] - 1.8f64.sin()).abs() < 1e-12);
        assert!((end[1] - (1.0 - 1.8f64.cos())).abs() < 1e-12);
    }
}
