use serde::Serialize;

use crate::error::{out_of_range, Error, Result};

/// Mutually convertible constants of the quasi-CMC inequality
/// `(H - c)² ≤ μ (H² - K)` and its wedge form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WedgeParams {
    pub c: f64,
    pub lambda: f64,
    /// Slope of the upper wedge ray, closest to zero.
    pub m1: f64,
    pub m2: f64,
    pub mu: f64,
}

impl WedgeParams {
    pub fn from_mu(mu: f64, c: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&mu) {
            return Err(out_of_range("mu", format!("expected 0 <= mu < 1, got {mu}")));
        }
        Ok(Self::build(c, (mu + 1.0) / (mu - 1.0), mu))
    }

    pub fn from_lambda(lambda: f64, c: f64) -> Result<Self> {
        if !(lambda <= -1.0) || !lambda.is_finite() {
            return Err(out_of_range("lambda", format!("expected lambda <= -1, got {lambda}")));
        }
        Ok(Self::build(c, lambda, (lambda + 1.0) / (lambda - 1.0)))
    }

    fn build(c: f64, lambda: f64, mu: f64) -> Self {
        // Λ² - 1 factored to keep accuracy near Λ = -1; m1 = 1/m2 avoids the
        // cancellation in Λ + √(Λ² - 1) for large |Λ|.
        let root = ((lambda - 1.0) * (lambda + 1.0)).max(0.0).sqrt();
        let m2 = lambda - root;
        Self { c, lambda, m1: 1.0 / m2, m2, mu }
    }

    /// Ratio `4 / (1 - μ)` between the wedge and quasi-CMC margins.
    pub fn margin_ratio(&self) -> f64 {
        4.0 / (1.0 - self.mu)
    }
}

/// Interpolation parameter of the Weingarten functionals at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tau {
    pub tau: f64,
    /// Set at umbilics of value `c`, where any `τ` works and `1/2` is returned.
    pub undetermined: bool,
}

/// `τ` with `τ W1 + (1 - τ) W2 = 0`, where `W_i = -m_i (κ1 - c) + κ2 - c`.
///
/// `tol` is the absolute slack allowed on the wedge sandwich before the
/// point is rejected.
pub fn tau_interpolant(kappa1: f64, kappa2: f64, params: &WedgeParams, tol: f64) -> Result<Tau> {
    let a = kappa1 - params.c;
    let b = kappa2 - params.c;
    let w1 = b - params.m1 * a;
    let w2 = b - params.m2 * a;
    if w1 > tol || w2 < -tol {
        return Err(Error::OutsideWedge { kappa1, kappa2 });
    }
    let gap = w2 - w1;
    if (a == 0.0 && b == 0.0) || gap <= 0.0 {
        return Ok(Tau { tau: 0.5, undetermined: true });
    }
    Ok(Tau {
        tau: (w2 / gap).clamp(0.0, 1.0),
        undetermined: false,
    })
}

/// Constants `c = 1`, `μ = (H0 - 1)/(H0 + 1)` for surfaces with
/// `1 ≤ H ≤ H0`, with a grid check of `H²(1 - μ) - 2H + 1 + μ ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsParams {
    pub params: WedgeParams,
    pub grid_points: usize,
    pub grid_max: f64,
    pub grid_holds: bool,
}

pub fn params_from_bounds(h0: f64, grid_points: usize) -> Result<BoundsParams> {
    if !(h0 >= 1.0) || !h0.is_finite() {
        return Err(out_of_range("H0", format!("expected H0 >= 1, got {h0}")));
    }
    let mu = (h0 - 1.0) / (h0 + 1.0);
    let params = WedgeParams::from_mu(mu, 1.0)?;
    let n = grid_points.max(2);
    let mut grid_max = f64::NEG_INFINITY;
    let mut grid_holds = true;
    for i in 0..n {
        let h = 1.0 + (h0 - 1.0) * i as f64 / (n - 1) as f64;
        let q = h * h * (1.0 - mu) - 2.0 * h + 1.0 + mu;
        grid_max = grid_max.max(q);
        if q > 1e-12 * (1.0 + h * h) {
            grid_holds = false;
        }
    }
    Ok(BoundsParams { params, grid_points: n, grid_max, grid_holds })
}
