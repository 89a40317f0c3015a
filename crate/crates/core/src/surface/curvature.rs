use serde::Serialize;

use crate::error::Result;

use super::jet::{mean_gauss_from_jet, principal_from_hk_with, Jet2};
use super::shape::shape_operator;

/// Default relative floor for clamping negative `H² - K`.
pub const DEFAULT_DISC_EPS: f64 = 1e-12;

/// One sample of a curvature diagram.
///
/// `position` holds the chart coordinates of the sample: `(x, y)` for graphs,
/// `(s, 0)` for rotational profiles and `(t, φ)` for tubes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvaturePoint {
    pub position: [f64; 2],
    pub h: f64,
    pub k: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    /// `H² - K`, computed without cancellation where possible.
    pub discriminant: f64,
    /// Set when a slightly negative discriminant was clamped to zero.
    pub clamped: bool,
}

impl CurvaturePoint {
    /// Curvatures of a graph from its jet.
    ///
    /// The discriminant comes from the shape operator (`(tr² - 4 det)/4`),
    /// which stays accurate next to umbilics where `H² - K` cancels.
    pub fn from_jet(x: f64, y: f64, jet: &Jet2) -> Result<Self> {
        let (h, k) = mean_gauss_from_jet(jet);
        let disc = 0.25 * shape_operator(jet, x, y).discriminant();
        let floor = DEFAULT_DISC_EPS * (1.0 + h * h);
        if disc < -floor {
            // Defer to the (H, K) route for the error report.
            principal_from_hk_with(h, k, DEFAULT_DISC_EPS)?;
        }
        let root = disc.max(0.0).sqrt();
        Ok(Self {
            position: [x, y],
            h,
            k,
            kappa1: h + root,
            kappa2: h - root,
            discriminant: disc.max(0.0),
            clamped: disc < 0.0,
        })
    }

    /// A point from its two principal curvatures in either order.
    pub fn from_principal(position: [f64; 2], a: f64, b: f64) -> Self {
        let (kappa1, kappa2) = if a >= b { (a, b) } else { (b, a) };
        let half_gap = 0.5 * (kappa1 - kappa2);
        Self {
            position,
            h: 0.5 * (kappa1 + kappa2),
            k: kappa1 * kappa2,
            kappa1,
            kappa2,
            discriminant: half_gap * half_gap,
            clamped: false,
        }
    }

    /// Magnitude scale `1 + H² + |K|` used by certificate tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.h * self.h + self.k.abs()
    }
}
