use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{Domain, GraphSurface, Jet2};

/// Upper or lower half of the ellipsoid `x²/a1² + y²/a2² + z²/a3² = 1`,
/// `a1 > a2 > a3`, as a graph over a rectangle containing both umbilics of
/// that half.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipsoidChart {
    pub axes: [f64; 3],
    pub upper: bool,
    pub domain: Domain,
}

/// Both charts together with the classical umbilic positions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipsoidCharts {
    pub upper: EllipsoidChart,
    pub lower: EllipsoidChart,
    /// Predicted umbilics `(±x_u, 0)` on each chart.
    pub predicted: [[f64; 2]; 2],
}

/// Sorts the semi-axes decreasingly and builds the two charts.
pub fn ellipsoid_chart(axes: [f64; 3]) -> Result<EllipsoidCharts> {
    let mut a = axes;
    if a.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidInput(format!("semi-axes must be positive, got {axes:?}")));
    }
    a.sort_by(|x, y| y.total_cmp(x));
    if a[0] == a[1] || a[1] == a[2] {
        return Err(Error::AxesNotDistinct(axes));
    }
    let (a1, a2, a3) = (a[0], a[1], a[2]);
    let xu = a1 * ((a1 * a1 - a2 * a2) / (a1 * a1 - a3 * a3)).sqrt();
    let x_frac = (xu / a1 + 0.05).clamp(0.85, 0.95);
    let y_frac = (0.97 - x_frac * x_frac).max(0.0).sqrt();
    let domain = Domain::Rect { x_min: -x_frac * a1, x_max: x_frac * a1, y_min: -y_frac * a2, y_max: y_frac * a2 };
    let chart = |upper| EllipsoidChart { axes: a, upper, domain };
    Ok(EllipsoidCharts { upper: chart(true), lower: chart(false), predicted: [[-xu, 0.0], [xu, 0.0]] })
}

impl EllipsoidChart {
    fn sign(&self) -> f64 {
        if self.upper {
            1.0
        } else {
            -1.0
        }
    }
}

impl GraphSurface for EllipsoidChart {
    fn value(&self, x: f64, y: f64) -> f64 {
        let [a1, a2, a3] = self.axes;
        let g = 1.0 - x * x / (a1 * a1) - y * y / (a2 * a2);
        self.sign() * a3 * g.sqrt()
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let [a1, a2, a3] = self.axes;
        let (aa, bb) = (a1 * a1, a2 * a2);
        let c = self.sign() * a3;
        let g = 1.0 - x * x / aa - y * y / bb;
        let gm1 = 1.0 / g.sqrt();
        let gm3 = gm1 / g;
        Jet2::new(
            -(c / aa) * x * gm1,
            -(c / bb) * y * gm1,
            -(c / aa) * (gm1 + x * x / aa * gm3),
            -(c / (aa * bb)) * x * y * gm3,
            -(c / bb) * (gm1 + y * y / bb * gm3),
        )
    }

    fn domain(&self) -> Domain {
        self.domain
    }
}
