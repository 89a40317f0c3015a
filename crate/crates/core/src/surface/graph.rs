use serde::Serialize;

use super::jet::Jet2;

/// Planar parameter domain of a graph chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Domain {
    Rect {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
    Disk {
        cx: f64,
        cy: f64,
        radius: f64,
    },
}

impl Domain {
    pub fn square(half_width: f64) -> Self {
        Domain::Rect {
            x_min: -half_width,
            x_max: half_width,
            y_min: -half_width,
            y_max: half_width,
        }
    }

    pub fn disk(radius: f64) -> Self {
        Domain::Disk {
            cx: 0.0,
            cy: 0.0,
            radius,
        }
    }

    pub fn is_empty(&self) -> bool {
        match *self {
            Domain::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => !(x_min < x_max && y_min < y_max),
            Domain::Disk { radius, .. } => !(radius > 0.0),
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            Domain::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => x >= x_min && x <= x_max && y >= y_min && y <= y_max,
            Domain::Disk { cx, cy, radius } => (x - cx).hypot(y - cy) <= radius,
        }
    }

    /// Whether the closed axis-aligned square of half-width `half` around
    /// `(x, y)` lies in the domain.
    pub fn contains_square(&self, x: f64, y: f64, half: f64) -> bool {
        match *self {
            Domain::Rect { .. } => self.contains(x - half, y - half) && self.contains(x + half, y + half),
            Domain::Disk { cx, cy, radius } => {
                (x - cx).hypot(y - cy) + half * std::f64::consts::SQRT_2 <= radius
            }
        }
    }

    /// `(x_min, x_max, y_min, y_max)` of the bounding box.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            Domain::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => (x_min, x_max, y_min, y_max),
            Domain::Disk { cx, cy, radius } => (cx - radius, cx + radius, cy - radius, cy + radius),
        }
    }
}

/// How a graph produces its jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Analytic,
    FiniteDifference,
}

/// A surface given as the graph `z = u(x, y)` over a planar domain.
///
/// Implementations must be deterministic: the same point always yields the
/// same value and jet.
pub trait GraphSurface: Sync {
    fn value(&self, x: f64, y: f64) -> f64;

    fn jet(&self, x: f64, y: f64) -> Jet2;

    fn domain(&self) -> Domain;

    fn provenance(&self) -> Provenance {
        Provenance::Analytic
    }
}

impl<G: GraphSurface + ?Sized> GraphSurface for &G {
    fn value(&self, x: f64, y: f64) -> f64 {
        (**self).value(x, y)
    }
    fn jet(&self, x: f64, y: f64) -> Jet2 {
        (**self).jet(x, y)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn provenance(&self) -> Provenance {
        (**self).provenance()
    }
}
