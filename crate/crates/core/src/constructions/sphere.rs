use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{Domain, GraphSurface, Jet2};

use super::tube::radial_jet_from;

/// Totally umbilical graph `u⁰ = c ρ² / (1 + sqrt(1 - c² ρ²))` on a disk,
/// a sphere of radius `1/|c|` tangent to the plane at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonSphere {
    pub c: f64,
    pub radius: f64,
}

pub fn comparison_sphere_graph(c: f64, radius: f64) -> Result<ComparisonSphere> {
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidInput(format!("comparison sphere needs finite c != 0, got {c}")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("domain radius must be positive, got {radius}")));
    }
    let limit = 1.0 / c.abs();
    if radius >= limit {
        return Err(Error::DomainTooLarge { radius, limit });
    }
    Ok(ComparisonSphere { c, radius })
}

impl GraphSurface for ComparisonSphere {
    fn value(&self, x: f64, y: f64) -> f64 {
        let rho2 = x * x + y * y;
        self.c * rho2 / (1.0 + (1.0 - self.c * self.c * rho2).sqrt())
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let c = self.c;
        let w = (1.0 - c * c * (x * x + y * y)).sqrt();
        radial_jet_from(x, y, c / w, c * c * c / (w * w * w))
    }

    fn domain(&self) -> Domain {
        Domain::disk(self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::mean_gauss_from_jet;

    #[test]
    fn tangency_and_umbilicity() {
        let g = comparison_sphere_graph(1.0, 0.9).unwrap();
        assert_eq!(g.jet(0.0, 0.0), Jet2::new(0.0, 0.0, 1.0, 0.0, 1.0));
        let (h, k) = mean_gauss_from_jet(&g.jet(0.3, 0.4));
        assert!((h - 1.0).abs() < 1e-14 && (k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn too_large() {
        assert!(matches!(comparison_sphere_graph(2.0, 0.6), Err(Error::DomainTooLarge { .. })));
    }
}
