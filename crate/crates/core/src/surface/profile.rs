use serde::Serialize;

use crate::error::{Error, Result};

use super::curvature::CurvaturePoint;

/// Samples with `x` at or below this value are treated as lying on the axis.
pub const DEFAULT_X_MIN_TOL: f64 = 1e-9;

/// One sample of an arc-length parametrised meridian curve in the `(x, z)`
/// half-plane, rotated about the `z` axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub s: f64,
    pub x: f64,
    pub z: f64,
    pub theta: f64,
    pub kappa: f64,
}

/// Meridian sampled on a uniform arc-length grid, with `θ' = κ` and the
/// outward normal, so the unit sphere has both curvatures equal to `+1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub samples: Vec<ProfileSample>,
    pub step: f64,
}

impl Profile {
    /// Checks that `s` is strictly increasing with uniform spacing `step`.
    pub fn new(samples: Vec<ProfileSample>, step: f64) -> Result<Self> {
        if samples.len() < 2 || !(step > 0.0) {
            return Err(Error::InvalidInput(
                "profile needs at least two samples and a positive step".into(),
            ));
        }
        let tol = 1e-9 * step.max(samples.last().map_or(0.0, |p| p.s.abs()) * 1e-3);
        for (i, w) in samples.windows(2).enumerate() {
            let ds = w[1].s - w[0].s;
            if !(ds > 0.0) || (ds - step).abs() > tol.max(1e-9 * step) {
                return Err(Error::InvalidInput(format!(
                    "arc-length spacing {ds} at sample {i} differs from step {step}"
                )));
            }
        }
        Ok(Self { samples, step })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest deviation of the centrally differenced `(x, z)'` from
    /// `(cos θ, sin θ)` over interior samples.
    pub fn tangency_defect(&self) -> f64 {
        let h2 = 2.0 * self.step;
        self.samples
            .windows(3)
            .map(|w| {
                let dx = (w[2].x - w[0].x) / h2 - w[1].theta.cos();
                let dz = (w[2].z - w[0].z) / h2 - w[1].theta.sin();
                dx.hypot(dz)
            })
            .fold(0.0, f64::max)
    }

    /// The tangency invariant: `(x, z)'` matches `(cos θ, sin θ)` to `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let defect = self.tangency_defect();
        if defect > tol {
            return Err(Error::InvalidInput(format!(
                "profile tangent defect {defect:e} exceeds {tol:e}"
            )));
        }
        Ok(())
    }
}

/// Curvatures of the surface of revolution at one profile sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationalCurvature {
    pub s: f64,
    pub meridian: f64,
    pub parallel: f64,
    /// `x` was at or below the axis tolerance, so `parallel` is the smooth
    /// limit value `κ`.
    pub axis_adjacent: bool,
}

impl RotationalCurvature {
    pub fn to_point(&self) -> CurvaturePoint {
        CurvaturePoint::from_principal([self.s, 0.0], self.meridian, self.parallel)
    }
}

/// Meridian curvature `κ` and parallel curvature `sin θ / x` at every sample.
pub fn rotational_curvatures(pf: &Profile, x_min_tol: f64) -> Result<Vec<RotationalCurvature>> {
    let last = pf.samples.len().saturating_sub(1);
    pf.samples
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.x <= 0.0 && i != 0 && i != last {
                return Err(Error::AxisSingularity { s: p.s, x: p.x });
            }
            let axis_adjacent = p.x <= x_min_tol;
            let parallel = if axis_adjacent { p.kappa } else { p.theta.sin() / p.x };
            Ok(RotationalCurvature {
                s: p.s,
                meridian: p.kappa,
                parallel,
                axis_adjacent,
            })
        })
        .collect()
}
