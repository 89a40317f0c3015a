use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest admissible angle change between consecutive loop samples.
pub const MAX_STEP: f64 = FRAC_PI_2;
/// Number of times the sample count is doubled before giving up.
pub const RETRIES: usize = 4;
const VANISHING: f64 = 1e-10;

/// A circle sampled at `n` equally spaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoopSampling {
    pub center: [f64; 2],
    pub radius: f64,
    pub n: usize,
}

impl LoopSampling {
    pub fn new(center: [f64; 2], radius: f64, n: usize) -> Result<Self> {
        if n < 64 {
            return Err(Error::InvalidInput(format!("loop needs at least 64 samples, got {n}")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("loop radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius, n })
    }

    pub fn point(&self, k: usize, n: usize) -> [f64; 2] {
        let a = TAU * k as f64 / n as f64;
        [self.center[0] + self.radius * a.cos(), self.center[1] + self.radius * a.sin()]
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        (0..self.n).map(|k| self.point(k, self.n)).collect()
    }
}

/// Winding number with the sampling actually used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Winding {
    pub turns: i64,
    pub samples: usize,
    pub max_step: f64,
    /// Smallest `|F|` on the loop relative to the largest.
    pub min_relative_norm: f64,
}

pub fn winding_number<F>(field: F, lp: &LoopSampling) -> Result<i64>
where
    F: Fn(f64, f64) -> [f64; 2] + Sync,
{
    winding_report(field, lp).map(|w| w.turns)
}

/// Total angle swept by `field` along the loop, in turns.
///
/// Each increment is the signed angle between consecutive samples, which lies
/// in `(-π, π]`. If one exceeds `MAX_STEP` the sample count is doubled, up to
/// `RETRIES` times.
pub fn winding_report<F>(field: F, lp: &LoopSampling) -> Result<Winding>
where
    F: Fn(f64, f64) -> [f64; 2] + Sync,
{
    let mut n = lp.n.max(1);
    let mut last_step = 0.0;
    for _ in 0..=RETRIES {
        let values: Vec<[f64; 2]> = (0..n)
            .into_par_iter()
            .map(|k| {
                let [x, y] = lp.point(k, n);
                field(x, y)
            })
            .collect();
        let norms: Vec<f64> = values.iter().map(|v| v[0].hypot(v[1])).collect();
        let scale = norms.iter().copied().fold(0.0, f64::max);
        let (kmin, nmin) = norms
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (k, v)| if v < acc.1 || v.is_nan() { (k, v) } else { acc });
        if !(scale > 0.0) || !(nmin >= VANISHING * scale) {
            let [x, y] = lp.point(kmin, n);
            return Err(Error::FieldVanishesOnLoop { x, y, magnitude: nmin });
        }
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let u = values[k];
            let v = values[(k + 1) % n];
            let step = (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1]);
            max_step = max_step.max(step.abs());
            total += step;
        }
        if max_step <= MAX_STEP {
            return Ok(Winding {
                turns: (total / TAU).round() as i64,
                samples: n,
                max_step,
                min_relative_norm: nmin / scale,
            });
        }
        last_step = max_step;
        n *= 2;
    }
    Err(Error::UnderSampled { samples: n / 2, max_step: last_step })
}
