use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::CurvaturePoint;

use super::certificate::{CertConfig, Certificate};

/// Most negative slope still counted as bounded away from `-∞`.
pub const W_SLOPE_MIN: f64 = -100.0;
/// Least negative slope still counted as bounded away from `0`.
pub const W_SLOPE_MAX: f64 = -0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WedgeVerdict {
    Holds,
    Fails,
    /// Every point in the window sits on `(c, c)`.
    DegenerateUmbilical,
}

/// Observed slopes `(κ2 - c)/(κ1 - c)` of a curvature diagram near `(c, c)`.
///
/// Only the observed interval is reported; whether the closure of the
/// diagram has a cusp at the diagonal is left to the reader.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramAnalysis {
    pub c: f64,
    pub window_radius: f64,
    pub points_in_window: usize,
    pub ratios_used: usize,
    pub ratio_min: Option<f64>,
    pub ratio_max: Option<f64>,
    pub argmin: Option<[f64; 2]>,
    pub argmax: Option<[f64; 2]>,
    pub verdict: WedgeVerdict,
}

impl DiagramAnalysis {
    /// Certificate that the diagram has a wedge of negative slopes at `(c, c)`.
    /// The margin is the distance of the observed interval inside
    /// `[W_SLOPE_MIN, W_SLOPE_MAX]`. A degenerate-umbilical window holds
    /// trivially.
    pub fn to_certificate(&self, claim: &str) -> Certificate {
        let (lo, hi) = (self.ratio_min.unwrap_or(f64::NAN), self.ratio_max.unwrap_or(f64::NAN));
        let margin = match self.verdict {
            WedgeVerdict::DegenerateUmbilical => 0.0,
            _ => (W_SLOPE_MAX - hi).min(lo - W_SLOPE_MIN),
        };
        let ok = self.verdict != WedgeVerdict::Fails;
        let position = if (W_SLOPE_MAX - hi) < (lo - W_SLOPE_MIN) { self.argmax } else { self.argmin };
        let mut c = Certificate::from_check(
            claim,
            ok,
            margin,
            format!("observed slope interval [{lo:e}, {hi:e}], verdict {:?}", self.verdict),
        )
        .with_value("ratio_min", lo)
        .with_value("ratio_max", hi)
        .with_value("window_radius", self.window_radius)
        .with_value("points_in_window", self.points_in_window as f64);
        if let Some(w) = c.witness.as_mut() {
            w.position = position;
        }
        c.samples = self.ratios_used;
        c
    }
}

/// Slope analysis of the diagram inside the window
/// `max |κi - c| < ρ_w`; `ρ_w` defaults to `0.1 · max |κi|`.
pub fn diagram_wedge_analysis(
    points: &[CurvaturePoint],
    c: f64,
    window: Option<f64>,
    cfg: &CertConfig,
) -> Result<DiagramAnalysis> {
    let radius = window.unwrap_or_else(|| {
        0.1 * points
            .iter()
            .map(|p| p.kappa1.abs().max(p.kappa2.abs()))
            .fold(0.0, f64::max)
    });
    let mut inside = 0;
    let mut used = 0;
    let mut lo: Option<(f64, [f64; 2])> = None;
    let mut hi: Option<(f64, [f64; 2])> = None;
    for p in points {
        let a = p.kappa1 - c;
        let b = p.kappa2 - c;
        if a.abs().max(b.abs()) >= radius {
            continue;
        }
        inside += 1;
        if a.abs() < cfg.eps_eq {
            continue;
        }
        used += 1;
        let ratio = b / a;
        if lo.is_none_or(|(v, _)| ratio < v) {
            lo = Some((ratio, p.position));
        }
        if hi.is_none_or(|(v, _)| ratio > v) {
            hi = Some((ratio, p.position));
        }
    }
    if inside == 0 {
        return Err(Error::EmptyWindow { radius });
    }
    let verdict = match (lo, hi) {
        (Some((l, _)), Some((h, _))) if l >= W_SLOPE_MIN && h <= W_SLOPE_MAX => WedgeVerdict::Holds,
        (Some(_), Some(_)) => WedgeVerdict::Fails,
        _ => WedgeVerdict::DegenerateUmbilical,
    };
    Ok(DiagramAnalysis {
        c,
        window_radius: radius,
        points_in_window: inside,
        ratios_used: used,
        ratio_min: lo.map(|v| v.0),
        ratio_max: hi.map(|v| v.0),
        argmin: lo.map(|v| v.1),
        argmax: hi.map(|v| v.1),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(k1: f64, k2: f64) -> CurvaturePoint {
        CurvaturePoint::from_principal([k1, k2], k1, k2)
    }

    #[test]
    fn round_sphere_is_degenerate() {
        let d = diagram_wedge_analysis(&vec![pt(1.0, 1.0); 5], 1.0, None, &CertConfig::default()).unwrap();
        assert_eq!(d.verdict, WedgeVerdict::DegenerateUmbilical);
        assert!(d.to_certificate("w").holds());
    }

    #[test]
    fn wedge_and_cusp() {
        let cfg = CertConfig::default();
        let wedge: Vec<_> = (1..20).map(|i| pt(0.01 * i as f64, -0.02 * i as f64)).collect();
        let d = diagram_wedge_analysis(&wedge, 0.0, Some(1.0), &cfg).unwrap();
        assert_eq!(d.verdict, WedgeVerdict::Holds);
        assert!(d.to_certificate("w").holds());
        let cusp: Vec<_> = (1..20).map(|i| pt(0.01 * i as f64, -1e-3 * (0.01 * i as f64).powi(2))).collect();
        let d = diagram_wedge_analysis(&cusp, 0.0, Some(1.0), &cfg).unwrap();
        assert_eq!(d.verdict, WedgeVerdict::Fails);
        assert!(d.to_certificate("w").witness.unwrap().margin < 0.0);
    }

    #[test]
    fn empty_window() {
        let r = diagram_wedge_analysis(&[pt(5.0, 1.0)], 0.0, Some(0.1), &CertConfig::default());
        assert!(matches!(r, Err(Error::EmptyWindow { .. })));
    }
}
