use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{CurvaturePoint, Domain, GraphSurface, Jet2};

type V3 = [f64; 3];

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn axpy(a: V3, t: f64, b: V3) -> V3 {
    [a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]]
}

fn scale(a: V3, t: f64) -> V3 {
    [a[0] * t, a[1] * t, a[2] * t]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: V3) -> V3 {
    scale(a, 1.0 / dot(a, a).sqrt())
}

/// Closed curve whose coordinates are truncated Fourier series in
/// `t ∈ [0, 2π)`: `x_i(t) = Σ_k cos_k cos(kt) + sin_k sin(kt)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierCurve {
    /// Per coordinate, the `(cos_k, sin_k)` pairs for `k = 0, 1, …`.
    pub coeffs: [Vec<(f64, f64)>; 3],
}

impl FourierCurve {
    /// Circle of radius `r` in the `xy` plane.
    pub fn circle(r: f64) -> Self {
        Self { coeffs: [vec![(0.0, 0.0), (r, 0.0)], vec![(0.0, 0.0), (0.0, r)], vec![]] }
    }

    /// Position and first two derivatives.
    pub fn eval(&self, t: f64) -> [V3; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, series) in self.coeffs.iter().enumerate() {
            for (k, &(a, b)) in series.iter().enumerate() {
                let kf = k as f64;
                let (s, c) = (kf * t).sin_cos();
                out[0][i] += a * c + b * s;
                out[1][i] += kf * (-a * s + b * c);
                out[2][i] += -kf * kf * (a * c + b * s);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CenterCurve {
    Fourier(FourierCurve),
    /// Straight segment of the given length along the `x` axis; gives an open
    /// tube used for testing.
    Segment { length: f64 },
}

impl CenterCurve {
    fn closed(&self) -> bool {
        matches!(self, CenterCurve::Fourier(_))
    }

    fn eval(&self, t: f64) -> [V3; 3] {
        match self {
            CenterCurve::Fourier(c) => c.eval(t),
            CenterCurve::Segment { length } => [[length * t / TAU, 0.0, 0.0], [length / TAU, 0.0, 0.0], [0.0; 3]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeSpec {
    pub curve: CenterCurve,
    pub radius: f64,
    /// Samples along the curve.
    pub nt: usize,
    /// Samples around the tube.
    pub nphi: usize,
}

/// Principal curvatures at one tube sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TubeSample {
    pub t: f64,
    pub phi: f64,
    /// `1 / r`, around the tube.
    pub kappa_profile: f64,
    /// `-k_ν / (1 - r k_ν)`, along the curve.
    pub kappa_long: f64,
}

impl TubeSample {
    pub fn to_point(&self) -> CurvaturePoint {
        CurvaturePoint::from_principal([self.t, self.phi], self.kappa_profile, self.kappa_long)
    }
}

/// Curvatures of the tube of radius `r` about the centre curve, with outward
/// normal `ν = cos φ U + sin φ V` for a rotation-minimizing frame `(U, V)`
/// transported by double reflection.
pub fn tube_surface(spec: &TubeSpec) -> Result<Vec<TubeSample>> {
    let r = spec.radius;
    if !(r > 0.0) || !r.is_finite() || spec.nt < 2 || spec.nphi < 1 {
        return Err(Error::InvalidInput("tube needs r > 0, nt >= 2 and nphi >= 1".into()));
    }
    let nt = spec.nt;
    let ts: Vec<f64> = (0..nt)
        .map(|i| if spec.curve.closed() { TAU * i as f64 / nt as f64 } else { TAU * i as f64 / (nt - 1) as f64 })
        .collect();
    let mut pos = Vec::with_capacity(nt);
    let mut tangent = Vec::with_capacity(nt);
    let mut kvec = Vec::with_capacity(nt);
    for &t in &ts {
        let [x, d1, d2] = spec.curve.eval(t);
        let speed2 = dot(d1, d1);
        if !(speed2 > 0.0) {
            return Err(Error::InvalidInput(format!("centre curve is singular at t = {t}")));
        }
        let tt = normalize(d1);
        pos.push(x);
        tangent.push(tt);
        kvec.push(scale(axpy(d2, -dot(d2, tt), tt), 1.0 / speed2));
    }

    let t0 = tangent[0];
    let seed = if t0[0].abs() <= t0[1].abs() && t0[0].abs() <= t0[2].abs() {
        [1.0, 0.0, 0.0]
    } else if t0[1].abs() <= t0[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let mut u = normalize(axpy(seed, -dot(seed, t0), t0));
    let mut frames = Vec::with_capacity(nt);
    frames.push(u);
    for i in 0..nt - 1 {
        let v1 = sub(pos[i + 1], pos[i]);
        let c1 = dot(v1, v1);
        let (ul, tl) = if c1 > 0.0 {
            (axpy(u, -2.0 / c1 * dot(v1, u), v1), axpy(tangent[i], -2.0 / c1 * dot(v1, tangent[i]), v1))
        } else {
            (u, tangent[i])
        };
        let v2 = sub(tangent[i + 1], tl);
        let c2 = dot(v2, v2);
        u = if c2 > 0.0 { axpy(ul, -2.0 / c2 * dot(v2, ul), v2) } else { ul };
        u = normalize(axpy(u, -dot(u, tangent[i + 1]), tangent[i + 1]));
        frames.push(u);
    }

    let mut out = Vec::with_capacity(nt * spec.nphi);
    for i in 0..nt {
        let uu = frames[i];
        let vv = cross(tangent[i], uu);
        for j in 0..spec.nphi {
            let phi = TAU * j as f64 / spec.nphi as f64;
            let nu = axpy(scale(uu, phi.cos()), phi.sin(), vv);
            let kn = dot(kvec[i], nu);
            let denom = 1.0 - r * kn;
            if !(denom > 0.0) {
                return Err(Error::EmbeddednessViolated { t: ts[i], phi, value: denom });
            }
            out.push(TubeSample { t: ts[i], phi, kappa_profile: 1.0 / r, kappa_long: -kn / denom });
        }
    }
    Ok(out)
}

/// Upper half of the torus of revolution with centre radius `big_r` and tube
/// radius `r`, as a graph `u = sqrt(r² - (ρ - R)²)` over a rectangle around
/// `(R, 0)` inside the annulus `|ρ - R| < 0.8 r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusTopChart {
    pub big_r: f64,
    pub r: f64,
    pub domain: Domain,
}

pub fn torus_top_chart(big_r: f64, r: f64) -> Result<TorusTopChart> {
    if !(r > 0.0 && big_r > r) {
        return Err(Error::InvalidInput(format!("torus needs 0 < r < R, got R = {big_r}, r = {r}")));
    }
    let y_half = 0.7 * (0.2 * r * (2.0 * big_r + 1.8 * r)).sqrt();
    Ok(TorusTopChart {
        big_r,
        r,
        domain: Domain::Rect { x_min: big_r - 0.8 * r, x_max: big_r + 0.8 * r, y_min: -y_half, y_max: y_half },
    })
}

impl GraphSurface for TorusTopChart {
    fn value(&self, x: f64, y: f64) -> f64 {
        let d = x.hypot(y) - self.big_r;
        (self.r * self.r - d * d).sqrt()
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let rho = x.hypot(y);
        let d = rho - self.big_r;
        let u = (self.r * self.r - d * d).sqrt();
        let u_rho = -d / u;
        let u_rhorho = -self.r * self.r / (u * u * u);
        radial_jet(x, y, rho, u_rho, u_rhorho)
    }

    fn domain(&self) -> Domain {
        self.domain
    }
}

/// Jet of a radial function `u(ρ)` at `(x, y)`, `ρ > 0`.
pub(crate) fn radial_jet(x: f64, y: f64, rho: f64, u_rho: f64, u_rhorho: f64) -> Jet2 {
    let g1 = u_rho / rho;
    let g3 = (u_rhorho - g1) / (rho * rho);
    radial_jet_from(x, y, g1, g3)
}

/// Jet from `g1 = u_ρ/ρ` and `g3 = (u_ρρ - g1)/ρ²`, which stay finite at the
/// origin for smooth radial functions.
pub(crate) fn radial_jet_from(x: f64, y: f64, g1: f64, g3: f64) -> Jet2 {
    Jet2::new(g1 * x, g1 * y, g1 + x * x * g3, x * y * g3, g1 + y * y * g3)
}
