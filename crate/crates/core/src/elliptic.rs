//! Wirtinger calculus, Beltrami coefficients of elliptic operators and
//! Hessian/index scans around critical points.

use num_complex::Complex64;
use serde::Serialize;

use crate::diagnostics::{CertConfig, Certificate, CertificateBuilder, Witness};
use crate::error::{out_of_range, Error, Result};
use crate::index::{winding_number, LoopSampling};
use crate::surface::{GraphSurface, Jet2};

/// A complex-valued function with its Wirtinger derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexJet {
    pub value: Complex64,
    pub f_z: Complex64,
    pub f_zbar: Complex64,
}

/// `f_z = (f_x - i f_y)/2`, `f_z̄ = (f_x + i f_y)/2`.
pub fn wirtinger(value: Complex64, f_x: Complex64, f_y: Complex64) -> ComplexJet {
    let i = Complex64::i();
    ComplexJet { value, f_z: 0.5 * (f_x - i * f_y), f_zbar: 0.5 * (f_x + i * f_y) }
}

/// Jet of the complex gradient `f = u_z = (u_x - i u_y)/2` of a real function.
pub fn complex_gradient(j: &Jet2) -> ComplexJet {
    let value = Complex64::new(0.5 * j.p, -0.5 * j.q);
    let f_x = Complex64::new(0.5 * j.r, -0.5 * j.s);
    let f_y = Complex64::new(0.5 * j.s, -0.5 * j.t);
    wirtinger(value, f_x, f_y)
}

/// `J = |f_z|² - |f_z̄|²`.
pub fn j_functional(f: &ComplexJet) -> f64 {
    f.f_z.norm_sqr() - f.f_zbar.norm_sqr()
}

/// Coefficients `a11, a12, a22, b1, b2` of `Σ a_ij u_ij + Σ b_i u_i = 0` at
/// one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticCoefficients {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub b1: f64,
    pub b2: f64,
}

impl EllipticCoefficients {
    /// Eigenvalues `(λ_min, λ_max)` of `((a11, a12), (a12, a22))`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let m = 0.5 * (self.a11 + self.a22);
        let d = (0.5 * (self.a11 - self.a22)).hypot(self.a12);
        (m - d, m + d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beltrami {
    pub mu: Complex64,
    pub beta: Complex64,
    pub mu_abs: f64,
    /// Eigenvalue ratio `λ_max / λ_min`.
    pub k_mu: f64,
    /// `| |μ| - (K - 1)/(K + 1) |`.
    pub identity_defect: f64,
}

/// `μ = (a11 - a22 + 2i a12)/(a11 + a22)`, `β = (b1 + i b2)/(a11 + a22)`.
pub fn beltrami(c: &EllipticCoefficients) -> Result<Beltrami> {
    let trace = c.a11 + c.a22;
    if !(trace > 0.0) {
        return Err(Error::DegenerateTrace { trace });
    }
    let (lmin, lmax) = c.eigenvalues();
    if !(lmin > 0.0) {
        return Err(Error::NotElliptic { min_eigenvalue: lmin });
    }
    let mu = Complex64::new(c.a11 - c.a22, 2.0 * c.a12) / trace;
    let beta = Complex64::new(c.b1, c.b2) / trace;
    let k_mu = lmax / lmin;
    let mu_abs = mu.norm();
    Ok(Beltrami { mu, beta, mu_abs, k_mu, identity_defect: (mu_abs - (k_mu - 1.0) / (k_mu + 1.0)).abs() })
}

/// `μ0 = (𝒦 - 1)/(𝒦 + 1)` with `𝒦 = λ2/λ1`.
pub fn ellipticity_bound(lambda1: f64, lambda2: f64) -> Result<f64> {
    if !(lambda1 > 0.0 && lambda1 <= lambda2 && lambda2.is_finite()) {
        return Err(out_of_range("ellipticity", format!("need 0 < lambda1 <= lambda2, got ({lambda1}, {lambda2})")));
    }
    let k = lambda2 / lambda1;
    Ok((k - 1.0) / (k + 1.0))
}

/// Certifies `|f_z̄| ≤ μ0 |f_z| + c |f|` at every sample; margins are scaled
/// by `1 + |f_z| + |f|`.
pub fn similarity_inequality_check(
    samples: &[([f64; 2], ComplexJet)],
    mu0: f64,
    c: f64,
    cfg: &CertConfig,
) -> Result<Certificate> {
    if !(0.0..1.0).contains(&mu0) || !(c >= 0.0) {
        return Err(out_of_range("similarity", format!("need 0 <= mu0 < 1 and c >= 0, got ({mu0}, {c})")));
    }
    let mut b = CertificateBuilder::new("similarity-inequality", cfg.eps_cert);
    b.value("mu0", mu0);
    b.value("c", c);
    for (pos, f) in samples {
        let (fz, fv) = (f.f_z.norm(), f.value.norm());
        let margin = mu0 * fz + c * fv - f.f_zbar.norm();
        b.observe(Witness::at(*pos, None, margin / (1.0 + fz + fv)));
    }
    Ok(b.finish())
}

/// Windings of `∇u_x = (u_xx, u_xy)` and `∇u_y = (u_xy, u_yy)` on one loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoopIndices {
    pub radius: f64,
    pub index_ux: i64,
    pub index_uy: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPointReport {
    pub center: [f64; 2],
    pub det_samples: usize,
    pub det_max: f64,
    pub det_max_at: [f64; 2],
    pub det_negative: bool,
    pub loops: Vec<LoopIndices>,
    pub indices_agree: bool,
    pub indices_nonpositive: bool,
}

impl CriticalPointReport {
    pub fn certificates(&self, prefix: &str) -> Vec<Certificate> {
        let det = Certificate::from_check(
            format!("{prefix}/det-negative"),
            self.det_negative,
            -self.det_max,
            format!("largest det D2u on the annulus at ({}, {})", self.det_max_at[0], self.det_max_at[1]),
        )
        .with_value("det_max", self.det_max);
        let worst = self.loops.iter().map(|l| l.index_ux.max(l.index_uy)).max().unwrap_or(0);
        let mismatch = self.loops.iter().filter(|l| l.index_ux != l.index_uy).count();
        let index = Certificate::from_check(
            format!("{prefix}/index-nonpositive"),
            self.indices_agree && self.indices_nonpositive,
            if self.indices_agree { -(worst as f64) } else { -(mismatch as f64) },
            "windings of grad u_x and grad u_y agree and are non-positive",
        )
        .with_value("max_index", worst as f64);
        vec![det, index]
    }
}

/// Scans `det D²u` on a polar grid of the annulus `radii[0] ≤ r ≤ radii[last]`
/// around the critical point `p0`, and winds `∇u_x`, `∇u_y` on a loop of each
/// radius.
pub fn critical_point_scan<G: GraphSurface + ?Sized>(
    u: &G,
    p0: [f64; 2],
    radii: &[f64],
    loop_samples: usize,
    grid: [usize; 2],
) -> Result<CriticalPointReport> {
    let j0 = u.jet(p0[0], p0[1]);
    let gradient_norm = j0.gradient_norm();
    if !(gradient_norm <= 1e-12) {
        return Err(Error::NotACriticalPoint { gradient_norm });
    }
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidInput("critical point scan needs positive radii".into()));
    }
    let r_lo = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let r_hi = radii.iter().copied().fold(0.0, f64::max);
    let [nr, nth] = [grid[0].max(2), grid[1].max(4)];
    let mut det_max = f64::NEG_INFINITY;
    let mut det_max_at = p0;
    for i in 0..nr {
        let r = r_lo + (r_hi - r_lo) * i as f64 / (nr - 1) as f64;
        for k in 0..nth {
            let th = std::f64::consts::TAU * k as f64 / nth as f64;
            let (x, y) = (p0[0] + r * th.cos(), p0[1] + r * th.sin());
            let d = u.jet(x, y).hessian_det();
            if d > det_max || d.is_nan() {
                det_max = d;
                det_max_at = [x, y];
            }
        }
    }
    let mut loops = Vec::with_capacity(radii.len());
    for &radius in radii {
        let lp = LoopSampling::new(p0, radius, loop_samples)?;
        let index_ux = winding_number(
            |x, y| {
                let j = u.jet(x, y);
                [j.r, j.s]
            },
            &lp,
        )?;
        let index_uy = winding_number(
            |x, y| {
                let j = u.jet(x, y);
                [j.s, j.t]
            },
            &lp,
        )?;
        loops.push(LoopIndices { radius, index_ux, index_uy });
    }
    Ok(CriticalPointReport {
        center: p0,
        det_samples: nr * nth,
        det_max,
        det_max_at,
        det_negative: det_max < 0.0,
        indices_agree: loops.iter().all(|l| l.index_ux == l.index_uy),
        indices_nonpositive: loops.iter().all(|l| l.index_ux <= 0 && l.index_uy <= 0),
        loops,
    })
}
