use serde::Serialize;

use crate::error::Result;
use crate::surface::CurvaturePoint;

use super::certificate::{CertConfig, Certificate, CertificateBuilder, Witness};
use super::wedge::WedgeParams;

/// `μ (H² - K) - (H - c)²`.
pub fn quasi_cmc_margin(p: &CurvaturePoint, c: f64, mu: f64) -> f64 {
    let d = p.h - c;
    mu * p.discriminant - d * d
}

/// `2Λ (κ1 - c)(κ2 - c) - (κ1 - c)² - (κ2 - c)²`, equal to
/// `4/(1 - μ)` times the quasi-CMC margin.
pub fn wedge_margin(kappa1: f64, kappa2: f64, params: &WedgeParams) -> f64 {
    let a = kappa1 - params.c;
    let b = kappa2 - params.c;
    2.0 * params.lambda * a * b - a * a - b * b
}

/// `-(κ1 - c)(κ2 - c)`.
pub fn alexandrov_margin(kappa1: f64, kappa2: f64, c: f64) -> f64 {
    -(kappa1 - c) * (kappa2 - c)
}

fn witness(p: &CurvaturePoint, margin: f64) -> Witness {
    Witness::at(p.position, Some([p.kappa1, p.kappa2]), margin)
}

/// Certifies `(H - c)² ≤ μ (H² - K)` on every sample.
pub fn check_quasi_cmc(points: &[CurvaturePoint], c: f64, mu: f64, cfg: &CertConfig) -> Result<Certificate> {
    let params = WedgeParams::from_mu(mu, c)?;
    let mut b = CertificateBuilder::new("quasi-cmc", cfg.eps_cert);
    b.value("c", c);
    b.value("mu", params.mu);
    for p in points {
        b.observe(witness(p, quasi_cmc_margin(p, c, mu) / p.scale()));
    }
    Ok(b.finish())
}

/// Wedge certificate plus its pointwise agreement with the quasi-CMC check
/// under `Λ = (μ + 1)/(μ - 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WedgeCheck {
    pub certificate: Certificate,
    pub agreements: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<[f64; 2]>,
}

impl WedgeCheck {
    pub fn consistent(&self) -> bool {
        self.disagreements == 0
    }
}

pub fn check_wedge(points: &[CurvaturePoint], params: &WedgeParams, cfg: &CertConfig) -> WedgeCheck {
    let ratio = params.margin_ratio();
    let mut b = CertificateBuilder::new("wedge", cfg.eps_cert * ratio);
    b.value("c", params.c);
    b.value("lambda", params.lambda);
    b.value("m1", params.m1);
    b.value("m2", params.m2);
    let (mut agreements, mut disagreements, mut first_disagreement) = (0, 0, None);
    for p in points {
        let scale = p.scale();
        let w = wedge_margin(p.kappa1, p.kappa2, params) / scale;
        let q = quasi_cmc_margin(p, params.c, params.mu) / scale;
        let w_ok = w >= -cfg.eps_cert * ratio;
        let q_ok = q >= -cfg.eps_cert;
        if w_ok == q_ok {
            agreements += 1;
        } else {
            disagreements += 1;
            first_disagreement.get_or_insert(p.position);
        }
        b.observe(witness(p, w));
    }
    b.value("agreements", agreements as f64);
    b.value("disagreements", disagreements as f64);
    WedgeCheck {
        certificate: b.finish(),
        agreements,
        disagreements,
        first_disagreement,
    }
}

/// Certifies `(κ1 - c)(κ2 - c) ≤ 0` with equality only at umbilics of value `c`.
///
/// A sample fails when the scaled product exceeds `eps_cert`, or when the
/// product is not strictly negative while `max |κi - c| > eps_eq`.
pub fn check_alexandrov(points: &[CurvaturePoint], c: f64, cfg: &CertConfig) -> Certificate {
    let mut b = CertificateBuilder::new("alexandrov", cfg.eps_cert);
    b.value("c", c);
    for p in points {
        let (x, y) = (p.kappa1 - c, p.kappa2 - c);
        let product_margin = alexandrov_margin(p.kappa1, p.kappa2, c) / p.scale();
        let mut ok = product_margin >= -cfg.eps_cert;
        let mut margin = product_margin;
        let spread = x.abs().max(y.abs());
        if x * y >= 0.0 && spread > cfg.eps_eq {
            ok = false;
            margin = margin.min(cfg.eps_eq - spread);
        }
        b.observe_with(witness(p, margin), ok);
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(k1: f64, k2: f64) -> CurvaturePoint {
        CurvaturePoint::from_principal([k1, k2], k1, k2)
    }

    #[test]
    fn sphere_holds_everywhere() {
        let pts = vec![pt(1.0, 1.0); 10];
        let cfg = CertConfig::default();
        let c = check_quasi_cmc(&pts, 1.0, 0.5, &cfg).unwrap();
        assert!(c.holds() && c.min_margin == Some(0.0));
        let params = WedgeParams::from_mu(0.5, 1.0).unwrap();
        assert!(check_wedge(&pts, &params, &cfg).certificate.holds());
        assert!(check_alexandrov(&pts, 1.0, &cfg).holds());
    }

    #[test]
    fn both_above_c_fails_wedge() {
        let params = WedgeParams::from_lambda(-3.0, 0.0).unwrap();
        let w = check_wedge(&[pt(2.0, 1.0)], &params, &CertConfig::default());
        assert!(!w.certificate.holds());
        assert!(w.consistent());
        assert!(w.certificate.witness.unwrap().margin < 0.0);
    }

    #[test]
    fn alexandrov_equality_off_umbilic_fails() {
        let cfg = CertConfig::default();
        assert!(!check_alexandrov(&[pt(1.5, 1.0)], 1.0, &cfg).holds());
        assert!(check_alexandrov(&[pt(1.5, 0.9)], 1.0, &cfg).holds());
        assert!(!check_alexandrov(&[pt(1.5, 1.1)], 1.0, &cfg).holds());
    }

    #[test]
    fn margins_are_proportional() {
        let params = WedgeParams::from_mu(0.3, 0.5).unwrap();
        let p = pt(2.0, -1.0);
        let w = wedge_margin(p.kappa1, p.kappa2, &params);
        let q = quasi_cmc_margin(&p, 0.5, 0.3);
        assert!((w - params.margin_ratio() * q).abs() < 1e-12);
    }
}
