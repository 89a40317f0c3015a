use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{Domain, GraphSurface, Jet2};

/// Sparse bivariate polynomial `Σ c x^i y^j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    pub terms: Vec<(f64, u32, u32)>,
}

impl Polynomial {
    pub fn new(terms: Vec<(f64, u32, u32)>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, i, j)| c * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    pub fn dx(&self) -> Self {
        Self::new(
            self.terms
                .iter()
                .filter(|t| t.1 > 0)
                .map(|&(c, i, j)| (c * i as f64, i - 1, j))
                .collect(),
        )
    }

    pub fn dy(&self) -> Self {
        Self::new(
            self.terms
                .iter()
                .filter(|t| t.2 > 0)
                .map(|&(c, i, j)| (c * j as f64, i, j - 1))
                .collect(),
        )
    }

    /// Total degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().filter(|t| t.0 != 0.0).map(|t| t.1 + t.2);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// Graph of a polynomial with exact polynomial derivatives.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialGraph {
    pub poly: Polynomial,
    #[serde(skip)]
    derivs: [Polynomial; 5],
    pub domain: Domain,
}

impl PolynomialGraph {
    pub fn new(poly: Polynomial, domain: Domain) -> Self {
        let (px, py) = (poly.dx(), poly.dy());
        let derivs = [px.clone(), py.clone(), px.dx(), px.dy(), py.dy()];
        Self { poly, derivs, domain }
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// `(u_xx, u_xy, u_yy)`.
    pub fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        [self.derivs[2].eval(x, y), self.derivs[3].eval(x, y), self.derivs[4].eval(x, y)]
    }
}

impl GraphSurface for PolynomialGraph {
    fn value(&self, x: f64, y: f64) -> f64 {
        self.poly.eval(x, y)
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        let d = &self.derivs;
        Jet2::new(d[0].eval(x, y), d[1].eval(x, y), d[2].eval(x, y), d[3].eval(x, y), d[4].eval(x, y))
    }

    fn domain(&self) -> Domain {
        self.domain
    }
}

/// `h = xy(x² + y²)(x² + 16y²) = x⁵y + 17x³y³ + 16xy⁵` on `[-1, 1]²`.
pub fn quasiminimal_polynomial() -> PolynomialGraph {
    PolynomialGraph::new(
        Polynomial::new(vec![(1.0, 5, 1), (17.0, 3, 3), (16.0, 1, 5)]),
        Domain::square(1.0),
    )
}

/// `(u_xx + u_yy)² / ((u_xx - u_yy)² + 4 u_xy²)` from a Hessian triple.
pub fn mu_ratio(hess: [f64; 3]) -> (f64, f64) {
    let [r, s, t] = hess;
    let num = (r + t) * (r + t);
    let den = (r - t) * (r - t) + 4.0 * s * s;
    (num / den, den)
}

/// Result of scanning `mu_ratio` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuBound {
    pub mu_star: f64,
    pub argmax_theta: f64,
    pub samples: usize,
    /// Largest `det D²u` on the unit circle.
    pub max_det: f64,
    /// Largest `|ratio(r = 2) - ratio(r = 1)|` over the same angles.
    pub homogeneity_defect: f64,
}

/// `μ* = max_θ mu_ratio` on `n ≥ 1024` equally spaced angles of `r = 1`.
pub fn polynomial_mu_bound(g: &PolynomialGraph, n: usize) -> Result<MuBound> {
    if n < 1024 {
        return Err(Error::InvalidInput(format!("mu bound needs at least 1024 samples, got {n}")));
    }
    let mut out = MuBound {
        mu_star: f64::NEG_INFINITY,
        argmax_theta: 0.0,
        samples: n,
        max_det: f64::NEG_INFINITY,
        homogeneity_defect: 0.0,
    };
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        let (c, s) = (theta.cos(), theta.sin());
        let h1 = g.hessian(c, s);
        let (ratio, den) = mu_ratio(h1);
        if !(den > 0.0) {
            return Err(Error::DenominatorVanishes { theta });
        }
        let (ratio2, _) = mu_ratio(g.hessian(2.0 * c, 2.0 * s));
        out.homogeneity_defect = out.homogeneity_defect.max((ratio2 - ratio).abs());
        out.max_det = out.max_det.max(h1[0] * h1[2] - h1[1] * h1[1]);
        if ratio > out.mu_star {
            out.mu_star = ratio;
            out.argmax_theta = theta;
        }
    }
    Ok(out)
}
