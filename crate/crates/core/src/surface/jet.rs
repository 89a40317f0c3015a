use serde::Serialize;

use crate::error::{Error, Result};

use super::curvature::DEFAULT_DISC_EPS;

/// First and second partial derivatives `(p, q, r, s, t) = (u_x, u_y, u_xx,
/// u_xy, u_yy)` of a graph `z = u(x, y)` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Jet2 {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub t: f64,
}

impl Jet2 {
    pub const fn new(p: f64, q: f64, r: f64, s: f64, t: f64) -> Self {
        Self { p, q, r, s, t }
    }

    /// Jet of a graph tangent to the horizontal plane whose Hessian is `c` times
    /// the identity.
    pub const fn umbilical(c: f64) -> Self {
        Self::new(0.0, 0.0, c, 0.0, c)
    }

    pub fn is_finite(&self) -> bool {
        [self.p, self.q, self.r, self.s, self.t].iter().all(|v| v.is_finite())
    }

    pub fn hessian_det(&self) -> f64 {
        self.r * self.t - self.s * self.s
    }

    pub fn gradient_norm(&self) -> f64 {
        self.p.hypot(self.q)
    }

    /// Jet of `u ∘ R` at `R^{-1}(x, y)` where `R` rotates the plane by `angle`.
    ///
    /// The gradient transforms as `R^T ∇u` and the Hessian as `R^T D²u R`.
    pub fn in_rotated_chart(&self, angle: f64) -> Self {
        let (sn, cs) = angle.sin_cos();
        let p = cs * self.p + sn * self.q;
        let q = -sn * self.p + cs * self.q;
        // R^T H R with R = [[c, -s], [s, c]]
        let r = cs * cs * self.r + 2.0 * cs * sn * self.s + sn * sn * self.t;
        let s = -cs * sn * self.r + (cs * cs - sn * sn) * self.s + cs * sn * self.t;
        let t = sn * sn * self.r - 2.0 * cs * sn * self.s + cs * cs * self.t;
        Self::new(p, q, r, s, t)
    }
}

/// Mean and Gauss curvature of the graph with jet `j`, for the upward normal.
pub fn mean_gauss_from_jet(j: &Jet2) -> (f64, f64) {
    let w2 = 1.0 + j.p * j.p + j.q * j.q;
    let h = (j.r * (1.0 + j.q * j.q) - 2.0 * j.p * j.q * j.s + (1.0 + j.p * j.p) * j.t)
        / (2.0 * w2 * w2.sqrt());
    let k = (j.r * j.t - j.s * j.s) / (w2 * w2);
    (h, k)
}

/// Principal curvatures `κ1 ≥ κ2` from `(H, K)` with the default discriminant
/// floor `1e-12 (1 + H²)`.
pub fn principal_from_hk(h: f64, k: f64) -> Result<(f64, f64)> {
    principal_from_hk_with(h, k, DEFAULT_DISC_EPS)
}

/// Like [`principal_from_hk`] with a configurable relative floor `eps`:
/// discriminants in `[-eps (1 + H²), 0)` are clamped to zero.
pub fn principal_from_hk_with(h: f64, k: f64, eps: f64) -> Result<(f64, f64)> {
    let disc = h * h - k;
    let floor = eps * (1.0 + h * h);
    if disc < -floor {
        return Err(Error::DiscriminantNegative {
            value: disc,
            tolerance: floor,
        });
    }
    let root = disc.max(0.0).sqrt();
    Ok((h + root, h - root))
}
