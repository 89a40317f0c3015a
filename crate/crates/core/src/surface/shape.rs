use serde::Serialize;

use super::jet::Jet2;

/// Matrix of the shape operator `II · I^{-1}` of a graph in the `(x, y)` chart,
/// laid out as `[[(Ψ1)_x, (Ψ2)_x], [(Ψ1)_y, (Ψ2)_y]]` with
/// `Ψ(p, q) = (p, q) / sqrt(1 + p² + q²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeOperatorSample {
    pub alpha: [[f64; 2]; 2],
    pub x: f64,
    pub y: f64,
}

impl ShapeOperatorSample {
    pub fn trace(&self) -> f64 {
        self.alpha[0][0] + self.alpha[1][1]
    }

    pub fn det(&self) -> f64 {
        self.alpha[0][0] * self.alpha[1][1] - self.alpha[0][1] * self.alpha[1][0]
    }

    /// `tr² - 4 det = (α11 - α22)² + 4 α12 α21`, i.e. `4 (H² - K)` evaluated
    /// without cancellation near umbilics.
    pub fn discriminant(&self) -> f64 {
        let d = self.alpha[0][0] - self.alpha[1][1];
        d * d + 4.0 * self.alpha[0][1] * self.alpha[1][0]
    }

    /// Real eigenvalues `(λ1, λ2)` with `λ1 ≥ λ2`; a slightly negative
    /// discriminant from rounding is clamped.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_tr = 0.5 * self.trace();
        let root = 0.5 * self.discriminant().max(0.0).sqrt();
        (half_tr + root, half_tr - root)
    }

    /// Traceless deviation field `(α11 - α22, α12 + α21)`.
    ///
    /// Along a loop avoiding umbilics its winding number is twice the index of
    /// the principal line fields; for a symmetric matrix this is
    /// `(α11 - α22, 2 α12)`.
    pub fn deviation_field(&self) -> [f64; 2] {
        [
            self.alpha[0][0] - self.alpha[1][1],
            self.alpha[0][1] + self.alpha[1][0],
        ]
    }
}

/// Shape operator of the graph with jet `j` at `(x, y)`, obtained by the chain
/// rule from `Ψ1 = p/W`, `Ψ2 = q/W`, `W = sqrt(1 + p² + q²)`.
pub fn shape_operator(j: &Jet2, x: f64, y: f64) -> ShapeOperatorSample {
    let w2 = 1.0 + j.p * j.p + j.q * j.q;
    let w3 = w2 * w2.sqrt();
    let pq = j.p * j.q;
    let a11 = ((1.0 + j.q * j.q) * j.r - pq * j.s) / w3;
    let a12 = (-pq * j.r + (1.0 + j.p * j.p) * j.s) / w3;
    let a21 = ((1.0 + j.q * j.q) * j.s - pq * j.t) / w3;
    let a22 = (-pq * j.s + (1.0 + j.p * j.p) * j.t) / w3;
    ShapeOperatorSample {
        alpha: [[a11, a12], [a21, a22]],
        x,
        y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::mean_gauss_from_jet;

    #[test]
    fn umbilical_jet_gives_scaled_identity() {
        let s = shape_operator(&Jet2::umbilical(2.5), 0.0, 0.0);
        assert_eq!(s.alpha, [[2.5, 0.0], [0.0, 2.5]]);
    }

    #[test]
    fn critical_point_gives_hessian() {
        let s = shape_operator(&Jet2::new(0.0, 0.0, 1.0, -2.0, 3.0), 0.0, 0.0);
        assert_eq!(s.alpha, [[1.0, -2.0], [-2.0, 3.0]]);
    }

    #[test]
    fn trace_and_det_match_mean_and_gauss() {
        let j = Jet2::new(0.8, -1.3, 2.0, 0.4, -1.1);
        let s = shape_operator(&j, 0.0, 0.0);
        let (h, k) = mean_gauss_from_jet(&j);
        assert!((s.trace() - 2.0 * h).abs() <= 1e-12 * h.abs().max(1.0));
        assert!((s.det() - k).abs() <= 1e-12 * k.abs().max(1.0));
        assert!((s.discriminant() / 4.0 - (h * h - k)).abs() < 1e-12);
    }
}
