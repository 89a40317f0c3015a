use serde::Serialize;

use crate::error::{Error, Result};

use super::graph::{Domain, GraphSurface, Provenance};
use super::jet::Jet2;

/// A finite-difference jet with its per-component error estimate
/// `|D(h/2) - D(h)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdJet {
    pub jet: Jet2,
    pub error: Jet2,
}

impl FdJet {
    pub fn max_error(&self) -> f64 {
        let e = &self.error;
        [e.p, e.q, e.r, e.s, e.t].into_iter().fold(0.0, f64::max)
    }
}

/// Central first and second differences at steps `h` and `h/2`, combined by one
/// Richardson extrapolation step.
///
/// The stencil needs the value evaluator on the square of half-width `4h`
/// around the point.
pub fn finite_difference_jet<F>(value: F, domain: &Domain, x: f64, y: f64, h: f64) -> Result<FdJet>
where
    F: Fn(f64, f64) -> f64,
{
    if !(h > 0.0) || !domain.contains_square(x, y, 4.0 * h) {
        return Err(Error::StencilOutsideDomain { x, y, step: h });
    }
    let coarse = central_jet(&value, x, y, h);
    let fine = central_jet(&value, x, y, 0.5 * h);
    let rich = |c: f64, f: f64| (4.0 * f - c) / 3.0;
    let jet = Jet2::new(
        rich(coarse.p, fine.p),
        rich(coarse.q, fine.q),
        rich(coarse.r, fine.r),
        rich(coarse.s, fine.s),
        rich(coarse.t, fine.t),
    );
    let error = Jet2::new(
        (fine.p - coarse.p).abs(),
        (fine.q - coarse.q).abs(),
        (fine.r - coarse.r).abs(),
        (fine.s - coarse.s).abs(),
        (fine.t - coarse.t).abs(),
    );
    Ok(FdJet { jet, error })
}

fn central_jet<F: Fn(f64, f64) -> f64>(u: &F, x: f64, y: f64, h: f64) -> Jet2 {
    let c = u(x, y);
    let (xp, xm) = (u(x + h, y), u(x - h, y));
    let (yp, ym) = (u(x, y + h), u(x, y - h));
    let mixed = u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h);
    Jet2::new(
        (xp - xm) / (2.0 * h),
        (yp - ym) / (2.0 * h),
        (xp - 2.0 * c + xm) / (h * h),
        mixed / (4.0 * h * h),
        (yp - 2.0 * c + ym) / (h * h),
    )
}

/// Graph whose jets come from finite differences of a value evaluator.
///
/// Points closer than `4 * step` to the domain boundary have no jet; callers
/// get a jet of NaNs there.
pub struct FiniteDifferenceGraph<F> {
    pub value: F,
    pub domain: Domain,
    pub step: f64,
}

impl<F: Fn(f64, f64) -> f64 + Sync> FiniteDifferenceGraph<F> {
    pub fn new(value: F, domain: Domain, step: f64) -> Self {
        Self { value, domain, step }
    }

    pub fn fd_jet(&self, x: f64, y: f64) -> Result<FdJet> {
        finite_difference_jet(&self.value, &self.domain, x, y, self.step)
    }
}

impl<F: Fn(f64, f64) -> f64 + Sync> GraphSurface for FiniteDifferenceGraph<F> {
    fn value(&self, x: f64, y: f64) -> f64 {
        (self.value)(x, y)
    }

    fn jet(&self, x: f64, y: f64) -> Jet2 {
        self.fd_jet(x, y)
            .map(|j| j.jet)
            .unwrap_or(Jet2::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN))
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn provenance(&self) -> Provenance {
        Provenance::FiniteDifference
    }
}
