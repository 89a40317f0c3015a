use std::fmt;

/// Postcondition clauses checked after integrating a sandglass profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileClause {
    /// The tangent is vertical at the end of the neck: θ(b) = π/2.
    Closure,
    /// θ(s) < π on the whole profile.
    ThetaBelowPi,
    /// x(s) > 0 away from the starting pole.
    XPositive,
}

impl ProfileClause {
    pub fn claim_id(self) -> &'static str {
        match self {
            ProfileClause::Closure => "sandglass/closure",
            ProfileClause::ThetaBelowPi => "sandglass/theta-below-pi",
            ProfileClause::XPositive => "sandglass/x-positive",
        }
    }
}

impl fmt::Display for ProfileClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.claim_id())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("discriminant H^2 - K = {value:e} is below the admissible floor -{tolerance:e}")]
    DiscriminantNegative { value: f64, tolerance: f64 },

    #[error("finite-difference stencil around ({x}, {y}) with step {step} leaves the surface domain")]
    StencilOutsideDomain { x: f64, y: f64, step: f64 },

    #[error("profile sample at s = {s} has x = {x} <= 0 inside the requested range")]
    AxisSingularity { s: f64, x: f64 },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("curvature pair ({kappa1}, {kappa2}) lies outside the wedge")]
    OutsideWedge { kappa1: f64, kappa2: f64 },

    #[error("curvature diagram has no points inside the window of radius {radius}")]
    EmptyWindow { radius: f64 },

    #[error("vector field nearly vanishes on the loop at ({x}, {y}): |F| = {magnitude:e}")]
    FieldVanishesOnLoop { x: f64, y: f64, magnitude: f64 },

    #[error("loop remains under-sampled with {samples} samples (largest angle step {max_step:.3} rad)")]
    UnderSampled { samples: usize, max_step: f64 },

    #[error("loop around ({x}, {y}) of radius {radius} meets the umbilic set (H^2 - K = {residual:e})")]
    LoopNotUmbilicFree { x: f64, y: f64, radius: f64, residual: f64 },

    #[error("denominator (h_xx - h_yy)^2 + 4 h_xy^2 vanishes at theta = {theta}")]
    DenominatorVanishes { theta: f64 },

    #[error("bisection could not bracket the bump amplitude")]
    NoBracket,

    #[error("profile postcondition {clause} violated: {detail}")]
    PostconditionViolated { clause: ProfileClause, detail: String },

    #[error("tube is not embedded at t = {t}, phi = {phi}: 1 - r k_n = {value}")]
    EmbeddednessViolated { t: f64, phi: f64, value: f64 },

    #[error("domain radius {radius} exceeds 1/|c| = {limit}")]
    DomainTooLarge { radius: f64, limit: f64 },

    #[error("ellipsoid semi-axes must be pairwise distinct, got {0:?}")]
    AxesNotDistinct([f64; 3]),

    #[error("coefficient trace a11 + a22 = {trace} is not positive")]
    DegenerateTrace { trace: f64 },

    #[error("coefficient matrix is not positive definite (smallest eigenvalue {min_eigenvalue})")]
    NotElliptic { min_eigenvalue: f64 },

    #[error("gradient norm {gradient_norm:e} at the scan centre exceeds the critical-point tolerance")]
    NotACriticalPoint { gradient_norm: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        detail: detail.into(),
    }
}
