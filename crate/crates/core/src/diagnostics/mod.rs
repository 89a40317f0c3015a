//! Wedge constants, sample-based inequality certificates and curvature
//! diagram analysis.

mod certificate;
mod checks;
mod diagram;
mod wedge;

pub use certificate::{CertConfig, Certificate, CertificateBuilder, Verdict, Witness};
pub use checks::{
    alexandrov_margin, check_alexandrov, check_quasi_cmc, check_wedge, quasi_cmc_margin,
    wedge_margin, WedgeCheck,
};
pub use diagram::{diagram_wedge_analysis, DiagramAnalysis, WedgeVerdict, W_SLOPE_MAX, W_SLOPE_MIN};
pub use wedge::{params_from_bounds, tau_interpolant, BoundsParams, Tau, WedgeParams};
