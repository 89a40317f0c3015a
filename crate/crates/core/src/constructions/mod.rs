//! Explicit example surfaces.

mod ellipsoid;
mod polynomial;
mod sandglass;
mod sphere;
mod tube;

pub use ellipsoid::{ellipsoid_chart, EllipsoidChart, EllipsoidCharts};
pub use polynomial::{mu_ratio, polynomial_mu_bound, quasiminimal_polynomial, MuBound, Polynomial, PolynomialGraph};
pub use sandglass::{
    closure_convergence, integrate_profile, integrate_profile_unchecked, mirror_curvatures, mirror_profile,
    perturbed_curvatures, refute_quasi_cmc, sandglass_verify, solve_bump_amplitude, AmplitudeSolve, BumpProfile,
    ClosureConvergence, NeckPerturbation, ProfileChecks, Sandglass, SandglassSpec, CLOSURE_TOL, DEFAULT_A, DEFAULT_B,
    DEFAULT_PERTURBATION, DEFAULT_STEP, MAX_PERTURBATION, SIMPSON_PANELS,
};
pub use sphere::{comparison_sphere_graph, ComparisonSphere};
pub use tube::{torus_top_chart, tube_surface, CenterCurve, FourierCurve, TorusTopChart, TubeSample, TubeSpec};
