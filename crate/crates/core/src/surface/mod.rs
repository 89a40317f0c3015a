//! Surfaces as graphs and rotational profiles, and their curvatures.

mod curvature;
mod finite_diff;
mod graph;
mod jet;
mod profile;
mod shape;

pub use curvature::{CurvaturePoint, DEFAULT_DISC_EPS};
pub use finite_diff::{finite_difference_jet, FdJet, FiniteDifferenceGraph};
pub use graph::{Domain, GraphSurface, Provenance};
pub use jet::{mean_gauss_from_jet, principal_from_hk, principal_from_hk_with, Jet2};
pub use profile::{
    rotational_curvatures, Profile, ProfileSample, RotationalCurvature, DEFAULT_X_MIN_TOL,
};
pub use shape::{shape_operator, ShapeOperatorSample};
