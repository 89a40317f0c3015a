//! Numerical toolkit for principal curvatures, umbilic indices and
//! quasiconformal curvature inequalities of surfaces in R^3.
//!
//! The crate is organised bottom-up:
//!
//! * [`surface`]: second-order jets of graphs, mean/Gauss/principal
//!   curvatures, the shape operator, finite-difference jets and rotational
//!   profiles.
//! * [`diagnostics`]: wedge constants, sample-based certificates for the
//!   quasi-CMC, wedge and Alexandrov inequalities, and curvature-diagram
//!   analysis.
//! * [`index`]: winding numbers, umbilic detection, line-field indices and
//!   Poincaré–Hopf bookkeeping.
//! * [`constructions`]: explicit example surfaces (quasiminimal polynomial
//!   graph, sandglass sphere, tubes, comparison sphere, ellipsoid charts).
//! * [`elliptic`]: Wirtinger calculus, Beltrami coefficients and Hessian
//!   scans around critical points of elliptic solutions.
//!
//! Every operation is pure and deterministic.

pub mod constructions;
pub mod diagnostics;
pub mod elliptic;
pub mod error;
pub mod index;
pub mod numerics;
pub mod surface;

pub use error::{Error, Result};
