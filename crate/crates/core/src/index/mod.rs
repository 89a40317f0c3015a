//! Winding numbers, umbilic detection, principal line-field indices and
//! Poincaré–Hopf bookkeeping.

mod halfint;
mod umbilics;
mod winding;

pub use halfint::HalfInt;
pub use umbilics::{
    find_umbilics, line_field_index, poincare_hopf_check, umbilicity_gauge, GridSpec, Umbilic,
    UmbilicScan,
};
pub use winding::{winding_number, winding_report, LoopSampling, Winding, MAX_STEP, RETRIES};
