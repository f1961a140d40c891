//! Photon bundles `gamma_{+1}`, `gamma_{-1}`, their tensor powers `gamma_h`,
//! the graviton bundles, and the fiberwise Hermitian product.

mod graviton;
mod polarization;
mod section;
mod tensor;

pub use graviton::{graviton_fiber, GravitonTensor};
pub(crate) use polarization::polarization_vector;
pub use polarization::{standard_polarization, PolarizationVector, Sign};
pub(crate) use section::check_overlap;
pub use section::{
    chart_transition, fiber_inner, helicity_power, overlap, overlap_hemisphere, section, FiberElement, FiberValue,
    HelicityBundle, Mode, DEGENERATE_OVERLAP, MAX_EXPLICIT_HELICITY,
};
pub use tensor::Tensor;
