//! Poincaré group action on helicity fibers.

mod action;
mod helicity;
mod little_group;

pub use action::{
    boost_fiber, boost_plane_wave_field, field_tensor_boost, photon_field, rotate_fiber, translate_fiber,
    BoostedPhoton, PoincareElement,
};
pub use helicity::{
    measure_helicity, rotation_phase, so2_rep_apply, SO2Rep, LINEARITY_TOLERANCE, MEASURE_SAMPLES, MEASURE_STEP,
};
pub use little_group::{
    little_group_element, null_rotation, standard_transform, wigner_angle, wigner_phase_check, LittleGroupElement,
    WignerReport, FIXED_POINT_TOLERANCE, WIGNER_TOLERANCE,
};
