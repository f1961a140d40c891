//! First Chern numbers of helicity bundles, by lattice field strength and by
//! clutching-function winding.

mod clutching;
mod lattice;
mod links;

use serde::{Deserialize, Serialize};

pub use clutching::{chern_clutching, chern_clutching_bundle, clutching_function, clutching_sample_floor};
pub use lattice::{
    additivity_check, chern_graviton, chern_lattice, chern_lattice_bundle, chern_lattice_field, curvature_profile,
    curvature_profile_field, geodesic_uniformity_error, plaquette_phases, uniformity_error, AdditivityReport,
    CurvatureSample, LatticeOptions,
};
pub use links::{BundleLinks, ChartAssignment, GaugeTransformed, GravitonLinks, LinkField, ProductLinks};

/// A result is accepted when its raw value is this close to an integer.
pub const ACCEPT_RESIDUAL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LatticeFieldStrength,
    ClutchingWinding,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernReport {
    pub h: i32,
    pub method: Method,
    pub chern: i64,
    /// Total curvature in units of `2 pi`, before rounding.
    pub raw_sum: f64,
    pub integer_residual: f64,
    /// Largest `|plaquette phase|` or, for clutching, largest phase step.
    pub max_plaquette_phase: f64,
    pub mesh: Option<String>,
    pub samples: Option<usize>,
}

impl ChernReport {
    pub fn accepted(&self) -> bool {
        self.integer_residual < ACCEPT_RESIDUAL && self.max_plaquette_phase < std::f64::consts::PI
    }
}
