use thiserror::Error;

use crate::geometry::Chart;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("momentum {norm:e} is below the excluded-origin threshold {epsilon:e}")]
    ZeroMomentum { norm: f64, epsilon: f64 },

    #[error("direction {khat:?} lies within the pole guard of the {chart:?} chart's excluded pole")]
    ChartSingularity { khat: [f64; 3], chart: Chart },

    #[error("mesh resolution too low: {0}")]
    ResolutionTooLow(String),

    #[error("mesh audit failed: {0}")]
    MeshAudit(String),

    #[error("representation mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),

    #[error("overlap magnitude {magnitude:e} below {threshold:e} (mesh too coarse?)")]
    DegenerateOverlap { magnitude: f64, threshold: f64 },

    #[error("face {face}: plaquette phase {phase:.6} rad is not admissible ({reason})")]
    AdmissibilityViolation { face: usize, phase: f64, reason: String },

    #[error("phase increment {increment:.6} rad at sample {sample} exceeds pi/2")]
    AliasingRisk { sample: usize, increment: f64 },

    #[error("too few samples: {got} < {required}")]
    TooFewSamples { got: usize, required: usize },

    #[error("element is not an explicit photon fiber element (h = {h})")]
    NotPhotonMode { h: i32 },

    #[error("matrix is not a proper orthochronous Lorentz transform: {0}")]
    InvalidLorentz(String),

    #[error("rotation phase is not linear in the angle (residual {residual:e})")]
    NonLinearPhase { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
