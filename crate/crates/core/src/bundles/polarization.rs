use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{standard_frame, CVec3, Chart, MomentumPoint, Vec3};

/// Circular polarization handedness: `Plus` is R (helicity +1), `Minus` is L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(h: i32) -> Sign {
        if h >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Transverse electric-field polarization at a lightcone point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizationVector {
    pub v: CVec3,
    pub k: MomentumPoint,
}

impl PolarizationVector {
    /// `|k . v|` for the unit direction, no conjugation.
    pub fn transversality_defect(&self) -> f64 {
        self.v.dot_real(&self.k.direction()).norm()
    }
}

/// `(e1 +/- i e2)/sqrt(2)` in the chart's frame at `khat`.
pub fn standard_polarization(khat: &Vec3, chart: Chart, sign: Sign) -> Result<PolarizationVector> {
    let k = MomentumPoint::from_direction(*khat)?;
    let v = polarization_vector(&k.direction(), chart, sign)?;
    Ok(PolarizationVector { v, k })
}

pub(crate) fn polarization_vector(khat: &Vec3, chart: Chart, sign: Sign) -> Result<CVec3> {
    let f = standard_frame(khat, chart)?;
    let im = f.e2 * (sign.value() as f64);
    Ok(CVec3::from_re_im(&f.e1, &im).scale_re(FRAC_1_SQRT_2))
}
