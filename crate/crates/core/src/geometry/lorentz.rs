use serde::{Deserialize, Serialize};

use super::linalg::{Mat3, Mat4, Vec3, METRIC};
use crate::error::{Error, Result};

pub const LORENTZ_TOLERANCE: f64 = 1e-10;

/// Element of the proper orthochronous Lorentz group acting on
/// contravariant 4-vectors `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzTransform {
    m: Mat4,
}

impl LorentzTransform {
    pub const IDENTITY: LorentzTransform = LorentzTransform { m: Mat4::IDENTITY };

    /// Validates the matrix against `m^T eta m = eta`, `det m = 1` and
    /// `m00 >= 1`.
    pub fn new(m: Mat4) -> Result<Self> {
        let lt = LorentzTransform { m };
        let defect = lt.metric_defect();
        if defect > LORENTZ_TOLERANCE {
            return Err(Error::InvalidLorentz(format!("metric defect {defect:e}")));
        }
        let det = m.det();
        if (det - 1.0).abs() > LORENTZ_TOLERANCE {
            return Err(Error::InvalidLorentz(format!("determinant {det}")));
        }
        if m.0[0][0] < 1.0 - LORENTZ_TOLERANCE {
            return Err(Error::InvalidLorentz(format!("m00 = {}", m.0[0][0])));
        }
        Ok(lt)
    }

    /// Embeds a spatial rotation.
    pub fn from_rotation(r: &Mat3) -> Self {
        let mut m = Mat4::IDENTITY;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i + 1][j + 1] = r.0[i][j];
            }
        }
        LorentzTransform { m }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn metric_defect(&self) -> f64 {
        self.m
            .transpose()
            .mul_mat(&METRIC)
            .mul_mat(&self.m)
            .max_abs_diff(&METRIC)
    }

    pub fn apply(&self, v: &[f64; 4]) -> [f64; 4] {
        self.m.mul_vec(v)
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        LorentzTransform {
            m: self.m.mul_mat(&other.m),
        }
    }

    /// `eta m^T eta`.
    pub fn inverse(&self) -> LorentzTransform {
        LorentzTransform {
            m: METRIC.mul_mat(&self.m.transpose()).mul_mat(&METRIC),
        }
    }

    /// Velocity of the boost factor in `self = boost * rotation`.
    pub fn boost_velocity(&self) -> Vec3 {
        let m = &self.m.0;
        Vec3([m[1][0], m[2][0], m[3][0]]) * (1.0 / m[0][0])
    }

    /// Polar split `self = boost(v) * rotation`.
    pub fn decompose(&self) -> (LorentzTransform, Mat3) {
        let v = self.boost_velocity();
        let boost = boost_from_velocity(&v);
        let rot = boost.inverse().compose(self).m.spatial();
        (boost, rot)
    }
}

/// Pure boost with rapidity `eta` along the unit vector `direction`.
/// Acting on `(1, n)` it returns `e^eta (1, n)`.
pub fn boost_from_rapidity(direction: &Vec3, eta: f64) -> LorentzTransform {
    let (ch, sh) = (eta.cosh(), eta.sinh());
    let n = direction.0;
    let mut m = Mat4::IDENTITY;
    m.0[0][0] = ch;
    for i in 0..3 {
        m.0[0][i + 1] = sh * n[i];
        m.0[i + 1][0] = sh * n[i];
        for j in 0..3 {
            m.0[i + 1][j + 1] += (ch - 1.0) * n[i] * n[j];
        }
    }
    LorentzTransform { m }
}

/// Pure boost carrying the rest frame to velocity `v` (`|v| < 1`).
pub fn boost_from_velocity(v: &Vec3) -> LorentzTransform {
    let speed = v.norm();
    if speed == 0.0 {
        return LorentzTransform::IDENTITY;
    }
    boost_from_rapidity(&(*v * (1.0 / speed)), speed.atanh())
}
