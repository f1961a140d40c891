//! Lightcone points, the two-chart atlas of momentum directions, and the
//! local right-handed frames each chart provides.

use serde::{Deserialize, Serialize};

use super::linalg::{Mat3, Vec3, X_HAT, Y_HAT, Z_HAT};
use crate::error::{Error, Result};

pub const ZERO_MOMENTUM_EPSILON: f64 = 1e-12;
pub const POLE_GUARD: f64 = 1e-6;

/// A point on the forward lightcone. Only the spatial momentum is stored;
/// the frequency is its norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumPoint {
    k: Vec3,
    omega: f64,
}

impl MomentumPoint {
    pub fn new(k: Vec3) -> Result<Self> {
        Self::with_epsilon(k, ZERO_MOMENTUM_EPSILON)
    }

    pub fn with_epsilon(k: Vec3, epsilon: f64) -> Result<Self> {
        let omega = k.norm();
        // Also rejects NaN.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(omega >= epsilon) {
            return Err(Error::ZeroMomentum { norm: omega, epsilon });
        }
        Ok(MomentumPoint { k, omega })
    }

    /// Unit-frequency point in direction `khat` (normalized internally).
    pub fn from_direction(khat: Vec3) -> Result<Self> {
        let n = Self::new(khat)?;
        Self::new(n.direction())
    }

    pub fn k(&self) -> Vec3 {
        self.k
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn direction(&self) -> Vec3 {
        self.k * (1.0 / self.omega)
    }

    /// Contravariant 4-vector `(omega, k)`.
    pub fn four_vector(&self) -> [f64; 4] {
        [self.omega, self.k.0[0], self.k.0[1], self.k.0[2]]
    }

    /// Recover a lightcone point from a null 4-vector; the time component
    /// is discarded in favour of `|k|`.
    pub fn from_four_vector(k: &[f64; 4]) -> Result<Self> {
        Self::new(Vec3([k[1], k[2], k[3]]))
    }

    /// Same point up to a relative tolerance.
    pub fn approx_eq(&self, o: &MomentumPoint, rel_tol: f64) -> bool {
        (self.k - o.k).norm() <= rel_tol * self.omega.max(o.omega)
    }
}

/// One of the two patches covering the sphere of directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// Valid everywhere except the south pole.
    NorthAligned,
    /// Valid everywhere except the north pole.
    SouthAligned,
}

impl Chart {
    pub const ALL: [Chart; 2] = [Chart::NorthAligned, Chart::SouthAligned];

    /// The pole where this chart's reference frame is attached.
    pub fn pole(self) -> Vec3 {
        match self {
            Chart::NorthAligned => Z_HAT,
            Chart::SouthAligned => -Z_HAT,
        }
    }

    /// Whether the frame is defined at `khat` with the given guard angle.
    pub fn is_valid_at(self, khat: &Vec3, pole_guard: f64) -> bool {
        khat.angle_to(&self.pole()) < std::f64::consts::PI - pole_guard
    }

    /// Chart of the hemisphere containing `khat`; always valid.
    pub fn for_direction(khat: &Vec3) -> Chart {
        if khat.z() >= 0.0 {
            Chart::NorthAligned
        } else {
            Chart::SouthAligned
        }
    }

    pub fn other(self) -> Chart {
        match self {
            Chart::NorthAligned => Chart::SouthAligned,
            Chart::SouthAligned => Chart::NorthAligned,
        }
    }
}

/// Right-handed orthonormal triple `(e1, e2, khat)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub e1: Vec3,
    pub e2: Vec3,
    pub khat: Vec3,
    pub chart: Chart,
}

impl Frame {
    /// Largest violation of the orthonormality and handedness conditions.
    pub fn defect(&self) -> f64 {
        let Frame { e1, e2, khat, .. } = self;
        let mut d: f64 = 0.0;
        for v in [e1, e2, khat] {
            d = d.max((v.norm() - 1.0).abs());
        }
        d = d.max(e1.dot(e2).abs()).max(e1.dot(khat).abs()).max(e2.dot(khat).abs());
        d.max((e1.cross(e2) - *khat).norm())
    }

    /// Rotation matrix with columns `(e1, e2, khat)`; it carries the chart's
    /// reference frame at `+z` onto this frame.
    pub fn as_rotation(&self) -> Mat3 {
        Mat3::from_columns(&self.e1, &self.e2, &self.khat)
    }
}

/// Frame at `khat` obtained by transporting the chart's pole frame along
/// the minimal geodesic rotation. `khat` is normalized before use.
pub fn standard_frame(khat: &Vec3, chart: Chart) -> Result<Frame> {
    standard_frame_guarded(khat, chart, POLE_GUARD)
}

pub fn standard_frame_guarded(khat: &Vec3, chart: Chart, pole_guard: f64) -> Result<Frame> {
    let k = khat.normalized();
    if !chart.is_valid_at(&k, pole_guard) {
        return Err(Error::ChartSingularity { khat: k.0, chart });
    }
    let [kx, ky, kz] = k.0;
    let rho2 = kx * kx + ky * ky;
    // d = 1 + kz (north) or 1 - kz (south), in a cancellation-free form.
    let (e1, e2) = match chart {
        Chart::NorthAligned => {
            let d = if kz >= 0.0 { 1.0 + kz } else { rho2 / (1.0 - kz) };
            (
                Vec3([1.0 - kx * kx / d, -kx * ky / d, -kx]),
                Vec3([-kx * ky / d, 1.0 - ky * ky / d, -ky]),
            )
        }
        Chart::SouthAligned => {
            let d = if kz <= 0.0 { 1.0 - kz } else { rho2 / (1.0 + kz) };
            (
                Vec3([1.0 - kx * kx / d, -kx * ky / d, kx]),
                Vec3([kx * ky / d, -1.0 + ky * ky / d, -ky]),
            )
        }
    };
    Ok(Frame { e1, e2, khat: k, chart })
}

/// Reference frame at the chart's pole: `(x, y, z)` for north, `(x, -y, -z)`
/// for south.
pub fn pole_frame(chart: Chart) -> Frame {
    match chart {
        Chart::NorthAligned => Frame {
            e1: X_HAT,
            e2: Y_HAT,
            khat: Z_HAT,
            chart,
        },
        Chart::SouthAligned => Frame {
            e1: X_HAT,
            e2: -Y_HAT,
            khat: -Z_HAT,
            chart,
        },
    }
}

/// Rodrigues rotation by `theta` about the unit vector `axis`.
pub fn rotation_from_axis_angle(axis: &Vec3, theta: f64) -> Mat3 {
    let [x, y, z] = axis.0;
    let (s, c) = theta.sin_cos();
    let t = 1.0 - c;
    Mat3([
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ])
}
