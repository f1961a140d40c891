//! Rotations about the momentum axis and the helicity they detect.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::action::rotate_fiber;
use crate::bundles::{helicity_power, polarization_vector, section, HelicityBundle, Mode, Sign};
use crate::error::{Error, Result};
use crate::geometry::{rotation_from_axis_angle, Chart, MomentumPoint, Vec3};

/// Angles used to fit the phase slope in [`measure_helicity`].
pub const MEASURE_STEP: f64 = 1e-3;
pub const MEASURE_SAMPLES: usize = 4;
pub const LINEARITY_TOLERANCE: f64 = 1e-6;

/// Unitary irreducible representation `theta -> e^{-i h theta}` of SO(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SO2Rep {
    pub h: i32,
}

impl SO2Rep {
    pub fn new(h: i32) -> Self {
        SO2Rep { h }
    }

    pub fn character(&self, theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, -(self.h as f64) * theta)
    }

    pub fn apply(&self, theta: f64, z: Complex64) -> Complex64 {
        self.character(theta) * z
    }
}

pub fn so2_rep_apply(h: i32, theta: f64, z: Complex64) -> Complex64 {
    SO2Rep::new(h).apply(theta, z)
}

/// `<s(k), R_k(theta) s(k)>` for the standard section in the hemisphere
/// chart. Explicit tensors are rotated index by index; overlap-power bundles
/// rotate the photon factor and raise the phase to `h`.
pub fn rotation_phase(bundle: &HelicityBundle, khat: &Vec3, theta: f64) -> Result<Complex64> {
    let k = MomentumPoint::from_direction(*khat)?.direction();
    let chart = Chart::for_direction(&k);
    let r = rotation_from_axis_angle(&k, theta);
    match bundle.mode() {
        Mode::ExplicitTensor => {
            let s = section(bundle, &k, chart)?;
            let rs = rotate_fiber(&r, &s)?;
            Ok(s.tensor().expect("explicit").inner(rs.tensor().expect("explicit")))
        }
        Mode::OverlapPower => {
            let v = polarization_vector(&k, chart, Sign::Plus)?;
            Ok(helicity_power(v.hdot(&r.mul_cvec(&v)), bundle.h()))
        }
    }
}

/// Reads the helicity off the slope of the rotation phase at small angles.
pub fn measure_helicity(bundle: &HelicityBundle, khat: &Vec3) -> Result<i32> {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut samples = Vec::with_capacity(MEASURE_SAMPLES);
    for j in 1..=MEASURE_SAMPLES {
        let theta = j as f64 * MEASURE_STEP;
        let phi = rotation_phase(bundle, khat, theta)?.arg();
        num += theta * phi;
        den += theta * theta;
        samples.push((theta, phi));
    }
    let slope = num / den;
    let residual = samples.iter().map(|(t, p)| (p - slope * t).abs()).fold(0.0, f64::max);
    if residual > LINEARITY_TOLERANCE {
        return Err(Error::NonLinearPhase { residual });
    }
    Ok((-slope).round() as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{X_HAT, Z_HAT};

    #[test]
    fn so2_rep_is_a_homomorphism() {
        let rep = SO2Rep::new(-3);
        let z = Complex64::new(0.6, 0.8);
        let (a, b) = (0.7, -1.9);
        assert!((rep.apply(a, rep.apply(b, z)) - rep.apply(a + b, z)).norm() < 1e-15);
        assert!((rep.character(2.0 * std::f64::consts::PI) - 1.0).norm() < 1e-13);
        assert_eq!(so2_rep_apply(0, 1.0, z), z);
    }

    #[test]
    fn phase_matches_rep_in_both_modes() {
        let khat = Vec3::new(0.3, -0.8, -0.2).normalized();
        for h in -3..=3 {
            let want = SO2Rep::new(h).character(1.1);
            let e = rotation_phase(&HelicityBundle::explicit(h).unwrap(), &khat, 1.1).unwrap();
            let p = rotation_phase(&HelicityBundle::power(h), &khat, 1.1).unwrap();
            assert!((e - want).norm() < 1e-12);
            assert!((p - want).norm() < 1e-12);
        }
    }

    #[test]
    fn measures_helicity_exactly() {
        for h in -12..=12 {
            for khat in [Z_HAT, -Z_HAT, X_HAT, Vec3::new(1.0, 1.0, 1.0).normalized()] {
                assert_eq!(measure_helicity(&HelicityBundle::power(h), &khat).unwrap(), h);
            }
        }
        assert_eq!(
            measure_helicity(&HelicityBundle::explicit(-2).unwrap(), &X_HAT).unwrap(),
            -2
        );
    }

    #[test]
    fn zero_direction_is_rejected() {
        assert!(matches!(
            measure_helicity(&HelicityBundle::power(1), &Vec3::new(0.0, 0.0, 0.0)),
            Err(Error::ZeroMomentum { .. })
        ));
    }
}
