//! The little group ISO(2) of a null momentum and its action on photons.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::action::boost_fiber;
use crate::bundles::{polarization_vector, section, HelicityBundle, Sign};
use crate::error::{Error, Result};
use crate::geometry::{
    boost_from_rapidity, rotation_from_axis_angle, standard_frame, Chart, LorentzTransform, Mat4, MomentumPoint, Z_HAT,
};

/// Tolerance for `W k = k` when reading off a Wigner angle.
pub const FIXED_POINT_TOLERANCE: f64 = 1e-9;

/// Tolerance of the Wigner phase check.
pub const WIGNER_TOLERANCE: f64 = 1e-8;

/// `L(k) = R(k) B_z(ln omega)`, carrying `(1, 0, 0, 1)` to `k`. `R(k)` takes
/// `(x, y, z)` to the standard frame `(e1, e2, khat)` of the hemisphere chart.
pub fn standard_transform(k: &MomentumPoint) -> LorentzTransform {
    let khat = k.direction();
    let frame = standard_frame(&khat, Chart::for_direction(&khat)).expect("hemisphere chart is valid everywhere");
    LorentzTransform::from_rotation(&frame.as_rotation()).compose(&boost_from_rapidity(&Z_HAT, k.omega().ln()))
}

/// Null rotation fixing `(1, 0, 0, 1)`, `exp(alpha (K_x - J_y) + beta (K_y + J_x))`.
pub fn null_rotation(alpha: f64, beta: f64) -> LorentzTransform {
    let zeta = 0.5 * (alpha * alpha + beta * beta);
    let m = Mat4([
        [1.0 + zeta, alpha, beta, -zeta],
        [alpha, 1.0, 0.0, -alpha],
        [beta, 0.0, 1.0, -beta],
        [zeta, alpha, beta, 1.0 - zeta],
    ]);
    LorentzTransform::new(m).expect("closed form is Lorentz")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LittleGroupElement {
    pub lorentz: LorentzTransform,
    pub fixed_k: MomentumPoint,
    pub wigner_angle: f64,
    pub null_params: [f64; 2],
}

/// `W = L(k) S(alpha, beta) R_z(theta) L(k)^-1`.
pub fn little_group_element(k: &MomentumPoint, theta: f64, alpha: f64, beta: f64) -> LittleGroupElement {
    let l = standard_transform(k);
    let w0 = null_rotation(alpha, beta).compose(&LorentzTransform::from_rotation(&rotation_from_axis_angle(
        &Z_HAT, theta,
    )));
    LittleGroupElement {
        lorentz: l.compose(&w0).compose(&l.inverse()),
        fixed_k: *k,
        wigner_angle: theta,
        null_params: [alpha, beta],
    }
}

/// Rotation angle of a little-group element of `k`, in `(-pi, pi]`.
pub fn wigner_angle(w: &LorentzTransform, k: &MomentumPoint) -> Result<f64> {
    let kv = k.four_vector();
    let wk = w.apply(&kv);
    let drift = (0..4).map(|i| (wk[i] - kv[i]).abs()).fold(0.0, f64::max) / k.omega();
    if drift > FIXED_POINT_TOLERANCE {
        return Err(Error::InvalidLorentz(format!(
            "transform moves k by {drift:e} (relative)"
        )));
    }
    let l = standard_transform(k);
    let w0 = l.inverse().compose(w).compose(&l);
    let m = &w0.matrix().0;
    Ok(m[2][1].atan2(m[1][1]))
}

/// Outcome of acting with a little-group element on a photon state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerReport {
    pub sign: Sign,
    pub phase: Complex64,
    pub expected: Complex64,
    /// `|phase - expected|`.
    pub phase_error: f64,
    /// Overlap with the opposite helicity.
    pub mixing: f64,
    /// Field rescaling of the raw transformation, 1 on the little group.
    pub scale: f64,
    pub pass: bool,
}

/// Acts with `w` on the helicity `sign` photon at `w.fixed_k` and compares
/// with the expected phase `e^{-i sign theta}`.
pub fn wigner_phase_check(w: &LittleGroupElement, sign: Sign) -> Result<WignerReport> {
    let khat = w.fixed_k.direction();
    let chart = Chart::for_direction(&khat);
    let bundle = HelicityBundle::photon(sign);
    let s = crate::bundles::FiberElement {
        at: w.fixed_k,
        ..section(&bundle, &khat, chart)?
    };
    let out = boost_fiber(&w.lorentz, &s)?;
    let v = s.tensor().expect("photon sections are explicit");
    let image = out.element.tensor().expect("boosts return explicit elements");
    let phase = v.inner(image);
    let opposite = polarization_vector(&khat, chart, sign.flip())?;
    let mixing = image
        .data()
        .iter()
        .zip(opposite.0.iter())
        .map(|(a, b)| b.conj() * a)
        .sum::<Complex64>()
        .norm();
    let expected = Complex64::from_polar(1.0, -(sign.value() as f64) * w.wigner_angle);
    let phase_error = (phase - expected).norm();
    let pass =
        phase_error < WIGNER_TOLERANCE && mixing < WIGNER_TOLERANCE && (out.scale - 1.0).abs() < WIGNER_TOLERANCE;
    Ok(WignerReport {
        sign,
        phase,
        expected,
        phase_error,
        mixing,
        scale: out.scale,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Vec3, X_HAT};
    use std::f64::consts::PI;

    fn generator_exp(alpha: f64, beta: f64) -> Mat4 {
        // K_x, K_y boost generators and J_x, J_y rotation generators acting
        // on (t, x, y, z); the combination is nilpotent of order 3.
        let mut x = Mat4([[0.0; 4]; 4]);
        // alpha (K_x - J_y)
        x.0[0][1] += alpha;
        x.0[1][0] += alpha;
        x.0[1][3] -= alpha;
        x.0[3][1] += alpha;
        // beta (K_y + J_x)
        x.0[0][2] += beta;
        x.0[2][0] += beta;
        x.0[2][3] -= beta;
        x.0[3][2] += beta;
        let x2 = x.mul_mat(&x);
        let mut out = Mat4::IDENTITY;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += x.0[i][j] + 0.5 * x2.0[i][j];
            }
        }
        out
    }

    #[test]
    fn null_rotation_matches_generator_exponential() {
        for (a, b) in [(0.3, -0.7), (1.5, 0.2), (0.0, 2.0)] {
            let s = null_rotation(a, b);
            assert!(s.matrix().max_abs_diff(&generator_exp(a, b)) < 1e-12);
            let k = s.apply(&[1.0, 0.0, 0.0, 1.0]);
            assert!(k.iter().zip([1.0, 0.0, 0.0, 1.0]).all(|(x, y)| (x - y).abs() < 1e-12));
        }
    }

    #[test]
    fn standard_transform_reaches_k() {
        for k in [
            Vec3::new(0.0, 0.0, 2.0),
            Vec3::new(-1.0, 0.5, -3.0),
            Vec3::new(0.0, 0.0, -1.0),
        ] {
            let p = MomentumPoint::new(k).unwrap();
            let got = standard_transform(&p).apply(&[1.0, 0.0, 0.0, 1.0]);
            let want = p.four_vector();
            assert!((0..4).all(|i| (got[i] - want[i]).abs() < 1e-12));
        }
    }

    #[test]
    fn little_group_fixes_k_and_recovers_angle() {
        let k = MomentumPoint::new(Vec3::new(0.4, -1.1, 0.3)).unwrap();
        for theta in [0.0, 0.5, -2.0, 3.0] {
            let w = little_group_element(&k, theta, 0.8, -0.4);
            assert!(crate::geometry::LorentzTransform::new(*w.lorentz.matrix()).is_ok());
            assert!((wigner_angle(&w.lorentz, &k).unwrap() - theta).abs() < 1e-10);
        }
    }

    #[test]
    fn wigner_angle_rejects_transforms_that_move_k() {
        let k = MomentumPoint::new(Z_HAT).unwrap();
        let l = boost_from_rapidity(&X_HAT, 0.1);
        assert!(matches!(wigner_angle(&l, &k), Err(Error::InvalidLorentz(_))));
    }

    #[test]
    fn null_rotations_act_trivially_on_photons() {
        let k = MomentumPoint::new(Vec3::new(-0.3, 0.2, -0.8)).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let r = wigner_phase_check(&little_group_element(&k, 0.0, 1.3, -0.9), sign).unwrap();
            assert!(r.pass, "{r:?}");
            assert!((r.phase - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn rotations_give_helicity_phases() {
        let k = MomentumPoint::new(Vec3::new(1.0, 2.0, 0.5)).unwrap();
        let theta = PI / 3.0;
        let plus = wigner_phase_check(&little_group_element(&k, theta, 0.2, 0.6), Sign::Plus).unwrap();
        let minus = wigner_phase_check(&little_group_element(&k, theta, 0.2, 0.6), Sign::Minus).unwrap();
        assert!(plus.pass && minus.pass);
        assert!((plus.phase - Complex64::from_polar(1.0, -theta)).norm() < 1e-10);
        assert!((minus.phase - Complex64::from_polar(1.0, theta)).norm() < 1e-10);
    }
}
