//! Rotations, electromagnetic boosts and translations acting on fibers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bundles::{FiberElement, FiberValue, Tensor};
use crate::error::{Error, Result};
use crate::geometry::{minkowski_dot, CVec3, LorentzTransform, Mat3, MomentumPoint, Vec3};

/// Rotates the base point and every tensor index.
pub fn rotate_fiber(r: &Mat3, x: &FiberElement) -> Result<FiberElement> {
    let t = match &x.value {
        FiberValue::Tensor(t) => t,
        FiberValue::Charted { .. } => {
            return Err(Error::ModeMismatch(
                "overlap-power elements carry no tensor to rotate; rotate the photon factor".into(),
            ))
        }
    };
    Ok(FiberElement {
        bundle: x.bundle,
        at: MomentumPoint::new(r.mul_vec(&x.at.k()))?,
        value: FiberValue::Tensor(t.rotate(r)),
    })
}

/// Image of a photon element under a Lorentz transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedPhoton {
    /// Renormalized to the input's fiber norm.
    pub element: FiberElement,
    /// `|E'| / |E|` of the raw field transformation, dropped by the
    /// renormalization.
    pub scale: f64,
}

/// Field of an explicit photon element, or `NotPhotonMode`.
pub fn photon_field(x: &FiberElement) -> Result<CVec3> {
    match &x.value {
        FiberValue::Tensor(t) if x.bundle.is_photon() => {
            let d = t.data();
            Ok(CVec3([d[0], d[1], d[2]]))
        }
        _ => Err(Error::NotPhotonMode { h: x.bundle.h() }),
    }
}

/// Electric field of a plane wave after the active boost with velocity
/// `beta`: `E' = g (E - beta x B) - g^2/(g+1) beta (beta . E)`, `B = khat x E`.
pub fn boost_plane_wave_field(e: &CVec3, khat: &Vec3, beta: &Vec3) -> CVec3 {
    let b2 = beta.dot(beta);
    if b2 == 0.0 {
        return *e;
    }
    let gamma = 1.0 / (1.0 - b2).sqrt();
    let b = e.cross_real_left(khat);
    let beta_cross_b = b.cross_real_left(beta);
    let beta_dot_e = e.dot_real(beta);
    let along = beta.complexify().scale(beta_dot_e * (gamma * gamma / (gamma + 1.0)));
    e.sub(&beta_cross_b).scale_re(gamma).sub(&along)
}

/// Active Lorentz transform of a photon element: the momentum goes to
/// `L k` and the field follows the electromagnetic transformation of the
/// plane wave. The result is rescaled to the input norm.
pub fn boost_fiber(l: &LorentzTransform, x: &FiberElement) -> Result<BoostedPhoton> {
    let e = photon_field(x)?;
    let l = LorentzTransform::new(*l.matrix())?;
    let (boost, rot) = l.decompose();
    let e_rot = rot.mul_cvec(&e);
    let k_rot = rot.mul_vec(&x.at.k());
    let beta = l.boost_velocity();
    let e_new = boost_plane_wave_field(&e_rot, &k_rot.normalized(), &beta);
    let omega = x.at.omega();
    let k_new = boost.apply(&[omega, k_rot.0[0], k_rot.0[1], k_rot.0[2]]);

    let norm_in = e.norm();
    let norm_out = e_new.norm();
    let scale = norm_out / norm_in;
    Ok(BoostedPhoton {
        element: FiberElement {
            bundle: x.bundle,
            at: MomentumPoint::from_four_vector(&k_new)?,
            value: FiberValue::Tensor(Tensor::from_vector(&e_new.scale_re(1.0 / scale))),
        },
        scale,
    })
}

/// Field transformation through the field-strength tensor, `F' = L F L^T`
/// with `F^{i0} = E_i` and `F^{ij} = -eps_ijk B_k`; returns `E'_i = F'^{i0}`.
/// Independent of [`boost_plane_wave_field`] and not renormalized.
pub fn field_tensor_boost(l: &LorentzTransform, e: &CVec3, khat: &Vec3) -> CVec3 {
    let b = e.cross_real_left(khat);
    let z = Complex64::new(0.0, 0.0);
    let mut f = [[z; 4]; 4];
    for i in 0..3 {
        f[i + 1][0] = e.0[i];
        f[0][i + 1] = -e.0[i];
    }
    f[1][2] = -b.0[2];
    f[2][1] = b.0[2];
    f[1][3] = b.0[1];
    f[3][1] = -b.0[1];
    f[2][3] = -b.0[0];
    f[3][2] = b.0[0];
    let m = l.matrix();
    let mut out = [z; 3];
    for (i, o) in out.iter_mut().enumerate() {
        for a in 0..4 {
            for c in 0..4 {
                *o += f[a][c] * (m.0[i + 1][a] * m.0[0][c]);
            }
        }
    }
    CVec3(out)
}

/// `T_a (k, v) = e^{i k^mu a_mu} (k, v)`.
pub fn translate_fiber(a: &[f64; 4], x: &FiberElement) -> FiberElement {
    let phase = minkowski_dot(&x.at.four_vector(), a);
    x.scaled(Complex64::from_polar(1.0, phase))
}

/// `T_a o L`: Lorentz part first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoincareElement {
    pub translation: [f64; 4],
    pub lorentz: LorentzTransform,
}

impl PoincareElement {
    pub fn lorentz(l: LorentzTransform) -> Self {
        PoincareElement {
            translation: [0.0; 4],
            lorentz: l,
        }
    }

    pub fn translation(a: [f64; 4]) -> Self {
        PoincareElement {
            translation: a,
            lorentz: LorentzTransform::IDENTITY,
        }
    }

    /// `(T_a L)(T_b M) = T_{a + L b} (L M)`.
    pub fn compose(&self, other: &PoincareElement) -> PoincareElement {
        let lb = self.lorentz.apply(&other.translation);
        PoincareElement {
            translation: [0, 1, 2, 3].map(|i| self.translation[i] + lb[i]),
            lorentz: self.lorentz.compose(&other.lorentz),
        }
    }

    pub fn apply_photon(&self, x: &FiberElement) -> Result<BoostedPhoton> {
        let boosted = boost_fiber(&self.lorentz, x)?;
        Ok(BoostedPhoton {
            element: translate_fiber(&self.translation, &boosted.element),
            scale: boosted.scale,
        })
    }
}
