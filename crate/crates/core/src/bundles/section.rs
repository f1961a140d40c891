//! Helicity bundles `gamma_h` as tensor powers of the photon bundles, their
//! standard sections, and the fiberwise Hermitian structure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::polarization::{polarization_vector, Sign};
use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::geometry::{Chart, MomentumPoint, Vec3};

pub const MAX_EXPLICIT_HELICITY: i32 = 3;
pub const DEGENERATE_OVERLAP: f64 = 1e-8;

/// How fibers of `gamma_h` are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Explicit rank-`|h|` tensors in `(C^3)^{(x)|h|}`; `|h| <= 3`.
    ExplicitTensor,
    /// A coefficient relative to the standard section of a chart; overlaps
    /// are powers of photon overlaps. Any `h`.
    OverlapPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HelicityBundle {
    h: i32,
    mode: Mode,
}

impl HelicityBundle {
    pub fn explicit(h: i32) -> Result<Self> {
        if h.abs() > MAX_EXPLICIT_HELICITY {
            return Err(Error::ModeMismatch(format!(
                "explicit tensors are limited to |h| <= {MAX_EXPLICIT_HELICITY}, got h = {h}"
            )));
        }
        Ok(HelicityBundle {
            h,
            mode: Mode::ExplicitTensor,
        })
    }

    pub fn power(h: i32) -> Self {
        HelicityBundle {
            h,
            mode: Mode::OverlapPower,
        }
    }

    /// `gamma_{+1}` or `gamma_{-1}` with explicit electric-field fibers.
    pub fn photon(sign: Sign) -> Self {
        HelicityBundle {
            h: sign.value(),
            mode: Mode::ExplicitTensor,
        }
    }

    pub fn h(&self) -> i32 {
        self.h
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_photon(&self) -> bool {
        self.h.abs() == 1 && self.mode == Mode::ExplicitTensor
    }

    /// The photon factor `gamma_{sgn h}` this bundle is a power of.
    pub fn factor_sign(&self) -> Sign {
        Sign::of(self.h)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FiberValue {
    Tensor(Tensor),
    Charted { chart: Chart, coeff: Complex64 },
}

/// A vector `(k, v)` in the fiber of a helicity bundle over `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberElement {
    pub(crate) bundle: HelicityBundle,
    pub(crate) at: MomentumPoint,
    pub(crate) value: FiberValue,
}

impl FiberElement {
    pub fn bundle(&self) -> HelicityBundle {
        self.bundle
    }

    pub fn at(&self) -> &MomentumPoint {
        &self.at
    }

    pub fn value(&self) -> &FiberValue {
        &self.value
    }

    pub fn tensor(&self) -> Option<&Tensor> {
        match &self.value {
            FiberValue::Tensor(t) => Some(t),
            FiberValue::Charted { .. } => None,
        }
    }

    /// Multiplies the fiber value by a scalar.
    pub fn scaled(&self, z: Complex64) -> FiberElement {
        let value = match &self.value {
            FiberValue::Tensor(t) => FiberValue::Tensor(t.scale(z)),
            FiberValue::Charted { chart, coeff } => FiberValue::Charted {
                chart: *chart,
                coeff: coeff * z,
            },
        };
        FiberElement {
            bundle: self.bundle,
            at: self.at,
            value,
        }
    }

    /// The same fiber value over `k`, which must point along the current
    /// direction; only the frequency changes.
    pub fn with_momentum(&self, k: MomentumPoint) -> Result<FiberElement> {
        let drift = (k.direction() - self.at.direction()).norm();
        if drift > 1e-12 {
            return Err(Error::FiberMismatch(format!(
                "direction {:?} differs from {:?}",
                k.direction().0,
                self.at.direction().0
            )));
        }
        Ok(FiberElement { at: k, ..self.clone() })
    }

    /// Transversality and symmetry defects of an explicit value; zero for
    /// charted values, which are transverse by construction.
    pub fn gauge_defect(&self) -> f64 {
        match &self.value {
            FiberValue::Tensor(t) => t.transversality_defect(&self.at.direction()).max(t.symmetry_defect()),
            FiberValue::Charted { .. } => 0.0,
        }
    }
}

/// `z^h` for `h >= 0`, `conj(z)^|h|` otherwise, by repeated multiplication
/// so that `helicity_power(conj z, h) == conj(helicity_power(z, h))` exactly.
pub fn helicity_power(z: Complex64, h: i32) -> Complex64 {
    let base = if h >= 0 { z } else { z.conj() };
    (0..h.unsigned_abs()).fold(Complex64::new(1.0, 0.0), |acc, _| acc * base)
}

/// Standard unit section of `bundle` at `khat` in `chart`.
pub fn section(bundle: &HelicityBundle, khat: &Vec3, chart: Chart) -> Result<FiberElement> {
    let at = MomentumPoint::from_direction(*khat)?;
    let value = match bundle.mode {
        Mode::ExplicitTensor => {
            let v = polarization_vector(&at.direction(), chart, bundle.factor_sign())?;
            FiberValue::Tensor(Tensor::power(&v, bundle.h.unsigned_abs() as usize))
        }
        Mode::OverlapPower => {
            if !chart.is_valid_at(&at.direction(), crate::geometry::POLE_GUARD) {
                return Err(Error::ChartSingularity {
                    khat: at.direction().0,
                    chart,
                });
            }
            FiberValue::Charted {
                chart,
                coeff: Complex64::new(1.0, 0.0),
            }
        }
    };
    Ok(FiberElement {
        bundle: *bundle,
        at,
        value,
    })
}

/// `<s_from(k), s_to(k)>` for the standard sections of two charts at the
/// same point: the transition function of `bundle`.
pub fn chart_transition(bundle: &HelicityBundle, khat: &Vec3, from: Chart, to: Chart) -> Result<Complex64> {
    if from == to {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let a = polarization_vector(khat, from, Sign::Plus)?;
    let b = polarization_vector(khat, to, Sign::Plus)?;
    Ok(helicity_power(a.hdot(&b), bundle.h))
}

/// Hermitian product of two elements of the same fiber, conjugate-linear
/// in `a`.
pub fn fiber_inner(a: &FiberElement, b: &FiberElement) -> Result<Complex64> {
    if a.bundle != b.bundle {
        return Err(Error::FiberMismatch(format!(
            "bundles differ: {:?} vs {:?}",
            a.bundle, b.bundle
        )));
    }
    if !a.at.approx_eq(&b.at, 1e-12) {
        return Err(Error::FiberMismatch(format!(
            "base points differ: {:?} vs {:?}",
            a.at.k(),
            b.at.k()
        )));
    }
    match (&a.value, &b.value) {
        (FiberValue::Tensor(x), FiberValue::Tensor(y)) => Ok(x.inner(y)),
        (FiberValue::Charted { chart: ca, coeff: za }, FiberValue::Charted { chart: cb, coeff: zb }) => {
            let t = chart_transition(&a.bundle, &a.at.direction(), *ca, *cb)?;
            Ok(za.conj() * zb * t)
        }
        _ => Err(Error::ModeMismatch("mixed fiber representations".into())),
    }
}

/// Link variable `U(p, q) = <s(p), s(q)>` between standard sections in the
/// given charts.
pub fn overlap(bundle: &HelicityBundle, p: &Vec3, q: &Vec3, chart_p: Chart, chart_q: Chart) -> Result<Complex64> {
    let u = raw_overlap(bundle, p, q, chart_p, chart_q)?;
    check_overlap(u)
}

/// [`overlap`] with each point in the chart of its own hemisphere.
pub fn overlap_hemisphere(bundle: &HelicityBundle, p: &Vec3, q: &Vec3) -> Result<Complex64> {
    overlap(bundle, p, q, Chart::for_direction(p), Chart::for_direction(q))
}

fn raw_overlap(bundle: &HelicityBundle, p: &Vec3, q: &Vec3, chart_p: Chart, chart_q: Chart) -> Result<Complex64> {
    if p == q && chart_p == chart_q {
        // Identical unit sections.
        return Ok(Complex64::new(1.0, 0.0));
    }
    match bundle.mode {
        Mode::ExplicitTensor => {
            let n = bundle.h.unsigned_abs() as usize;
            let sign = bundle.factor_sign();
            let a = Tensor::power(&polarization_vector(&p.normalized(), chart_p, sign)?, n);
            let b = Tensor::power(&polarization_vector(&q.normalized(), chart_q, sign)?, n);
            Ok(a.inner(&b))
        }
        Mode::OverlapPower => {
            let a = polarization_vector(&p.normalized(), chart_p, Sign::Plus)?;
            let b = polarization_vector(&q.normalized(), chart_q, Sign::Plus)?;
            Ok(helicity_power(a.hdot(&b), bundle.h))
        }
    }
}

pub(crate) fn check_overlap(u: Complex64) -> Result<Complex64> {
    if u.norm() < DEGENERATE_OVERLAP {
        return Err(Error::DegenerateOverlap {
            magnitude: u.norm(),
            threshold: DEGENERATE_OVERLAP,
        });
    }
    Ok(u)
}
