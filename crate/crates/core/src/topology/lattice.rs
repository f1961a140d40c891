//! Gauge-invariant plaquette computation of the first Chern number.
//!
//! Each oriented face `(p1 .. pn)` carries the Berry flux
//! `F = -arg[U(p1,p2) U(p2,p3) ... U(pn,p1)]` (principal branch). Every
//! vertex phase enters a face product once as a bra and once as a ket, so
//! `F` does not depend on the chart or phase of any section. On a closed
//! mesh each edge link appears twice with conjugate values, so `sum F` is an
//! exact multiple of `2 pi`; the multiple is the Chern number.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::links::{BundleLinks, ChartAssignment, GravitonLinks, LinkField, ProductLinks};
use super::{ChernReport, Method, ACCEPT_RESIDUAL};
use crate::bundles::{HelicityBundle, Sign};
use crate::error::{Error, Result};
use crate::geometry::SphereMesh;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LatticeOptions {
    /// Use `+arg` instead of `-arg` for the plaquette phase. Only for
    /// exercising the sign-convention canary.
    pub flip_sign: bool,
}

/// Per-face face data for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub face: usize,
    pub plaquette_phase: f64,
    /// Geodesic solid angle of the face.
    pub solid_angle: f64,
    /// Area of the smooth sphere cell the face discretizes.
    pub cell_area: f64,
}

fn face_product(field: &dyn LinkField, face: &[usize]) -> Result<Complex64> {
    let n = face.len();
    (0..n).try_fold(Complex64::new(1.0, 0.0), |acc, m| {
        Ok(acc * field.link(face[m], face[(m + 1) % n])?)
    })
}

/// Largest curvature flux a face may carry before its phase could wrap.
fn check_face_sizes(field: &dyn LinkField, mesh: &SphereMesh) -> Result<()> {
    let h = field.helicity_magnitude().max(1) as f64;
    let bound = PI / h;
    for f in 0..mesh.faces().len() {
        let omega = mesh.face_solid_angle(f).abs();
        if omega >= bound {
            return Err(Error::AdmissibilityViolation {
                face: f,
                phase: omega * h,
                reason: format!("solid angle {omega:.4} sr exceeds pi/|h| = {bound:.4}; refine the mesh"),
            });
        }
    }
    Ok(())
}

/// Plaquette phases for every face, in face order. The face loop runs on
/// the current rayon pool; the result does not depend on the thread count.
pub fn plaquette_phases(field: &dyn LinkField, mesh: &SphereMesh, opts: LatticeOptions) -> Result<Vec<f64>> {
    mesh.audit_closure()?;
    check_face_sizes(field, mesh)?;
    let sign = if opts.flip_sign { 1.0 } else { -1.0 };
    let phases: Vec<f64> = mesh
        .faces()
        .par_iter()
        .map(|face| Ok(sign * face_product(field, face)?.arg()))
        .collect::<Result<_>>()?;
    if let Some((face, &phase)) = phases.iter().enumerate().find(|(_, p)| p.abs() >= PI) {
        return Err(Error::AdmissibilityViolation {
            face,
            phase,
            reason: "plaquette phase reached pi; refine the mesh".into(),
        });
    }
    Ok(phases)
}

pub fn chern_lattice_field(field: &dyn LinkField, mesh: &SphereMesh, opts: LatticeOptions) -> Result<ChernReport> {
    let phases = plaquette_phases(field, mesh, opts)?;
    // Sequential sum in face order keeps reports bit-reproducible.
    let total: f64 = phases.iter().sum();
    // `+ 0.0` turns a negative zero from an empty or cancelling sum into zero.
    let raw = total / (2.0 * PI) + 0.0;
    let chern = raw.round();
    Ok(ChernReport {
        h: field.helicity(),
        method: Method::LatticeFieldStrength,
        chern: chern as i64,
        raw_sum: raw,
        integer_residual: (raw - chern).abs(),
        max_plaquette_phase: phases.iter().fold(0.0, |m, p| p.abs().max(m)),
        mesh: Some(mesh.spec().to_string()),
        samples: None,
    })
}

/// First Chern number of `gamma_h` on `mesh` using overlap-power links and
/// hemisphere charts.
pub fn chern_lattice(h: i32, mesh: &SphereMesh) -> Result<ChernReport> {
    chern_lattice_bundle(
        HelicityBundle::power(h),
        mesh,
        &ChartAssignment::Hemisphere,
        LatticeOptions::default(),
    )
}

pub fn chern_lattice_bundle(
    bundle: HelicityBundle,
    mesh: &SphereMesh,
    charts: &ChartAssignment,
    opts: LatticeOptions,
) -> Result<ChernReport> {
    let links = BundleLinks::new(bundle, mesh, charts)?;
    chern_lattice_field(&links, mesh, opts)
}

/// Chern number of the graviton bundle from explicit `v (x) v` matrices.
pub fn chern_graviton(sign: Sign, mesh: &SphereMesh) -> Result<ChernReport> {
    let links = GravitonLinks::new(sign, mesh, &ChartAssignment::Hemisphere)?;
    chern_lattice_field(&links, mesh, LatticeOptions::default())
}

pub fn curvature_profile(h: i32, mesh: &SphereMesh) -> Result<Vec<CurvatureSample>> {
    let links = BundleLinks::new(HelicityBundle::power(h), mesh, &ChartAssignment::Hemisphere)?;
    curvature_profile_field(&links, mesh)
}

pub fn curvature_profile_field(field: &dyn LinkField, mesh: &SphereMesh) -> Result<Vec<CurvatureSample>> {
    let phases = plaquette_phases(field, mesh, LatticeOptions::default())?;
    Ok(phases
        .into_iter()
        .enumerate()
        .map(|(face, plaquette_phase)| CurvatureSample {
            face,
            plaquette_phase,
            solid_angle: mesh.face_solid_angle(face),
            cell_area: mesh.cell_area(face),
        })
        .collect())
}

/// `max |F + h dA| / dA` against the smooth cell areas: how far the
/// discrete curvature is from the uniform density `-h`.
pub fn uniformity_error(profile: &[CurvatureSample], h: i32) -> f64 {
    profile
        .iter()
        .map(|s| (s.plaquette_phase + h as f64 * s.cell_area).abs() / s.cell_area)
        .fold(0.0, f64::max)
}

/// Same as [`uniformity_error`] against the geodesic face solid angles.
pub fn geodesic_uniformity_error(profile: &[CurvatureSample], h: i32) -> f64 {
    profile
        .iter()
        .map(|s| (s.plaquette_phase + h as f64 * s.solid_angle).abs() / s.solid_angle.abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub h1: i32,
    pub h2: i32,
    pub chern_h1: i64,
    pub chern_h2: i64,
    pub chern_product: i64,
    pub product_residual: f64,
    pub pass: bool,
}

/// Chern number of `gamma_h1 (x) gamma_h2` from multiplied links, against
/// the sum of the factors' Chern numbers.
pub fn additivity_check(h1: i32, h2: i32, mesh: &SphereMesh) -> Result<AdditivityReport> {
    let a = BundleLinks::new(HelicityBundle::power(h1), mesh, &ChartAssignment::Hemisphere)?;
    let b = BundleLinks::new(HelicityBundle::power(h2), mesh, &ChartAssignment::Hemisphere)?;
    let opts = LatticeOptions::default();
    let ca = chern_lattice_field(&a, mesh, opts)?;
    let cb = chern_lattice_field(&b, mesh, opts)?;
    let product = chern_lattice_field(&ProductLinks { left: &a, right: &b }, mesh, opts)?;
    Ok(AdditivityReport {
        h1,
        h2,
        chern_h1: ca.chern,
        chern_h2: cb.chern,
        chern_product: product.chern,
        product_residual: product.integer_residual,
        pass: product.chern == ca.chern + cb.chern && product.integer_residual < ACCEPT_RESIDUAL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_mesh, MeshSpec};
    use crate::topology::links::GaugeTransformed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mesh(nt: usize, np: usize) -> SphereMesh {
        build_mesh(MeshSpec::LatLon { n_theta: nt, n_phi: np }).unwrap()
    }

    #[test]
    fn trivial_bundle_has_no_curvature() {
        let r = chern_lattice(0, &mesh(16, 32)).unwrap();
        assert_eq!(r.chern, 0);
        assert!(r.raw_sum.abs() < 1e-9);
        let profile = curvature_profile(0, &mesh(16, 32)).unwrap();
        assert!(profile.iter().all(|s| s.plaquette_phase.abs() < 1e-9));
    }

    #[test]
    fn photons_have_chern_minus_two_h() {
        let m = mesh(32, 64);
        assert_eq!(chern_lattice(1, &m).unwrap().chern, -2);
        assert_eq!(chern_lattice(-1, &m).unwrap().chern, 2);
        assert_eq!(chern_lattice(2, &m).unwrap().chern, -4);
    }

    #[test]
    fn profile_phase_tracks_minus_h_solid_angle() {
        let p = curvature_profile(1, &mesh(16, 32)).unwrap();
        assert!(geodesic_uniformity_error(&p, 1) < 1e-9);
        let total: f64 = p.iter().map(|s| s.solid_angle).sum();
        assert!((total - 4.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn uniformity_error_shrinks_quadratically() {
        let e1 = uniformity_error(&curvature_profile(1, &mesh(16, 32)).unwrap(), 1);
        let e2 = uniformity_error(&curvature_profile(1, &mesh(32, 64)).unwrap(), 1);
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "{e1} {e2}");
    }

    #[test]
    fn explicit_and_power_modes_agree() {
        let m = mesh(16, 32);
        for h in -3..=3 {
            let e = chern_lattice_bundle(
                HelicityBundle::explicit(h).unwrap(),
                &m,
                &ChartAssignment::Hemisphere,
                LatticeOptions::default(),
            )
            .unwrap();
            assert_eq!(e.chern, -2 * h as i64);
        }
    }

    #[test]
    fn gauge_and_chart_changes_leave_plaquettes_alone() {
        let m = mesh(12, 24);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base = BundleLinks::new(HelicityBundle::power(3), &m, &ChartAssignment::Hemisphere).unwrap();
        let reference = plaquette_phases(&base, &m, LatticeOptions::default()).unwrap();

        let phases = (0..m.vertices().len())
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)))
            .collect();
        let twisted = GaugeTransformed { inner: &base, phases };
        let got = plaquette_phases(&twisted, &m, LatticeOptions::default()).unwrap();
        let worst = reference
            .iter()
            .zip(&got)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "{worst}");

        let charts = m
            .vertices()
            .iter()
            .map(|v| {
                let c = if rng.gen_bool(0.5) {
                    crate::geometry::Chart::NorthAligned
                } else {
                    crate::geometry::Chart::SouthAligned
                };
                if c.is_valid_at(v, crate::geometry::POLE_GUARD) {
                    c
                } else {
                    c.other()
                }
            })
            .collect();
        let rechart = BundleLinks::new(HelicityBundle::power(3), &m, &ChartAssignment::PerVertex(charts)).unwrap();
        let got = plaquette_phases(&rechart, &m, LatticeOptions::default()).unwrap();
        let worst = reference
            .iter()
            .zip(&got)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn reversed_orientation_negates() {
        let m = mesh(16, 32);
        for h in [-2, 1, 3] {
            let fwd = chern_lattice(h, &m).unwrap();
            let back = chern_lattice(h, &m.reversed()).unwrap();
            assert_eq!(back.chern, -fwd.chern);
        }
    }

    #[test]
    fn icosphere_gives_same_integers() {
        let m = build_mesh(MeshSpec::Icosphere { level: 3 }).unwrap();
        for h in -5..=5 {
            assert_eq!(chern_lattice(h, &m).unwrap().chern, -2 * h as i64);
        }
    }

    #[test]
    fn graviton_chern() {
        let m = mesh(16, 32);
        assert_eq!(chern_graviton(Sign::Plus, &m).unwrap().chern, -4);
        assert_eq!(chern_graviton(Sign::Minus, &m).unwrap().chern, 4);
    }

    #[test]
    fn additivity_examples() {
        let m = mesh(32, 64);
        for (h1, h2, want) in [(1, -1, 0), (1, 1, -4), (2, 3, -10)] {
            let r = additivity_check(h1, h2, &m).unwrap();
            assert!(r.pass);
            assert_eq!(r.chern_product, want);
        }
    }

    #[test]
    fn coarse_mesh_is_inadmissible_for_large_h() {
        let m = mesh(4, 8);
        let err = chern_lattice(20, &m).unwrap_err();
        assert!(matches!(err, Error::AdmissibilityViolation { .. }));
    }

    #[test]
    fn flipped_sign_canary_changes_the_answer() {
        let m = mesh(16, 32);
        let r = chern_lattice_bundle(
            HelicityBundle::power(1),
            &m,
            &ChartAssignment::Hemisphere,
            LatticeOptions { flip_sign: true },
        )
        .unwrap();
        assert_eq!(r.chern, 2);
    }
}
