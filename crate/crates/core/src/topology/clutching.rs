//! Chern number from the clutching function along the equator.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{ChernReport, Method};
use crate::bundles::{fiber_inner, section, HelicityBundle, DEGENERATE_OVERLAP};
use crate::error::{Error, Result};
use crate::geometry::{Chart, Vec3};

/// Unit transition `g(phi) = <s_N, s_S> / |<s_N, s_S>|` at equatorial
/// directions `phi_j = 2 pi j / n`.
pub fn clutching_function(bundle: &HelicityBundle, n_samples: usize) -> Result<Vec<Complex64>> {
    (0..n_samples)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / n_samples as f64;
            let khat = Vec3::new(phi.cos(), phi.sin(), 0.0);
            let north = section(bundle, &khat, Chart::NorthAligned)?;
            let south = section(bundle, &khat, Chart::SouthAligned)?;
            let t = fiber_inner(&north, &south)?;
            if t.norm() < DEGENERATE_OVERLAP {
                return Err(Error::DegenerateOverlap {
                    magnitude: t.norm(),
                    threshold: DEGENERATE_OVERLAP,
                });
            }
            Ok(t / t.norm())
        })
        .collect()
}

/// Winding number of the clutching function of `gamma_h`, which equals its
/// Chern number (`-2` for `h = +1`).
pub fn chern_clutching(h: i32, n_samples: usize) -> Result<ChernReport> {
    chern_clutching_bundle(&HelicityBundle::power(h), n_samples)
}

/// Fewest equatorial samples accepted for helicity `h`.
pub fn clutching_sample_floor(h: i32) -> usize {
    8 * h.unsigned_abs().max(1) as usize
}

pub fn chern_clutching_bundle(bundle: &HelicityBundle, n_samples: usize) -> Result<ChernReport> {
    let required = clutching_sample_floor(bundle.h());
    if n_samples < required {
        return Err(Error::TooFewSamples {
            got: n_samples,
            required,
        });
    }
    let g = clutching_function(bundle, n_samples)?;
    let mut total = 0.0;
    let mut max_step: f64 = 0.0;
    for j in 0..n_samples {
        let step = (g[(j + 1) % n_samples] * g[j].conj()).arg();
        if step.abs() > FRAC_PI_2 {
            return Err(Error::AliasingRisk {
                sample: j,
                increment: step,
            });
        }
        max_step = max_step.max(step.abs());
        total += step;
    }
    // `+ 0.0` turns a negative zero from an empty or cancelling sum into zero.
    let raw = total / (2.0 * PI) + 0.0;
    let chern = raw.round();
    Ok(ChernReport {
        h: bundle.h(),
        method: Method::ClutchingWinding,
        chern: chern as i64,
        raw_sum: raw,
        integer_residual: (raw - chern).abs(),
        max_plaquette_phase: max_step,
        mesh: None,
        samples: Some(n_samples),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_bundle_does_not_wind() {
        let r = chern_clutching(0, 64).unwrap();
        assert_eq!(r.chern, 0);
        assert_eq!(r.raw_sum, 0.0);
    }

    #[test]
    fn photon_and_graviton_windings() {
        assert_eq!(chern_clutching(1, 256).unwrap().chern, -2);
        assert_eq!(chern_clutching(-1, 256).unwrap().chern, 2);
        assert_eq!(chern_clutching(-2, 256).unwrap().chern, 4);
    }

    #[test]
    fn photon_transition_is_minus_exp_minus_two_i_phi() {
        // Closed form of <s_N, s_S> on the equator for the frames used here.
        let n = 16;
        let g = clutching_function(&HelicityBundle::power(1), n).unwrap();
        for (j, z) in g.iter().enumerate() {
            let phi = 2.0 * PI * j as f64 / n as f64;
            let want = -Complex64::from_polar(1.0, -2.0 * phi);
            assert!((z - want).norm() < 1e-14);
        }
    }

    #[test]
    fn explicit_mode_matches() {
        for h in -3..=3 {
            let e = chern_clutching_bundle(&HelicityBundle::explicit(h).unwrap(), 64).unwrap();
            assert_eq!(e.chern, chern_clutching(h, 64).unwrap().chern);
        }
    }

    #[test]
    fn sample_floor_and_aliasing() {
        assert!(matches!(chern_clutching(5, 39), Err(Error::TooFewSamples { .. })));
        // At exactly 8|h| samples every step sits on the pi/2 boundary.
        assert_eq!(chern_clutching(5, 48).unwrap().chern, -10);
        assert!(matches!(
            chern_clutching(9, 72),
            Ok(_) | Err(Error::AliasingRisk { .. })
        ));
    }
}
