use std::fs;

use super::config::{MethodChoice, RunConfig};
use super::report::{ChernResult, ReportEnvelope, ResultRecord};
use crate::bundles::HelicityBundle;
use crate::error::Error;
use crate::geometry::build_mesh;
use crate::topology::{
    chern_clutching, chern_lattice_bundle, curvature_profile, ChartAssignment, CurvatureSample, LatticeOptions, Method,
};

/// Side outputs of the `chern` command.
#[derive(Debug, Clone, Default)]
pub struct ChernExtras {
    /// Write the lattice curvature profile of every `h` here, as CSV.
    pub profile: Option<String>,
    /// Write the mesh here, as JSON.
    pub dump_mesh: Option<String>,
}

#[derive(serde::Serialize)]
struct ProfileRow {
    h: i32,
    face: usize,
    plaquette_phase: f64,
    solid_angle: f64,
    cell_area: f64,
}

impl ProfileRow {
    fn new(h: i32, s: CurvatureSample) -> Self {
        ProfileRow {
            h,
            face: s.face,
            plaquette_phase: s.plaquette_phase,
            solid_angle: s.solid_angle,
            cell_area: s.cell_area,
        }
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::AdmissibilityViolation { reason, .. } if !reason.contains("refine") => format!("{e}; refine the mesh"),
        Error::AliasingRisk { .. } | Error::TooFewSamples { .. } => format!("{e}; increase --samples"),
        _ => e.to_string(),
    }
}

/// Runs the lattice and/or clutching computation for each requested `h`.
pub fn cmd_chern(config: &RunConfig, extras: &ChernExtras) -> std::io::Result<ReportEnvelope> {
    let hs = config.h.as_ref().map(|h| h.0.clone()).unwrap_or_else(|| vec![1]);
    let method = config.method.unwrap_or(MethodChoice::Lattice);
    let spec = config.mesh.unwrap_or_default();
    let samples = config.samples.unwrap_or(super::config::DEFAULT_SAMPLES);
    let tol = config.tolerances.residual;
    let opts = LatticeOptions {
        flip_sign: config.flip_sign,
    };

    let needs_mesh = matches!(method, MethodChoice::Lattice | MethodChoice::Both);
    let mesh = if needs_mesh || extras.dump_mesh.is_some() {
        Some(build_mesh(spec).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string()))?)
    } else {
        None
    };
    if let (Some(path), Some(mesh)) = (&extras.dump_mesh, &mesh) {
        fs::write(path, mesh.to_json())?;
    }

    let mut results = Vec::new();
    let mut profile_rows = Vec::new();
    for &h in &hs {
        if let (true, Some(mesh)) = (needs_mesh, &mesh) {
            let r = chern_lattice_bundle(HelicityBundle::power(h), mesh, &ChartAssignment::Hemisphere, opts);
            results.push(match r {
                Ok(r) => ChernResult::from_report(&r, tol),
                Err(e) => ChernResult::failed(
                    h,
                    Method::LatticeFieldStrength,
                    Some(spec.to_string()),
                    None,
                    describe(&e),
                ),
            });
            if extras.profile.is_some() {
                if let Ok(p) = curvature_profile(h, mesh) {
                    profile_rows.extend(p.into_iter().map(|s| ProfileRow::new(h, s)));
                }
            }
        }
        if matches!(method, MethodChoice::Clutching | MethodChoice::Both) {
            results.push(match chern_clutching(h, samples) {
                Ok(r) => ChernResult::from_report(&r, tol),
                Err(e) => ChernResult::failed(h, Method::ClutchingWinding, None, Some(samples), describe(&e)),
            });
        }
    }

    let mut warnings = Vec::new();
    if method == MethodChoice::Both {
        for pair in results.chunks(2) {
            if let [a, b] = pair {
                if a.chern.is_some() && b.chern.is_some() && a.chern != b.chern {
                    warnings.push(format!(
                        "h = {}: lattice {:?} and clutching {:?} disagree",
                        a.h, a.chern, b.chern
                    ));
                }
            }
        }
    }
    if let Some(path) = &extras.profile {
        let mut w = csv::Writer::from_path(path)?;
        for row in &profile_rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    Ok(ReportEnvelope::new(
        config.clone(),
        results.into_iter().map(ResultRecord::Chern).collect(),
        warnings,
    ))
}
