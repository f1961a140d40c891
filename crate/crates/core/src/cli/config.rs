//! Effective run configuration and argument parsing helpers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geometry::MeshSpec;

pub const DEFAULT_SAMPLES: usize = 512;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-6;
pub const DEFAULT_CONVERGE_RESIDUAL_TOL: f64 = 1e-9;
pub const DEFAULT_UNIFORMITY_TOL: f64 = 1e-3;
pub const DEFAULT_LADDER: &str = "8x16,16x32,32x64,64x128,128x256";

/// A configuration the invoked operation cannot accept.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Helicity selection: `a..b` (inclusive), `a,b,c` or a single integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HelicitySet(pub Vec<i32>);

impl FromStr for HelicitySet {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let int = |t: &str| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| ConfigError(format!("invalid helicity {t:?}")))
        };
        if let Some((a, b)) = s.split_once("..") {
            let (a, b) = (int(a)?, int(b)?);
            if a > b {
                return Err(ConfigError(format!("empty helicity range {a}..{b}")));
            }
            return Ok(HelicitySet((a..=b).collect()));
        }
        let hs = s.split(',').map(int).collect::<Result<Vec<_>, _>>()?;
        Ok(HelicitySet(hs))
    }
}

impl fmt::Display for HelicitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Comma-separated mesh ladder.
pub fn parse_ladder(s: &str) -> Result<Vec<MeshSpec>, ConfigError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let t = if t.contains(':') {
                t.to_string()
            } else {
                format!("latlon:{t}")
            };
            t.parse::<MeshSpec>().map_err(|e| ConfigError(e.to_string()))
        })
        .collect()
}

/// A ladder given as one comma-separated argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder(pub Vec<MeshSpec>);

impl FromStr for Ladder {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ladder(s).map(Ladder)
    }
}

/// Comma-separated momentum `kx,ky,kz`.
pub fn parse_momentum(s: &str) -> Result<[f64; 3], ConfigError> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ConfigError(format!("invalid momentum {s:?}")))?;
    match parts[..] {
        [x, y, z] if (x * x + y * y + z * z).sqrt() > crate::geometry::ZERO_MOMENTUM_EPSILON => Ok([x, y, z]),
        [_, _, _] => Err(ConfigError("momentum must be nonzero".into())),
        _ => Err(ConfigError(format!("momentum needs three components, got {s:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Chern,
    Verify,
    Converge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Lattice,
    Clutching,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Bundles,
    Graviton,
    Helicity,
    Rotation,
    Translation,
    Boost,
    Wigner,
    So2,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Bundles,
        Suite::Graviton,
        Suite::Helicity,
        Suite::Rotation,
        Suite::Translation,
        Suite::Boost,
        Suite::Wigner,
        Suite::So2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bundles => "bundles",
            Suite::Graviton => "graviton",
            Suite::Helicity => "helicity",
            Suite::Rotation => "rotation",
            Suite::Translation => "translation",
            Suite::Boost => "boost",
            Suite::Wigner => "wigner",
            Suite::So2 => "so2",
        }
    }

    /// Position in [`Suite::ALL`], used as the random stream id.
    pub fn index(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).unwrap() as u64
    }
}

/// Tolerances that may be overridden from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Largest accepted distance of `raw_sum` from an integer.
    pub residual: f64,
    /// Final-rung bound on the curvature-uniformity error, per unit `|h|`.
    pub uniformity: f64,
}

/// Everything a run depends on. Every field is echoed into the report;
/// fields that do not apply to the command are `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub h: Option<HelicitySet>,
    pub method: Option<MethodChoice>,
    pub mesh: Option<MeshSpec>,
    pub ladder: Option<Vec<MeshSpec>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub suites: Option<Vec<Suite>>,
    pub k: Option<[f64; 3]>,
    pub tolerances: Tolerances,
    pub threads: usize,
    pub format: Format,
    pub out: Option<String>,
    pub flip_sign: bool,
}

impl RunConfig {
    /// Checks every numeric parameter against the ranges the invoked
    /// operations accept.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.threads == 0 {
            return Err(ConfigError("--threads must be at least 1".into()));
        }
        for (name, tol) in [
            ("residual", self.tolerances.residual),
            ("uniformity", self.tolerances.uniformity),
        ] {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(ConfigError(format!("{name} tolerance must be positive, got {tol}")));
            }
        }
        if let Some(h) = &self.h {
            if h.0.is_empty() {
                return Err(ConfigError("no helicities given".into()));
            }
        }
        if let Some(mesh) = &self.mesh {
            crate::geometry::build_mesh(*mesh).map_err(|e| ConfigError(e.to_string()))?;
        }
        if let (Some(n), Some(h)) = (self.samples, &self.h) {
            let uses_clutching = matches!(self.method, Some(MethodChoice::Clutching | MethodChoice::Both));
            let hmax = h.0.iter().map(|h| h.unsigned_abs()).max().unwrap_or(0).max(1) as usize;
            let required = crate::topology::clutching_sample_floor(hmax as i32);
            if uses_clutching && n < required {
                return Err(ConfigError(format!(
                    "--samples {n} is below the floor {required} for |h| = {hmax}"
                )));
            }
        }
        if let Some(t) = self.trials {
            if t == 0 {
                return Err(ConfigError("--trials must be at least 1".into()));
            }
        }
        if let Some(ladder) = &self.ladder {
            validate_ladder(ladder)?;
        }
        Ok(())
    }
}

fn validate_ladder(ladder: &[MeshSpec]) -> Result<(), ConfigError> {
    if ladder.len() < 2 {
        return Err(ConfigError("a ladder needs at least two rungs".into()));
    }
    for m in ladder {
        crate::geometry::build_mesh(*m).map_err(|e| ConfigError(e.to_string()))?;
    }
    for w in ladder.windows(2) {
        let finer = match (w[0], w[1]) {
            (MeshSpec::LatLon { n_theta: a, n_phi: b }, MeshSpec::LatLon { n_theta: c, n_phi: d }) => {
                c >= a && d >= b && (c, d) != (a, b)
            }
            (MeshSpec::Icosphere { level: a }, MeshSpec::Icosphere { level: b }) => b > a,
            _ => return Err(ConfigError("ladder mixes mesh families".into())),
        };
        if !finer {
            return Err(ConfigError(format!("ladder is not monotone at {} -> {}", w[0], w[1])));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helicity_sets() {
        assert_eq!("-3..3".parse::<HelicitySet>().unwrap().0, vec![-3, -2, -1, 0, 1, 2, 3]);
        assert_eq!("1, -4,2".parse::<HelicitySet>().unwrap().0, vec![1, -4, 2]);
        assert_eq!("7".parse::<HelicitySet>().unwrap().0, vec![7]);
        assert_eq!("2..2".parse::<HelicitySet>().unwrap().0, vec![2]);
        assert!("3..1".parse::<HelicitySet>().is_err());
        assert!("a".parse::<HelicitySet>().is_err());
        assert!("".parse::<HelicitySet>().is_err());
    }

    #[test]
    fn ladders() {
        let l = parse_ladder(DEFAULT_LADDER).unwrap();
        assert_eq!(l.len(), 5);
        assert!(validate_ladder(&l).is_ok());
        assert!(validate_ladder(&parse_ladder("16x32,8x16").unwrap()).is_err());
        assert!(validate_ladder(&parse_ladder("16x32,16x32").unwrap()).is_err());
        assert!(validate_ladder(&parse_ladder("8x16,ico:2").unwrap()).is_err());
        assert!(validate_ladder(&parse_ladder("ico:1,ico:2,ico:3").unwrap()).is_ok());
        assert!(validate_ladder(&parse_ladder("8x16").unwrap()).is_err());
    }

    #[test]
    fn momenta() {
        assert_eq!(parse_momentum("1,2,2").unwrap(), [1.0, 2.0, 2.0]);
        assert!(parse_momentum("0,0,0").is_err());
        assert!(parse_momentum("1,2").is_err());
        assert!(parse_momentum("x,1,1").is_err());
    }
}
