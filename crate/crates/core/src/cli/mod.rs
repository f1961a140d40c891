//! Command-line front end: `chern`, `verify` and `converge`, each producing
//! a [`ReportEnvelope`].

mod chern;
mod config;
mod converge;
mod report;
pub mod sampling;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

pub use chern::{cmd_chern, ChernExtras};
pub use config::{
    parse_ladder, parse_momentum, CommandKind, ConfigError, Format, HelicitySet, Ladder, MethodChoice, RunConfig,
    Suite, Tolerances, DEFAULT_CONVERGE_RESIDUAL_TOL, DEFAULT_LADDER, DEFAULT_RESIDUAL_TOL, DEFAULT_SAMPLES,
    DEFAULT_TRIALS, DEFAULT_UNIFORMITY_TOL,
};
pub use converge::cmd_converge;
pub use report::{CheckResult, ChernResult, ReportEnvelope, ResultRecord, RungResult, Summary, REPORT_SCHEMA};
pub use verify::{cmd_verify, run_suite};

use crate::geometry::MeshSpec;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "helicity",
    version,
    about = "Chern numbers and Poincaré checks for massless helicity bundles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for the face loops
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Record the wall-clock time in the report
    #[arg(long, global = true)]
    pub stamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chern numbers of gamma_h
    Chern(ChernArgs),
    /// Property suites of the bundle and Poincaré modules
    Verify(VerifyArgs),
    /// Uniformity error and quantization along a mesh ladder
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct ChernArgs {
    /// Helicity, list `a,b,c` or inclusive range `a..b`
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub h: HelicitySet,

    #[arg(long, value_enum, default_value_t = MethodChoice::Lattice)]
    pub method: MethodChoice,

    /// `latlon:NxM` or `ico:L`
    #[arg(long, default_value = "latlon:64x128")]
    pub mesh: MeshSpec,

    /// Equatorial samples for the clutching method
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Largest accepted distance of the raw sum from an integer
    #[arg(long, default_value_t = DEFAULT_RESIDUAL_TOL)]
    pub tol: f64,

    /// Write per-face curvature as CSV
    #[arg(long)]
    pub profile: Option<String>,

    /// Write the mesh as JSON
    #[arg(long)]
    pub dump_mesh: Option<String>,

    #[arg(long, hide = true)]
    pub flip_sign: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (repeatable); all by default
    #[arg(long, value_enum)]
    pub suite: Vec<Suite>,

    /// Fixed momentum `kx,ky,kz` for the wigner suite
    #[arg(long, allow_hyphen_values = true, value_parser = parse_momentum)]
    pub k: Option<[f64; 3]>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random cases per suite (the boost suite runs ten times as many)
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub h: HelicitySet,

    /// Comma-separated meshes, coarse to fine
    #[arg(long, default_value = DEFAULT_LADDER)]
    pub ladder: Ladder,

    #[arg(long, default_value_t = DEFAULT_CONVERGE_RESIDUAL_TOL)]
    pub tol: f64,

    /// Final-rung uniformity bound per unit |h|
    #[arg(long, default_value_t = DEFAULT_UNIFORMITY_TOL)]
    pub uniformity_tol: f64,
}

impl Cli {
    /// The effective configuration, echoed into the report.
    pub fn config(&self) -> RunConfig {
        let mut cfg = RunConfig {
            command: CommandKind::Chern,
            h: None,
            method: None,
            mesh: None,
            ladder: None,
            samples: None,
            seed: None,
            trials: None,
            suites: None,
            k: None,
            tolerances: Tolerances {
                residual: DEFAULT_RESIDUAL_TOL,
                uniformity: DEFAULT_UNIFORMITY_TOL,
            },
            threads: self.threads,
            format: self.format,
            out: self.out.clone(),
            flip_sign: false,
        };
        match &self.command {
            Command::Chern(a) => {
                cfg.h = Some(a.h.clone());
                cfg.method = Some(a.method);
                if a.method != MethodChoice::Clutching {
                    cfg.mesh = Some(a.mesh);
                }
                if a.method != MethodChoice::Lattice {
                    cfg.samples = Some(a.samples);
                }
                cfg.tolerances.residual = a.tol;
                cfg.flip_sign = a.flip_sign;
            }
            Command::Verify(a) => {
                cfg.command = CommandKind::Verify;
                cfg.seed = Some(a.seed);
                cfg.trials = Some(a.trials);
                cfg.suites = Some(if a.suite.is_empty() {
                    Suite::ALL.to_vec()
                } else {
                    a.suite.clone()
                });
                cfg.k = a.k;
            }
            Command::Converge(a) => {
                cfg.command = CommandKind::Converge;
                cfg.h = Some(a.h.clone());
                cfg.ladder = Some(a.ladder.0.clone());
                cfg.tolerances.residual = a.tol;
                cfg.tolerances.uniformity = a.uniformity_tol;
            }
        }
        cfg
    }

    fn extras(&self) -> ChernExtras {
        match &self.command {
            Command::Chern(a) => ChernExtras {
                profile: a.profile.clone(),
                dump_mesh: a.dump_mesh.clone(),
            },
            _ => ChernExtras::default(),
        }
    }
}

/// Runs a validated configuration.
pub fn execute(config: &RunConfig, extras: &ChernExtras) -> std::io::Result<ReportEnvelope> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(std::io::Error::other)?;
    pool.install(|| match config.command {
        CommandKind::Chern => cmd_chern(config, extras),
        CommandKind::Verify => Ok(cmd_verify(config)),
        CommandKind::Converge => Ok(cmd_converge(config)),
    })
}

fn unix_seconds() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Parses `args`, runs the command, writes the report and returns the exit
/// status: 0 if every assertion passed, 1 if one failed, 2 for a bad
/// configuration.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let config = cli.config();
    if let Err(e) = config.validate() {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_CONFIG;
    }
    let mut report = match execute(&config, &cli.extras()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    if cli.stamp {
        report.timestamp = Some(unix_seconds());
    }
    let text = match report.render(config.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_CONFIG;
    }
    for w in &report.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    for r in report.results.iter().filter(|r| !r.pass()) {
        let _ = writeln!(stderr, "FAIL: {}", serde_json::to_string(r).unwrap_or_default());
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    pub fn chern_config() -> RunConfig {
        Cli::try_parse_from(["helicity", "chern"]).unwrap().config()
    }
}
