use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Decompose,
    DiscPoly,
    Expand,
    PoissonSzego,
    PlaneWave,
    Quad,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Zonal harmonic expansions on the unit sphere in C^n.
#[derive(Debug, Parser)]
#[command(name = "czonal", version, about)]
pub struct Cli {
    /// Job to run. May instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// JSON job file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Complex dimension n >= 2.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest total bidegree p + q.
    #[arg(long, visible_alias = "max")]
    pub max_bidegree: Option<usize>,
    /// Radii, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub r: Option<Vec<f64>>,
    #[arg(long)]
    pub radial_points: Option<usize>,
    #[arg(long)]
    pub angular_points: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Floating-point tolerance for `verify`.
    #[arg(long, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
    /// Builtin profile: const, monomial(a,b), plane-wave(r), poisson-szego(r), exp-re.
    #[arg(long)]
    pub profile: Option<String>,
    /// First bidegree index for `disc-poly` and `quad`.
    #[arg(long)]
    pub p: Option<usize>,
    /// Second bidegree index for `disc-poly` and `quad`.
    #[arg(long)]
    pub q: Option<usize>,
    /// Weight exponent for `disc-poly` (defaults to n - 2).
    #[arg(long)]
    pub alpha: Option<usize>,
    /// `disc-poly`: emit the table of gamma coefficients instead.
    #[arg(long)]
    pub gamma: bool,
    /// `quad`: emit the quadrature rule as JSON.
    #[arg(long)]
    pub emit_rule: bool,
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Option<Command>,
    pub n: Option<usize>,
    pub max_bidegree: Option<usize>,
    pub r: Option<Vec<f64>>,
    pub radial_points: Option<usize>,
    pub angular_points: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub profile: Option<String>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub alpha: Option<usize>,
    #[serde(default)]
    pub gamma: bool,
    #[serde(default)]
    pub emit_rule: bool,
}

/// A fully merged job.
#[derive(Debug)]
pub struct Job {
    pub command: Command,
    pub n: Option<usize>,
    pub max_bidegree: Option<usize>,
    pub r: Option<Vec<f64>>,
    pub radial_points: Option<usize>,
    pub angular_points: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub profile: Option<String>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub alpha: Option<usize>,
    pub gamma: bool,
    pub emit_rule: bool,
}

fn pick<T: PartialEq>(name: &str, flag: Option<T>, file: Option<T>) -> Option<T> {
    match (flag, file) {
        (Some(f), Some(c)) => {
            if f != c {
                eprintln!("notice: --{name} on the command line overrides the config file");
            }
            Some(f)
        }
        (f, c) => f.or(c),
    }
}

fn read_config(path: &Path) -> Result<JobConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
}

impl Cli {
    pub fn into_job(self) -> Result<Job, CliError> {
        let file = match &self.config {
            Some(path) => read_config(path)?,
            None => JobConfig::default(),
        };
        let command = pick("command", self.command, file.command)
            .ok_or_else(|| CliError::Validation("no command given".into()))?;
        Ok(Job {
            command,
            n: pick("n", self.n, file.n),
            max_bidegree: pick("max-bidegree", self.max_bidegree, file.max_bidegree),
            r: pick("r", self.r, file.r),
            radial_points: pick("radial-points", self.radial_points, file.radial_points),
            angular_points: pick("angular-points", self.angular_points, file.angular_points),
            format: pick("format", self.format, file.format),
            out: pick("out", self.out, file.out),
            input: pick("input", self.input, file.input),
            tolerance: pick("tolerance", self.tolerance, file.tolerance),
            profile: pick("profile", self.profile, file.profile),
            p: pick("p", self.p, file.p),
            q: pick("q", self.q, file.q),
            alpha: pick("alpha", self.alpha, file.alpha),
            gamma: self.gamma || file.gamma,
            emit_rule: self.emit_rule || file.emit_rule,
        })
    }
}

impl Job {
    pub fn dimension(&self) -> Result<usize, CliError> {
        match self.n {
            Some(n) if n >= 2 => Ok(n),
            Some(n) => Err(CliError::Validation(format!(
                "--n must be at least 2, got {n}"
            ))),
            None => Err(CliError::Validation("--n is required".into())),
        }
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn radii(&self) -> Result<&[f64], CliError> {
        match &self.r {
            Some(r) if !r.is_empty() => Ok(r),
            _ => Err(CliError::Validation("--r is required".into())),
        }
    }
}
