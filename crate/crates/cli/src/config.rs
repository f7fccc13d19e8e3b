//! Run configuration: defaults, then the JSON config file, then CLI flags.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Fixed default seed so that `verify` is reproducible out of the box.
pub const DEFAULT_SEED: u64 = 20_240_607;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SAMPLES: usize = 20;
/// `xval` fails when the two evaluators differ by more than this.
pub const DEFAULT_XVAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Asympt,
    Verify,
    Sweep,
    Xval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Mb,
    Residue,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Quadrature overrides; unset fields come from the automatic contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContourOverrides {
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub half_extent: Option<f64>,
    #[serde(default)]
    pub nodes_per_dim: Option<usize>,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

impl Default for ContourOverrides {
    fn default() -> Self {
        ContourOverrides {
            epsilon: None,
            half_extent: None,
            nodes_per_dim: None,
            tol: DEFAULT_TOL,
        }
    }
}

impl ContourOverrides {
    pub fn any(&self) -> bool {
        self.epsilon.is_some() || self.half_extent.is_some() || self.nodes_per_dim.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesOverrides {
    #[serde(default)]
    pub max_order: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
}

/// Fully resolved configuration.
///
/// Defaults: `hbar = 1`, `x = 0`, `method = mb`, `seed = DEFAULT_SEED`,
/// contour `tol = 1e-10`, `samples = 20`, `perturbation = 0`,
/// `xval_tol = 1e-6`, `output_format = json`, output to stdout. `m`, `N`
/// and `lambda` have no defaults except for `verify`, which uses `(2, 4)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub m: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub lambda: Option<Vec<f64>>,
    pub hbar: f64,
    pub x: f64,
    pub x_grid: Vec<f64>,
    pub method: Method,
    pub contour: ContourOverrides,
    pub series: SeriesOverrides,
    pub seed: u64,
    pub samples: usize,
    pub perturbation: f64,
    pub xval_tol: f64,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

/// The config file: every `RunConfig` field, all optional, nothing else.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<Command>,
    pub m: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub lambda: Option<Vec<f64>>,
    pub hbar: Option<f64>,
    pub x: Option<f64>,
    pub x_grid: Option<Vec<f64>>,
    pub method: Option<Method>,
    pub contour: Option<ContourOverrides>,
    pub series: Option<SeriesOverrides>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub perturbation: Option<f64>,
    pub xval_tol: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Command-line interface.
#[derive(Debug, Clone, Parser)]
#[command(name = "pwhit", version, about = "Parabolic Whittaker functions of Gr(m, N)")]
pub struct Cli {
    /// eval | asympt | verify | sweep | xval (may also come from --config).
    #[arg(value_enum)]
    pub command: Option<Command>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Comma-separated spectrum, e.g. `--lambda 0.5,0,-0.3`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<f64>>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Comma-separated x values for `sweep`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x_grid: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub half_extent: Option<f64>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub max_order: Option<usize>,
    #[arg(long)]
    pub series_tol: Option<f64>,
    /// Random samples per verification suite.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub xval_tol: Option<f64>,
    /// Test hook: shift one gamma argument of the left Whittaker vector.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
}

impl RunConfig {
    /// Merge defaults, the optional config file, and CLI flags.
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        Self::merge(cli, file)
    }

    pub fn merge(cli: &Cli, file: ConfigFile) -> Result<Self, CliError> {
        let command = cli
            .command
            .or(file.command)
            .ok_or_else(|| CliError::Config("no command given (eval|asympt|verify|sweep|xval)".into()))?;
        let mut contour = file.contour.unwrap_or_default();
        contour.epsilon = cli.epsilon.or(contour.epsilon);
        contour.half_extent = cli.half_extent.or(contour.half_extent);
        contour.nodes_per_dim = cli.nodes.or(contour.nodes_per_dim);
        contour.tol = cli.tol.unwrap_or(contour.tol);
        let mut series = file.series.unwrap_or_default();
        series.max_order = cli.max_order.or(series.max_order);
        series.tol = cli.series_tol.or(series.tol);
        let cfg = RunConfig {
            command,
            m: cli.m.or(file.m),
            n: cli.n.or(file.n),
            lambda: cli.lambda.clone().or(file.lambda),
            hbar: cli.hbar.or(file.hbar).unwrap_or(1.0),
            x: cli.x.or(file.x).unwrap_or(0.0),
            x_grid: cli.x_grid.clone().or(file.x_grid).unwrap_or_default(),
            method: cli.method.or(file.method).unwrap_or_default(),
            contour,
            series,
            seed: cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            samples: cli.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
            perturbation: cli.perturb.or(file.perturbation).unwrap_or(0.0),
            xval_tol: cli.xval_tol.or(file.xval_tol).unwrap_or(DEFAULT_XVAL_TOL),
            output_path: cli.out.clone().or(file.output_path),
            output_format: cli.format.or(file.output_format).unwrap_or_default(),
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        if !(self.contour.tol > 0.0 && self.contour.tol < 1.0) {
            return Err(CliError::Config(format!("tol must lie in (0, 1), got {}", self.contour.tol)));
        }
        if self.samples == 0 {
            return Err(CliError::Config("samples must be >= 1".into()));
        }
        if self.output_format == OutputFormat::Csv && self.command != Command::Sweep {
            return Err(CliError::Config("csv output is only available for sweep".into()));
        }
        Ok(())
    }
}
