use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use cvinv::gaussian::{Purity, SpecialForm, Symmetry};

#[derive(Debug, Parser)]
#[command(
    name = "cvinv",
    version,
    about = "Two-mode Gaussian entanglement from single-mode photon-number and purity measurements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Oracle plus the selected scheme(s), with deltas and transcripts.
    Run(RunArgs),
    /// Invariants and entanglement straight from the covariance matrix.
    Oracle(CommonArgs),
    /// Shorthand for `run --scheme scheme1`.
    Scheme1(CommonArgs),
    /// Shorthand for `run --scheme scheme2`.
    Scheme2(CommonArgs),
    /// One report row per value of `r` or `eta`.
    Sweep(SweepArgs),
    /// Checks that a state is a physical covariance matrix.
    Validate(StateArgs),
    /// Re-runs the reconstruction of a saved report on its own transcripts.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeChoice {
    Oracle,
    Scheme1,
    Scheme2,
    Both,
}

impl SchemeChoice {
    pub fn names(self) -> Vec<String> {
        let names: &[&str] = match self {
            SchemeChoice::Oracle => &[],
            SchemeChoice::Scheme1 => &["scheme1"],
            SchemeChoice::Scheme2 => &["scheme2"],
            SchemeChoice::Both => &["scheme1", "scheme2"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Vacuum,
    Thermal,
    Tmsv,
    Random,
    Special,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PurityArg {
    Pure,
    Mixed,
}

impl From<PurityArg> for Purity {
    fn from(p: PurityArg) -> Self {
        match p {
            PurityArg::Pure => Purity::Pure,
            PurityArg::Mixed => Purity::Mixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryArg {
    Symmetric,
    General,
}

impl From<SymmetryArg> for Symmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Symmetric => Symmetry::Symmetric,
            SymmetryArg::General => Symmetry::General,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormArg {
    DiagonalC,
    AntidiagonalC,
}

impl From<FormArg> for SpecialForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::DiagonalC => SpecialForm::DiagonalC,
            FormArg::AntidiagonalC => SpecialForm::AntidiagonalC,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    R,
    Eta,
}

#[derive(Debug, Clone, Default, Args)]
pub struct StateArgs {
    /// State file (JSON, quadrature or mode format).
    #[arg(long, conflicts_with = "generator")]
    pub state: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub generator: Option<Generator>,
    /// Squeezing parameter of the `tmsv` generator.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Symplectic eigenvalues of the `thermal` generator.
    #[arg(long)]
    pub nu1: Option<f64>,
    #[arg(long)]
    pub nu2: Option<f64>,
    #[arg(long, value_enum)]
    pub purity: Option<PurityArg>,
    #[arg(long, value_enum)]
    pub symmetry: Option<SymmetryArg>,
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
    /// Seeds both the random generators and the detector noise.
    #[arg(long)]
    pub seed: Option<u64>,
    /// TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Detector model: ideal, lossy-homodyne or lossy-photocount.
    #[arg(long)]
    pub detector: Option<String>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Samples per quadrature angle (homodyne) or per setting (photocount).
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeChoice>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeChoice>,
    #[arg(long, value_enum)]
    pub param: Option<SweepParam>,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Explicit grid, comma separated; overrides from/to/steps.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// A JSON report written by `run`.
    pub report: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
