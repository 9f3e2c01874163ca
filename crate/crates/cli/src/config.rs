//! Config file (TOML) and its merge with command-line flags. Flags win.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use cvinv::bench::DetectorConfig;
use cvinv::gaussian::{Purity, SpecialForm, Symmetry};
use cvinv::report::StateSource;

use crate::args::{
    CommonArgs, FormArg, Format, Generator, PurityArg, SchemeChoice, StateArgs, SweepArgs,
    SweepParam, SymmetryArg,
};
use crate::error::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub scheme: Option<SchemeChoice>,
    #[serde(default)]
    pub state: StateSection,
    #[serde(default)]
    pub detector: DetectorSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    pub file: Option<PathBuf>,
    pub generator: Option<Generator>,
    pub r: Option<f64>,
    pub nu1: Option<f64>,
    pub nu2: Option<f64>,
    pub purity: Option<PurityArg>,
    pub symmetry: Option<SymmetryArg>,
    pub form: Option<FormArg>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorSection {
    pub kind: Option<String>,
    pub eta: Option<f64>,
    pub shots: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub param: Option<SweepParam>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
    pub values: Option<Vec<f64>>,
}

impl FileConfig {
    /// Reads `path`; state-file paths inside it are taken relative to the
    /// config's directory.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: Self = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))?;
        if let (Some(file), Some(dir)) = (cfg.state.file.as_mut(), path.parent()) {
            if file.is_relative() {
                *file = dir.join(&*file);
            }
        }
        Ok(cfg)
    }
}

/// Everything a single run needs after merging flags and config.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub source: StateSource,
    pub seed: u64,
    pub detector: DetectorConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn resolve_seed(flags: &StateArgs, file: &FileConfig) -> u64 {
    flags.seed.or(file.seed).unwrap_or(0)
}

pub fn resolve_source(flags: &StateArgs, file: &FileConfig) -> Result<StateSource, CliError> {
    let seed = resolve_seed(flags, file);
    let s = &file.state;
    // An explicit flag for one kind of source shadows the other kind in the
    // config file.
    let path = match (&flags.state, flags.generator) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(_)) => None,
        (None, None) => s.file.clone(),
    };
    if let Some(path) = path {
        return Ok(StateSource::File { path });
    }
    let generator = flags.generator.or(s.generator).ok_or_else(|| {
        CliError::Config("no input state: pass --state FILE or --generator NAME".into())
    })?;
    let need = |name: &str, flag: Option<f64>, cfg: Option<f64>| {
        flag.or(cfg)
            .ok_or_else(|| CliError::Config(format!("generator needs --{name}")))
    };
    Ok(match generator {
        Generator::Vacuum => StateSource::Vacuum,
        Generator::Tmsv => StateSource::Tmsv {
            r: need("r", flags.r, s.r)?,
        },
        Generator::Thermal => {
            let nu1 = need("nu1", flags.nu1, s.nu1)?;
            StateSource::Thermal {
                nu1,
                nu2: flags.nu2.or(s.nu2).unwrap_or(nu1),
            }
        }
        Generator::Random => StateSource::Random {
            seed,
            purity: Purity::from(flags.purity.or(s.purity).unwrap_or(PurityArg::Mixed)),
            symmetry: Symmetry::from(
                flags
                    .symmetry
                    .or(s.symmetry)
                    .unwrap_or(SymmetryArg::General),
            ),
        },
        Generator::Special => StateSource::Special {
            seed,
            form: SpecialForm::from(flags.form.or(s.form).unwrap_or(FormArg::AntidiagonalC)),
        },
    })
}

pub fn resolve(flags: &CommonArgs, file: &FileConfig) -> Result<Resolved, CliError> {
    let d = &file.detector;
    Ok(Resolved {
        source: resolve_source(&flags.state, file)?,
        seed: resolve_seed(&flags.state, file),
        detector: DetectorConfig {
            kind: flags
                .detector
                .clone()
                .or_else(|| d.kind.clone())
                .unwrap_or_else(|| "ideal".into()),
            eta: flags.eta.or(d.eta).unwrap_or(1.0),
            shots: flags.shots.or(d.shots),
        },
        out: flags.out.clone().or_else(|| file.output.path.clone()),
        format: flags.format.or(file.output.format).unwrap_or(Format::Json),
    })
}

/// Sweep grid after merging flags and config.
pub fn resolve_grid(
    flags: &SweepArgs,
    file: &FileConfig,
) -> Result<(SweepParam, Vec<f64>), CliError> {
    let s = &file.sweep;
    let param = flags
        .param
        .or(s.param)
        .ok_or_else(|| CliError::Config("sweep needs --param r|eta".into()))?;
    if let Some(values) = flags.values.clone().or_else(|| s.values.clone()) {
        if values.is_empty() {
            return Err(CliError::Config("--values is empty".into()));
        }
        return Ok((param, values));
    }
    let (from, to, steps) = match (
        flags.from.or(s.from),
        flags.to.or(s.to),
        flags.steps.or(s.steps),
    ) {
        (Some(a), Some(b), Some(n)) if n >= 1 => (a, b, n),
        _ => {
            return Err(CliError::Config(
                "sweep needs --values or all of --from, --to, --steps (>= 1)".into(),
            ))
        }
    };
    let grid = (0..steps)
        .map(|i| match steps {
            1 => from,
            _ => from + (to - from) * i as f64 / (steps - 1) as f64,
        })
        .collect();
    Ok((param, grid))
}
