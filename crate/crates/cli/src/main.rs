mod args;
mod config;
mod error;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

use cvinv::bench::DetectorRegistry;
use cvinv::gaussian::validate_physical;
use cvinv::report::{self, RunReport, RunRequest, StateSource, SweepRow};
use cvinv::schemes::SchemeRegistry;

use args::{
    Cli, Command, CommonArgs, Format, ReplayArgs, RunArgs, SchemeChoice, StateArgs, SweepArgs,
    SweepParam,
};
use config::{resolve, resolve_grid, resolve_source, FileConfig, Resolved};
use error::CliError;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are configuration errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run(args) => run(args),
        Command::Oracle(common) => run(forced(common, SchemeChoice::Oracle)),
        Command::Scheme1(common) => run(forced(common, SchemeChoice::Scheme1)),
        Command::Scheme2(common) => run(forced(common, SchemeChoice::Scheme2)),
        Command::Sweep(args) => sweep(args),
        Command::Validate(args) => validate(args),
        Command::Replay(args) => replay(args),
    }
}

fn forced(common: CommonArgs, scheme: SchemeChoice) -> RunArgs {
    RunArgs {
        common,
        scheme: Some(scheme),
    }
}

fn request(r: &Resolved, scheme: SchemeChoice) -> RunRequest {
    RunRequest {
        source: r.source.clone(),
        seed: r.seed,
        schemes: scheme.names(),
        detector: r.detector.clone(),
    }
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.state.config.as_deref())?;
    let resolved = resolve(&args.common, &file)?;
    let scheme = args.scheme.or(file.scheme).unwrap_or(SchemeChoice::Both);
    let report = report::run(
        &request(&resolved, scheme),
        &SchemeRegistry::default(),
        &DetectorRegistry::default(),
    )?;
    for warning in report.schemes.iter().flat_map(|s| &s.result.warnings) {
        log::warn!("{warning}");
    }
    let text = match resolved.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => delta_csv(&report)?,
    };
    emit(resolved.out.as_deref(), &text)
}

#[derive(Serialize)]
struct DeltaLine<'a> {
    scheme: &'a str,
    invariant: &'a str,
    oracle: f64,
    value: f64,
    abs: f64,
    rel: Option<f64>,
}

/// Run reports in CSV form: one line per (scheme, invariant).
fn delta_csv(report: &RunReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if report.schemes.is_empty() {
        let o = &report.oracle.invariants;
        for (name, value) in ["J1", "J2", "J3", "J4"].into_iter().zip(o.as_j()) {
            w.serialize(DeltaLine {
                scheme: "oracle",
                invariant: name,
                oracle: value,
                value,
                abs: 0.0,
                rel: None,
            })?;
        }
    }
    for section in &report.schemes {
        for d in &section.deltas {
            w.serialize(DeltaLine {
                scheme: &section.result.scheme,
                invariant: &d.name,
                oracle: d.oracle,
                value: d.scheme,
                abs: d.abs,
                rel: d.rel,
            })?;
        }
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.state.config.as_deref())?;
    let (param, grid) = resolve_grid(&args, &file)?;
    let mut common = args.common.clone();
    if param == SweepParam::R
        && common.state.state.is_none()
        && common.state.generator.is_none()
        && file.state.generator.is_none()
        && file.state.file.is_none()
    {
        common.state.generator = Some(args::Generator::Tmsv);
        common.state.r = Some(grid[0]);
    }
    if param == SweepParam::R && common.state.r.is_none() && file.state.r.is_none() {
        common.state.r = Some(grid[0]);
    }
    let resolved = resolve(&common, &file)?;
    match param {
        SweepParam::R if !matches!(resolved.source, StateSource::Tmsv { .. }) => {
            return Err(CliError::Config(
                "an r sweep needs the tmsv generator".into(),
            ));
        }
        SweepParam::Eta if resolved.detector.kind == "ideal" => {
            return Err(CliError::Config(
                "an eta sweep needs a lossy detector (--detector lossy-homodyne|lossy-photocount)"
                    .into(),
            ));
        }
        _ => {}
    }
    let scheme = args.scheme.or(file.scheme).unwrap_or(SchemeChoice::Scheme2);
    let base = request(&resolved, scheme);
    let (schemes, detectors) = (SchemeRegistry::default(), DetectorRegistry::default());

    // Grid points are independent; collect keeps them in grid order.
    let rows = grid
        .par_iter()
        .map(|&x| {
            let mut req = base.clone();
            match param {
                SweepParam::R => req.source = StateSource::Tmsv { r: x },
                SweepParam::Eta => req.detector.eta = x,
            }
            report::run(&req, &schemes, &detectors).map(|rep| SweepRow::new(x, &rep))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let text = match resolved.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialise") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)?;
            }
            finish_csv(w)?
        }
    };
    emit(resolved.out.as_deref(), &text)
}

fn validate(args: StateArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let g = resolve_source(&args, &file)?.load()?;
    let report = validate_physical(&g)?;
    #[derive(Serialize)]
    struct Validation<'a> {
        #[serde(flatten)]
        report: &'a cvinv::gaussian::PhysicalityReport,
        message: String,
    }
    let text = serde_json::to_string_pretty(&Validation {
        report: &report,
        message: report.describe(),
    })
    .expect("validation serialises");
    emit(None, &(text + "\n"))?;
    if report.physical {
        Ok(())
    } else {
        Err(cvinv::Error::Unphysical(report.describe()).into())
    }
}

fn replay(args: ReplayArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.report)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.report.display())))?;
    let report = RunReport::from_json(&text)?;
    let checks = report::replay(&report, &SchemeRegistry::default())?;
    #[derive(Serialize)]
    struct Line<'a> {
        scheme: &'a str,
        identical: bool,
    }
    let lines: Vec<_> = checks
        .iter()
        .map(|c| Line {
            scheme: &c.scheme,
            identical: c.identical,
        })
        .collect();
    emit(
        args.out.as_deref(),
        &(serde_json::to_string_pretty(&lines).expect("serialises") + "\n"),
    )?;
    match checks.iter().find(|c| !c.identical) {
        Some(c) => Err(CliError::ReplayMismatch(c.scheme.clone())),
        None => Ok(()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
