//! `cfdschema`: extract a structural schema and a tagged-union schema from
//! JSON documents and write their composition.
//!
//! Exit codes: 0 success, 1 some document fails validation, 2 usage or
//! configuration error, 3 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use cfdschema::emit::Encoding;
use cfdschema::heuristics::Threshold;
use cfdschema::json::{DocumentCollection, InputMode};
use cfdschema::pipeline::{run_pipeline, write_runs, Baseline, PipelineConfig};
use cfdschema::report::{emit_report, ReportFormat};
use cfdschema::validate::unsupported_keywords;
use cfdschema::Error;
use clap::{Parser, ValueEnum};

const EXIT_INVALID: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThresholdMode {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncodingArg {
    Ite,
    Anyof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportArg {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Each file holds one document.
    Single,
    /// One document per non-blank line.
    Ndjson,
    /// Each file holds an array whose elements are the documents.
    Array,
}

#[derive(Debug, Parser)]
#[command(
    name = "cfdschema",
    version,
    about = "Discover tagged unions in JSON data and emit JSON Schema"
)]
struct Args {
    /// Input files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Minimum support; repeat for a threshold grid.
    #[arg(long = "threshold", value_name = "NUM")]
    thresholds: Vec<f64>,

    #[arg(long, value_enum, default_value_t = ThresholdMode::Relative)]
    threshold_mode: ThresholdMode,

    /// Deepest subschema level considered for each property.
    #[arg(long, default_value_t = cfdschema::encoding::DEFAULT_MAX_DEPTH)]
    max_depth: usize,

    #[arg(long, value_enum, default_value_t = EncodingArg::Ite)]
    encoding: EncodingArg,

    /// `internal` or the path of a schema produced elsewhere.
    #[arg(long, default_value = "internal", value_name = "internal|FILE")]
    baseline: String,

    /// Validate every document against the composite schema.
    #[arg(long)]
    validate: bool,

    #[arg(long, value_enum, default_value_t = ReportArg::Json)]
    report: ReportArg,

    /// Write each encoded relation as CSV into this directory.
    #[arg(long, value_name = "DIR")]
    dump_relations: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    mode: ModeArg,

    /// Output directory for schemas and reports.
    #[arg(long, default_value = "cfdschema-out", value_name = "DIR")]
    out: PathBuf,

    /// Dataset name for the report; defaults to the first input's stem.
    #[arg(long)]
    name: Option<String>,
}

fn threshold(mode: ThresholdMode, value: f64) -> Result<Threshold, Error> {
    match mode {
        ThresholdMode::Relative => Ok(Threshold::Relative(value)),
        ThresholdMode::Absolute if value.fract() == 0.0 && value >= 0.0 => {
            Ok(Threshold::Absolute(value as usize))
        }
        ThresholdMode::Absolute => Err(Error::Config(format!(
            "absolute threshold must be a whole number, got {value}"
        ))),
    }
}

fn config(args: &Args) -> Result<PipelineConfig, Error> {
    let thresholds = if args.thresholds.is_empty() {
        PipelineConfig::default().thresholds
    } else {
        args.thresholds
            .iter()
            .map(|v| threshold(args.threshold_mode, *v))
            .collect::<Result<_, _>>()?
    };
    let cfg = PipelineConfig {
        thresholds,
        max_depth: args.max_depth,
        encoding: match args.encoding {
            EncodingArg::Ite => Encoding::IfThenElse,
            EncodingArg::Anyof => Encoding::AnyOf,
        },
        baseline: match args.baseline.as_str() {
            "internal" => Baseline::Internal,
            path => Baseline::External(PathBuf::from(path)),
        },
        validate: args.validate,
        dump_relations: args.dump_relations.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_CONFIG
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => return exit_for(&e),
    };
    let mode = match args.mode {
        ModeArg::Single => InputMode::Single,
        ModeArg::Ndjson => InputMode::NewlineDelimited,
        ModeArg::Array => InputMode::ArrayOfDocuments,
    };
    let coll = match DocumentCollection::from_files(&args.inputs, mode) {
        Ok(c) => c,
        Err(e) => return exit_for(&e),
    };
    let name = args.name.clone().unwrap_or_else(|| {
        args.inputs[0]
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    let runs = match run_pipeline(&coll, &name, &cfg) {
        Ok(r) => r,
        Err(e) => return exit_for(&e),
    };
    if let Baseline::External(path) = &cfg.baseline {
        for (pointer, keyword) in unsupported_keywords(&runs[0].s) {
            eprintln!(
                "warning: {}: keyword '{keyword}' at '{pointer}' is not enforced during validation",
                path.display()
            );
        }
    }
    if let Err(e) = write_runs(&args.out, &runs) {
        return exit_for(&e);
    }
    let reports: Vec<_> = runs.iter().map(|r| r.report.clone()).collect();
    let format = match args.report {
        ReportArg::Json => ReportFormat::Json,
        ReportArg::Table => ReportFormat::Table,
    };
    print!("{}", emit_report(&reports, format));

    let mut invalid = false;
    for run in &runs {
        for failure in run.failures.iter().take(10) {
            invalid = true;
            let first = &failure.errors[0];
            eprintln!(
                "invalid: document {} at '{}' ({}): {} [threshold {} {}]",
                failure.document,
                first.instance_path,
                first.keyword,
                first.message,
                run.threshold.mode_name(),
                run.threshold.value()
            );
        }
    }
    if invalid {
        ExitCode::from(EXIT_INVALID)
    } else {
        ExitCode::SUCCESS
    }
}
