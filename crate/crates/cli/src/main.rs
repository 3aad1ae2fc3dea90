use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use ringcode_core::{
    analyze, distribution_closed_form, materialize, run_sweep_with, Check, ConstructionType,
    DefiningSetSpec, Limits, Side, SpecDocument, SubsetFilter, SweepConfig, SweepSummary,
};
use serde::Serialize;
use thiserror::Error;

mod predicate;
mod record;

use predicate::Predicate;
use record::{Catalog, DefiningSetSummary, Record, Sink};

/// Codes over the ring E from simplicial-complex defining sets.
#[derive(Parser)]
#[command(name = "ringcode", version)]
struct Cli {
    /// Output format for primary output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one spec, given inline as JSON or as a path to a JSON file.
    Analyze {
        #[arg(long)]
        spec: String,
    },
    /// Sweep a parameter grid and check the stated tables and verdicts.
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,

        /// Comma-separated checks: tables, params, orthogonality,
        /// minimality, griesmer, theta.
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Option<Vec<Check>>,

        /// Number of mismatches to print.
        #[arg(long, default_value_t = 10)]
        show: usize,

        /// Corrupt one table row of the first spec (harness self-test).
        #[arg(long, hide = true)]
        inject_table_fault: bool,
    },
    /// Sweep a parameter grid and emit the records matching a predicate.
    Search {
        #[command(flatten)]
        sweep: SweepArgs,

        /// Filter, e.g. "num_weights <= 3 and minimal".
        #[arg(long = "where")]
        predicate: String,

        /// Append matches to this JSON-lines catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Range of m, as "a..b", "a..=b" (both inclusive) or a single value.
    #[arg(long, default_value = "1..4", value_parser = parse_range)]
    m: RangeInclusive<usize>,

    /// Comma-separated construction types (default: all).
    #[arg(long, value_delimiter = ',', value_parser = parse_type)]
    types: Option<Vec<ConstructionType>>,

    /// Comma-separated sides (default: both).
    #[arg(long, value_delimiter = ',', value_parser = parse_side)]
    sides: Option<Vec<Side>>,

    /// Only visit subsets M, N with at most this many coordinates.
    #[arg(long)]
    max_subset_size: Option<usize>,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        let mut config = SweepConfig::new(self.m.clone());
        if let Some(types) = &self.types {
            config.types = types.clone();
        }
        if let Some(sides) = &self.sides {
            config.sides = sides.clone();
        }
        if let Some(size) = self.max_subset_size {
            config.subset_filter = SubsetFilter::MaxSize(size);
        }
        config
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a..b or a single integer, got {s:?}");
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

fn parse_type(s: &str) -> Result<ConstructionType, String> {
    ConstructionType::from_str(s).map_err(|e| e.to_string())
}

fn parse_side(s: &str) -> Result<Side, String> {
    Side::from_str(s).map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> Result<Check, String> {
    Check::from_str(s).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] ringcode_core::Error),
    #[error(transparent)]
    Predicate(#[from] predicate::PredicateError),
    #[error("catalog {path}: {source}")]
    Catalog { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("{0} mismatches")]
    Mismatches(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatches(_) | CliError::Output(_) => 1,
            CliError::Core(ringcode_core::Error::DegenerateDefiningSet(_)) => 3,
            CliError::Input(_) | CliError::Core(_) | CliError::Predicate(_) => 2,
            CliError::Catalog { .. } => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let limits = Limits::from_env();
    let stdout = io::stdout().lock();
    match cli.command {
        Command::Analyze { spec } => cmd_analyze(&spec, &limits, cli.format, stdout),
        Command::Verify { sweep, checks, show, inject_table_fault } => {
            let mut config = sweep.config();
            if let Some(checks) = checks {
                config.checks = checks;
            }
            cmd_verify(&config, &limits, show, inject_table_fault, cli.format, stdout)
        }
        Command::Search { sweep, predicate, catalog } => {
            let config = sweep.config().with_checks(&[]);
            cmd_search(&config, &limits, &predicate, catalog, cli.format, stdout)
        }
    }
}

fn read_spec(arg: &str) -> Result<DefiningSetSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("reading {arg}: {e}")))?
    };
    let doc: SpecDocument =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid spec: {e}")))?;
    Ok(DefiningSetSpec::try_from(doc)?)
}

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    defining_set: DefiningSetSummary,
    report: &'a ringcode_core::AnalysisReport,
    record: Record,
}

fn cmd_analyze(arg: &str, limits: &Limits, format: Format, mut out: impl Write) -> Result<(), CliError> {
    let spec = read_spec(arg)?;
    let report = analyze(&spec, limits)?;
    let record = Record::from_report(&report);
    match format {
        Format::Json => {
            let defining_set = DefiningSetSummary::new(&materialize(&spec)?);
            let output = AnalyzeOutput { defining_set, report: &report, record };
            serde_json::to_writer_pretty(&mut out, &output).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut sink = Sink::csv(out);
            sink.write(&record)?;
            sink.finish()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    specs: u64,
    counters: &'a std::collections::BTreeMap<Check, ringcode_core::CheckCounter>,
    total_mismatches: usize,
    mismatches: &'a [ringcode_core::Mismatch],
}

fn cmd_verify(
    config: &SweepConfig,
    limits: &Limits,
    show: usize,
    inject_fault: bool,
    format: Format,
    mut out: impl Write,
) -> Result<(), CliError> {
    config.validate(limits)?;
    let target = config.specs().first().copied();
    let tables = |spec: &DefiningSetSpec| {
        let mut dist = distribution_closed_form(spec)?;
        if inject_fault && Some(*spec) == target {
            if let Some(f) = dist.entries.values_mut().next_back() {
                *f += 1;
            }
        }
        Ok(dist)
    };
    let summary: SweepSummary = run_sweep_with(config, limits, &tables)?;
    let shown = &summary.mismatches[..summary.mismatches.len().min(show)];
    match format {
        Format::Json => {
            let output = VerifyOutput {
                passed: summary.passed(),
                specs: summary.specs,
                counters: &summary.counters,
                total_mismatches: summary.mismatches.len(),
                mismatches: shown,
            };
            serde_json::to_writer_pretty(&mut out, &output).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            writer.write_record(["check", "tested", "mismatches"]).map_err(io::Error::from)?;
            for (check, counter) in &summary.counters {
                writer.write_record([check.to_string(), counter.tested.to_string(), counter.mismatches.to_string()]).map_err(io::Error::from)?;
            }
            writer.flush()?;
            drop(writer);
            for m in shown {
                eprintln!("{} [{}]: {}", m.spec, m.check, m.detail);
            }
        }
    }
    out.flush()?;
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::Mismatches(summary.mismatches.len()))
    }
}

fn cmd_search(
    config: &SweepConfig,
    limits: &Limits,
    expr: &str,
    catalog: Option<PathBuf>,
    format: Format,
    out: impl Write,
) -> Result<(), CliError> {
    let predicate = Predicate::parse(expr)?;
    config.validate(limits)?;
    let mut catalog = catalog
        .map(|path| Catalog::open(&path).map(|c| (c, path.clone())).map_err(|source| CliError::Catalog { path, source }))
        .transpose()?;

    let specs = config.specs();
    if let Some(first) = specs.first() {
        predicate.validate(&Record::from_report(&analyze(first, limits)?))?;
    }
    let records: Vec<Record> = specs
        .par_iter()
        .map(|spec| Ok(Record::from_report(&analyze(spec, limits)?)))
        .collect::<Result<_, CliError>>()?;

    let mut sink = match format {
        Format::Json => Sink::json(out),
        Format::Csv => Sink::csv(out),
    };
    for record in &records {
        if !predicate.eval(record)? {
            continue;
        }
        sink.write(record)?;
        if let Some((catalog, path)) = &mut catalog {
            catalog
                .append(record)
                .map_err(|source| CliError::Catalog { path: path.clone(), source })?;
        }
    }
    sink.finish()?;
    if let Some((catalog, path)) = catalog {
        catalog.finish().map_err(|source| CliError::Catalog { path, source })?;
    }
    Ok(())
}
