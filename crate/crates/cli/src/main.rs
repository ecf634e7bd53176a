//! `cellstrat`: canonical stratification of a regular CW complex.
//!
//! Exit status: 0 on success, 1 for malformed input or arguments, 2 when the
//! complex fails validation, 3 for any other failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cellstrat::bench::{format_table, time_run, torus_sweep};
use cellstrat::complex::validate;
use cellstrat::io::{self, InputFormat};
use cellstrat::report::{to_dot, ResultDocument, RunMetadata};
use cellstrat::stratcast::run_with_timings;
use cellstrat::{CwComplex, Error, PrimeField, Stratification};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Simplices,
    Cw,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Emit {
    #[default]
    Json,
    Dot,
}

/// Compute the canonical stratification of a finite regular CW complex.
#[derive(Debug, Parser)]
#[command(name = "cellstrat", version)]
struct Cli {
    /// Input complex. Required unless --bench is given.
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Input format; inferred from the extension when omitted (.json is cw).
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Coefficient field characteristic.
    #[arg(long = "coeff-p", default_value_t = 2)]
    coeff_p: u64,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,

    /// Also check that every cell's boundary has the cohomology of a sphere.
    #[arg(long)]
    deep_validate: bool,

    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t)]
    emit: Emit,

    /// Write run metadata (p, workers, per-phase wall times) as JSON.
    #[arg(long)]
    metadata: Option<PathBuf>,

    /// Print a timing table instead of a result document.
    #[arg(long)]
    bench: bool,

    /// Grid torus side lengths for --bench.
    #[arg(long, value_delimiter = ',', default_value = "13,41,129")]
    bench_sizes: Vec<usize>,

    /// Timed repetitions per benchmark input; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    bench_repeats: usize,
}

enum Failure {
    Malformed(String),
    Invalid(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(_) | Error::Json(_) | Error::NotPrime(_) => Failure::Malformed(e.to_string()),
            Error::Validation(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn input_format(path: &Path, explicit: Option<Format>) -> InputFormat {
    match explicit {
        Some(Format::Simplices) => InputFormat::Simplices,
        Some(Format::Cw) => InputFormat::Cw,
        None if path.extension().is_some_and(|e| e == "json") => InputFormat::Cw,
        None => InputFormat::Simplices,
    }
}

fn load(path: &Path, format: InputFormat) -> Result<CwComplex, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::parse(&text, format)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn bench(cli: &Cli, field: PrimeField, workers: usize) -> Result<(), Failure> {
    let mut rows = torus_sweep(&cli.bench_sizes, field, workers, cli.bench_repeats)?;
    if let Some(path) = &cli.input {
        let cx = load(path, input_format(path, cli.format))?;
        rows.push(time_run(&path.display().to_string(), &cx, field, workers, cli.bench_repeats)?);
    }
    write_out(cli.output.as_deref(), &format_table(&rows))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let field = PrimeField::new(cli.coeff_p)?;
    let workers = match cli.workers {
        Some(0) => return Err(Failure::Malformed("--workers must be at least 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if cli.bench {
        return bench(cli, field, workers);
    }
    let Some(path) = &cli.input else {
        return Err(Failure::Malformed("--input is required".into()));
    };
    let complex = load(path, input_format(path, cli.format))?;

    let report = validate(&complex, cli.deep_validate, field);
    if !report.is_ok() {
        return Err(Failure::Invalid(Error::Validation(report).to_string()));
    }

    let start = Instant::now();
    let (state, timings) = run_with_timings(&complex, field, workers)?;
    let strat = Stratification::from_codims(&complex, &state.codims())?;
    let total = start.elapsed();

    let text = match cli.emit {
        Emit::Json => ResultDocument::new(&complex, &strat, field.p()).to_json(),
        Emit::Dot => to_dot(&strat),
    };
    write_out(cli.output.as_deref(), &text)?;

    let meta = RunMetadata::new(field.p(), workers, complex.len(), total, &timings);
    eprintln!(
        "cellstrat: {} cells, {} strata, p={}, workers={}, {:.3} ms",
        complex.len(),
        strat.strata().len(),
        field.p(),
        workers,
        meta.total_ms
    );
    if let Some(p) = &cli.metadata {
        std::fs::write(p, meta.to_json()).map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
