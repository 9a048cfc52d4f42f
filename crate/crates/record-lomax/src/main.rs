//! Command-line front end: simulate data, estimate the shape parameter,
//! evaluate the analytic moment formulas on grids, and run the acceptance
//! verification suite.
//!
//! Exit codes: 0 on success, 1 on runtime failures (degenerate data, every
//! grid point cancellation-flagged, a failed acceptance criterion), 2 on
//! usage errors (invalid flags, malformed input files, a malformed
//! RECORD_LOMAX_SEED). Numeric CSV fields carry 17 significant digits so a
//! round trip through text is exact.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use record_lomax::analytic::{
    asymptotic_identity_gap, expected_cdf_hat, expected_pdf_hat, gamma_ratio, mse_cdf_hat,
    mse_pdf_hat, SeriesResult,
};
use record_lomax::error::Error as LibError;
use record_lomax::estimators::{mle_from_records, mle_from_sample, EstimateReport};
use record_lomax::lomax::LomaxParams;
use record_lomax::records::{extract_upper_records, sample_records, RecordSequence};
use record_lomax::rng::{derive_seed, StreamRng};
use record_lomax::verify::{run_suite, Suite};

const DOMAIN_CLI_SAMPLE: u64 = 0x10;
const DOMAIN_CLI_RECORDS: u64 = 0x11;

#[derive(Parser)]
#[command(
    name = "record-lomax",
    version,
    about = "Record-value inference for the Lomax distribution",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a complete sample or a record sequence and write it out.
    Simulate(SimulateArgs),
    /// Estimate the shape parameter from a data file.
    Estimate(EstimateArgs),
    /// Evaluate an analytic quantity on a grid and emit CSV.
    Analytic(AnalyticArgs),
    /// Run the acceptance verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Draw a complete i.i.d. sample (requires --n).
    #[arg(long, conflicts_with = "records")]
    sample: bool,
    /// Draw the first records of an i.i.d. stream (requires --m).
    #[arg(long)]
    records: bool,
    /// Sample size for --sample.
    #[arg(long)]
    n: Option<u32>,
    /// Record count for --records.
    #[arg(long)]
    m: Option<u32>,
    /// Shape parameter θ > 0.
    #[arg(long)]
    theta: f64,
    /// Master seed; falls back to RECORD_LOMAX_SEED, then to 1.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted. With a file, a
    /// `<out>.manifest.json` sidecar records the resolved run.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct EstimateArgs {
    /// Input file: one observation per line, '#' starts a comment.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: EstimateMode,
}

#[derive(Args)]
struct AnalyticArgs {
    /// Quantity to tabulate.
    #[arg(long, value_enum)]
    quantity: Quantity,
    /// Shape parameter θ > 0 (series quantities).
    #[arg(long)]
    theta: Option<f64>,
    /// Record count m (series quantities).
    #[arg(long)]
    m: Option<u32>,
    /// Comma-separated evaluation points (series quantities).
    #[arg(long, value_delimiter = ',')]
    x_grid: Vec<f64>,
    /// Numerator index n (gamma-ratio).
    #[arg(long)]
    n: Option<u64>,
    /// Largest i tabulated for gamma-ratio (rows i = 0..=i-max).
    #[arg(long, default_value_t = 5)]
    i_max: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
    suite: SuiteArg,
    /// Master seed; falls back to RECORD_LOMAX_SEED, then to 1.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the Monte Carlo criteria (results do not depend
    /// on this).
    #[arg(long, default_value_t = 4)]
    workers: usize,
    /// Also write the report as JSON (with a manifest sidecar).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimateMode {
    /// Treat the file as a complete i.i.d. sample.
    Sample,
    /// Treat the file as an already-extracted record sequence.
    Records,
    /// Extract the upper records of the file first.
    ExtractThenRecords,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    /// Expected value of the plug-in density estimate.
    #[value(name = "E-pdf")]
    EPdf,
    /// Expected value of the plug-in CDF estimate.
    #[value(name = "E-cdf")]
    ECdf,
    /// Mean squared error of the plug-in density estimate.
    #[value(name = "MSE-pdf")]
    MsePdf,
    /// Mean squared error of the plug-in CDF estimate.
    #[value(name = "MSE-cdf")]
    MseCdf,
    /// Ratio Γ(n−i−1)·n^{i+1}/Γ(n), tabulated over i.
    #[value(name = "gamma-ratio")]
    GammaRatio,
    /// Gap between the survival/density moment ratio and θ(1+x).
    #[value(name = "theorem4-gap")]
    Theorem4Gap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

/// A failure with the exit code it maps to.
struct CliFailure {
    code: u8,
    message: String,
}

impl CliFailure {
    fn usage(message: impl Into<String>) -> Self {
        CliFailure { code: 2, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Self {
        CliFailure { code: 1, message: message.into() }
    }
}

/// Library errors that reflect bad user-provided data are usage errors;
/// the rest are runtime failures.
fn classify(err: &LibError, reading_input: bool) -> CliFailure {
    let message = err.to_string();
    if reading_input {
        match err {
            LibError::Degenerate(_) => CliFailure::runtime(message),
            _ => CliFailure::usage(message),
        }
    } else {
        CliFailure::runtime(message)
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliFailure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("RECORD_LOMAX_SEED") {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            CliFailure::usage(format!(
                "RECORD_LOMAX_SEED must be an unsigned 64-bit integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(1),
        Err(e) => Err(CliFailure::usage(format!("RECORD_LOMAX_SEED unreadable: {e}"))),
    }
}

/// Seventeen significant digits: exact round trip for binary64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// RFC-4180-style quoting; numeric fields never need it, headers might.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn csv_row(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

/// Sidecar manifest accompanying every file output.
#[derive(serde::Serialize)]
struct RunManifest {
    command: &'static str,
    config: serde_json::Value,
    master_seed: Option<u64>,
    tool_version: &'static str,
    duration_seconds: f64,
}

fn write_output(out: Option<&Path>, body: &str) -> Result<(), CliFailure> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliFailure::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write_manifest(
    out: Option<&Path>,
    command: &'static str,
    config: serde_json::Value,
    master_seed: Option<u64>,
    started: Instant,
) -> Result<(), CliFailure> {
    let Some(path) = out else { return Ok(()) };
    let manifest = RunManifest {
        command,
        config,
        master_seed,
        tool_version: env!("CARGO_PKG_VERSION"),
        duration_seconds: started.elapsed().as_secs_f64(),
    };
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".manifest.json");
    let body = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliFailure::runtime(format!("cannot serialize manifest: {e}")))?;
    std::fs::write(&sidecar, body + "\n").map_err(|e| {
        CliFailure::runtime(format!("cannot write {}: {e}", Path::new(&sidecar).display()))
    })
}

/// Parses a data file: one decimal per line, blank lines skipped, '#' to
/// end of line is a comment. Any unparsable payload is a usage error.
fn read_observations(path: &Path) -> Result<Vec<f64>, CliFailure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliFailure::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (lineno, line) in raw.lines().enumerate() {
        let payload = line.split('#').next().unwrap_or("").trim();
        if payload.is_empty() {
            continue;
        }
        let value: f64 = payload.parse().map_err(|_| {
            CliFailure::usage(format!(
                "{}:{}: not a decimal number: {payload:?}",
                path.display(),
                lineno + 1
            ))
        })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(CliFailure::usage(format!(
            "{}: no observations found",
            path.display()
        )));
    }
    Ok(values)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliFailure> {
    let started = Instant::now();
    let seed = resolve_seed(args.seed)?;
    let params = LomaxParams::new(args.theta).map_err(|e| CliFailure::usage(e.to_string()))?;
    let (mode, count) = match (args.sample, args.records) {
        (true, false) => {
            let n = args.n.ok_or_else(|| CliFailure::usage("--sample requires --n"))?;
            ("sample", n)
        }
        (false, true) => {
            let m = args.m.ok_or_else(|| CliFailure::usage("--records requires --m"))?;
            ("records", m)
        }
        _ => return Err(CliFailure::usage("exactly one of --sample or --records is required")),
    };
    if count == 0 {
        return Err(CliFailure::usage("the requested size must be at least 1"));
    }

    let values: Vec<f64> = if mode == "sample" {
        let mut rng = StreamRng::new(derive_seed(seed, DOMAIN_CLI_SAMPLE), 0);
        params
            .sample(count as usize, &mut rng)
            .map_err(|e| CliFailure::runtime(e.to_string()))?
    } else {
        let mut rng = StreamRng::new(derive_seed(seed, DOMAIN_CLI_RECORDS), 0);
        sample_records(count as usize, &params, &mut rng)
            .map_err(|e| CliFailure::runtime(e.to_string()))?
            .values()
            .to_vec()
    };

    let body = match args.format {
        OutputFormat::Csv => {
            let mut text = String::from("value\n");
            for v in &values {
                let _ = writeln!(text, "{}", fmt_f64(*v));
            }
            text
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "command": "simulate",
                "mode": mode,
                "theta": args.theta,
                "seed": seed,
                "count": count,
                "values": values,
            });
            serde_json::to_string_pretty(&doc).expect("plain JSON document") + "\n"
        }
    };
    write_output(args.out.as_deref(), &body)?;
    let config = serde_json::json!({
        "mode": mode,
        "theta": args.theta,
        "count": count,
        "format": match args.format { OutputFormat::Csv => "csv", OutputFormat::Json => "json" },
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    });
    write_manifest(args.out.as_deref(), "simulate", config, Some(seed), started)
}

fn cmd_estimate(args: &EstimateArgs) -> Result<(), CliFailure> {
    let values = read_observations(&args.input)?;
    let report: EstimateReport = match args.mode {
        EstimateMode::Sample => mle_from_sample(&values).map_err(|e| classify(&e, true))?,
        EstimateMode::Records => {
            let records = RecordSequence::new(values).map_err(|e| classify(&e, true))?;
            mle_from_records(&records).map_err(|e| classify(&e, true))?
        }
        EstimateMode::ExtractThenRecords => {
            let records = extract_upper_records(&values).map_err(|e| classify(&e, true))?;
            mle_from_records(&records).map_err(|e| classify(&e, true))?
        }
    };
    let body = serde_json::to_string_pretty(&report)
        .map_err(|e| CliFailure::runtime(format!("cannot serialize report: {e}")))?;
    println!("{body}");
    Ok(())
}

fn series_table(
    args: &AnalyticArgs,
    eval: impl Fn(f64, &LomaxParams, u32) -> record_lomax::error::Result<SeriesResult>,
) -> Result<String, CliFailure> {
    let theta = args
        .theta
        .ok_or_else(|| CliFailure::usage("this quantity requires --theta"))?;
    let m = args.m.ok_or_else(|| CliFailure::usage("this quantity requires --m"))?;
    if args.x_grid.is_empty() {
        return Err(CliFailure::usage("this quantity requires --x-grid"));
    }
    let params = LomaxParams::new(theta).map_err(|e| CliFailure::usage(e.to_string()))?;
    let mut text = String::from("x,value,terms,cancellation_flag\n");
    let mut all_flagged = true;
    for &x in &args.x_grid {
        let result = eval(x, &params, m).map_err(|e| CliFailure::runtime(e.to_string()))?;
        all_flagged &= result.cancellation_flag;
        let _ = writeln!(
            text,
            "{}",
            csv_row(&[
                fmt_f64(x),
                fmt_f64(result.value),
                result.terms.to_string(),
                result.cancellation_flag.to_string(),
            ])
        );
    }
    if all_flagged {
        return Err(CliFailure::runtime(
            "every grid point is cancellation-flagged; the series values are unreliable there",
        ));
    }
    Ok(text)
}

fn cmd_analytic(args: &AnalyticArgs) -> Result<(), CliFailure> {
    let started = Instant::now();
    let body = match args.quantity {
        Quantity::EPdf => series_table(args, expected_pdf_hat)?,
        Quantity::ECdf => series_table(args, expected_cdf_hat)?,
        Quantity::MsePdf => series_table(args, mse_pdf_hat)?,
        Quantity::MseCdf => series_table(args, mse_cdf_hat)?,
        Quantity::Theorem4Gap => series_table(args, asymptotic_identity_gap)?,
        Quantity::GammaRatio => {
            let n = args
                .n
                .ok_or_else(|| CliFailure::usage("gamma-ratio requires --n"))?;
            let mut text = String::from("n,i,ratio\n");
            for i in 0..=args.i_max {
                let ratio = gamma_ratio(n, i).map_err(|e| CliFailure::usage(e.to_string()))?;
                let _ = writeln!(text, "{n},{i},{}", fmt_f64(ratio));
            }
            text
        }
    };
    write_output(args.out.as_deref(), &body)?;
    let config = serde_json::json!({
        "quantity": match args.quantity {
            Quantity::EPdf => "E-pdf",
            Quantity::ECdf => "E-cdf",
            Quantity::MsePdf => "MSE-pdf",
            Quantity::MseCdf => "MSE-cdf",
            Quantity::GammaRatio => "gamma-ratio",
            Quantity::Theorem4Gap => "theorem4-gap",
        },
        "theta": args.theta,
        "m": args.m,
        "x_grid": args.x_grid,
        "n": args.n,
        "i_max": args.i_max,
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    });
    write_manifest(args.out.as_deref(), "analytic", config, None, started)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliFailure> {
    let started = Instant::now();
    let seed = resolve_seed(args.seed)?;
    let suite = match args.suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::Full => Suite::Full,
    };
    if args.workers == 0 {
        return Err(CliFailure::usage("--workers must be at least 1"));
    }
    let report = run_suite(suite, seed, args.workers);
    print!("{}", report.render());
    if let Some(path) = &args.out {
        let body = serde_json::to_string_pretty(&report)
            .map_err(|e| CliFailure::runtime(format!("cannot serialize report: {e}")))?;
        std::fs::write(path, body + "\n")
            .map_err(|e| CliFailure::runtime(format!("cannot write {}: {e}", path.display())))?;
        let config = serde_json::json!({
            "suite": suite.name(),
            "workers": args.workers,
            "out": path.display().to_string(),
        });
        write_manifest(Some(path), "verify", config, Some(seed), started)?;
    }
    if report.all_passed {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .criteria
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{:02}", c.id))
            .collect();
        Err(CliFailure::runtime(format!(
            "criteria {} failed",
            failed.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Analytic(args) => cmd_analytic(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
