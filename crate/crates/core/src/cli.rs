//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 detection failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::detectors::{detect_edge, statistic_trace, DetectOptions, Method};
use crate::error::Error;
use crate::io::{
    emit_report, extract_strips, load_raster, manifest_path, write_window, RasterFormat,
    RasterImage, RunManifest,
};
use crate::monte_carlo::{build_grid, generate_window, full_grid, run_grid, CellConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_DETECTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "speckle-edge", version, about = "Edge detection in speckled intensity imagery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one two-region window and write it as CSV or plain matrix text.
    Simulate(SimulateArgs),
    /// Run the Monte Carlo error-rate / timing experiment and write a CSV report.
    Benchmark(BenchmarkArgs),
    /// Detect one edge per horizontal strip of a raster.
    Detect(DetectArgs),
    /// Write the per-candidate statistic values for a raster.
    Trace(TraceArgs),
    /// Repeat a run recorded in a manifest file.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha_left: f64,
    #[arg(long, allow_negative_numbers = true)]
    alpha_right: f64,
    #[arg(long)]
    looks: f64,
    #[arg(long, default_value_t = 20)]
    rows: usize,
    #[arg(long, default_value_t = 100)]
    cols: usize,
    #[arg(long, default_value_t = 50)]
    edge: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replication index; selects the random stream.
    #[arg(long, default_value_t = 0)]
    replicate: u64,
    #[arg(long)]
    out: PathBuf,
    /// Output format; inferred from the extension when omitted.
    #[arg(long)]
    format: Option<FormatArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridKind {
    Paper,
    Custom,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    #[arg(long, value_enum, default_value_t = GridKind::Paper)]
    grid: GridKind,
    #[arg(long, default_value_t = 1000)]
    replications: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated methods (default: all five).
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Custom grid: comma-separated left roughness values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha_left: Vec<f64>,
    /// Custom grid: comma-separated right roughness values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha_right: Vec<f64>,
    /// Custom grid: comma-separated numbers of looks.
    #[arg(long, value_delimiter = ',')]
    looks: Vec<f64>,
    /// Rank |T₁| and |Tᵥ| instead of the signed statistics.
    #[arg(long)]
    absolute: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Matrix,
    Csv,
    Pgm,
}

impl From<FormatArg> for RasterFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Matrix => RasterFormat::Matrix,
            FormatArg::Csv => RasterFormat::Csv,
            FormatArg::Pgm => RasterFormat::Pgm,
        }
    }
}

#[derive(Debug, Args)]
struct DetectArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    format: Option<FormatArg>,
    #[arg(long, default_value_t = 20)]
    strip_height: usize,
    #[arg(long)]
    method: String,
    /// Number of looks (required for gambini; non-integer values allowed).
    #[arg(long)]
    looks: Option<f64>,
    #[arg(long)]
    absolute: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    format: Option<FormatArg>,
    /// Split the raster into strips of this height; the whole raster is one window when omitted.
    #[arg(long)]
    strip_height: Option<usize>,
    #[arg(long)]
    method: String,
    #[arg(long)]
    looks: Option<f64>,
    #[arg(long)]
    absolute: bool,
    #[arg(long)]
    out: PathBuf,
}

/// A failure with its exit code and one-line diagnostic.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DetectionFailed => EXIT_DETECTION,
            Error::MissingLooks => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

fn parse_method(s: &str) -> Result<Method, Failure> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let args = argv.iter().skip(1).cloned().collect();
    match dispatch(cli.command, args) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(command: Command, args: Vec<String>) -> Result<(), Failure> {
    match command {
        Command::Simulate(a) => with_manifest("simulate", args, Some(a.seed), &a.out.clone(), || simulate(&a)),
        Command::Benchmark(a) => with_manifest("benchmark", args, Some(a.seed), &a.out.clone(), || benchmark(&a)),
        Command::Detect(a) => with_manifest("detect", args, None, &a.out.clone(), || detect(&a)),
        Command::Trace(a) => with_manifest("trace", args, None, &a.out.clone(), || trace(&a)),
        Command::Rerun { manifest } => {
            let m = RunManifest::read(&manifest)?;
            let mut argv = vec!["speckle-edge".to_string()];
            argv.extend(m.args.iter().cloned());
            let cli = Cli::try_parse_from(&argv).map_err(|e| usage(e.to_string()))?;
            if matches!(cli.command, Command::Rerun { .. }) {
                return Err(usage("a manifest cannot point at another rerun"));
            }
            dispatch(cli.command, m.args)
        }
    }
}

fn with_manifest(
    command: &str,
    args: Vec<String>,
    seed: Option<u64>,
    out: &Path,
    body: impl FnOnce() -> Result<(), Failure>,
) -> Result<(), Failure> {
    let mut manifest = RunManifest::new(command, args, seed);
    let result = body();
    if result.is_ok() || result.as_ref().is_err_and(|f| f.code == EXIT_DETECTION) {
        manifest.finish(vec![out.to_path_buf()]);
        manifest.write(&manifest_path(out))?;
    }
    result
}

fn simulate(a: &SimulateArgs) -> Result<(), Failure> {
    let cell = CellConfig::new(a.alpha_left, a.alpha_right, a.looks)
        .shape(a.rows, a.cols, a.edge)
        .seed(a.seed);
    cell.validate(&DetectOptions::default())?;
    let w = generate_window(&cell, a.replicate)?;
    let format = a.format.map(Into::into).unwrap_or_else(|| RasterFormat::from_path(&a.out));
    write_window(&a.out, &w, format)?;
    Ok(())
}

fn benchmark(a: &BenchmarkArgs) -> Result<(), Failure> {
    let methods = match &a.methods {
        None => Method::ALL.to_vec(),
        Some(list) => list.iter().map(|s| parse_method(s)).collect::<Result<Vec<_>, _>>()?,
    };
    if methods.is_empty() {
        return Err(usage("no methods given"));
    }
    let grid = match a.grid {
        GridKind::Paper => full_grid(a.replications, &methods, a.seed),
        GridKind::Custom => {
            if a.alpha_left.is_empty() || a.alpha_right.is_empty() || a.looks.is_empty() {
                return Err(usage("custom grid needs --alpha-left, --alpha-right and --looks"));
            }
            build_grid(&a.alpha_left, &a.alpha_right, &a.looks, a.replications, &methods, a.seed)
        }
    };
    if grid.is_empty() {
        return Err(usage("grid has no cells with distinct roughness values"));
    }
    let opts = DetectOptions { absolute: a.absolute, ..DetectOptions::default() };
    let report = run_grid(&grid, &opts)?;
    emit_report(&report, &a.out)?;
    Ok(())
}

fn load(input: &Path, format: Option<FormatArg>) -> Result<RasterImage, Failure> {
    Ok(load_raster(input, format.map(Into::into))?)
}

fn detect_options(method: Method, looks: Option<f64>, absolute: bool) -> Result<DetectOptions, Failure> {
    if method == Method::Gambini && looks.is_none() {
        return Err(usage("--looks is required for method gambini"));
    }
    Ok(DetectOptions { looks, absolute, ..DetectOptions::default() })
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Error::io(path, e).into())
}

fn detect(a: &DetectArgs) -> Result<(), Failure> {
    let method = parse_method(&a.method)?;
    let opts = detect_options(method, a.looks, a.absolute)?;
    let img = load(&a.input, a.format)?;
    let strips = extract_strips(&img, a.strip_height)?;
    if strips.is_empty() {
        eprintln!(
            "warning: {} rows give no strip of height {}",
            img.rows, a.strip_height
        );
    }
    let mut out = String::from("strip,first_row,method,edge_col,statistic\n");
    let mut failed = Vec::new();
    for (i, w) in strips.iter().enumerate() {
        let first_row = i * a.strip_height;
        match detect_edge(w, method, &opts) {
            Ok(est) => {
                let _ = writeln!(out, "{i},{first_row},{method},{},{}", est.edge_index, est.value());
            }
            Err(Error::DetectionFailed) => {
                let _ = writeln!(out, "{i},{first_row},{method},,");
                failed.push(i);
            }
            Err(e) => return Err(e.into()),
        }
    }
    write_text(&a.out, &out)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_DETECTION,
            msg: format!("detection failed on strip(s) {failed:?}"),
        })
    }
}

fn trace(a: &TraceArgs) -> Result<(), Failure> {
    let method = parse_method(&a.method)?;
    let opts = detect_options(method, a.looks, a.absolute)?;
    let img = load(&a.input, a.format)?;
    let windows = match a.strip_height {
        Some(h) => extract_strips(&img, h)?,
        None => vec![img.to_window()?],
    };
    let mut out = String::from("strip,candidate,statistic\n");
    for (i, w) in windows.iter().enumerate() {
        let range = opts.candidate_range(w)?;
        let trace = statistic_trace(w, method, &opts)?;
        for (j, v) in range.zip(trace) {
            let _ = writeln!(out, "{i},{j},{}", fmt_value(v));
        }
    }
    write_text(&a.out, &out)
}

fn fmt_value(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        v.to_string()
    }
}
