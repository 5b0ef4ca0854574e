use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ccc_core::group::{make_params_with_cap, DEFAULT_ORDER_CAP};
use ccc_core::report::{
    evaluate, parse_primes, parse_range, run_sweep, write_rows, EvalOptions, Format, GridSpec, SweepReport,
};
use ccc_core::spectral::{CharPolyCache, DEFAULT_MATRIX_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_DISAGREEMENT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Commuting conjugacy class graphs of G(p, m, n): closed forms versus
/// brute force.
#[derive(Parser)]
#[command(name = "ccc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single triple.
    Compute(ComputeArgs),
    /// Check a parameter grid against the oracle; exit 1 on disagreement.
    Verify(GridArgs),
    /// Write a parameter grid's report to a file.
    Export(GridArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    /// Run the brute-force oracle when the order is within the cap (default).
    #[arg(long, overrides_with = "no_oracle")]
    oracle: bool,
    /// Closed forms only.
    #[arg(long)]
    no_oracle: bool,
    /// Exit 3 if a cap keeps the oracle or the eigenvalue check from running.
    #[arg(long)]
    require_oracle: bool,
    /// Largest connected component handed to the characteristic polynomial.
    #[arg(long, env = "CCC_MATRIX_CAP", default_value_t = DEFAULT_MATRIX_CAP)]
    matrix_cap: usize,
    /// Map m < n to the isomorphic (p, n, m).
    #[arg(long)]
    canonicalize: bool,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the machine-readable report here (default format csv).
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(short = 'p')]
    p: u64,
    #[arg(short = 'm')]
    m: u32,
    #[arg(short = 'n')]
    n: u32,
    /// Largest group order the oracle enumerates.
    #[arg(long, env = "CCC_MAX_ORDER", default_value_t = DEFAULT_ORDER_CAP)]
    max_order: u64,
    #[command(flatten)]
    common: OracleArgs,
}

#[derive(Args)]
struct GridArgs {
    /// Comma-separated primes.
    #[arg(long, default_value = "2,3,5")]
    primes: String,
    /// `a..b` (inclusive) or `a`; default: everything under --max-order.
    #[arg(long)]
    m_range: Option<String>,
    #[arg(long)]
    n_range: Option<String>,
    /// Triples with larger group order are left out of the grid.
    #[arg(long, env = "CCC_MAX_ORDER", default_value_t = 4096)]
    max_order: u64,
    /// Also evaluate m < n (annotated, never failing).
    #[arg(long)]
    include_swapped: bool,
    #[command(flatten)]
    common: OracleArgs,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

/// Writes the machine format to `-o` or, if only `--format` is given, to
/// stdout. Returns whether stdout was taken.
fn emit(report: &SweepReport, common: &OracleArgs) -> io::Result<bool> {
    let rows = report.rows();
    let format = common.format.map(Format::from).unwrap_or(Format::Csv);
    let to_io = |e: ccc_core::report::ExportError| io::Error::other(e.to_string());
    match (&common.output, common.format) {
        (Some(path), _) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_rows(&rows, format, &mut w).map_err(to_io)?;
            w.flush()?;
            Ok(false)
        }
        (None, Some(_)) => {
            write_rows(&rows, format, io::stdout().lock()).map_err(to_io)?;
            Ok(true)
        }
        (None, None) => Ok(false),
    }
}

fn finish(report: &SweepReport, common: &OracleArgs, summary: String, fail_on_disagreement: bool) -> ExitCode {
    let stdout_taken = match emit(report, common) {
        Ok(taken) => taken,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if stdout_taken {
        eprint!("{summary}");
    } else {
        print!("{summary}");
    }
    if common.require_oracle && report.is_incomplete() {
        return ExitCode::from(EXIT_CAP);
    }
    if fail_on_disagreement && report.has_failures() {
        return ExitCode::from(EXIT_DISAGREEMENT);
    }
    ExitCode::SUCCESS
}

fn compute(args: ComputeArgs) -> ExitCode {
    let params = match make_params_with_cap(args.p, args.m, args.n, args.common.canonicalize, None) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let opts = EvalOptions { order_cap: args.max_order, oracle: !args.common.no_oracle };
    let cache = CharPolyCache::new(args.common.matrix_cap);
    let report = SweepReport { instances: vec![evaluate(&params, opts, &cache)] };
    let summary = report.instances[0].to_string();
    finish(&report, &args.common, summary, false)
}

fn grid_report(args: &GridArgs) -> Result<SweepReport, ExitCode> {
    let primes = parse_primes(&args.primes).map_err(usage_error)?;
    let m_range = args.m_range.as_deref().map(parse_range).transpose().map_err(usage_error)?;
    let n_range = args.n_range.as_deref().map(parse_range).transpose().map_err(usage_error)?;
    let grid = GridSpec {
        primes,
        m_range,
        n_range,
        max_order: args.max_order,
        include_swapped: args.include_swapped,
        canonicalize: args.common.canonicalize,
    };
    let params = grid.params().map_err(usage_error)?;
    let opts = EvalOptions { order_cap: args.max_order, oracle: !args.common.no_oracle };
    Ok(run_sweep(&params, opts, &CharPolyCache::new(args.common.matrix_cap)))
}

fn sweep_summary(report: &SweepReport) -> String {
    let mut s = String::new();
    for inst in &report.instances {
        s.push_str(&inst.summary_line());
        s.push('\n');
    }
    let checked = report.instances.iter().filter(|i| i.row.oracle_agrees.is_some()).count();
    let failed = report.instances.iter().filter(|i| i.fails()).count();
    let annotated = report.instances.iter().filter(|i| i.row.m < i.row.n).count();
    s.push_str(&format!(
        "{} rows, {} checked against the oracle, {} disagreeing (m >= n), {} annotated m < n\n",
        report.instances.len(),
        checked,
        failed,
        annotated
    ));
    s
}

fn verify(args: GridArgs) -> ExitCode {
    match grid_report(&args) {
        Ok(report) => {
            let summary = sweep_summary(&report);
            finish(&report, &args.common, summary, true)
        }
        Err(code) => code,
    }
}

fn export(args: GridArgs) -> ExitCode {
    if args.common.output.is_none() && args.common.format.is_none() {
        return usage_error("export needs -o <path> or --format");
    }
    match grid_report(&args) {
        Ok(report) => {
            let summary = format!("{} rows\n", report.instances.len());
            finish(&report, &args.common, summary, false)
        }
        Err(code) => code,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Export(a) => export(a),
    }
}
