//! Command-line front end: `sweep`, `single` and `summarize`.
//!
//! Exit codes: 0 success, 2 usage error, 3 numeric failure, 1 anything else
//! (I/O, malformed input files).

pub mod csv;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::experiment::{run_single, run_sweep, summarize, Metric, Protocol, SweepSpec};
use crate::linalg::DEFAULT_RCOND;
use crate::reservoir::ReservoirConfig;

pub use self::csv::{read_csv, write_csv, write_raw, write_summary, SWEEP_HEADER};
pub use self::svg::{render_svg_heatmap, write_svg_heatmap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "sparse-rc", version, about = "Sparse echo state network connectivity benchmarks")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sweep a (chi_r, chi_i) grid and write aggregated CSV, summary curves and heatmaps.
    Sweep(SweepArgs),
    /// Score a single realization and print its memory capacity and effective dimension.
    Single(SingleArgs),
    /// Recompute summary curves (and optionally heatmaps) from a sweep CSV.
    Summarize(SummarizeArgs),
}

/// Reservoir and protocol settings shared by `sweep` and `single`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Reservoir units.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Input dimension (the memory task uses 1).
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Spectral radius of the recurrent weights.
    #[arg(long, default_value_t = 0.9)]
    pub rho: f64,
    /// Input weight scaling.
    #[arg(long = "omega-in", default_value_t = 1.0)]
    pub omega_in: f64,
    #[arg(long = "series-len", default_value_t = 6000)]
    pub series_len: usize,
    #[arg(long, default_value_t = 1000)]
    pub washout: usize,
    #[arg(long = "train-len", default_value_t = 4000)]
    pub train_len: usize,
    /// Number of delays scored for memory capacity.
    #[arg(long, default_value_t = 200)]
    pub delays: usize,
    #[arg(long = "input-lo", default_value_t = -0.8, allow_hyphen_values = true)]
    pub input_lo: f64,
    #[arg(long = "input-hi", default_value_t = 0.8, allow_hyphen_values = true)]
    pub input_hi: f64,
    /// Master seed; every random draw derives from it.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

impl ModelArgs {
    fn protocol(&self) -> Protocol {
        Protocol {
            series_len: self.series_len,
            washout: self.washout,
            train_len: self.train_len,
            n_delays: self.delays,
            input_lo: self.input_lo,
            input_hi: self.input_hi,
            rcond: DEFAULT_RCOND,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.n == 0 {
            return Err("--n: reservoir needs at least one unit".into());
        }
        if self.m != 1 {
            return Err(format!("--m: the memory-capacity task drives a single input, got {}", self.m));
        }
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(format!("--rho: must be positive, got {}", self.rho));
        }
        if !(self.omega_in > 0.0 && self.omega_in.is_finite()) {
            return Err(format!("--omega-in: must be positive, got {}", self.omega_in));
        }
        if !(self.input_lo < self.input_hi) {
            return Err(format!(
                "--input-lo ({}) must be below --input-hi ({})",
                self.input_lo, self.input_hi
            ));
        }
        if self.delays == 0 {
            return Err("--delays: need at least one delay".into());
        }
        if self.washout < self.delays {
            return Err(format!(
                "--washout ({}) must be at least --delays ({})",
                self.washout, self.delays
            ));
        }
        if self.washout + self.train_len + 2 > self.series_len {
            return Err(format!(
                "--series-len ({}) must exceed --washout + --train-len ({}) by at least 2",
                self.series_len,
                self.washout + self.train_len
            ));
        }
        if self.train_len < 2 {
            return Err("--train-len: need at least 2 steps".into());
        }
        Ok(())
    }
}

const PRESET_FLAGS: [&str; 13] = [
    "n", "rho", "omega_in", "series_len", "washout", "train_len", "delays", "input_lo", "input_hi",
    "chi_r", "chi_i", "realizations", "desk",
];

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Recurrent connectivities: comma list and/or inclusive ranges, e.g. `1,5,20..25`.
    #[arg(long = "chi-r", value_parser = parse_connectivity_list, default_value = "1..100")]
    pub chi_r: Connectivity,
    /// Input connectivities, same syntax as --chi-r.
    #[arg(long = "chi-i", value_parser = parse_connectivity_list, default_value = "1..100")]
    pub chi_i: Connectivity,
    #[arg(long, default_value_t = 50)]
    pub realizations: usize,
    /// Worker threads (default: all cores).
    #[arg(long, env = "SPARSE_RC_WORKERS")]
    pub workers: Option<usize>,
    /// Aggregated CSV path; companion files share its stem.
    #[arg(long, default_value = "sweep.csv")]
    pub out: PathBuf,
    /// Also write one row per realization to `<stem>_raw.csv`.
    #[arg(long = "emit-raw")]
    pub emit_raw: bool,
    /// Also write `<stem>_mc.svg` and `<stem>_neff.svg` heatmaps.
    #[arg(long = "emit-svg")]
    pub emit_svg: bool,
    /// The complete 100x100 grid with 50 realizations (multi-hour); implies --emit-svg.
    #[arg(long, conflicts_with_all = PRESET_FLAGS)]
    pub full: bool,
    /// The 6x6 grid {1,5,10,20,50,100} with 10 realizations.
    #[arg(long, conflicts_with_all = ["chi_r", "chi_i", "realizations"])]
    pub desk: bool,
}

impl SweepArgs {
    pub fn spec(&self) -> SweepSpec {
        let seed = self.model.seed;
        if self.full {
            return SweepSpec::full(seed);
        }
        let mut spec = SweepSpec {
            n_units: self.model.n,
            spectral_radius: self.model.rho,
            input_scaling: self.model.omega_in,
            chi_r_values: self.chi_r.0.clone(),
            chi_i_values: self.chi_i.0.clone(),
            realizations: self.realizations,
            protocol: self.model.protocol(),
            master_seed: seed,
        };
        if self.desk {
            let desk = SweepSpec::desk(seed);
            spec.chi_r_values = desk.chi_r_values;
            spec.chi_i_values = desk.chi_i_values;
            spec.realizations = desk.realizations;
        }
        spec
    }

    fn validate(&self) -> std::result::Result<(), String> {
        self.model.validate()?;
        let spec = self.spec();
        for (flag, values) in [("--chi-r", &spec.chi_r_values), ("--chi-i", &spec.chi_i_values)] {
            if let Some(v) = values.iter().find(|&&v| v > spec.n_units) {
                return Err(format!("{flag}: value {v} exceeds --n {}", spec.n_units));
            }
        }
        if spec.realizations == 0 {
            return Err("--realizations: must be at least 1".into());
        }
        if self.workers == Some(0) {
            return Err("--workers: must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Args)]
pub struct SingleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long = "chi-r", default_value_t = 20)]
    pub chi_r: usize,
    #[arg(long = "chi-i", default_value_t = 1)]
    pub chi_i: usize,
    /// Realization index within the (chi_r, chi_i) cell.
    #[arg(long, default_value_t = 0)]
    pub realization: usize,
    /// Write the per-delay squared correlations to this CSV.
    #[arg(long = "per-delay-out")]
    pub per_delay_out: Option<PathBuf>,
}

impl SingleArgs {
    pub fn config(&self) -> ReservoirConfig {
        ReservoirConfig {
            n_units: self.model.n,
            n_inputs: self.model.m,
            chi_r: self.chi_r,
            chi_i: self.chi_i,
            spectral_radius: self.model.rho,
            input_scaling: self.model.omega_in,
            seed: self.model.seed,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        self.model.validate()?;
        for (flag, v) in [("--chi-r", self.chi_r), ("--chi-i", self.chi_i)] {
            if v == 0 || v > self.model.n {
                return Err(format!("{flag}: value {v} outside 1..={} (--n)", self.model.n));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Args)]
pub struct SummarizeArgs {
    /// Sweep CSV produced by `sweep`.
    pub input: PathBuf,
    /// Summary CSV path (default: `<input stem>_summary.csv`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write `<stem>_mc.svg` and `<stem>_neff.svg` next to the input.
    #[arg(long = "emit-svg")]
    pub emit_svg: bool,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = CliConfig::try_parse_from(argv)?;
    let checked = match &config.command {
        Command::Sweep(a) => a.validate(),
        Command::Single(a) => a.validate(),
        Command::Summarize(_) => Ok(()),
    };
    checked.map_err(CliError::Usage)?;
    Ok(config)
}

/// A parsed connectivity list; see [`parse_connectivity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity(pub Vec<usize>);

fn parse_connectivity_list(s: &str) -> std::result::Result<Connectivity, String> {
    parse_connectivity(s).map(Connectivity)
}

/// `"1,5,10..12"` → `[1, 5, 10, 11, 12]`. Ranges are inclusive; the result
/// is sorted and de-duplicated.
pub fn parse_connectivity(s: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty entry in {s:?}"));
        }
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if out.contains(&0) {
        return Err("connectivity values start at 1".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `dir/stem.csv` + `_raw.csv` → `dir/stem_raw.csv`.
pub fn companion_path(base: &Path, suffix: &str) -> PathBuf {
    let stem = base.file_stem().map_or_else(|| "sweep".into(), |s| s.to_string_lossy().into_owned());
    base.with_file_name(format!("{stem}{suffix}"))
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Executes a parsed command, writing human-readable progress to `out`.
pub fn run(config: &CliConfig, out: &mut dyn std::io::Write) -> Result<()> {
    let stdout_err = |e| Error::io("<stdout>", e);
    match &config.command {
        Command::Sweep(args) => {
            let spec = args.spec();
            let workers = args.workers.unwrap_or_else(default_workers);
            log::info!(
                "sweeping {} cells x {} realizations on {workers} workers",
                spec.cells().len(),
                spec.realizations
            );
            let result = run_sweep(&spec, workers)?;
            write_csv(&result.records, &args.out)?;
            writeln!(out, "wrote {}", args.out.display()).map_err(stdout_err)?;

            let summaries: Vec<_> = Metric::ALL
                .iter()
                .filter_map(|&m| summarize(&result.records, m).ok())
                .collect();
            let summary_path = companion_path(&args.out, "_summary.csv");
            write_summary(&summaries, &summary_path)?;
            writeln!(out, "wrote {}", summary_path.display()).map_err(stdout_err)?;

            if args.emit_raw {
                let raw_path = companion_path(&args.out, "_raw.csv");
                write_raw(&result.realizations, &raw_path)?;
                writeln!(out, "wrote {}", raw_path.display()).map_err(stdout_err)?;
            }
            if args.emit_svg || args.full {
                for metric in Metric::ALL {
                    let path = companion_path(&args.out, &format!("_{metric}.svg"));
                    write_svg_heatmap(&result.records, metric, &path)?;
                    writeln!(out, "wrote {}", path.display()).map_err(stdout_err)?;
                }
            }
            let failed = result.realizations.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                log::warn!("{failed} realizations failed and were excluded");
            }
            Ok(())
        }
        Command::Single(args) => {
            let (mc, neff) = run_single(&args.config(), &args.model.protocol(), args.realization)?;
            writeln!(out, "chi_r: {}", args.chi_r).map_err(stdout_err)?;
            writeln!(out, "chi_i: {}", args.chi_i).map_err(stdout_err)?;
            writeln!(out, "realization: {}", args.realization).map_err(stdout_err)?;
            writeln!(out, "mc_total: {}", mc.total).map_err(stdout_err)?;
            writeln!(out, "neff: {}", neff.value).map_err(stdout_err)?;
            if let Some(path) = &args.per_delay_out {
                let mut text = String::from("delay,squared_correlation\n");
                for (i, v) in mc.per_delay.iter().enumerate() {
                    text.push_str(&format!("{},{v}\n", i + 1));
                }
                csv::write_file(path, &text)?;
                writeln!(out, "per_delay: {}", path.display()).map_err(stdout_err)?;
            }
            Ok(())
        }
        Command::Summarize(args) => {
            let records = read_csv(&args.input)?;
            let summaries = Metric::ALL
                .iter()
                .map(|&m| summarize(&records, m))
                .collect::<Result<Vec<_>>>()?;
            let path = args
                .out
                .clone()
                .unwrap_or_else(|| companion_path(&args.input, "_summary.csv"));
            write_summary(&summaries, &path)?;
            writeln!(out, "wrote {}", path.display()).map_err(stdout_err)?;
            if args.emit_svg {
                for metric in Metric::ALL {
                    let svg_path = companion_path(&args.input, &format!("_{metric}.svg"));
                    write_svg_heatmap(&records, metric, &svg_path)?;
                    writeln!(out, "wrote {}", svg_path.display()).map_err(stdout_err)?;
                }
            }
            Ok(())
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        e if e.is_numeric() => EXIT_NUMERIC,
        Error::Config(_) | Error::InvalidRange { .. } | Error::InvalidCount { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            return e.exit_code();
        }
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    match run(&config, &mut std::io::stdout().lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
