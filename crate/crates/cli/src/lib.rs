//! `zonomon` command-line interface.
//!
//! Exit codes: 0 when the verdict is safe (or nothing was monitored), 2 when
//! it is possibly unsafe, 1 on any usage, file, format, or numerical error.
//! Every monitoring run prints a `STATUS=SAFE` or `STATUS=POSSIBLY_UNSAFE`
//! line.

mod cases;
mod pipeline;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cases::{
    bundled, bundled_texts, generated, CaseConfig, CaseData, CaseName, OnlineSection, Quadrant,
};
pub use pipeline::parse_init;

pub const EXIT_SAFE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_POSSIBLY_UNSAFE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "zonomon",
    version,
    about = "Safety monitoring of sampled systems with a zonotope bounding model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monitor a recorded log.
    Offline(OfflineArgs),
    /// Monitor a full behavior, sampling only when needed.
    Online(OnlineArgs),
    /// Generate a random behavior and a noisy, aperiodic log of it.
    Genlog(GenlogArgs),
    /// Export CSV and SVG plots of an offline run.
    Plot(PlotArgs),
    /// Run a bundled case study.
    Case(CaseArgs),
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Bounding model (`.model`).
    #[arg(long)]
    model: PathBuf,
    /// Unsafe region (`.unsafe`).
    #[arg(long = "unsafe")]
    unsafe_path: PathBuf,
    /// Generator budget; defaults to the model's own setting.
    #[arg(long)]
    max_generators: Option<usize>,
}

#[derive(Args, Debug)]
struct RefineArgs {
    /// Use the next sample to discard unreachable hits (default).
    #[arg(long, overrides_with = "no_refine")]
    refine: bool,
    /// Report every hit of the flowpipe.
    #[arg(long)]
    no_refine: bool,
}

impl RefineArgs {
    fn enabled(&self) -> bool {
        !self.no_refine
    }
}

#[derive(Args, Debug)]
struct OfflineArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Log to monitor (`.mlog`).
    #[arg(long)]
    log: PathBuf,
    #[command(flatten)]
    refine: RefineArgs,
    /// Write verdict.txt, plot.csv and plot.svg here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// State variable to plot (0-based).
    #[arg(long, default_value_t = 0)]
    dim: usize,
}

#[derive(Args, Debug)]
struct OnlineArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Behavior to monitor (`.mbeh`).
    #[arg(long)]
    behavior: PathBuf,
    /// Sensor half-width, one value for all variables or one per variable.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    noise: Vec<f64>,
    /// Longest gap between two samples.
    #[arg(long, default_value_t = 10)]
    max_skip: u64,
    /// Write verdict.txt, synth.mlog, plot.csv and plot.svg here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// State variable to plot (0-based).
    #[arg(long, default_value_t = 0)]
    dim: usize,
}

#[derive(Args, Debug)]
struct GenlogArgs {
    /// Bounding model (`.model`).
    #[arg(long)]
    model: PathBuf,
    /// Initial set, one `value` or `lo:hi` per variable, comma separated.
    #[arg(long)]
    init: String,
    /// Last timestep.
    #[arg(long)]
    length: u64,
    /// Chance that a step after the first is logged.
    #[arg(long)]
    probability: f64,
    /// Sample half-width, one value for all variables or one per variable.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    noise: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write log.mlog and behavior.mbeh here.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long)]
    log: PathBuf,
    #[command(flatten)]
    refine: RefineArgs,
    /// Write plot.csv and plot.svg here.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    dim: usize,
}

#[derive(Args, Debug)]
#[group(id = "variant", required = true, multiple = false, args = ["offline", "online", "compare"])]
struct CaseArgs {
    #[arg(value_enum)]
    name: CaseArg,
    /// Offline run on the bundled log of one quadrant (1 to 4).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    offline: Option<u8>,
    /// Online run on the bundled behavior.
    #[arg(long)]
    online: bool,
    /// Offline (quadrant 1) and online runs on the same behavior, overlaid.
    #[arg(long)]
    compare: bool,
    /// Regenerate the data from the case configuration with this seed
    /// instead of using the bundled files.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    refine: RefineArgs,
    /// Write outputs here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    Anesthesia,
    Acc,
}

impl From<CaseArg> for CaseName {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Anesthesia => CaseName::Anesthesia,
            CaseArg::Acc => CaseName::Acc,
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_SAFE;
            }
            let _ = writeln!(err, "{}", one_line(&e.render().to_string()));
            return EXIT_ERROR;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", one_line(&format!("{e:#}")));
            EXIT_ERROR
        }
    }
}

/// Clap's message without the usage footer, folded onto one line.
fn one_line(msg: &str) -> String {
    let body = msg
        .split("\n\nUsage:")
        .next()
        .unwrap_or(msg)
        .split("\n\nFor more information")
        .next()
        .unwrap_or(msg);
    body.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Offline(a) => pipeline::offline(
            &pipeline::SystemPaths {
                model: &a.system.model,
                unsafe_path: &a.system.unsafe_path,
                max_generators: a.system.max_generators,
            },
            &a.log,
            a.refine.enabled(),
            a.out.as_deref(),
            a.dim,
            out,
        ),
        Command::Online(a) => pipeline::online(
            &pipeline::SystemPaths {
                model: &a.system.model,
                unsafe_path: &a.system.unsafe_path,
                max_generators: a.system.max_generators,
            },
            &a.behavior,
            &a.noise,
            a.max_skip,
            a.out.as_deref(),
            a.dim,
            out,
        ),
        Command::Genlog(a) => pipeline::genlog(
            &a.model,
            &a.init,
            a.length,
            a.probability,
            &a.noise,
            a.seed,
            &a.out,
            out,
        ),
        Command::Plot(a) => pipeline::plot(
            &pipeline::SystemPaths {
                model: &a.system.model,
                unsafe_path: &a.system.unsafe_path,
                max_generators: a.system.max_generators,
            },
            &a.log,
            a.refine.enabled(),
            &a.out,
            a.dim,
            out,
        ),
        Command::Case(a) => {
            let variant = match (a.offline, a.online, a.compare) {
                (Some(q), _, _) => cases::Variant::Offline(q),
                (None, true, _) => cases::Variant::Online,
                _ => cases::Variant::Compare,
            };
            cases::run_case(
                a.name.into(),
                variant,
                a.seed,
                a.refine.enabled(),
                a.out.as_deref(),
                out,
            )
        }
    }
}
