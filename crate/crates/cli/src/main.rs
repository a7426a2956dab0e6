//! `cac`: pure Nash equilibria of mixed coordination/anti-coordination games.
//!
//! Exit codes: 0 success, 2 input error, 3 no equilibrium, 4 size refusal.

mod continuum;
mod distspec;
mod dynamics;
mod error;
mod finite;
mod format;
mod instance;
mod plot;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cac_core::continuum::ScanOptions;
use cac_core::dynamics::Schedule;
use cac_core::oracle::DEFAULT_MAX_N;
use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;
use report::Report;

#[derive(Parser)]
#[command(name = "cac", version, about = "Equilibria of mixed coordination/anti-coordination games")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every equilibrium triple with its count and one equilibrium.
    Solve { instance: PathBuf },
    /// Count the equilibria behind every triple.
    Count { instance: PathBuf },
    /// Write the equilibrium profiles themselves.
    Enumerate {
        instance: PathBuf,
        /// Stop after this many profiles.
        #[arg(long, default_value_t = 10_000)]
        max_enumerate: usize,
    },
    /// Check a profile, or compare the solver against exhaustive search.
    Verify {
        instance: PathBuf,
        /// Profile as `+-+-` or `1,-1,1,-1`.
        #[arg(long, conflicts_with = "oracle", required_unless_present = "oracle", allow_hyphen_values = true)]
        profile: Option<String>,
        #[arg(long)]
        oracle: bool,
        /// Largest n accepted by --oracle.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Fixed points of the infinite-population map.
    Continuum {
        #[command(flatten)]
        dist: ContinuumArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Grid cells scanned for sign changes.
        #[arg(long, default_value_t = 10_000)]
        cells: usize,
    },
    /// Write F_c, G_a, H_alpha and the bisector as CSV files.
    PlotData {
        /// Finite instance; omit to plot continuum distributions instead.
        #[arg(required_unless_present = "alpha")]
        instance: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        dist: OptionalContinuumArgs,
        /// Sample points for continuum curves.
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Run best-response dynamics.
    Dynamics {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = ScheduleArg::Async)]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        /// Initial profile; all `-` by default.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// Trajectory CSV with columns step,plus,z,activated.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
}

/// Distribution specs: `uniform:LO,HI`, `normal:MEAN,STD`, `pwl:Z:F,...`.
#[derive(Args)]
struct ContinuumArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    dist_coord: String,
    /// Defaults to --dist-coord.
    #[arg(long)]
    dist_anti: Option<String>,
}

#[derive(Args)]
struct OptionalContinuumArgs {
    #[arg(long, conflicts_with = "instance", requires = "dist_coord")]
    alpha: Option<f64>,
    #[arg(long, conflicts_with = "instance")]
    dist_coord: Option<String>,
    #[arg(long, conflicts_with = "instance")]
    dist_anti: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Async,
    Sync,
}

fn distributions(
    coord: &str,
    anti: Option<&str>,
) -> Result<(cac_core::continuum::ContinuumDistribution, cac_core::continuum::ContinuumDistribution), CliError> {
    let c = distspec::parse(coord)?;
    let a = match anti {
        Some(spec) => distspec::parse(spec)?,
        None => c.clone(),
    };
    Ok((c, a))
}

fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Solve { instance } => finite::solve(&instance::load(&instance)?),
        Command::Count { instance } => finite::count(&instance::load(&instance)?),
        Command::Enumerate { instance, max_enumerate } => {
            finite::enumerate(&instance::load(&instance)?, max_enumerate)
        }
        Command::Verify { instance, profile, oracle, max_n } => {
            let inst = instance::load(&instance)?;
            match profile {
                Some(p) if !oracle => finite::verify_profile(&inst, &p),
                _ => finite::verify_oracle(&inst, max_n),
            }
        }
        Command::Continuum { dist, tol, cells } => {
            let (c, a) = distributions(&dist.dist_coord, dist.dist_anti.as_deref())?;
            let opts = ScanOptions { cells, tolerance: tol };
            continuum::solve(dist.alpha, &c, &a, &opts)
        }
        Command::PlotData { instance, out, dist, points } => match instance {
            Some(path) => plot::finite(&instance::load(&path)?, &out),
            None => {
                let alpha = dist.alpha.expect("clap requires --alpha without an instance");
                let coord = dist.dist_coord.expect("clap requires --dist-coord with --alpha");
                let (c, a) = distributions(&coord, dist.dist_anti.as_deref())?;
                plot::continuum(alpha, &c, &a, points, &out)
            }
        },
        Command::Dynamics { instance, schedule, seed, steps, x0, trajectory } => {
            let schedule = match schedule {
                ScheduleArg::Async => Schedule::Asynchronous { seed },
                ScheduleArg::Sync => Schedule::Synchronous,
            };
            dynamics::simulate(&instance::load(&instance)?, schedule, steps, x0.as_deref(), trajectory.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(report.render(cli.json).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
