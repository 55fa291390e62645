//! Command-line front end: benchmark sweeps, single-trajectory
//! simulations, and SVG plots of benchmark results.
//!
//! Exit codes: 0 on success, 1 for usage or configuration errors, 2 for
//! runtime failures (I/O, malformed input files, diverging integrations).

mod bench_cmd;
mod plot_cmd;
mod simulate_cmd;
mod svg;
mod table;

pub use svg::render_benchmark_plot;

use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::backends::BackendKind;
use crate::systems::SystemId;
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "odekit",
    version,
    about = "ODE integration toolkit: timing sweeps, trajectory output, and plots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Time integration sweeps and emit results as CSV
    Bench(BenchArgs),
    /// Integrate one system and emit a trajectory CSV
    Simulate(SimulateArgs),
    /// Render a benchmark CSV as a log-log SVG plot
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// JSON configuration file; explicit flags override its fields
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// System to include (repeatable: lorenz, phase, lattice); all three by default
    #[arg(long = "system", value_name = "NAME", value_parser = SystemId::from_str)]
    systems: Vec<SystemId>,

    /// Backend to include (repeatable: serial, parallel, fused); all three by default
    #[arg(long = "backend", value_name = "NAME", value_parser = BackendKind::from_str)]
    backends: Vec<BackendKind>,

    /// Comma-separated problem sizes, strictly increasing; defaults to a
    /// logarithmic sweep from 100 to 10000000
    #[arg(long, value_name = "N,N,...", value_delimiter = ',')]
    sizes: Vec<usize>,

    /// Integration steps per timed run
    #[arg(long, value_name = "COUNT")]
    steps: Option<usize>,

    /// Timed repetitions per configuration; the median is reported
    #[arg(long, value_name = "COUNT")]
    reps: Option<usize>,

    /// Integration step size
    #[arg(long, value_name = "DT")]
    dt: Option<f64>,

    /// Seed for disorder and initial conditions
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    /// Worker threads for the parallel backend; defaults to ODEKIT_WORKERS
    /// or the hardware thread count
    #[arg(long, value_name = "COUNT")]
    workers: Option<usize>,

    /// Machine peak memory bandwidth in GB/s; fills the peak_frac column
    #[arg(long = "peak-gbps", value_name = "GBPS")]
    peak_gbps: Option<f64>,

    /// Write the CSV to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Print an aligned text table (systems as column groups, backends as
    /// rows) instead of CSV on stdout; CSV still goes to --out when given
    #[arg(long)]
    table: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// System to integrate (lorenz, phase, lattice)
    #[arg(long, value_name = "NAME", value_parser = SystemId::from_str)]
    system: SystemId,

    /// Problem size; exactly one value (lattice sizes round to a full
    /// square grid)
    #[arg(long, value_name = "N", value_delimiter = ',', default_value = "1000")]
    sizes: Vec<usize>,

    /// Number of integration steps
    #[arg(long, value_name = "COUNT", default_value_t = 100)]
    steps: usize,

    /// Integration step size
    #[arg(long, value_name = "DT", default_value_t = 0.01)]
    dt: f64,

    /// Seed for disorder and initial conditions
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    seed: u64,

    /// Backend to run on (serial, parallel, fused)
    #[arg(long, value_name = "NAME", value_parser = BackendKind::from_str, default_value = "serial")]
    backend: BackendKind,

    /// Worker threads for the parallel backend; defaults to ODEKIT_WORKERS
    /// or the hardware thread count
    #[arg(long, value_name = "COUNT")]
    workers: Option<usize>,

    /// Emit a trajectory row every this many steps
    #[arg(long = "observe-every", value_name = "K", default_value_t = 1)]
    observe_every: usize,

    /// Cubic coefficient of the lattice system; ignored by the others
    #[arg(long, value_name = "BETA", default_value_t = 1.0)]
    beta: f64,

    /// Write the trajectory CSV to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Benchmark CSV produced by the bench command
    #[arg(value_name = "CSV")]
    csv: PathBuf,

    /// Output SVG path
    #[arg(long, value_name = "FILE")]
    out: PathBuf,

    /// Backend the relative-performance panel normalizes against
    #[arg(long, value_name = "NAME", value_parser = BackendKind::from_str, default_value = "serial")]
    reference: BackendKind,
}

/// Parses process arguments, dispatches, and converts errors to exit codes.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests travel through the error path but
            // are not failures; anything else is a usage error.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Bench(args) => bench_cmd::run(args),
        Command::Simulate(args) => simulate_cmd::run(args),
        Command::Plot(args) => plot_cmd::run(args),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig(_) | Error::UnknownSystem(_) | Error::UnknownBackend(_) => 1,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bench_flags_parse_into_lists() {
        let cli = Cli::try_parse_from([
            "odekit", "bench", "--system", "lorenz", "--system", "phase", "--backend", "serial",
            "--sizes", "10,100", "--reps", "3",
        ])
        .unwrap();
        match cli.command {
            Command::Bench(args) => {
                assert_eq!(args.systems, vec![SystemId::Lorenz, SystemId::Phase]);
                assert_eq!(args.backends, vec![BackendKind::Serial]);
                assert_eq!(args.sizes, vec![10, 100]);
                assert_eq!(args.reps, Some(3));
                assert!(!args.table);
            }
            other => panic!("parsed wrong command {other:?}"),
        }
    }

    #[test]
    fn unknown_flags_and_bad_names_are_usage_errors() {
        assert!(Cli::try_parse_from(["odekit", "bench", "--frobnicate"]).is_err());
        assert!(Cli::try_parse_from(["odekit", "bench", "--system", "roessler"]).is_err());
        assert!(Cli::try_parse_from(["odekit", "simulate"]).is_err(), "system is required");
    }

    #[test]
    fn simulate_defaults_are_filled_in() {
        let cli = Cli::try_parse_from(["odekit", "simulate", "--system", "phase"]).unwrap();
        match cli.command {
            Command::Simulate(args) => {
                assert_eq!(args.sizes, vec![1000]);
                assert_eq!(args.steps, 100);
                assert_eq!(args.dt, 0.01);
                assert_eq!(args.observe_every, 1);
                assert_eq!(args.backend, BackendKind::Serial);
            }
            other => panic!("parsed wrong command {other:?}"),
        }
    }

    #[test]
    fn config_validation_failures_map_to_usage_exit_code() {
        assert_eq!(exit_code_for(&Error::InvalidConfig("reps".into())), 1);
        assert_eq!(exit_code_for(&Error::UnknownBackend("gpu".into())), 1);
        assert_eq!(
            exit_code_for(&Error::CsvParse {
                line: 3,
                message: "bad".into()
            }),
            2
        );
        assert_eq!(
            exit_code_for(&Error::Io(std::io::Error::other("disk fell off"))),
            2
        );
    }
}
