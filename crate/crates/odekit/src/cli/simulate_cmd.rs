//! The `simulate` subcommand: integrate one system and emit its
//! trajectory as CSV.

use std::fmt::Write as _;

use super::SimulateArgs;
use crate::bench::lattice_side;
use crate::steppers::{integrate_n_steps, RungeKutta4, StormerVerlet};
use crate::systems::{
    LatticeForce, LatticeParams, LorenzEnsemble, LorenzRhs, PhaseChain, PhaseChainRhs, SystemId,
};
use crate::{Error, Result};

/// At most this many state components appear as CSV columns; large states
/// would otherwise produce unusable files.
const MAX_COLUMNS: usize = 8;

pub(super) fn run(args: &SimulateArgs) -> Result<()> {
    let text = trajectory_text(args)?;
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Builds the full trajectory CSV: a header, the initial state at t = 0,
/// and one row after every `--observe-every`-th step. A diverging
/// integration aborts with the failing step's index in the error.
fn trajectory_text(args: &SimulateArgs) -> Result<String> {
    let n = single_size(&args.sizes)?;
    if args.observe_every == 0 {
        return Err(Error::InvalidConfig(
            "--observe-every must be at least 1".into(),
        ));
    }
    if !args.dt.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "--dt must be finite, got {}",
            args.dt
        )));
    }
    let (exec, mode) = args.backend.realize(args.workers)?;
    let every = args.observe_every;

    match args.system {
        SystemId::Lorenz => {
            let sys = LorenzEnsemble::with_r_sweep(n)?;
            let rhs = LorenzRhs::new(&sys, &exec, mode);
            let mut state = sys.default_initial_state();
            let mut writer = TrajectoryWriter::new(3 * n);
            writer.row(0.0, state.as_flat().iter().copied());
            let mut stepper = RungeKutta4::new(exec.clone());
            let mut step = 0usize;
            integrate_n_steps(
                &mut stepper,
                &rhs,
                state.as_flat_mut(),
                0.0,
                args.dt,
                args.steps,
                |s: &[f64], t| {
                    step += 1;
                    if step % every == 0 {
                        writer.row(t, s.iter().copied());
                    }
                },
            )?;
            Ok(writer.out)
        }
        SystemId::Phase => {
            let sys = PhaseChain::uniform_velocity(n, 1.0)?;
            let rhs = PhaseChainRhs::new(&sys, &exec, mode);
            let mut state = sys.default_initial_state();
            let mut writer = TrajectoryWriter::new(n);
            writer.row(0.0, state.iter().copied());
            let mut stepper = RungeKutta4::new(exec.clone());
            let mut step = 0usize;
            integrate_n_steps(
                &mut stepper,
                &rhs,
                state.as_mut_slice(),
                0.0,
                args.dt,
                args.steps,
                |s: &[f64], t| {
                    step += 1;
                    if step % every == 0 {
                        writer.row(t, s.iter().copied());
                    }
                },
            )?;
            Ok(writer.out)
        }
        SystemId::Lattice => {
            let side = lattice_side(n);
            let mut params = LatticeParams::new(side, side, args.seed);
            params.beta = args.beta;
            let sys = params.build()?;
            let force = LatticeForce::new(&sys, &exec, mode);
            let mut state = sys.default_initial_state(args.seed);
            let mut writer = TrajectoryWriter::new(2 * side * side);
            writer.row(0.0, state.q.iter().chain(state.p.iter()).copied());
            let mut stepper = StormerVerlet::new(exec.clone());
            let mut step = 0usize;
            integrate_n_steps(
                &mut stepper,
                &force,
                &mut state,
                0.0,
                args.dt,
                args.steps,
                |s, t| {
                    step += 1;
                    if step % every == 0 {
                        writer.row(t, s.q.iter().chain(s.p.iter()).copied());
                    }
                },
            )?;
            Ok(writer.out)
        }
    }
}

fn single_size(sizes: &[usize]) -> Result<usize> {
    match sizes {
        [n] => Ok(*n),
        _ => Err(Error::InvalidConfig(format!(
            "simulate takes exactly one size, got {}",
            sizes.len()
        ))),
    }
}

struct TrajectoryWriter {
    out: String,
    cols: usize,
}

impl TrajectoryWriter {
    fn new(state_len: usize) -> Self {
        let cols = state_len.min(MAX_COLUMNS);
        let mut out = String::from("t");
        for i in 0..cols {
            let _ = write!(out, ",x{i}");
        }
        out.push('\n');
        Self { out, cols }
    }

    fn row(&mut self, t: f64, values: impl Iterator<Item = f64>) {
        let _ = write!(self.out, "{t:.16e}");
        for v in values.take(self.cols) {
            let _ = write!(self.out, ",{v:.16e}");
        }
        self.out.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn parse_simulate(extra: &[&str]) -> SimulateArgs {
        let mut argv = vec!["odekit", "simulate"];
        argv.extend_from_slice(extra);
        match super::super::Cli::try_parse_from(argv).unwrap().command {
            super::super::Command::Simulate(args) => args,
            other => panic!("parsed wrong command {other:?}"),
        }
    }

    #[test]
    fn zero_steps_emit_only_the_initial_condition() {
        let args = parse_simulate(&["--system", "lorenz", "--sizes", "1", "--steps", "0"]);
        let text = trajectory_text(&args).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "t,x0,x1,x2");
        let fields: Vec<f64> = lines[1].split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields, vec![0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn observe_every_thins_the_rows() {
        let args = parse_simulate(&[
            "--system", "phase", "--sizes", "3", "--steps", "4", "--observe-every", "2",
        ]);
        let text = trajectory_text(&args).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // header, t=0, step 2, step 4
        assert_eq!(lines.len(), 4, "{text}");
        let t_of = |line: &str| line.split(',').next().unwrap().parse::<f64>().unwrap();
        assert_eq!(t_of(lines[1]), 0.0);
        assert!((t_of(lines[2]) - 0.02).abs() < 1e-15);
        assert!((t_of(lines[3]) - 0.04).abs() < 1e-15);
    }

    #[test]
    fn wide_states_cap_at_eight_columns() {
        let args = parse_simulate(&["--system", "phase", "--sizes", "100", "--steps", "1"]);
        let text = trajectory_text(&args).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header, "t,x0,x1,x2,x3,x4,x5,x6,x7");
        for line in text.lines().skip(1) {
            assert_eq!(line.split(',').count(), 9);
        }
    }

    #[test]
    fn lattice_runs_are_deterministic() {
        let argv = [
            "--system", "lattice", "--sizes", "16", "--steps", "5", "--seed", "7", "--beta", "0",
        ];
        let first = trajectory_text(&parse_simulate(&argv)).unwrap();
        let second = trajectory_text(&parse_simulate(&argv)).unwrap();
        assert_eq!(first, second);
        assert!(first.lines().count() == 7);
    }

    #[test]
    fn divergence_reports_the_failing_step() {
        let args = parse_simulate(&[
            "--system", "lorenz", "--sizes", "1", "--steps", "50", "--dt", "1000",
        ]);
        let err = trajectory_text(&args).unwrap_err();
        let message = err.to_string();
        assert!(
            message.contains("step"),
            "expected a step index in {message:?}"
        );
    }

    #[test]
    fn multiple_sizes_are_rejected() {
        let args = parse_simulate(&["--system", "phase", "--sizes", "10,20"]);
        assert!(matches!(
            trajectory_text(&args).unwrap_err(),
            Error::InvalidConfig(_)
        ));
    }
}
