//! Sweep execution: clocks, warmup, repetition timing, and record assembly.
//!
//! The runner times integration only. System construction, operator
//! assembly, scratch allocation, warmup repetitions, and the per-repetition
//! state reset all happen outside the clocked region, so a slow setup (or a
//! deliberately delayed one in tests) cannot leak into the reported medians.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::backends::BackendKind;
use crate::bench::bytes::{lattice_side, BytesModel};
use crate::bench::config::BenchConfig;
use crate::bench::record::BenchRecord;
use crate::steppers::{integrate_n_steps, RungeKutta4, StormerVerlet};
use crate::systems::{
    LatticeForce, LatticeParams, LorenzEnsemble, LorenzRhs, PhaseChain, PhaseChainRhs, SystemId,
};
use crate::{Error, Result};

/// Source of timestamps, in seconds from an arbitrary fixed origin.
///
/// Production code uses [`MonotonicClock`]; tests swap in a
/// [`ScriptedClock`] to make medians exactly predictable.
pub trait Clock: Sync {
    fn now(&self) -> f64;
}

/// Wall-clock time from a monotonic source.
#[derive(Debug)]
pub struct MonotonicClock {
    origin: Instant,
}

impl MonotonicClock {
    pub fn new() -> Self {
        Self {
            origin: Instant::now(),
        }
    }
}

impl Default for MonotonicClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for MonotonicClock {
    fn now(&self) -> f64 {
        self.origin.elapsed().as_secs_f64()
    }
}

/// Replays a fixed series of readings; each consecutive start/stop pair
/// brackets exactly one entry of the duration list it was built from.
#[derive(Debug)]
pub struct ScriptedClock {
    readings: Vec<f64>,
    cursor: AtomicUsize,
}

impl ScriptedClock {
    pub fn from_durations(durations: &[f64]) -> Self {
        let mut readings = Vec::with_capacity(durations.len() * 2);
        let mut t = 0.0;
        for &d in durations {
            readings.push(t);
            t += d;
            readings.push(t);
        }
        Self {
            readings,
            cursor: AtomicUsize::new(0),
        }
    }

    /// How many readings have been handed out so far.
    pub fn calls(&self) -> usize {
        self.cursor.load(Ordering::SeqCst)
    }
}

impl Clock for ScriptedClock {
    fn now(&self) -> f64 {
        let i = self.cursor.fetch_add(1, Ordering::SeqCst);
        match self.readings.get(i) {
            Some(&t) => t,
            None => panic!(
                "scripted clock exhausted after {} readings",
                self.readings.len()
            ),
        }
    }
}

/// Middle of the sorted sample; mean of the two middle entries when the
/// sample size is even.
pub fn median(times: &[f64]) -> f64 {
    assert!(!times.is_empty(), "median of an empty sample");
    let mut sorted = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

/// Order-sensitive digest of a value stream. Two states agree bitwise
/// exactly when their digests were built from identical bit patterns in
/// identical order.
pub fn state_fingerprint<'a>(values: impl IntoIterator<Item = &'a f64>) -> u64 {
    values
        .into_iter()
        .fold(0u64, |acc, v| acc.rotate_left(7) ^ v.to_bits())
}

struct TimedOutcome {
    times: Vec<f64>,
    passes: u64,
    fingerprint: u64,
}

/// Executes a benchmark configuration and produces one record per
/// (system, backend, size) cell.
pub struct BenchRunner<'a> {
    config: &'a BenchConfig,
    clock: &'a dyn Clock,
    setup_delay: Option<Duration>,
}

impl<'a> BenchRunner<'a> {
    pub fn new(config: &'a BenchConfig, clock: &'a dyn Clock) -> Self {
        Self {
            config,
            clock,
            setup_delay: None,
        }
    }

    /// Test hook: sleep for `delay` during (untimed) setup of every cell,
    /// so tests can prove setup cost stays out of the measurements.
    pub fn with_setup_delay(mut self, delay: Duration) -> Self {
        self.setup_delay = Some(delay);
        self
    }

    /// Runs the full sweep. Cells whose working set cannot be allocated
    /// produce an error-carrying record and the sweep continues; any other
    /// failure aborts.
    pub fn run(&self) -> Result<Vec<BenchRecord>> {
        self.config.validate()?;
        let mut records = Vec::new();
        for &system in &self.config.systems {
            for &backend in &self.config.backends {
                for &n in &self.config.sizes {
                    records.push(self.run_single(system, backend, n)?);
                }
            }
        }
        Ok(records)
    }

    /// Measures one cell. The requested size is reshaped to the nearest
    /// full square grid for the lattice system and the reshaped size is
    /// what the record reports.
    pub fn run_single(
        &self,
        system: SystemId,
        backend: BackendKind,
        requested_n: usize,
    ) -> Result<BenchRecord> {
        let n = match system {
            SystemId::Lattice => {
                let side = lattice_side(requested_n);
                side * side
            }
            _ => requested_n,
        };
        let fused = matches!(backend, BackendKind::Fused);
        let bytes = BytesModel::bytes_moved(system, n, self.config.steps, fused);
        let mut record = BenchRecord {
            system,
            backend,
            fused,
            n,
            steps: self.config.steps,
            times: Vec::new(),
            median_s: 0.0,
            min_s: 0.0,
            max_s: 0.0,
            bytes,
            gbps: 0.0,
            peak_frac: None,
            passes: 0,
            state_fingerprint: 0,
            error: None,
        };
        match self.measure(system, backend, n) {
            Ok(outcome) => {
                let median_s = median(&outcome.times);
                record.min_s = outcome.times.iter().copied().fold(f64::INFINITY, f64::min);
                record.max_s = outcome
                    .times
                    .iter()
                    .copied()
                    .fold(f64::NEG_INFINITY, f64::max);
                record.gbps = if median_s > 0.0 {
                    bytes as f64 / median_s / 1e9
                } else {
                    0.0
                };
                record.peak_frac = self.config.peak_gbps.map(|peak| record.gbps / peak);
                record.median_s = median_s;
                record.times = outcome.times;
                record.passes = outcome.passes;
                record.state_fingerprint = outcome.fingerprint;
                Ok(record)
            }
            Err(err @ Error::AllocationFailed { .. }) => {
                record.error = Some(err.to_string());
                Ok(record)
            }
            Err(other) => Err(other),
        }
    }

    fn measure(&self, system: SystemId, backend: BackendKind, n: usize) -> Result<TimedOutcome> {
        preflight_allocation(system, n)?;
        let (exec, mode) = backend.realize(self.config.workers)?;
        if let Some(delay) = self.setup_delay {
            std::thread::sleep(delay);
        }
        let steps = self.config.steps;
        let dt = self.config.dt;
        match system {
            SystemId::Lorenz => {
                let sys = LorenzEnsemble::with_r_sweep(n)?;
                let rhs = LorenzRhs::new(&sys, &exec, mode);
                let initial = sys.default_initial_state();
                let mut stepper = RungeKutta4::new(exec.clone()).without_validation();
                self.time_reps(
                    &initial,
                    |state| {
                        integrate_n_steps(
                            &mut stepper,
                            &rhs,
                            state.as_flat_mut(),
                            0.0,
                            dt,
                            steps,
                            |_, _| {},
                        )
                        .map(|_| ())
                    },
                    |state| state_fingerprint(state.as_flat()),
                    || sys.passes(),
                )
            }
            SystemId::Phase => {
                let sys = PhaseChain::uniform_velocity(n, 1.0)?;
                let rhs = PhaseChainRhs::new(&sys, &exec, mode);
                let initial = sys.default_initial_state();
                let mut stepper = RungeKutta4::new(exec.clone()).without_validation();
                self.time_reps(
                    &initial,
                    |state| {
                        integrate_n_steps(
                            &mut stepper,
                            &rhs,
                            state.as_mut_slice(),
                            0.0,
                            dt,
                            steps,
                            |_, _| {},
                        )
                        .map(|_| ())
                    },
                    |state| state_fingerprint(state.as_slice()),
                    || sys.passes(),
                )
            }
            SystemId::Lattice => {
                let side = lattice_side(n);
                let sys = LatticeParams::new(side, side, self.config.seed).build()?;
                let force = LatticeForce::new(&sys, &exec, mode);
                let initial = sys.default_initial_state(self.config.seed);
                let mut stepper = StormerVerlet::new(exec.clone()).without_validation();
                self.time_reps(
                    &initial,
                    |state| {
                        integrate_n_steps(&mut stepper, &force, state, 0.0, dt, steps, |_, _| {})
                            .map(|_| ())
                    },
                    |state| state_fingerprint(state.q.iter().chain(state.p.iter())),
                    || sys.passes(),
                )
            }
        }
    }

    /// Shared warmup/timing loop. Every repetition restarts from a fresh
    /// clone of the initial state so repetitions are independent; only the
    /// integration itself sits between clock readings.
    fn time_reps<S: Clone>(
        &self,
        initial: &S,
        mut run: impl FnMut(&mut S) -> Result<()>,
        fingerprint: impl Fn(&S) -> u64,
        passes: impl Fn() -> u64,
    ) -> Result<TimedOutcome> {
        for _ in 0..self.config.warmup {
            let mut state = initial.clone();
            run(&mut state)?;
        }
        let passes_before = passes();
        let reps = self.config.reps;
        let mut times = Vec::with_capacity(reps);
        let mut digest = 0u64;
        for _ in 0..reps {
            let mut state = initial.clone();
            let start = self.clock.now();
            run(&mut state)?;
            let stop = self.clock.now();
            times.push(stop - start);
            digest = fingerprint(&state);
        }
        let per_run = (passes() - passes_before) / reps as u64;
        Ok(TimedOutcome {
            times,
            passes: per_run,
            fingerprint: digest,
        })
    }
}

/// Scalars the runner plus stepper hold live at once for a size-`n` cell,
/// with a 25% margin for allocator slack and index arrays.
fn estimated_scalars(system: SystemId, n: usize) -> usize {
    let base = match system {
        // state + working copy + four stage slopes + stage input, each 3n wide
        SystemId::Lorenz => 21 * n,
        // state + working copy + the same five stage buffers, each n wide
        SystemId::Phase => 7 * n,
        // two q/p pairs, force scratch, and both sparse operator layouts
        // at roughly five entries per row
        SystemId::Lattice => 24 * n,
    };
    base.saturating_add(base / 4)
}

/// Asks the allocator for the cell's working set up front so an oversized
/// cell fails cleanly here instead of aborting mid-sweep.
fn preflight_allocation(system: SystemId, n: usize) -> Result<()> {
    let scalars = estimated_scalars(system, n);
    let mut probe: Vec<f64> = Vec::new();
    probe
        .try_reserve_exact(scalars)
        .map_err(|_| Error::AllocationFailed { scalars })?;
    Ok(())
}
