//! Benchmark harness: size sweeps, median-of-N timing with warmup, a
//! documented bytes-moved traffic model, and relative-performance tables.
//!
//! Timing discipline: per (system, backend, size) cell the runner builds
//! everything untimed, runs warmup repetitions, then times only the
//! integration loop of each repetition, each starting from a fresh copy of
//! the initial state. The reported figure of merit is the median (with min
//! and max retained), and throughput is derived from the traffic model
//! rather than hardware counters, so it is deterministic for a given
//! configuration.

mod bytes;
mod config;
mod record;
mod relative;
mod runner;

pub use bytes::{lattice_nnz, lattice_side, BytesModel};
pub use config::BenchConfig;
pub use record::{parse_csv, write_csv, BenchRecord};
pub use relative::{relative_performance, RelativeCell};
pub use runner::{median, state_fingerprint, BenchRunner, Clock, MonotonicClock, ScriptedClock};
