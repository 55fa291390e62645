//! Evaluation backends: serial, deterministic-parallel and fused-expression.
//!
//! All backends implement the same [`Algebra`](crate::core::Algebra) contract
//! and produce bitwise-identical numbers; they differ only in how many
//! execution contexts traverse a pass and in how many passes a right-hand
//! side needs. "Fused" is not a different scheduler: it is the serial
//! traversal combined with single-pass right-hand sides built from
//! [`FusedGroup`]s.

mod expr;
mod parallel;
mod program;
mod serial;

pub use expr::{Expr, Slot};
pub use parallel::{chunk_ranges, ParallelBackend, WORKERS_ENV_VAR};
pub use program::{Bindings, FusedGroup, SlotBinding, Statement, UnfusedProgram};
pub use serial::SerialBackend;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::core::{Algebra, Task};
use crate::{Error, Result};

/// Whether a system evaluates its right-hand side as one fused pass or as one
/// pass per assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhsMode {
    Unfused,
    Fused,
}

impl RhsMode {
    pub fn is_fused(self) -> bool {
        matches!(self, RhsMode::Fused)
    }
}

/// Runtime-selected scheduler, used where backends are chosen by
/// configuration rather than by type parameter.
#[derive(Clone, Debug)]
pub enum ExecBackend {
    Serial(SerialBackend),
    Parallel(ParallelBackend),
}

impl ExecBackend {
    pub fn serial() -> Self {
        ExecBackend::Serial(SerialBackend)
    }

    pub fn parallel(workers: usize) -> Result<Self> {
        Ok(ExecBackend::Parallel(ParallelBackend::new(workers)?))
    }

    pub fn workers(&self) -> usize {
        match self {
            ExecBackend::Serial(_) => 1,
            ExecBackend::Parallel(p) => p.workers(),
        }
    }
}

impl Algebra for ExecBackend {
    fn run_tasks(&self, tasks: Vec<Task<'_>>) {
        match self {
            ExecBackend::Serial(b) => b.run_tasks(tasks),
            ExecBackend::Parallel(b) => b.run_tasks(tasks),
        }
    }

    fn pass_chunks(&self, n: usize) -> Vec<Range<usize>> {
        match self {
            ExecBackend::Serial(b) => b.pass_chunks(n),
            ExecBackend::Parallel(b) => b.pass_chunks(n),
        }
    }
}

/// User-facing backend identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Serial,
    Parallel,
    Fused,
}

impl BackendKind {
    pub const ALL: [BackendKind; 3] = [BackendKind::Serial, BackendKind::Parallel, BackendKind::Fused];

    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Serial => "serial",
            BackendKind::Parallel => "parallel",
            BackendKind::Fused => "fused",
        }
    }

    /// Materializes the scheduler / right-hand-side mode pair this identifier
    /// stands for. `workers` only matters for the parallel backend; `None`
    /// falls back to [`ParallelBackend::default_workers`].
    pub fn realize(self, workers: Option<usize>) -> Result<(ExecBackend, RhsMode)> {
        match self {
            BackendKind::Serial => Ok((ExecBackend::serial(), RhsMode::Unfused)),
            BackendKind::Parallel => {
                let w = workers.unwrap_or_else(ParallelBackend::default_workers);
                Ok((ExecBackend::parallel(w)?, RhsMode::Unfused))
            }
            BackendKind::Fused => Ok((ExecBackend::serial(), RhsMode::Fused)),
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "serial" => Ok(BackendKind::Serial),
            "parallel" => Ok(BackendKind::Parallel),
            "fused" => Ok(BackendKind::Fused),
            other => Err(Error::UnknownBackend(other.to_string())),
        }
    }
}
