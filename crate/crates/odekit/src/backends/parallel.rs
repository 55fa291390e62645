//! Deterministic chunked execution on a fixed worker pool.
//!
//! Chunk boundaries depend only on the pass length and the worker count,
//! never on scheduling: chunk `c` covers `[c*ceil(n/p), min((c+1)*ceil(n/p), n))`.
//! Since chunks are disjoint and every kernel is a pure per-element function,
//! results are bitwise identical to the serial backend for any worker count.

use std::ops::Range;
use std::sync::Arc;

use crate::core::{Algebra, Task};
use crate::{Error, Result};

/// Environment variable consulted for the default worker count.
pub const WORKERS_ENV_VAR: &str = "ODEKIT_WORKERS";

/// Splits `[0, n)` into at most `workers` contiguous chunks of equal ceiling
/// size; the final chunk absorbs the remainder.
pub fn chunk_ranges(n: usize, workers: usize) -> Vec<Range<usize>> {
    assert!(workers >= 1, "worker count must be at least 1");
    if n == 0 {
        return Vec::new();
    }
    let chunk = n.div_ceil(workers);
    let mut ranges = Vec::with_capacity(workers);
    let mut start = 0;
    while start < n {
        let end = (start + chunk).min(n);
        ranges.push(start..end);
        start = end;
    }
    ranges
}

/// Worker-pool backend. The pool is created once at construction; passes are
/// split by [`chunk_ranges`] and block until every chunk has finished.
#[derive(Clone)]
pub struct ParallelBackend {
    pool: Arc<rayon::ThreadPool>,
    workers: usize,
}

impl ParallelBackend {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidConfig(
                "worker count must be at least 1".into(),
            ));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("failed to build worker pool: {e}")))?;
        Ok(Self {
            pool: Arc::new(pool),
            workers,
        })
    }

    /// Worker count from `ODEKIT_WORKERS` if set, otherwise the machine's
    /// available parallelism.
    pub fn default_workers() -> usize {
        if let Ok(v) = std::env::var(WORKERS_ENV_VAR) {
            if let Ok(n) = v.trim().parse::<usize>() {
                if n >= 1 {
                    return n;
                }
            }
        }
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }

    pub fn with_default_workers() -> Result<Self> {
        Self::new(Self::default_workers())
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl std::fmt::Debug for ParallelBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParallelBackend")
            .field("workers", &self.workers)
            .finish()
    }
}

impl Algebra for ParallelBackend {
    fn run_tasks(&self, tasks: Vec<Task<'_>>) {
        if tasks.len() <= 1 {
            for task in tasks {
                task();
            }
            return;
        }
        self.pool.scope(|scope| {
            for task in tasks {
                scope.spawn(move |_| task());
            }
        });
    }

    fn pass_chunks(&self, n: usize) -> Vec<Range<usize>> {
        chunk_ranges(n, self.workers)
    }
}
