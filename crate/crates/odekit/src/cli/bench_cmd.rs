//! The `bench` subcommand: build a configuration from flags and/or a JSON
//! file, run the sweep, and emit CSV (and optionally a text table).

use super::{table, BenchArgs};
use crate::bench::{write_csv, BenchConfig, BenchRunner, MonotonicClock};
use crate::Result;

pub(super) fn run(args: &BenchArgs) -> Result<()> {
    let config = build_config(args)?;
    let clock = MonotonicClock::new();
    let records = BenchRunner::new(&config, &clock).run()?;

    for failed in records.iter().filter(|r| !r.is_ok()) {
        eprintln!(
            "warning: skipping {} {} N={}: {}",
            failed.system,
            failed.backend,
            failed.n,
            failed.error.as_deref().unwrap_or("unknown failure")
        );
    }

    let csv = write_csv(&records);
    if let Some(path) = &args.out {
        std::fs::write(path, &csv)?;
    }
    if args.table {
        print!("{}", table::render_table(&records));
    } else if args.out.is_none() {
        print!("{csv}");
    }
    Ok(())
}

/// Starts from the JSON file when given (defaults otherwise) and lets
/// every explicitly passed flag override the corresponding field.
fn build_config(args: &BenchArgs) -> Result<BenchConfig> {
    let mut config = match &args.config {
        Some(path) => BenchConfig::from_json_file(path)?,
        None => BenchConfig::default(),
    };
    if !args.systems.is_empty() {
        config.systems = args.systems.clone();
    }
    if !args.backends.is_empty() {
        config.backends = args.backends.clone();
    }
    if !args.sizes.is_empty() {
        config.sizes = args.sizes.clone();
    }
    if let Some(steps) = args.steps {
        config.steps = steps;
    }
    if let Some(reps) = args.reps {
        config.reps = reps;
    }
    if let Some(dt) = args.dt {
        config.dt = dt;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if args.workers.is_some() {
        config.workers = args.workers;
    }
    if args.peak_gbps.is_some() {
        config.peak_gbps = args.peak_gbps;
    }
    config.validate()?;
    Ok(config)
}
