//! Driving the benchmark harness from library code.
//!
//! Runs a deliberately small sweep — every system, every backend, two
//! sizes — then prints the raw CSV, the aligned table, and timing ratios
//! against the serial backend.

use odekit::backends::BackendKind;
use odekit::bench::{relative_performance, write_csv, BenchConfig, BenchRunner, MonotonicClock};
use odekit::Result;

fn main() -> Result<()> {
    let config = BenchConfig {
        sizes: vec![1_000, 10_000],
        steps: 20,
        reps: 5,
        ..BenchConfig::default()
    };
    config.validate()?;

    let clock = MonotonicClock::new();
    let records = BenchRunner::new(&config, &clock).run()?;

    println!("--- CSV ---");
    print!("{}", write_csv(&records));

    println!();
    println!("--- relative to serial ---");
    for cell in relative_performance(&records, BackendKind::Serial) {
        match cell.ratio {
            Some(ratio) => println!(
                "{:<8} N={:<6} {:<9} {ratio:>6.2}x the serial time",
                cell.system.to_string(),
                cell.n,
                cell.backend.to_string()
            ),
            None => println!(
                "{:<8} N={:<6} {:<9} {}",
                cell.system.to_string(),
                cell.n,
                cell.backend.to_string(),
                cell.note.unwrap_or_default()
            ),
        }
    }
    Ok(())
}
