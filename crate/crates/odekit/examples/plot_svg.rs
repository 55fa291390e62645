//! From sweep to figure without leaving the library: run a small
//! benchmark, write its CSV, and render the log-log SVG the `plot`
//! subcommand would produce from the same data.

use odekit::backends::BackendKind;
use odekit::bench::{parse_csv, write_csv, BenchConfig, BenchRunner, MonotonicClock};
use odekit::cli::render_benchmark_plot;
use odekit::systems::SystemId;
use odekit::Result;

fn main() -> Result<()> {
    let config = BenchConfig {
        systems: vec![SystemId::Lorenz, SystemId::Phase],
        sizes: vec![100, 1_000, 10_000],
        steps: 10,
        reps: 3,
        ..BenchConfig::default()
    };
    let clock = MonotonicClock::new();
    let records = BenchRunner::new(&config, &clock).run()?;

    let csv = write_csv(&records);
    let csv_path = std::env::temp_dir().join("odekit_sweep.csv");
    std::fs::write(&csv_path, &csv)?;
    println!("wrote {} records to {}", records.len(), csv_path.display());

    // The plot pipeline consumes the CSV form, so render from a re-parse
    // to prove the file round-trips.
    let reparsed = parse_csv(&csv)?;
    let svg = render_benchmark_plot(&reparsed, BackendKind::Serial);
    let svg_path = std::env::temp_dir().join("odekit_sweep.svg");
    std::fs::write(&svg_path, &svg)?;
    println!("rendered {} bytes of SVG to {}", svg.len(), svg_path.display());
    println!("equivalent command: odekit plot {} --out sweep.svg", csv_path.display());
    Ok(())
}
