//! The `plot` subcommand: read a benchmark CSV and write the SVG figure.

use super::{svg, PlotArgs};
use crate::bench::parse_csv;
use crate::{Error, Result};

pub(super) fn run(args: &PlotArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.csv)?;
    let records = parse_csv(&text)?;
    if records.is_empty() {
        return Err(Error::CsvParse {
            line: 1,
            message: "no data rows to plot".into(),
        });
    }
    let rendered = svg::render_benchmark_plot(&records, args.reference);
    std::fs::write(&args.out, rendered)?;
    Ok(())
}
