//! Benchmark results and their CSV interchange form.

use crate::backends::BackendKind;
use crate::systems::SystemId;
use crate::{Error, Result};

/// One measured configuration. Failed configurations (typically refused
/// allocations at large N) keep their identity and carry an error message
/// instead of timings.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub system: SystemId,
    pub backend: BackendKind,
    pub fused: bool,
    /// Actual problem size (lattice sizes round to full square grids).
    pub n: usize,
    pub steps: usize,
    /// Every timed repetition, in execution order; empty for failures.
    pub times: Vec<f64>,
    pub median_s: f64,
    pub min_s: f64,
    pub max_s: f64,
    pub bytes: u64,
    /// `bytes / median_s / 1e9`.
    pub gbps: f64,
    /// Throughput over the configured machine peak, when one was given.
    pub peak_frac: Option<f64>,
    /// Right-hand-side passes executed during one timed run.
    pub passes: u64,
    /// Order-sensitive digest of the final state, for cross-backend
    /// equality checks without shipping whole states around.
    pub state_fingerprint: u64,
    pub error: Option<String>,
}

impl BenchRecord {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    /// Column schema shared by writer and parser.
    pub const CSV_HEADER: &'static str =
        "system,backend,fused,N,steps,median_s,min_s,max_s,bytes,gbps,peak_frac,passes";

    /// One CSV line; floats carry 17 significant digits so they parse
    /// back to the same bits.
    pub fn to_csv_row(&self) -> String {
        let peak = match self.peak_frac {
            Some(f) => format!("{f:.16e}"),
            None => String::new(),
        };
        format!(
            "{},{},{},{},{},{:.16e},{:.16e},{:.16e},{},{:.16e},{},{}",
            self.system,
            self.backend,
            self.fused,
            self.n,
            self.steps,
            self.median_s,
            self.min_s,
            self.max_s,
            self.bytes,
            self.gbps,
            peak,
            self.passes,
        )
    }
}

/// Renders the header plus one row per successful record; failed records
/// are omitted (their absence from a sweep is the documented signal).
pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(BenchRecord::CSV_HEADER);
    out.push('\n');
    for record in records.iter().filter(|r| r.is_ok()) {
        out.push_str(&record.to_csv_row());
        out.push('\n');
    }
    out
}

/// Parses CSV produced by [`write_csv`]. Per-repetition times and
/// fingerprints do not travel through CSV; parsed records carry the empty
/// list and a zero digest.
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::CsvParse {
        line: 1,
        message: "empty input".into(),
    })?;
    if header.trim() != BenchRecord::CSV_HEADER {
        return Err(Error::CsvParse {
            line: 1,
            message: format!("unexpected header {header:?}"),
        });
    }

    let mut records = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(Error::CsvParse {
                line: line_no,
                message: format!("expected 12 fields, found {}", fields.len()),
            });
        }
        let parse_err = |what: &str, value: &str| Error::CsvParse {
            line: line_no,
            message: format!("bad {what} value {value:?}"),
        };
        let record = BenchRecord {
            system: fields[0]
                .parse()
                .map_err(|_| parse_err("system", fields[0]))?,
            backend: fields[1]
                .parse()
                .map_err(|_| parse_err("backend", fields[1]))?,
            fused: fields[2]
                .parse()
                .map_err(|_| parse_err("fused", fields[2]))?,
            n: fields[3].parse().map_err(|_| parse_err("N", fields[3]))?,
            steps: fields[4]
                .parse()
                .map_err(|_| parse_err("steps", fields[4]))?,
            times: Vec::new(),
            median_s: fields[5]
                .parse()
                .map_err(|_| parse_err("median_s", fields[5]))?,
            min_s: fields[6]
                .parse()
                .map_err(|_| parse_err("min_s", fields[6]))?,
            max_s: fields[7]
                .parse()
                .map_err(|_| parse_err("max_s", fields[7]))?,
            bytes: fields[8]
                .parse()
                .map_err(|_| parse_err("bytes", fields[8]))?,
            gbps: fields[9]
                .parse()
                .map_err(|_| parse_err("gbps", fields[9]))?,
            peak_frac: if fields[10].is_empty() {
                None
            } else {
                Some(
                    fields[10]
                        .parse()
                        .map_err(|_| parse_err("peak_frac", fields[10]))?,
                )
            },
            passes: fields[11]
                .parse()
                .map_err(|_| parse_err("passes", fields[11]))?,
            state_fingerprint: 0,
            error: None,
        };
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BenchRecord {
        BenchRecord {
            system: SystemId::Lorenz,
            backend: BackendKind::Fused,
            fused: true,
            n: 1000,
            steps: 100,
            times: vec![0.25, 0.5, 0.125],
            median_s: 0.25,
            min_s: 0.125,
            max_s: 0.5,
            bytes: 65_600_000,
            gbps: 65_600_000.0 / 0.25 / 1e9,
            peak_frac: None,
            passes: 400,
            state_fingerprint: 0xDEADBEEF,
            error: None,
        }
    }

    #[test]
    fn csv_round_trips_bitwise() {
        let mut with_peak = sample();
        with_peak.peak_frac = Some(0.123456789123456789);
        let csv = write_csv(&[sample(), with_peak.clone()]);
        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].median_s.to_bits(), sample().median_s.to_bits());
        assert_eq!(parsed[0].gbps.to_bits(), sample().gbps.to_bits());
        assert_eq!(parsed[0].peak_frac, None);
        assert_eq!(
            parsed[1].peak_frac.unwrap().to_bits(),
            with_peak.peak_frac.unwrap().to_bits()
        );
        assert_eq!(parsed[1].n, 1000);
        assert_eq!(parsed[1].passes, 400);
    }

    #[test]
    fn failed_records_are_omitted_from_csv() {
        let mut failed = sample();
        failed.error = Some("allocation refused".into());
        let csv = write_csv(&[sample(), failed]);
        assert_eq!(csv.lines().count(), 2, "header plus one successful row");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let good = write_csv(&[sample()]);
        let bad = format!("{good}lorenz,serial,false,10,1,oops,0.0,0.0,0,0.0,,4\n");
        match parse_csv(&bad).unwrap_err() {
            Error::CsvParse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("median_s"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            parse_csv("nonsense header\n").unwrap_err(),
            Error::CsvParse { line: 1, .. }
        ));
        assert!(matches!(
            parse_csv("").unwrap_err(),
            Error::CsvParse { line: 1, .. }
        ));
    }

    #[test]
    fn short_rows_are_rejected() {
        let bad = format!("{}\nlorenz,serial,false,10\n", BenchRecord::CSV_HEADER);
        assert!(matches!(
            parse_csv(&bad).unwrap_err(),
            Error::CsvParse { line: 2, .. }
        ));
    }
}
