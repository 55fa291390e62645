//! Aligned text rendering of benchmark results: systems as column groups,
//! backends (crossed with sizes) as rows.

use crate::backends::BackendKind;
use crate::bench::BenchRecord;
use crate::systems::SystemId;

const SEP: &str = "  ";

/// Renders successful records as a monospace table. Each system
/// contributes a column group (median time, throughput, and the peak
/// fraction when any record carries one); each row is one backend at one
/// size. Cells without a measurement show a dash.
pub(super) fn render_table(records: &[BenchRecord]) -> String {
    let ok: Vec<&BenchRecord> = records.iter().filter(|r| r.is_ok()).collect();
    if ok.is_empty() {
        return String::from("(no successful measurements)\n");
    }

    let systems: Vec<SystemId> = SystemId::ALL
        .into_iter()
        .filter(|s| ok.iter().any(|r| r.system == *s))
        .collect();
    let backends: Vec<BackendKind> = BackendKind::ALL
        .into_iter()
        .filter(|b| ok.iter().any(|r| r.backend == *b))
        .collect();
    let mut sizes: Vec<usize> = ok.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let with_peak = ok.iter().any(|r| r.peak_frac.is_some());
    let per_group = if with_peak { 3 } else { 2 };

    let mut labels = vec!["backend".to_string(), "N".to_string()];
    for _ in &systems {
        labels.push("time_s".into());
        labels.push("GB/s".into());
        if with_peak {
            labels.push("%peak".into());
        }
    }

    let mut data_rows: Vec<Vec<String>> = Vec::new();
    for &backend in &backends {
        for &n in &sizes {
            let mut row = vec![backend.to_string(), n.to_string()];
            let mut any = false;
            for &system in &systems {
                match ok
                    .iter()
                    .find(|r| r.system == system && r.backend == backend && r.n == n)
                {
                    Some(r) => {
                        any = true;
                        row.push(format!("{:.3e}", r.median_s));
                        row.push(format!("{:.2}", r.gbps));
                        if with_peak {
                            row.push(
                                r.peak_frac
                                    .map_or_else(|| "-".into(), |f| format!("{:.1}", 100.0 * f)),
                            );
                        }
                    }
                    None => row.extend(std::iter::repeat_n("-".to_string(), per_group)),
                }
            }
            if any {
                data_rows.push(row);
            }
        }
    }

    let mut widths: Vec<usize> = labels.iter().map(String::len).collect();
    for row in &data_rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    // Widen each group's last column until the system name fits above it.
    for (gi, system) in systems.iter().enumerate() {
        let start = 2 + gi * per_group;
        let span = group_span(&widths, start, per_group);
        let name_len = system.name().len();
        if name_len > span {
            widths[start + per_group - 1] += name_len - span;
        }
    }

    let mut out = String::new();
    let mut header = " ".repeat(widths[0] + SEP.len() + widths[1]);
    for (gi, system) in systems.iter().enumerate() {
        header.push_str(SEP);
        let start = 2 + gi * per_group;
        let span = group_span(&widths, start, per_group);
        let pad = span - system.name().len();
        header.push_str(&" ".repeat(pad / 2));
        header.push_str(system.name());
        header.push_str(&" ".repeat(pad - pad / 2));
    }
    out.push_str(header.trim_end());
    out.push('\n');

    push_row(&mut out, &labels, &widths);
    for row in &data_rows {
        push_row(&mut out, row, &widths);
    }
    out
}

fn group_span(widths: &[usize], start: usize, per_group: usize) -> usize {
    widths[start..start + per_group].iter().sum::<usize>() + SEP.len() * (per_group - 1)
}

fn push_row(out: &mut String, cells: &[String], widths: &[usize]) {
    use std::fmt::Write;
    for (i, cell) in cells.iter().enumerate() {
        if i > 0 {
            out.push_str(SEP);
        }
        if i == 0 {
            let _ = write!(out, "{cell:<width$}", width = widths[i]);
        } else {
            let _ = write!(out, "{cell:>width$}", width = widths[i]);
        }
    }
    out.push('\n');
}
