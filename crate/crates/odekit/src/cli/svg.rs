//! Hand-rolled SVG rendering of benchmark sweeps: per system, a log-log
//! median-time-versus-size panel and a relative-performance panel against
//! a reference backend.

use std::fmt::Write as _;

use crate::backends::BackendKind;
use crate::bench::{relative_performance, BenchRecord, RelativeCell};
use crate::systems::SystemId;

const PANEL_W: f64 = 460.0;
const PANEL_H: f64 = 320.0;
const MARGIN_L: f64 = 78.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 46.0;
const GAP_X: f64 = 30.0;
const GAP_Y: f64 = 24.0;
const PAD: f64 = 10.0;

fn color(backend: BackendKind) -> &'static str {
    match backend {
        BackendKind::Serial => "#1f77b4",
        BackendKind::Parallel => "#d62728",
        BackendKind::Fused => "#2ca02c",
    }
}

/// Decade-aligned logarithmic axis: the domain spans whole powers of ten
/// covering the data, with a tick at every decade.
struct LogAxis {
    lo: i32,
    hi: i32,
}

impl LogAxis {
    fn covering(values: impl Iterator<Item = f64>) -> Option<Self> {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values.filter(|v| *v > 0.0 && v.is_finite()) {
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() {
            return None;
        }
        let lo = min.log10().floor() as i32;
        let mut hi = max.log10().ceil() as i32;
        if hi <= lo {
            hi = lo + 1;
        }
        Some(Self { lo, hi })
    }

    /// Position of `v` in [0, 1] across the domain.
    fn frac(&self, v: f64) -> f64 {
        (v.log10() - self.lo as f64) / (self.hi - self.lo) as f64
    }
}

struct Panel {
    ox: f64,
    oy: f64,
}

impl Panel {
    fn x_px(&self, frac: f64) -> f64 {
        self.ox + MARGIN_L + frac * (PANEL_W - MARGIN_L - MARGIN_R)
    }

    fn y_px(&self, frac: f64) -> f64 {
        self.oy + PANEL_H - MARGIN_B - frac * (PANEL_H - MARGIN_T - MARGIN_B)
    }
}

/// Renders the full figure. Only successful records with positive medians
/// contribute; systems without any such record contribute no panels.
pub fn render_benchmark_plot(records: &[BenchRecord], reference: BackendKind) -> String {
    let ok: Vec<&BenchRecord> = records
        .iter()
        .filter(|r| r.is_ok() && r.median_s > 0.0 && r.n > 0)
        .collect();
    let systems: Vec<SystemId> = SystemId::ALL
        .into_iter()
        .filter(|s| ok.iter().any(|r| r.system == *s))
        .collect();
    let cells = relative_performance(records, reference);

    let rows = systems.len().max(1);
    let width = 2.0 * PAD + 2.0 * PANEL_W + GAP_X;
    let height = 2.0 * PAD + rows as f64 * PANEL_H + (rows - 1) as f64 * GAP_Y;

    let mut svg = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"monospace\" font-size=\"12\">"
    );
    let _ = writeln!(svg, "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>");

    if systems.is_empty() {
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">no data</text>",
            width / 2.0,
            height / 2.0
        );
    }

    for (row, &system) in systems.iter().enumerate() {
        let oy = PAD + row as f64 * (PANEL_H + GAP_Y);
        absolute_panel(&mut svg, Panel { ox: PAD, oy }, system, &ok);
        relative_panel(
            &mut svg,
            Panel {
                ox: PAD + PANEL_W + GAP_X,
                oy,
            },
            system,
            &cells,
            reference,
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn absolute_series(ok: &[&BenchRecord], system: SystemId, backend: BackendKind) -> Vec<(f64, f64)> {
    let mut points: Vec<(f64, f64)> = ok
        .iter()
        .filter(|r| r.system == system && r.backend == backend)
        .map(|r| (r.n as f64, r.median_s))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    points
}

fn relative_series(
    cells: &[RelativeCell],
    system: SystemId,
    backend: BackendKind,
) -> Vec<(f64, f64)> {
    let mut points: Vec<(f64, f64)> = cells
        .iter()
        .filter(|c| c.system == system && c.backend == backend)
        .filter_map(|c| c.ratio.map(|ratio| (c.n as f64, ratio)))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    points
}

fn absolute_panel(svg: &mut String, panel: Panel, system: SystemId, ok: &[&BenchRecord]) {
    let in_system: Vec<&&BenchRecord> = ok.iter().filter(|r| r.system == system).collect();
    let x_axis = LogAxis::covering(in_system.iter().map(|r| r.n as f64));
    let y_axis = LogAxis::covering(in_system.iter().map(|r| r.median_s));
    let (Some(x_axis), Some(y_axis)) = (x_axis, y_axis) else {
        return;
    };

    frame(svg, &panel, &format!("{system}: median time vs N"));
    log_x_ticks(svg, &panel, &x_axis);
    log_y_ticks(svg, &panel, &y_axis, "time [s]");

    let mut legend_row = 0;
    for backend in BackendKind::ALL {
        let points = absolute_series(ok, system, backend);
        if points.is_empty() {
            continue;
        }
        draw_series(svg, &panel, &points, &x_axis, |t| y_axis.frac(t), color(backend));
        let lx = panel.x_px(0.0) + 10.0;
        let ly = panel.oy + MARGIN_T + 14.0 * legend_row as f64 + 10.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{lx:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" \
             stroke=\"{}\" stroke-width=\"2\"/>",
            lx + 18.0,
            color(backend)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\">{backend}</text>",
            lx + 24.0,
            ly + 4.0
        );
        legend_row += 1;
    }
}

fn relative_panel(
    svg: &mut String,
    panel: Panel,
    system: SystemId,
    cells: &[RelativeCell],
    reference: BackendKind,
) {
    let in_system: Vec<&RelativeCell> = cells.iter().filter(|c| c.system == system).collect();
    let x_axis = LogAxis::covering(in_system.iter().map(|c| c.n as f64));
    let Some(x_axis) = x_axis else {
        return;
    };
    let max_ratio = in_system
        .iter()
        .filter_map(|c| c.ratio)
        .fold(1.0f64, f64::max);
    let y_hi = max_ratio * 1.15;
    let y_frac = |ratio: f64| ratio / y_hi;

    frame(svg, &panel, &format!("{system}: time relative to {reference}"));
    log_x_ticks(svg, &panel, &x_axis);

    // Linear ratio ticks plus a dashed guide at the reference level 1.
    for k in 0..=4 {
        let v = y_hi * k as f64 / 4.0;
        let y = panel.y_px(y_frac(v));
        let _ = writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#eeeeee\"/>",
            panel.x_px(0.0),
            panel.x_px(1.0)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{v:.2}</text>",
            panel.x_px(0.0) - 6.0,
            y + 4.0
        );
    }
    let y_one = panel.y_px(y_frac(1.0));
    let _ = writeln!(
        svg,
        "<line x1=\"{:.1}\" y1=\"{y_one:.1}\" x2=\"{:.1}\" y2=\"{y_one:.1}\" \
         stroke=\"#888888\" stroke-dasharray=\"4 3\"/>",
        panel.x_px(0.0),
        panel.x_px(1.0)
    );
    axis_caption_y(svg, &panel, "time / reference");

    for backend in BackendKind::ALL {
        let points = relative_series(cells, system, backend);
        if points.is_empty() {
            continue;
        }
        draw_series(svg, &panel, &points, &x_axis, y_frac, color(backend));
    }
}

fn frame(svg: &mut String, panel: &Panel, title: &str) {
    let _ = writeln!(
        svg,
        "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{PANEL_W:.0}\" height=\"{PANEL_H:.0}\" \
         fill=\"none\" stroke=\"#cccccc\"/>",
        panel.ox, panel.oy
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"14\">{title}</text>",
        panel.ox + PANEL_W / 2.0,
        panel.oy + 18.0
    );
}

fn log_x_ticks(svg: &mut String, panel: &Panel, axis: &LogAxis) {
    for k in axis.lo..=axis.hi {
        let x = panel.x_px(axis.frac(10f64.powi(k)));
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#eeeeee\"/>",
            panel.y_px(1.0),
            panel.y_px(0.0)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">1e{k}</text>",
            panel.y_px(0.0) + 16.0
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">N</text>",
        panel.x_px(0.5),
        panel.oy + PANEL_H - 8.0
    );
}

fn log_y_ticks(svg: &mut String, panel: &Panel, axis: &LogAxis, caption: &str) {
    for k in axis.lo..=axis.hi {
        let y = panel.y_px(axis.frac(10f64.powi(k)));
        let _ = writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#eeeeee\"/>",
            panel.x_px(0.0),
            panel.x_px(1.0)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">1e{k}</text>",
            panel.x_px(0.0) - 6.0,
            y + 4.0
        );
    }
    axis_caption_y(svg, panel, caption);
}

fn axis_caption_y(svg: &mut String, panel: &Panel, caption: &str) {
    let x = panel.ox + 16.0;
    let y = panel.oy + PANEL_H / 2.0;
    let _ = writeln!(
        svg,
        "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 {x:.1} {y:.1})\">{caption}</text>"
    );
}

fn draw_series(
    svg: &mut String,
    panel: &Panel,
    points: &[(f64, f64)],
    x_axis: &LogAxis,
    y_frac: impl Fn(f64) -> f64,
    stroke: &str,
) {
    let px: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, v)| (panel.x_px(x_axis.frac(n)), panel.y_px(y_frac(v))))
        .collect();
    if px.len() >= 2 {
        let coords: Vec<String> = px.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
        let _ = writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"2\"/>",
            coords.join(" ")
        );
    }
    for (x, y) in px {
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"{stroke}\"/>"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(system: SystemId, backend: BackendKind, n: usize, median_s: f64) -> BenchRecord {
        BenchRecord {
            system,
            backend,
            fused: matches!(backend, BackendKind::Fused),
            n,
            steps: 10,
            times: vec![median_s],
            median_s,
            min_s: median_s,
            max_s: median_s,
            bytes: 4000,
            gbps: 4000.0 / median_s / 1e9,
            peak_frac: None,
            passes: 30,
            state_fingerprint: 7,
            error: None,
        }
    }

    fn assert_well_formed_xml(svg: &str) {
        let mut stack: Vec<String> = Vec::new();
        let mut rest = svg;
        while let Some(start) = rest.find('<') {
            let after = &rest[start + 1..];
            let end = after.find('>').expect("unclosed angle bracket");
            let tag = &after[..end];
            rest = &after[end + 1..];
            if tag.starts_with('?') || tag.starts_with('!') {
                continue;
            }
            if let Some(name) = tag.strip_prefix('/') {
                let open = stack.pop().unwrap_or_else(|| panic!("stray closer {name}"));
                assert_eq!(open, name.trim(), "mismatched closing tag");
            } else if !tag.ends_with('/') {
                stack.push(tag.split_whitespace().next().unwrap().to_string());
            }
        }
        assert!(stack.is_empty(), "unclosed tags: {stack:?}");
    }

    #[test]
    fn full_sweep_renders_both_panels_with_decade_ticks() {
        let records = vec![
            record(SystemId::Lorenz, BackendKind::Serial, 100, 1e-3),
            record(SystemId::Lorenz, BackendKind::Serial, 1000, 1e-2),
            record(SystemId::Lorenz, BackendKind::Parallel, 100, 5e-4),
            record(SystemId::Lorenz, BackendKind::Parallel, 1000, 4e-3),
        ];
        let svg = render_benchmark_plot(&records, BackendKind::Serial);
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<svg").count(), 1);
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(">1e2<") && svg.contains(">1e3<"), "decade tick labels");
        assert!(svg.contains(">1e-3<"), "time decade label");
        assert!(svg.contains(color(BackendKind::Serial)));
        assert!(svg.contains(color(BackendKind::Parallel)));
        // two absolute series + serial reference line + parallel relative
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert!(svg.contains("stroke-dasharray"), "reference guide line");
        assert!(svg.contains("relative to serial"));
    }

    #[test]
    fn single_record_renders_one_point() {
        let records = vec![record(SystemId::Phase, BackendKind::Fused, 1024, 2e-5)];
        let svg = render_benchmark_plot(&records, BackendKind::Serial);
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<polyline").count(), 0, "one point draws no line");
        assert!(svg.matches("<circle").count() >= 1);
    }

    #[test]
    fn reference_series_sits_on_the_unit_line() {
        let records = vec![
            record(SystemId::Lorenz, BackendKind::Serial, 100, 1e-3),
            record(SystemId::Lorenz, BackendKind::Serial, 1000, 1e-2),
        ];
        let cells = relative_performance(&records, BackendKind::Serial);
        let points = relative_series(&cells, SystemId::Lorenz, BackendKind::Serial);
        assert_eq!(points.len(), 2);
        assert!(points.iter().all(|&(_, r)| r == 1.0));
    }

    #[test]
    fn empty_data_still_produces_valid_svg() {
        let svg = render_benchmark_plot(&[], BackendKind::Serial);
        assert_well_formed_xml(&svg);
        assert!(svg.contains("no data"));
    }
}
