//! Cross-backend timing ratios against a chosen reference backend.

use crate::backends::BackendKind;
use crate::bench::record::BenchRecord;
use crate::systems::SystemId;

/// One entry of the relative-performance table: how a backend's median
/// time compares to the reference backend at the same (system, N).
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeCell {
    pub system: SystemId,
    pub n: usize,
    pub backend: BackendKind,
    /// `median(backend) / median(reference)`; greater than one means
    /// slower than the reference. `None` when the ratio is undefined.
    pub ratio: Option<f64>,
    /// Why the ratio is missing, when it is.
    pub note: Option<String>,
}

/// Computes time ratios versus `reference` for every successful record.
///
/// Cells keep their input order. The reference backend's own cells are
/// pinned to exactly 1.0. A cell whose (system, N) has no usable
/// reference measurement — missing, failed, or with a zero median —
/// carries a diagnostic note instead of a ratio.
pub fn relative_performance(records: &[BenchRecord], reference: BackendKind) -> Vec<RelativeCell> {
    let reference_median = |system: SystemId, n: usize| -> Option<f64> {
        records
            .iter()
            .find(|r| r.system == system && r.n == n && r.backend == reference && r.is_ok())
            .map(|r| r.median_s)
            .filter(|m| *m > 0.0)
    };

    records
        .iter()
        .filter(|r| r.is_ok())
        .map(|r| {
            let (ratio, note) = if r.backend == reference {
                (Some(1.0), None)
            } else {
                match reference_median(r.system, r.n) {
                    Some(m) => (Some(r.median_s / m), None),
                    None => (
                        None,
                        Some(format!(
                            "no usable {reference} measurement for {} N={}",
                            r.system, r.n
                        )),
                    ),
                }
            };
            RelativeCell {
                system: r.system,
                n: r.n,
                backend: r.backend,
                ratio,
                note,
            }
        })
        .collect()
}
