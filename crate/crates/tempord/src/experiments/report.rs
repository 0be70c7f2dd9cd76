//! Cross-experiment bound report: collects the dimensionless products δt·Ē
//! at the measurement-failure thresholds and checks each lands in its
//! order-unity window.

use super::coincidence::CoincidenceSummary;
use super::order::ThresholdProduct;
use super::table::{fmt_f64, Table};
use super::ExperimentsError;
use serde::Serialize;

/// Order-unity windows. The coincidence window is wider because the
/// crossover ka* may legitimately sit anywhere in [1, 30].
pub const ORDER_WINDOW: (f64, f64) = (0.1, 10.0);
pub const COINCIDENCE_WINDOW: (f64, f64) = (0.5, 15.0);

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub experiment: String,
    pub label: String,
    pub product: f64,
    pub window_lo: f64,
    pub window_hi: f64,
    pub in_window: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    pub all_in_window: bool,
}

/// Aggregate the two required sweeps (plus any microscope annex) into the
/// bound report.  Missing required input is an error, not a silent gap.
pub fn bound_report(
    order: Option<&[ThresholdProduct]>,
    coincidence: Option<&CoincidenceSummary>,
) -> Result<BoundReport, ExperimentsError> {
    let order = order.ok_or_else(|| {
        ExperimentsError::ReportIncomplete("order-of-arrival sweep missing".into())
    })?;
    let coincidence = coincidence.ok_or_else(|| {
        ExperimentsError::ReportIncomplete("coincidence sweep missing".into())
    })?;
    if order.is_empty() {
        return Err(ExperimentsError::ReportIncomplete(
            "order sweep produced no threshold products".into(),
        ));
    }
    let mut entries = Vec::new();
    for p in order {
        entries.push(BoundEntry {
            experiment: "order".into(),
            label: format!("p_fail={}", fmt_f64(p.threshold)),
            product: p.product,
            window_lo: ORDER_WINDOW.0,
            window_hi: ORDER_WINDOW.1,
            in_window: (ORDER_WINDOW.0..=ORDER_WINDOW.1).contains(&p.product),
        });
    }
    let ka_star = coincidence.crossover_ka.ok_or_else(|| {
        ExperimentsError::ReportIncomplete("coincidence sweep has no crossover".into())
    })?;
    let product = 0.5 * ka_star;
    entries.push(BoundEntry {
        experiment: "coincidence".into(),
        label: format!("ratio>{}", 0.9),
        product,
        window_lo: COINCIDENCE_WINDOW.0,
        window_hi: COINCIDENCE_WINDOW.1,
        in_window: (COINCIDENCE_WINDOW.0..=COINCIDENCE_WINDOW.1).contains(&product),
    });
    let all_in_window = entries.iter().all(|e| e.in_window);
    Ok(BoundReport {
        entries,
        all_in_window,
    })
}

pub fn report_table(report: &BoundReport) -> Table {
    let mut t = Table::new(
        "tempord.bound_report",
        &[
            "experiment",
            "label",
            "dt_ebar_product",
            "window_lo",
            "window_hi",
            "in_window",
        ],
    );
    for e in &report.entries {
        t.push_row(vec![
            e.experiment.clone(),
            e.label.clone(),
            fmt_f64(e.product),
            fmt_f64(e.window_lo),
            fmt_f64(e.window_hi),
            if e.in_window { "1" } else { "0" }.to_string(),
        ]);
    }
    t
}
