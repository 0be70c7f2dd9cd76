//! Orchestrated parameter sweeps: order-of-arrival failure scaling, the
//! coincidence crossover, detector-placement distinguishability, and the
//! aggregated bound report.

pub mod coincidence;
pub mod microscope;
pub mod order;
pub mod report;
pub mod table;

pub use coincidence::{coincidence_sweep, CoincidenceConfig, CoincidenceRow, CoincidenceSummary};
pub use microscope::{microscope_distinguishability, microscope_sweep, MicroscopeConfig};
pub use order::{
    analytic_p_fail, order_failure_sweep, order_point, order_point_momenta, threshold_products,
    OrderRow, OrderSweepConfig, ThresholdProduct,
};
pub use report::{bound_report, report_table, BoundReport};
pub use table::Table;

use crate::dynamics::DynamicsError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentsError {
    #[error("bad sweep spec: {0}")]
    BadSpec(String),
    #[error("report incomplete: {0}")]
    ReportIncomplete(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Disk(#[from] crate::disk::DiskError),
}

/// Run manifest accompanying every emitted table; the timestamp is the only
/// non-deterministic field and lives here, never in the tables.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: String,
    pub config: serde_json::Value,
    pub wall_time_s: f64,
    pub unix_timestamp: u64,
}

impl RunManifest {
    pub fn new<C: Serialize>(schema: &str, config: &C, wall_time_s: f64) -> Self {
        Self {
            tool: "tempord",
            version: env!("CARGO_PKG_VERSION"),
            schema: schema.to_string(),
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            wall_time_s,
            unix_timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_embeds_config() {
        let cfg = CoincidenceConfig::default();
        let m = RunManifest::new("tempord.coincidence_sweep", &cfg, 1.5);
        let json = m.to_json();
        assert!(json.contains("\"tool\": \"tempord\""));
        assert!(json.contains("\"ka_min\""));
        assert!(json.contains("unix_timestamp"));
    }
}
