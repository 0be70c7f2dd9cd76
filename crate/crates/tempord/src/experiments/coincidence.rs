//! Coincidence-accuracy sweep: the δ₁/δ₀ curve, shadow sharpness, regime
//! residuals, and the crossover ka* where the ratio first exceeds 0.9.
//!
//! With δt_c = aM/k and Ē = k²/2M the dimensionless product is
//! δt_c·Ē = ka/2, so the crossover directly gives the coincidence bound.

use super::table::{fmt_f64, Table};
use super::ExperimentsError;
use crate::disk::{
    differential_cross_section, large_ka_shift, phase_shift_sweep, shadow_sharpness,
    small_ka_shift, PartialWaveSum,
};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceConfig {
    pub ka_min: f64,
    pub ka_max: f64,
    pub points: usize,
    /// Wavenumber fixing the length scale (a = ka/k).
    pub k: f64,
    /// Ratio level defining the crossover.
    pub crossover_level: f64,
}

impl Default for CoincidenceConfig {
    fn default() -> Self {
        Self {
            ka_min: 1e-3,
            ka_max: 50.0,
            points: 60,
            k: 1.0,
            crossover_level: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, serde::Deserialize)]
pub struct CoincidenceRow {
    pub ka: f64,
    pub ratio: f64,
    pub sharpness: f64,
    /// |δ₀ − small-ka form| / form, when ka < 0.1.
    pub small_residual: Option<f64>,
    /// mod-π distance of δ_0 from the branch-consistent large-ka form
    /// (the textbook expression shifted by π/2), when in regime.
    pub large_residual: Option<f64>,
    /// max/min of σ(θ) < 1.05.
    pub isotropic: bool,
    /// δt_c·Ē = ka/2.
    pub dtc_ebar: f64,
}

#[derive(Debug, Clone, Serialize, serde::Deserialize)]
pub struct CoincidenceSummary {
    pub rows: Vec<CoincidenceRow>,
    /// Interpolated ka where the ratio first crosses the configured level.
    pub crossover_ka: Option<f64>,
    pub crossover_product: Option<f64>,
}

pub fn coincidence_sweep(
    cfg: &CoincidenceConfig,
) -> Result<(CoincidenceSummary, Table), ExperimentsError> {
    if !(cfg.ka_min > 0.0 && cfg.ka_max > cfg.ka_min && cfg.points >= 2) {
        return Err(ExperimentsError::BadSpec(format!(
            "bad ka range [{}, {}] / points {}",
            cfg.ka_min, cfg.ka_max, cfg.points
        )));
    }
    if !(cfg.k > 0.0) {
        return Err(ExperimentsError::BadSpec("k must be positive".into()));
    }
    let ratio_lg = (cfg.ka_max / cfg.ka_min).ln();
    let kas: Vec<f64> = (0..cfg.points)
        .map(|i| cfg.ka_min * (ratio_lg * i as f64 / (cfg.points - 1) as f64).exp())
        .collect();
    let d0 = phase_shift_sweep(0, &kas);
    let d1 = phase_shift_sweep(1, &kas);
    let mut rows = Vec::with_capacity(kas.len());
    for ((&ka, s0), s1) in kas.iter().zip(&d0).zip(&d1) {
        let ratio = s1.delta / s0.delta;
        let pw = PartialWaveSum::new(cfg.k, ka / cfg.k)?;
        let sharp = shadow_sharpness(&pw);
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..72 {
            let v = differential_cross_section(i as f64 * PI / 36.0, &pw);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let small_residual = small_ka_shift(0, ka)
            .ok()
            .map(|f| ((s0.delta - f) / f).abs());
        let large_residual = large_ka_shift(0, ka).ok().map(|f| {
            let gap = (s0.delta - (f + PI / 2.0)).rem_euclid(PI);
            gap.min(PI - gap)
        });
        rows.push(CoincidenceRow {
            ka,
            ratio,
            sharpness: sharp,
            small_residual,
            large_residual,
            isotropic: hi / lo < 1.05,
            dtc_ebar: 0.5 * ka,
        });
    }
    // first upward crossing, linearly interpolated in (log ka, ratio)
    let mut crossover_ka = None;
    for w in rows.windows(2) {
        if w[0].ratio < cfg.crossover_level && w[1].ratio >= cfg.crossover_level {
            let f = (cfg.crossover_level - w[0].ratio) / (w[1].ratio - w[0].ratio);
            let lka = w[0].ka.ln() + f * (w[1].ka.ln() - w[0].ka.ln());
            crossover_ka = Some(lka.exp());
            break;
        }
    }
    let summary = CoincidenceSummary {
        crossover_product: crossover_ka.map(|ka| 0.5 * ka),
        crossover_ka,
        rows: rows.clone(),
    };
    let mut t = Table::new(
        "tempord.coincidence_sweep",
        &[
            "ka",
            "delta1_over_delta0",
            "shadow_sharpness",
            "small_ka_residual",
            "large_ka_residual_mod_pi",
            "isotropic",
            "dtc_ebar",
        ],
    );
    for r in &rows {
        t.push_row(vec![
            fmt_f64(r.ka),
            fmt_f64(r.ratio),
            fmt_f64(r.sharpness),
            r.small_residual.map(fmt_f64).unwrap_or_default(),
            r.large_residual.map(fmt_f64).unwrap_or_default(),
            if r.isotropic { "1" } else { "0" }.to_string(),
            fmt_f64(r.dtc_ebar),
        ]);
    }
    Ok((summary, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_reproduces_ratio_shape_and_crossover() {
        let cfg = CoincidenceConfig::default();
        let (s, table) = coincidence_sweep(&cfg).unwrap();
        assert!(s.rows.first().unwrap().ratio < 0.1);
        // crossover in [1, 30], product = ka*/2
        let ka_star = s.crossover_ka.expect("ratio must cross 0.9");
        assert!((1.0..30.0).contains(&ka_star), "ka* = {ka_star}");
        let prod = s.crossover_product.unwrap();
        assert!((prod - ka_star / 2.0).abs() < 1e-12);
        assert!(prod >= 0.5, "crossover product {prod}");
        // small-ka rows are isotropic
        for r in s.rows.iter().filter(|r| r.ka < 0.01) {
            assert!(r.isotropic, "ka={} not isotropic", r.ka);
        }
        // residual columns populated in their regimes
        assert!(s.rows.iter().any(|r| r.small_residual.is_some()));
        assert!(s.rows.iter().any(|r| r.large_residual.is_some()));
        for r in &s.rows {
            if let Some(res) = r.small_residual {
                assert!(res < 0.05, "small-ka residual {res} at ka={}", r.ka);
            }
            if let Some(res) = r.large_residual {
                assert!(res < 0.05, "large-ka residual {res} at ka={}", r.ka);
            }
        }
        assert!(table.to_dsv().starts_with("# schema: tempord.coincidence_sweep v1"));
    }

    #[test]
    fn identity_dtc_ebar_is_half_ka() {
        let cfg = CoincidenceConfig {
            points: 5,
            ka_min: 0.5,
            ka_max: 2.0,
            ..Default::default()
        };
        let (s, _) = coincidence_sweep(&cfg).unwrap();
        for r in &s.rows {
            assert_eq!(r.dtc_ebar, 0.5 * r.ka);
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut cfg = CoincidenceConfig::default();
        cfg.ka_min = 2.0;
        cfg.ka_max = 1.0;
        assert!(coincidence_sweep(&cfg).is_err());
    }
}
