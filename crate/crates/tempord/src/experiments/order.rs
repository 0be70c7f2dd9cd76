//! Order-of-arrival failure sweep: grid runs of the edge detector across a
//! range of wavenumbers, the p_fail·k·w flatness diagnostic, and the
//! threshold product δt·Ē.
//!
//! Two independent routes exist to the failure probability: the analytic
//! σ_f/w estimate from the half-plane amplitude, and the grid measurement
//! p₁+p₂.  The sweep reports both.

use super::table::Table;
use super::ExperimentsError;
use crate::dynamics::{
    classify_outcome, evolve, gaussian_packet, GridState, Hamiltonian, PotentialMask,
};
use crate::halfplane::closed_form_sigma_f;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

/// Sweep configuration; spacing and timing are derived from it.
#[derive(Debug, Clone, Serialize)]
pub struct OrderSweepConfig {
    /// Swept total wavenumbers, strictly increasing.
    pub k_values: Vec<f64>,
    /// Grid points per side.
    pub grid_n: usize,
    /// Packet width σ; also sets the momentum spread 1/(2σ).
    pub sigma: f64,
    /// Measurement time as a multiple of the crossing time d√2/k.
    pub time_factor: f64,
    pub mass: f64,
    /// p_fail levels at which the threshold product is evaluated.
    pub fail_thresholds: Vec<f64>,
}

impl Default for OrderSweepConfig {
    fn default() -> Self {
        Self {
            k_values: vec![1.0, 2.0, 4.0],
            grid_n: 2048,
            sigma: 10.0,
            time_factor: 1.7,
            mass: 1.0,
            fail_thresholds: vec![0.05, 0.1, 0.2],
        }
    }
}

impl OrderSweepConfig {
    pub fn validate(&self) -> Result<(), ExperimentsError> {
        if self.k_values.is_empty() {
            return Err(ExperimentsError::BadSpec("empty k list".into()));
        }
        if !self.k_values.windows(2).all(|w| w[1] > w[0]) {
            return Err(ExperimentsError::BadSpec(
                "k values must be strictly increasing".into(),
            ));
        }
        if self.k_values[0] <= 0.0 || self.sigma <= 0.0 || self.mass <= 0.0 {
            return Err(ExperimentsError::BadSpec(
                "k, sigma, mass must be positive".into(),
            ));
        }
        // momentum spread constraint dk/k ≤ 0.1
        let kmin = self.k_values[0];
        if 1.0 / (2.0 * self.sigma * kmin) > 0.1 + 1e-12 {
            return Err(ExperimentsError::BadSpec(format!(
                "sigma {} too narrow for k_min {}: momentum spread exceeds 0.1k",
                self.sigma, kmin
            )));
        }
        Ok(())
    }

    /// Packet start coordinate per axis.
    pub fn start(&self) -> f64 {
        5.5 * self.sigma
    }

    /// Grid spacing: 12 nodes per total-wavenumber wavelength at k_max.
    pub fn spacing(&self) -> f64 {
        let kmax = *self.k_values.last().expect("validated nonempty");
        2.0 * std::f64::consts::PI / kmax / 12.0
    }

    /// Free-dispersion transverse width at the arrival time for wavenumber k.
    pub fn width_at_arrival(&self, k: f64) -> f64 {
        let t_star = self.start() * SQRT_2 / k * self.mass;
        self.sigma * (1.0 + (t_star / (2.0 * self.mass * self.sigma * self.sigma)).powi(2)).sqrt()
    }

    /// Mean kinetic energy of the packet at wavenumber k.
    pub fn energy(&self, k: f64) -> f64 {
        let p_axis = k * FRAC_1_SQRT_2;
        (2.0 * (p_axis * p_axis + 1.0 / (4.0 * self.sigma * self.sigma))) / (2.0 * self.mass)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderRow {
    pub k: f64,
    pub e_bar: f64,
    pub w_arrival: f64,
    pub delta_t: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p_fail: f64,
    /// Flatness diagnostic p_fail·k·w.
    pub product: f64,
    /// Analytic route: σ_f-based estimate of the failure probability.
    pub p_fail_analytic: f64,
    pub norm_drift: f64,
    pub flagged: bool,
}

/// Analytic estimate: flux within the failure cross section of the edge,
/// σ_f/(√(2π)·w), with the closed-form σ_f at θ₀ = π/4.
pub fn analytic_p_fail(k: f64, w: f64) -> f64 {
    closed_form_sigma_f(k, std::f64::consts::FRAC_PI_4) / ((2.0 * std::f64::consts::PI).sqrt() * w)
}

/// Run one edge-detector point with the symmetric diagonal packet.
pub fn order_point(cfg: &OrderSweepConfig, k: f64) -> Result<OrderRow, ExperimentsError> {
    let p_axis = -k * FRAC_1_SQRT_2;
    order_point_momenta(cfg, k, (p_axis, p_axis))
}

/// Run one edge-detector point with explicit per-axis momenta (both < 0).
pub fn order_point_momenta(
    cfg: &OrderSweepConfig,
    k_label: f64,
    momenta: (f64, f64),
) -> Result<OrderRow, ExperimentsError> {
    let h = cfg.spacing();
    let d = cfg.start();
    let mut grid = GridState::centered(cfg.grid_n, cfg.grid_n, h)
        .map_err(|e| ExperimentsError::BadSpec(e.to_string()))?;
    // time for the slower axis coordinate to cross the origin
    let t_slow = d * cfg.mass / momenta.0.abs().min(momenta.1.abs());
    let t_meas = cfg.time_factor * t_slow;
    // coverage: start plus dispersion tails on the positive side, fastest
    // travel plus tails on the negative side
    let span_pos = grid.x(grid.nx - 1);
    let sigma_end = cfg.sigma
        * (1.0 + (t_meas / (2.0 * cfg.mass * cfg.sigma * cfg.sigma)).powi(2)).sqrt();
    let reach = momenta.0.abs().max(momenta.1.abs()) / cfg.mass * t_meas - d;
    if d + 5.0 * sigma_end > span_pos || reach + 5.0 * sigma_end > span_pos {
        return Err(ExperimentsError::BadSpec(format!(
            "grid span {span_pos:.1} too small for start {d:.1}, reach {reach:.1}, tails {:.1}",
            5.0 * sigma_end
        )));
    }
    gaussian_packet(&mut grid, (d, d), (cfg.sigma, cfg.sigma), momenta);
    let mask = PotentialMask::edge(&grid);
    mask.apply(&mut grid);
    grid.normalize();
    let ham = Hamiltonian::isotropic(cfg.mass);
    let dt = 0.48 * h * h * cfg.mass;
    let steps = (t_meas / dt).ceil() as u64;
    let report = evolve(&mut grid, &ham, &mask, dt, steps)?;
    let q = grid.quadrant_probabilities();
    let out = classify_outcome(&q);
    let boundary = grid.boundary_mass(3);
    let w = cfg.width_at_arrival(k_label);
    let flagged = report.cfl_accuracy_warning || report.norm_drift() > 1e-6 || boundary > 1e-6;
    Ok(OrderRow {
        k: k_label,
        e_bar: cfg.energy(k_label),
        w_arrival: w,
        delta_t: w * cfg.mass / k_label,
        p1: q.p1,
        p2: q.p2,
        p3: q.p3,
        p4: q.p4,
        p_fail: out.p_fail,
        product: out.p_fail * k_label * w,
        p_fail_analytic: analytic_p_fail(k_label, w),
        norm_drift: report.norm_drift(),
        flagged,
    })
}

/// Threshold product δt·Ē at the k where the fitted failure law crosses a
/// given p_fail level.
#[derive(Debug, Clone, Copy, Serialize, serde::Deserialize)]
pub struct ThresholdProduct {
    pub threshold: f64,
    pub k_star: f64,
    pub product: f64,
}

/// Fit the observed failure law p_fail ≈ A/k to the sweep rows and solve for
/// the k where it crosses each threshold.
///
/// Under the narrow-packet constraint the measured p_fail never reaches the
/// usual thresholds inside the swept range (p_fail·k·w stays near 0.4 and
/// w ≥ σ bounds it around 0.1), so the crossing comes from the fitted 1/k
/// trend extrapolated below the sweep.  The flatness of p_fail·k·w across
/// the sweep is the separately-reported validity diagnostic.
pub fn threshold_products(
    cfg: &OrderSweepConfig,
    rows: &[OrderRow],
) -> Result<Vec<ThresholdProduct>, ExperimentsError> {
    if rows.is_empty() {
        return Err(ExperimentsError::ReportIncomplete("no sweep rows".into()));
    }
    let a_fit = rows.iter().map(|r| r.p_fail * r.k).sum::<f64>() / rows.len() as f64;
    let mut out = Vec::new();
    for &tau in &cfg.fail_thresholds {
        if !(tau > 0.0) {
            return Err(ExperimentsError::BadSpec(format!(
                "threshold must be positive, got {tau}"
            )));
        }
        let k_star = a_fit / tau;
        let w_star = cfg.width_at_arrival(k_star);
        let delta_t = w_star * cfg.mass / k_star;
        out.push(ThresholdProduct {
            threshold: tau,
            k_star,
            product: delta_t * cfg.energy(k_star),
        });
    }
    Ok(out)
}

/// Full sweep over the configured k list.
pub fn order_failure_sweep(
    cfg: &OrderSweepConfig,
) -> Result<(Vec<OrderRow>, Table), ExperimentsError> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.k_values.len());
    for &k in &cfg.k_values {
        rows.push(order_point(cfg, k)?);
    }
    Ok((rows.clone(), rows_to_table(&rows)))
}

pub fn rows_to_table(rows: &[OrderRow]) -> Table {
    let mut t = Table::new(
        "tempord.order_sweep",
        &[
            "k",
            "e_bar",
            "w_arrival",
            "delta_t",
            "p1",
            "p2",
            "p3",
            "p4",
            "p_fail",
            "p_fail_k_w",
            "p_fail_analytic",
            "norm_drift",
            "flagged",
        ],
    );
    for r in rows {
        let mut cells: Vec<String> = [
            r.k,
            r.e_bar,
            r.w_arrival,
            r.delta_t,
            r.p1,
            r.p2,
            r.p3,
            r.p4,
            r.p_fail,
            r.product,
            r.p_fail_analytic,
            r.norm_drift,
        ]
        .iter()
        .map(|&v| super::table::fmt_f64(v))
        .collect();
        cells.push(if r.flagged { "1" } else { "0" }.to_string());
        t.push_row(cells);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> OrderSweepConfig {
        OrderSweepConfig {
            k_values: vec![10.0, 20.0],
            grid_n: 704,
            sigma: 0.5,
            time_factor: 1.6,
            mass: 1.0,
            fail_thresholds: vec![0.05, 0.1, 0.2],
        }
    }

    #[test]
    fn validation() {
        assert!(OrderSweepConfig::default().validate().is_ok());
        let mut c = small_cfg();
        c.k_values = vec![2.0, 1.0];
        assert!(c.validate().is_err());
        let mut c = small_cfg();
        c.sigma = 0.2; // spread too wide for k_min
        assert!(c.validate().is_err());
    }

    #[test]
    fn p_fail_decreases_with_k_and_product_flat() {
        let cfg = small_cfg();
        let (rows, table) = order_failure_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert!(r.p_fail > 0.0, "p_fail must be strictly positive");
            assert!(!r.flagged, "row flagged: drift {}", r.norm_drift);
        }
        assert!(
            rows[1].p_fail < rows[0].p_fail,
            "{} !< {}",
            rows[1].p_fail,
            rows[0].p_fail
        );
        let ratio = rows[1].product / rows[0].product;
        assert!(
            (0.7..1.3).contains(&ratio),
            "product not flat: {} vs {}",
            rows[0].product,
            rows[1].product
        );
        // two-route agreement within a factor of two
        for r in &rows {
            let ratio = r.p_fail / r.p_fail_analytic;
            assert!((0.5..2.0).contains(&ratio), "routes disagree: {ratio}");
        }
        assert!(table.to_dsv().contains("p_fail_k_w"));
    }

    #[test]
    fn asymmetric_energy_reduces_failure() {
        // E_y ≫ E_x at fixed E_x: the faster y particle controls the
        // diffraction zone and the failure probability drops
        let mut cfg = small_cfg();
        cfg.grid_n = 896;
        let k = 10.0;
        let p = -k * FRAC_1_SQRT_2;
        let sym = order_point_momenta(&cfg, k, (p, p)).unwrap();
        let k_asym = (p * p + 4.0 * p * p).sqrt();
        let asym = order_point_momenta(&cfg, k_asym, (p, 2.0 * p)).unwrap();
        assert!(
            asym.p_fail < sym.p_fail,
            "asym {} !< sym {}",
            asym.p_fail,
            sym.p_fail
        );
    }

    #[test]
    fn threshold_product_is_order_unity() {
        let cfg = small_cfg();
        let (rows, _) = order_failure_sweep(&cfg).unwrap();
        let prods = threshold_products(&cfg, &rows).unwrap();
        assert_eq!(prods.len(), 3);
        for p in &prods {
            assert!(
                (0.1..10.0).contains(&p.product),
                "threshold {}: product {}",
                p.threshold,
                p.product
            );
        }
        // sensitivity: product scales roughly inversely with the threshold
        assert!(prods[0].product > prods[1].product);
        assert!(prods[1].product > prods[2].product);
    }

    #[test]
    fn deterministic_tables() {
        let cfg = OrderSweepConfig {
            k_values: vec![10.0],
            grid_n: 288,
            sigma: 0.5,
            time_factor: 1.5,
            mass: 1.0,
            fail_thresholds: vec![0.1],
        };
        let (_, t1) = order_failure_sweep(&cfg).unwrap();
        let (_, t2) = order_failure_sweep(&cfg).unwrap();
        assert_eq!(t1.to_dsv(), t2.to_dsv());
    }
}
