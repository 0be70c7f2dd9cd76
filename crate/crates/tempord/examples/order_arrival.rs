//! Order-of-arrival measurement with the knife-edge detector: a packet aimed
//! diagonally at the origin ends in quadrant III (x first) or IV (y first);
//! amplitude diffracted into quadrants I and II is the measurement failure.
//! The failure probability scales as 1/(k·w), so p_fail·k·w is flat.
//!
//! Run with: cargo run --release --example order_arrival

use tempord::experiments::{order_failure_sweep, threshold_products, OrderSweepConfig};

fn main() {
    // compact configuration: full-scale runs use grid 2048 via the CLI
    let cfg = OrderSweepConfig {
        k_values: vec![10.0, 14.0, 20.0],
        grid_n: 704,
        sigma: 0.5,
        time_factor: 1.6,
        mass: 1.0,
        fail_thresholds: vec![0.05, 0.1, 0.2],
    };
    println!("running {} edge-detector points at {}^2 ...", cfg.k_values.len(), cfg.grid_n);
    let (rows, _table) = order_failure_sweep(&cfg).expect("sweep runs");
    println!(
        "\n{:>5}  {:>8}  {:>8}  {:>8}  {:>10}  {:>10}",
        "k", "p_fail", "p3", "p4", "p_fail*k*w", "analytic"
    );
    for r in &rows {
        println!(
            "{:5.1}  {:8.5}  {:8.5}  {:8.5}  {:10.4}  {:10.5}",
            r.k, r.p_fail, r.p3, r.p4, r.product, r.p_fail_analytic
        );
    }
    println!("\nthreshold products delta_t * E_bar (from the fitted 1/(k w) law):");
    for tp in threshold_products(&cfg, &rows).unwrap() {
        println!(
            "  p_fail = {:4.2}:  k* = {:8.3}   dt*E = {:.3}",
            tp.threshold, tp.k_star, tp.product
        );
    }
}
