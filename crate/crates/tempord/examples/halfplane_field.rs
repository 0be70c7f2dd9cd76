//! Exact half-plane diffraction field: screen boundary condition, the three
//! asymptotic sectors, and the regularized failure cross section.
//!
//! Run with: cargo run --release --example halfplane_field

use std::f64::consts::PI;
use tempord::halfplane::{
    asymptotic_field, exact_field, failure_cross_section, min_resolvable_separation,
    HalfPlaneConfig,
};

fn main() {
    let cfg = HalfPlaneConfig::new(1.0, PI / 4.0).expect("valid config");

    println!("screen boundary |psi(r, 3pi/2)| (must vanish):");
    for kr in [0.1, 1.0, 10.0, 1e3] {
        let v = exact_field(kr / cfg.k, 1.5 * PI, &cfg).unwrap();
        println!("  kr = {kr:7.1}  |psi| = {:.3e}", v.norm());
    }

    println!("\nexact vs asymptotic at kr = 1e4:");
    println!("  {:>7}  {:>10}  {:>9}  sector", "theta", "|psi|", "rel diff");
    for theta in [0.5, 2.5, 4.4, 5.0, 6.0] {
        let e = exact_field(1e4 / cfg.k, theta, &cfg).unwrap();
        match asymptotic_field(1e4 / cfg.k, theta, &cfg) {
            Ok((a, label)) => println!(
                "  {theta:7.3}  {:10.5}  {:9.2e}  {:?}",
                e.norm(),
                (e - a).norm() / e.norm(),
                label.tag
            ),
            Err(err) => println!("  {theta:7.3}  {:10.5}  {err}", e.norm()),
        }
    }

    println!("\nfailure cross section (cone half-width 0.1 rad):");
    println!("  {:>4}  {:>12}  {:>12}", "k", "regularized", "closed form");
    for k in [1.0, 2.0, 4.0, 8.0] {
        let c = HalfPlaneConfig::new(k, PI / 4.0).unwrap();
        let r = failure_cross_section(&c, 0.1).unwrap();
        println!("  {k:4.0}  {:12.6}  {:12.6}", r.sigma_f, r.closed_form);
    }
    println!(
        "\nsmallest resolvable arrival separation at k = 1: {}",
        min_resolvable_separation(&cfg)
    );
}
