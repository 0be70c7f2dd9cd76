//! Hard-disk phase shifts on the continuous branch and the δ₁/δ₀ curve:
//! near zero for ka ≪ 1 (isotropic s-wave, no shadow) and approaching one
//! for ka ≫ 1 (sharp shadow, working coincidence sieve).
//!
//! Run with: cargo run --release --example disk_shift_ratio

use tempord::disk::{phase_shift_sweep, shift_ratio, PartialWaveSum};
use tempord::disk::{shadow_sharpness, total_cross_section};

fn main() {
    let kas: Vec<f64> = (0..25)
        .map(|i| 1e-3 * (100.0f64 / 1e-3).powf(i as f64 / 24.0))
        .collect();
    let d0 = phase_shift_sweep(0, &kas);
    let d1 = phase_shift_sweep(1, &kas);

    println!(
        "{:>10}  {:>12}  {:>12}  {:>8}  {:>9}",
        "ka", "delta0", "delta1", "ratio", "sharpness"
    );
    for (s0, s1) in d0.iter().zip(&d1) {
        let pw = PartialWaveSum::new(1.0, s0.ka).unwrap();
        println!(
            "{:10.4}  {:12.6}  {:12.6}  {:8.4}  {:9.4}",
            s0.ka,
            s0.delta,
            s1.delta,
            s1.delta / s0.delta,
            shadow_sharpness(&pw)
        );
    }

    // crossover where the ratio first exceeds 0.9
    let mut ka = 1.0;
    while shift_ratio(ka) < 0.9 {
        ka *= 1.05;
    }
    println!("\nratio first exceeds 0.9 near ka* = {ka:.1}");
    println!("coincidence accuracy bound: dt_c * E = ka*/2 = {:.1}", ka / 2.0);

    let pw = PartialWaveSum::new(1.0, 200.0).unwrap();
    println!(
        "\nhigh-frequency total cross section at ka = 200: {:.1} (4a = 800)",
        total_cross_section(&pw)
    );
}
