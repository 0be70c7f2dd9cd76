//! Special-function kernel: Bessel J/N, the outgoing Hankel composition,
//! the complex diffraction integral Φ, and the Dirichlet cosine-sum identity.
//!
//! All operations are pure functions; no shared mutable state.

mod bessel;
mod erf;

pub use bessel::{bessel_j, bessel_y, hankel1, MAX_ARGUMENT, MAX_ORDER};
pub use erf::{diffraction_integral, erf_complex};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

/// Evaluation tolerances carried by consumers that verify kernel output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalAccuracy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl EvalAccuracy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self, SpecFunError> {
        if !(abs_tol > 0.0 && abs_tol < 1e-2 && rel_tol > 0.0 && rel_tol < 1e-2) {
            return Err(SpecFunError::Domain(format!(
                "tolerances must lie in (0, 1e-2): abs {abs_tol}, rel {rel_tol}"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    /// True when `got` agrees with `want` within either tolerance.
    pub fn accepts(&self, got: f64, want: f64) -> bool {
        let d = (got - want).abs();
        d <= self.abs_tol || d <= self.rel_tol * want.abs()
    }
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
        }
    }
}

/// Σ_{m=0}^{M} ε_m cos(mθ) = sin((M+½)θ) / sin(θ/2), with ε_0 = 1 and
/// ε_m = 2 otherwise; the removable singularities at θ ∈ 2πZ evaluate to
/// the limit 2M+1.
pub fn dirichlet_sum(m_terms: u32, theta: f64) -> f64 {
    let half = 0.5 * theta;
    let s = half.sin();
    // Near θ = 2πn the closed form is 0/0; the sum limit is ±(2M+1)
    // with the sign of cos((M+½)θ)/cos(θ/2) → use the series fallback.
    if s.abs() < 1e-8 {
        // cos(mθ) = cos(m·2πn + mδ) with δ = θ − 2πn small: direct sum is
        // exact enough here and costs O(M).
        let mut acc = 1.0;
        for k in 1..=m_terms {
            acc += 2.0 * (k as f64 * theta).cos();
        }
        return acc;
    }
    ((m_terms as f64 + 0.5) * theta).sin() / s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dirichlet_direct(m: u32, theta: f64) -> f64 {
        let mut acc = 1.0;
        for k in 1..=m {
            acc += 2.0 * (k as f64 * theta).cos();
        }
        acc
    }

    #[test]
    fn dirichlet_single_term() {
        for &t in &[0.0, 0.3, 1.0, 3.0, 6.0] {
            assert!((dirichlet_sum(0, t) - 1.0).abs() < 1e-12, "theta={t}");
        }
    }

    #[test]
    fn dirichlet_limit_at_zero() {
        assert_eq!(dirichlet_sum(5, 0.0), 11.0);
        assert!((dirichlet_sum(7, 1e-12) - 15.0).abs() < 1e-9);
    }

    #[test]
    fn dirichlet_two_term_plug_in() {
        let v = dirichlet_sum(1, std::f64::consts::FRAC_PI_2);
        let closed = (1.5 * std::f64::consts::FRAC_PI_2).sin()
            / (0.5 * std::f64::consts::FRAC_PI_2).sin();
        assert!((v - 1.0).abs() < 1e-12);
        assert!((v - closed).abs() < 1e-12);
    }

    #[test]
    fn eval_accuracy_validation() {
        assert!(EvalAccuracy::new(1e-12, 1e-10).is_ok());
        assert!(EvalAccuracy::new(0.0, 1e-10).is_err());
        assert!(EvalAccuracy::new(1e-12, 0.5).is_err());
        let acc = EvalAccuracy::default();
        assert!(acc.accepts(1.0, 1.0 + 5e-11));
        assert!(!acc.accepts(1.0, 1.01));
    }

    proptest! {
        #[test]
        fn prop_dirichlet_closed_form_equals_direct(m in 0u32..=50, k in 1u32..100) {
            // sampled θ avoiding the exact removable points
            let theta = k as f64 * 0.062_831_853; // ~100 points over (0, 2π)
            let a = dirichlet_sum(m, theta);
            let b = dirichlet_direct(m, theta);
            prop_assert!((a - b).abs() < 1e-8 * (1.0 + b.abs()), "m={} theta={}", m, theta);
        }
    }
}
