//! Canonical rescaling between the two-particle 1D problem and a single
//! particle of mass M in the plane, plus Gaussian initial states.
//!
//! With P → √(m/M) P, x → √(M/m) x per axis, the kinetic form
//! p²/2m₁ + p²/2m₂ becomes (p_x² + p_y²)/2M at equal kinetic energy; the
//! edge coupling strength rescales by √(M/m₁).  The edge geometry
//! ({x = 0, y < 0}) is invariant under the axis scalings.

use super::grid::GridState;
use super::DynamicsError;
use num_complex::Complex64;
use serde::Serialize;

/// Two free particles approaching the origin from the right.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TwoBodyConfig {
    pub m1: f64,
    pub m2: f64,
    /// Particle 1 (the "x" particle): center, width, mean momentum.
    pub center1: f64,
    pub sigma1: f64,
    pub momentum1: f64,
    /// Particle 2 (the "y" particle).
    pub center2: f64,
    pub sigma2: f64,
    pub momentum2: f64,
}

impl TwoBodyConfig {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !(self.m1 > 0.0 && self.m2 > 0.0) {
            return Err(DynamicsError::Domain("masses must be positive".into()));
        }
        if !(self.sigma1 > 0.0 && self.sigma2 > 0.0) {
            return Err(DynamicsError::Domain("widths must be positive".into()));
        }
        if self.center1 < 5.0 * self.sigma1 || self.center2 < 5.0 * self.sigma2 {
            return Err(DynamicsError::Domain(
                "packets must start at least 5 widths from the origin".into(),
            ));
        }
        if !(self.momentum1 < 0.0 && self.momentum2 < 0.0) {
            return Err(DynamicsError::Domain(
                "mean momenta must point toward the origin (negative)".into(),
            ));
        }
        Ok(())
    }

    /// Total kinetic energy ⟨p₁²⟩/2m₁ + ⟨p₂²⟩/2m₂ of the Gaussian pair.
    pub fn kinetic_energy(&self) -> f64 {
        let p1sq = self.momentum1 * self.momentum1 + 1.0 / (4.0 * self.sigma1 * self.sigma1);
        let p2sq = self.momentum2 * self.momentum2 + 1.0 / (4.0 * self.sigma2 * self.sigma2);
        p1sq / (2.0 * self.m1) + p2sq / (2.0 * self.m2)
    }
}

/// Single-particle plane problem produced by the canonical rescaling.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlaneConfig {
    pub mass: f64,
    pub center: (f64, f64),
    pub sigma: (f64, f64),
    pub momentum: (f64, f64),
    /// Factor √(M/m₁) by which the edge coupling α was rescaled.
    pub coupling_rescale: f64,
}

impl PlaneConfig {
    /// Mean kinetic energy of the mapped Gaussian packet.
    pub fn kinetic_energy(&self) -> f64 {
        let px2 = self.momentum.0 * self.momentum.0 + 1.0 / (4.0 * self.sigma.0 * self.sigma.0);
        let py2 = self.momentum.1 * self.momentum.1 + 1.0 / (4.0 * self.sigma.1 * self.sigma.1);
        (px2 + py2) / (2.0 * self.mass)
    }
}

/// Map the two-body configuration onto one particle of mass `m_plane`.
pub fn map_two_body_to_plane(cfg: &TwoBodyConfig, m_plane: f64) -> Result<PlaneConfig, DynamicsError> {
    cfg.validate()?;
    if !(m_plane > 0.0) {
        return Err(DynamicsError::Domain("plane mass must be positive".into()));
    }
    let cx = (cfg.m1 / m_plane).sqrt();
    let cy = (cfg.m2 / m_plane).sqrt();
    Ok(PlaneConfig {
        mass: m_plane,
        center: (cfg.center1 * cx, cfg.center2 * cy),
        sigma: (cfg.sigma1 * cx, cfg.sigma2 * cy),
        momentum: (cfg.momentum1 / cx, cfg.momentum2 / cy),
        coupling_rescale: 1.0 / cx,
    })
}

/// Write a normalized Gaussian ψ ∝ exp(−(x−c)²/4σ² + ip·x) onto the grid.
pub fn gaussian_packet(
    grid: &mut GridState,
    center: (f64, f64),
    sigma: (f64, f64),
    momentum: (f64, f64),
) {
    for iy in 0..grid.ny {
        let y = grid.y(iy);
        let gy = (-(y - center.1).powi(2) / (4.0 * sigma.1 * sigma.1)).exp();
        for ix in 0..grid.nx {
            let x = grid.x(ix);
            let gx = (-(x - center.0).powi(2) / (4.0 * sigma.0 * sigma.0)).exp();
            let idx = grid.idx(ix, iy);
            grid.field[idx] =
                Complex64::from_polar(gx * gy, momentum.0 * x + momentum.1 * y);
        }
    }
    // zero the outer frame, then normalize on-grid
    let (nx, ny) = (grid.nx, grid.ny);
    for ix in 0..nx {
        grid.field[ix] = Complex64::default();
        grid.field[(ny - 1) * nx + ix] = Complex64::default();
    }
    for iy in 0..ny {
        grid.field[iy * nx] = Complex64::default();
        grid.field[iy * nx + nx - 1] = Complex64::default();
    }
    grid.normalize();
}

/// Build the grid state of a plane configuration.
pub fn initial_state(grid: &mut GridState, plane: &PlaneConfig) {
    gaussian_packet(grid, plane.center, plane.sigma, plane.momentum);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TwoBodyConfig {
        TwoBodyConfig {
            m1: 2.0,
            m2: 0.5,
            center1: 10.0,
            sigma1: 1.5,
            momentum1: -3.0,
            center2: 12.0,
            sigma2: 2.0,
            momentum2: -2.0,
        }
    }

    #[test]
    fn identity_mapping_at_equal_masses() {
        let mut c = sample();
        c.m1 = 1.0;
        c.m2 = 1.0;
        let p = map_two_body_to_plane(&c, 1.0).unwrap();
        assert_eq!(p.center, (c.center1, c.center2));
        assert_eq!(p.sigma, (c.sigma1, c.sigma2));
        assert_eq!(p.momentum, (c.momentum1, c.momentum2));
        assert_eq!(p.coupling_rescale, 1.0);
    }

    #[test]
    fn kinetic_energy_is_invariant() {
        let c = sample();
        for m_plane in [0.5, 1.0, 3.0] {
            let p = map_two_body_to_plane(&c, m_plane).unwrap();
            let rel = (p.kinetic_energy() - c.kinetic_energy()).abs() / c.kinetic_energy();
            assert!(rel < 1e-14, "M={m_plane}: rel {rel}");
        }
    }

    #[test]
    fn quarter_mass_scales_by_two() {
        // m1 = 4M: momentum doubles, coordinate halves, phase-space volume
        // (σ_x · σ_p per axis) is preserved
        let mut c = sample();
        c.m1 = 4.0;
        let p = map_two_body_to_plane(&c, 1.0).unwrap();
        assert!((p.momentum.0 - c.momentum1 / 2.0).abs() < 1e-15);
        assert!((p.center.0 - c.center1 * 2.0).abs() < 1e-15);
        let vol_before = c.sigma1 * (0.5 / c.sigma1);
        let vol_after = p.sigma.0 * (0.5 / p.sigma.0);
        assert!((vol_before - vol_after).abs() < 1e-15);
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut c = sample();
        c.center1 = 3.0; // closer than 5 widths
        assert!(map_two_body_to_plane(&c, 1.0).is_err());
        let mut c = sample();
        c.momentum2 = 1.0; // moving away
        assert!(map_two_body_to_plane(&c, 1.0).is_err());
        let mut c = sample();
        c.m2 = 0.0;
        assert!(map_two_body_to_plane(&c, 1.0).is_err());
    }

    #[test]
    fn packet_matches_requested_moments() {
        let mut g = GridState::centered(256, 256, 0.125).unwrap();
        gaussian_packet(&mut g, (3.0, -2.0), (1.0, 1.5), (2.0, -1.0));
        assert!((g.norm_sq() - 1.0).abs() < 1e-12);
        let (mx, my) = g.position_mean();
        assert!((mx - 3.0).abs() < 1e-8 && (my + 2.0).abs() < 1e-8);
        // central-difference momentum measures sin(ph)/h times the packet
        // autocorrelation factor
        let (px, py) = g.momentum_mean();
        let want = |p: f64, s: f64| (p * g.h).sin() / g.h * (-g.h * g.h / (8.0 * s * s)).exp();
        assert!((px - want(2.0, 1.0)).abs() < 1e-4, "px = {px}");
        assert!((py - want(-1.0, 1.5)).abs() < 1e-4, "py = {py}");
    }
}
