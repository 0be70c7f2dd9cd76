//! Plane-wave diffraction off a hard half-line screen, and the failure
//! cross section of the order-of-arrival measurement.
//!
//! Geometry: the screen occupies the negative y-axis (θ = 3π/2, equivalently
//! −π/2); the incident plane wave e^{−ikr cos(θ−θ₀)} arrives from quadrant I
//! at angle 0 < θ₀ < π/2 and the field vanishes on both screen faces.  The
//! exact solution is the two-term Fresnel/error-function form
//!
//!   ψ = ½ [ e^{−ikr cos(θ−θ₀)} (1 + Φ(u₁)) − e^{+ikr cos(θ+θ₀)} (1 + Φ(u₂)) ]
//!
//! with u₁ = √(2kr) cos((θ−θ₀)/2), u₂ = −√(2kr) sin((θ+θ₀)/2) and Φ the
//! diffraction integral from [`crate::specfun`].  Angles are mapped into the
//! cut domain (−π/2, 3π/2] so the half-angle branches stay on the physical
//! sheet.

use crate::quad::adaptive_simpson;
use crate::specfun::{diffraction_integral, SpecFunError};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HalfPlaneError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("angle {theta} is within {delta} rad of a shadow boundary")]
    BoundaryZone { theta: f64, delta: f64 },
    #[error("scattering amplitude pole at theta = {0}")]
    Pole(f64),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Wavenumber and incidence angle of the diffraction problem.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HalfPlaneConfig {
    pub k: f64,
    pub theta0: f64,
}

impl HalfPlaneConfig {
    pub fn new(k: f64, theta0: f64) -> Result<Self, HalfPlaneError> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(HalfPlaneError::Domain(format!("k must be > 0, got {k}")));
        }
        if !(theta0 > 0.0 && theta0 < PI / 2.0) {
            return Err(HalfPlaneError::Domain(format!(
                "theta0 must lie strictly in (0, pi/2), got {theta0}"
            )));
        }
        Ok(Self { k, theta0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionTag {
    Illuminated,
    Reflection,
    Shadow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionLabel {
    pub tag: RegionTag,
    pub quadrant: Quadrant,
}

/// Regularized failure cross section together with the closed form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FailureResult {
    pub sigma_f: f64,
    pub excluded_cone_halfwidth: f64,
    pub closed_form: f64,
}

/// Map θ ∈ [0, 2π) (screen at 3π/2) into the cut domain (−π/2, 3π/2].
fn cut_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > 1.5 * PI {
        t - 2.0 * PI
    } else {
        t
    }
}

fn quadrant_of(theta: f64) -> Quadrant {
    let t = theta.rem_euclid(2.0 * PI);
    if t <= 0.5 * PI {
        Quadrant::I
    } else if t <= PI {
        Quadrant::II
    } else if t <= 1.5 * PI {
        Quadrant::III
    } else {
        Quadrant::IV
    }
}

/// Asymptotic sector of an observation angle.
pub fn region_of(theta: f64, cfg: &HalfPlaneConfig) -> RegionLabel {
    let t = cut_angle(theta);
    let tag = if t <= -cfg.theta0 {
        RegionTag::Reflection
    } else if t < PI + cfg.theta0 {
        RegionTag::Illuminated
    } else {
        RegionTag::Shadow
    };
    RegionLabel {
        tag,
        quadrant: quadrant_of(theta),
    }
}

/// The two shadow-boundary (pole) angles in [0, 2π): π + θ₀ and 2π − θ₀.
pub fn shadow_boundaries(cfg: &HalfPlaneConfig) -> [f64; 2] {
    [PI + cfg.theta0, 2.0 * PI - cfg.theta0]
}

/// Exact field of the diffraction problem.
pub fn exact_field(r: f64, theta: f64, cfg: &HalfPlaneConfig) -> Result<Complex64, HalfPlaneError> {
    if !(r > 0.0) {
        return Err(HalfPlaneError::Domain(format!("r must be > 0, got {r}")));
    }
    let t = cut_angle(theta);
    let kr = cfg.k * r;
    let s = (2.0 * kr).sqrt();
    let u1 = s * (0.5 * (t - cfg.theta0)).cos();
    let u2 = -s * (0.5 * (t + cfg.theta0)).sin();
    let phi1 = diffraction_integral(Complex64::new(u1, 0.0))?;
    let phi2 = diffraction_integral(Complex64::new(u2, 0.0))?;
    let inc = Complex64::from_polar(1.0, -kr * (t - cfg.theta0).cos());
    let refl = Complex64::from_polar(1.0, kr * (t + cfg.theta0).cos());
    Ok(0.5 * (inc * (1.0 + phi1) - refl * (1.0 + phi2)))
}

/// Two-pole scattering amplitude f(θ) of the edge.
pub fn scattering_amplitude(theta: f64, cfg: &HalfPlaneConfig) -> Result<Complex64, HalfPlaneError> {
    let t = cut_angle(theta);
    let s = (0.5 * (t + cfg.theta0)).sin();
    let c = (0.5 * (t - cfg.theta0)).cos();
    if s.abs() < 1e-12 || c.abs() < 1e-12 {
        return Err(HalfPlaneError::Pole(theta));
    }
    // −√(i/8πk) [1/sin((θ+θ₀)/2) + 1/cos((θ−θ₀)/2)]
    let pref = -Complex64::from_polar((8.0 * PI * cfg.k).sqrt().recip(), PI / 4.0);
    Ok(pref * (1.0 / s + 1.0 / c))
}

/// Piecewise far-field form: branch value plus its region label.
///
/// Default exclusion width around the shadow boundaries is
/// Δ = max(0.05, 3/√(kr)).
pub fn asymptotic_field(
    r: f64,
    theta: f64,
    cfg: &HalfPlaneConfig,
) -> Result<(Complex64, RegionLabel), HalfPlaneError> {
    let kr = cfg.k * r;
    if kr < 100.0 {
        return Err(HalfPlaneError::Domain(format!(
            "asymptotic form needs kr >= 100, got {kr}"
        )));
    }
    let delta = (3.0 / kr.sqrt()).max(0.05);
    let t = cut_angle(theta);
    for b in shadow_boundaries(cfg) {
        let bc = cut_angle(b);
        if (t - bc).abs() < delta {
            return Err(HalfPlaneError::BoundaryZone { theta, delta });
        }
    }
    let label = region_of(theta, cfg);
    let f = scattering_amplitude(theta, cfg)?;
    let mut v = f * Complex64::from_polar(r.sqrt().recip(), kr);
    match label.tag {
        RegionTag::Illuminated => {
            v += Complex64::from_polar(1.0, -kr * (t - cfg.theta0).cos());
        }
        RegionTag::Reflection => {
            v += Complex64::from_polar(1.0, -kr * (t - cfg.theta0).cos());
            v -= Complex64::from_polar(1.0, kr * (t + cfg.theta0).cos());
        }
        RegionTag::Shadow => {}
    }
    Ok((v, label))
}

/// Closed-form σ_f = 1/(k cos(θ₀/2)); also defined in the grazing limit θ₀ = 0.
pub fn closed_form_sigma_f(k: f64, theta0: f64) -> f64 {
    1.0 / (k * (0.5 * theta0).cos())
}

/// Integrate |f(θ)|² over [0, 2π) minus exclusion cones around both poles,
/// and report the closed form alongside.  The naive integral diverges at the
/// poles, so only the regularized value and its 1/k scaling are meaningful.
pub fn failure_cross_section(
    cfg: &HalfPlaneConfig,
    cone_halfwidth: f64,
) -> Result<FailureResult, HalfPlaneError> {
    if !(cone_halfwidth > 0.0 && cone_halfwidth < 0.3) {
        return Err(HalfPlaneError::Domain(format!(
            "cone halfwidth must lie in (0, 0.3), got {cone_halfwidth}"
        )));
    }
    let [b1, b2] = shadow_boundaries(cfg);
    let integrand = |t: f64| {
        scattering_amplitude(t, cfg)
            .map(|f| f.norm_sqr())
            .unwrap_or(0.0)
    };
    let segs = [
        (0.0, b1 - cone_halfwidth),
        (b1 + cone_halfwidth, b2 - cone_halfwidth),
        (b2 + cone_halfwidth, 2.0 * PI),
    ];
    let mut total = 0.0;
    for (a, b) in segs {
        if b > a {
            total += adaptive_simpson(&integrand, a, b, 1e-8);
        }
    }
    Ok(FailureResult {
        sigma_f: total,
        excluded_cone_halfwidth: cone_halfwidth,
        closed_form: closed_form_sigma_f(cfg.k, cfg.theta0),
    })
}

/// Smallest resolvable arrival-point separation, 2/k.
pub fn min_resolvable_separation(cfg: &HalfPlaneConfig) -> f64 {
    2.0 / cfg.k
}
