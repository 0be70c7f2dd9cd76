//! Complex field on a uniform 2D Cartesian grid.

use num_complex::Complex64;
use serde::Serialize;

use super::DynamicsError;

/// Probability content of the four open quadrants; axis nodes contribute
/// half-weight to each adjacent quadrant (quarter-weight at the origin node).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadrantProbabilities {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl QuadrantProbabilities {
    pub fn sum(&self) -> f64 {
        self.p1 + self.p2 + self.p3 + self.p4
    }
}

/// Measurement outcome derived from quadrant content with the edge detector:
/// quadrant III means the x particle arrived first, quadrant IV the y
/// particle; anything left in I or II is a failed ordering measurement.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OutcomeProbabilities {
    pub p_x_first: f64,
    pub p_y_first: f64,
    pub p_fail: f64,
    /// Flux reflected back into quadrant I, reported separately because the
    /// detector would otherwise over-count y-first outcomes.
    pub p_reflected_q1: f64,
    pub p_q2: f64,
}

/// Classify quadrant probabilities into ordering outcomes.
pub fn classify_outcome(p: &QuadrantProbabilities) -> OutcomeProbabilities {
    OutcomeProbabilities {
        p_x_first: p.p3,
        p_y_first: p.p4,
        p_fail: p.p1 + p.p2,
        p_reflected_q1: p.p1,
        p_q2: p.p2,
    }
}

/// Wavefunction samples on an nx × ny grid with spacing `h`.
///
/// Node (ix, iy) sits at (x0 + ix·h, y0 + iy·h); the grid is built so one
/// node column/row lies exactly on each axis.  Storage is row-major in x
/// (`idx = iy·nx + ix`).
#[derive(Debug, Clone)]
pub struct GridState {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub x0: f64,
    pub y0: f64,
    pub time: f64,
    pub field: Vec<Complex64>,
    /// Index of the x = 0 column.
    pub ix0: usize,
    /// Index of the y = 0 row.
    pub iy0: usize,
}

impl GridState {
    /// Empty grid with the axis node at (nx/2, ny/2).
    pub fn centered(nx: usize, ny: usize, h: f64) -> Result<Self, DynamicsError> {
        if nx < 8 || ny < 8 {
            return Err(DynamicsError::Domain(format!(
                "grid too small: {nx} x {ny}"
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(DynamicsError::Domain(format!("bad spacing {h}")));
        }
        let ix0 = nx / 2;
        let iy0 = ny / 2;
        Ok(Self {
            nx,
            ny,
            h,
            x0: -(ix0 as f64) * h,
            y0: -(iy0 as f64) * h,
            time: 0.0,
            field: vec![Complex64::new(0.0, 0.0); nx * ny],
            ix0,
            iy0,
        })
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    #[inline]
    pub fn x(&self, ix: usize) -> f64 {
        self.x0 + ix as f64 * self.h
    }

    #[inline]
    pub fn y(&self, iy: usize) -> f64 {
        self.y0 + iy as f64 * self.h
    }

    /// Σ|ψ|²h².
    pub fn norm_sq(&self) -> f64 {
        let s: f64 = self.field.iter().map(|c| c.norm_sqr()).sum();
        s * self.h * self.h
    }

    /// Scale so that the norm is exactly one.
    pub fn normalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            let inv = 1.0 / n;
            for c in &mut self.field {
                *c *= inv;
            }
        }
    }

    /// Probability mass within `margin` nodes of the outer boundary.
    pub fn boundary_mass(&self, margin: usize) -> f64 {
        let mut s = 0.0;
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                if ix < margin || iy < margin || ix >= self.nx - margin || iy >= self.ny - margin
                {
                    s += self.field[self.idx(ix, iy)].norm_sqr();
                }
            }
        }
        s * self.h * self.h
    }

    /// Quadrant content with half-weight axis splitting.
    pub fn quadrant_probabilities(&self) -> QuadrantProbabilities {
        let mut p = [0.0f64; 4];
        for iy in 0..self.ny {
            let wy = match iy.cmp(&self.iy0) {
                std::cmp::Ordering::Greater => (1.0, 0.0), // y > 0: upper share
                std::cmp::Ordering::Equal => (0.5, 0.5),
                std::cmp::Ordering::Less => (0.0, 1.0),
            };
            for ix in 0..self.nx {
                let wx = match ix.cmp(&self.ix0) {
                    std::cmp::Ordering::Greater => (1.0, 0.0), // x > 0: right share
                    std::cmp::Ordering::Equal => (0.5, 0.5),
                    std::cmp::Ordering::Less => (0.0, 1.0),
                };
                let d = self.field[self.idx(ix, iy)].norm_sqr();
                // quadrants: I (+,+), II (−,+), III (−,−), IV (+,−)
                p[0] += d * wx.0 * wy.0;
                p[1] += d * wx.1 * wy.0;
                p[2] += d * wx.1 * wy.1;
                p[3] += d * wx.0 * wy.1;
            }
        }
        let h2 = self.h * self.h;
        QuadrantProbabilities {
            p1: p[0] * h2,
            p2: p[1] * h2,
            p3: p[2] * h2,
            p4: p[3] * h2,
        }
    }

    /// ⟨x⟩, ⟨y⟩.
    pub fn position_mean(&self) -> (f64, f64) {
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut n = 0.0;
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let d = self.field[self.idx(ix, iy)].norm_sqr();
                sx += d * self.x(ix);
                sy += d * self.y(iy);
                n += d;
            }
        }
        (sx / n, sy / n)
    }

    /// Variances of the position distribution along x and y.
    pub fn position_variance(&self) -> (f64, f64) {
        let (mx, my) = self.position_mean();
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut n = 0.0;
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let d = self.field[self.idx(ix, iy)].norm_sqr();
                sx += d * (self.x(ix) - mx).powi(2);
                sy += d * (self.y(iy) - my).powi(2);
                n += d;
            }
        }
        (sx / n, sy / n)
    }

    /// ⟨p_x⟩, ⟨p_y⟩ from the central-difference momentum operator.
    pub fn momentum_mean(&self) -> (f64, f64) {
        let mut px = 0.0;
        let mut py = 0.0;
        let mut n = 0.0;
        for iy in 1..self.ny - 1 {
            for ix in 1..self.nx - 1 {
                let c = self.field[self.idx(ix, iy)];
                let dx = self.field[self.idx(ix + 1, iy)] - self.field[self.idx(ix - 1, iy)];
                let dy = self.field[self.idx(ix, iy + 1)] - self.field[self.idx(ix, iy - 1)];
                px += (c.conj() * dx).im;
                py += (c.conj() * dy).im;
                n += c.norm_sqr();
            }
        }
        let f = 1.0 / (2.0 * self.h * n);
        (px * f, py * f)
    }

    /// ⟨p²⟩ per axis via the second-difference kinetic form.
    pub fn momentum_sq_mean(&self) -> (f64, f64) {
        let mut kx = 0.0;
        let mut ky = 0.0;
        let mut n = 0.0;
        for iy in 1..self.ny - 1 {
            for ix in 1..self.nx - 1 {
                let c = self.field[self.idx(ix, iy)];
                let lx = self.field[self.idx(ix + 1, iy)] + self.field[self.idx(ix - 1, iy)]
                    - 2.0 * c;
                let ly = self.field[self.idx(ix, iy + 1)] + self.field[self.idx(ix, iy - 1)]
                    - 2.0 * c;
                kx -= (c.conj() * lx).re;
                ky -= (c.conj() * ly).re;
                n += c.norm_sqr();
            }
        }
        let f = 1.0 / (self.h * self.h * n);
        (kx * f, ky * f)
    }
}
