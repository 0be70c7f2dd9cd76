//! Hard-potential node sets: the α → ∞ limit is realized by pinning the
//! wavefunction to zero on the support (Dirichlet nodes).

use super::grid::GridState;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MaskKind {
    /// No constraint (free propagation).
    Free,
    /// Half-line screen: the x = 0 column at y < 0.
    Edge,
    /// Full wall: the entire x = 0 column.
    Wall,
    /// Hard disk of radius `a` centered at the origin.
    Disk,
    /// Segment of length 2a through the origin at π/4 to both axes
    /// (perpendicular to the incoming diagonal), one node thick.
    Strip,
}

/// Dirichlet node set for a hard potential, with per-line free segments
/// precomputed for the tridiagonal solver.
#[derive(Debug, Clone)]
pub struct PotentialMask {
    pub kind: MaskKind,
    /// Geometry parameter (disk radius or strip half-length); zero otherwise.
    pub a: f64,
    pub nodes: Vec<bool>,
    /// Free index ranges [start, end) along x for every row.
    pub row_segments: Vec<Vec<(usize, usize)>>,
    /// Free index ranges [start, end) along y for every column.
    pub col_segments: Vec<Vec<(usize, usize)>>,
}

impl PotentialMask {
    fn from_predicate<F: Fn(usize, usize) -> bool>(
        grid: &GridState,
        kind: MaskKind,
        a: f64,
        blocked: F,
    ) -> Self {
        let (nx, ny) = (grid.nx, grid.ny);
        let mut nodes = vec![false; nx * ny];
        for iy in 0..ny {
            for ix in 0..nx {
                if blocked(ix, iy) {
                    nodes[iy * nx + ix] = true;
                }
            }
        }
        // The outer frame is Dirichlet as well; segments cover interior
        // nodes only, split at masked cells.
        let segments = |n_line: usize, n_other: usize, node_at: &dyn Fn(usize, usize) -> bool| {
            let mut all = Vec::with_capacity(n_other);
            for j in 0..n_other {
                let mut segs = Vec::new();
                let mut start = None;
                for i in 1..n_line - 1 {
                    if node_at(i, j) {
                        if let Some(s) = start.take() {
                            segs.push((s, i));
                        }
                    } else if start.is_none() {
                        start = Some(i);
                    }
                }
                if let Some(s) = start {
                    segs.push((s, n_line - 1));
                }
                all.push(segs);
            }
            all
        };
        let row_segments = segments(nx, ny, &|i, j| nodes[j * nx + i]);
        let col_segments = segments(ny, nx, &|j, i| nodes[j * nx + i]);
        Self {
            kind,
            a,
            nodes,
            row_segments,
            col_segments,
        }
    }

    pub fn free(grid: &GridState) -> Self {
        Self::from_predicate(grid, MaskKind::Free, 0.0, |_, _| false)
    }

    pub fn edge(grid: &GridState) -> Self {
        let (ix0, iy0) = (grid.ix0, grid.iy0);
        Self::from_predicate(grid, MaskKind::Edge, 0.0, |ix, iy| ix == ix0 && iy < iy0)
    }

    pub fn wall(grid: &GridState) -> Self {
        let ix0 = grid.ix0;
        Self::from_predicate(grid, MaskKind::Wall, 0.0, |ix, _| ix == ix0)
    }

    pub fn disk(grid: &GridState, a: f64) -> Self {
        let a2 = a * a;
        let g = grid.clone();
        Self::from_predicate(grid, MaskKind::Disk, a, move |ix, iy| {
            let x = g.x(ix);
            let y = g.y(iy);
            x * x + y * y <= a2
        })
    }

    pub fn strip(grid: &GridState, a: f64) -> Self {
        let g = grid.clone();
        let reach = std::f64::consts::SQRT_2 * a;
        Self::from_predicate(grid, MaskKind::Strip, a, move |ix, iy| {
            // staircase diagonal x + y = 0, limited to |x − y| ≤ √2 a
            let on_diag = (ix as i64 - g.ix0 as i64) + (iy as i64 - g.iy0 as i64) == 0;
            on_diag && (g.x(ix) - g.y(iy)).abs() <= reach
        })
    }

    #[inline]
    pub fn is_blocked(&self, idx: usize) -> bool {
        self.nodes[idx]
    }

    /// Pin ψ to zero on the mask support.
    pub fn apply(&self, grid: &mut GridState) {
        for (c, &b) in grid.field.iter_mut().zip(&self.nodes) {
            if b {
                *c = num_complex::Complex64::new(0.0, 0.0);
            }
        }
    }

    pub fn blocked_count(&self) -> usize {
        self.nodes.iter().filter(|&&b| b).count()
    }
}
