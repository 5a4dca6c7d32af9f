//! Staggered first-order discretisation of one angular mode.
//!
//! With `k = (n-1)/2` and `nu = |mu|`, the mode operator factors as
//! `A = d/ds + k r'/r + nu/r` acting in `L^2(r^{n-1} ds)`. `psi1` lives on
//! `q_j = (j+1) h` and `psi2` on `p_j = (j + 1/2) h`, `h = L / (N + 1/2)`,
//! so both poles sit half a cell outside the unknowns. After the
//! substitution `v = r^k psi` the discrete `A` is a lower-bidiagonal square
//! matrix `M`, and `D^2` restricted to the mode is `M^T M` on the `psi1`
//! side and `M M^T` on the `psi2` side. Both are positive semidefinite
//! tridiagonals with identical spectra, which avoids the spurious low modes
//! of a direct discretisation of the second-order form.

use crate::error::{Error, Result};
use crate::geometry::SurfaceGeometry;
use crate::numerics::TridiagSpec;

/// `r`, `dr/ds` sampled on the two staggered grids.
#[derive(Debug, Clone)]
pub(crate) struct RadialGrid {
    pub(crate) h: f64,
    pub(crate) k: f64,
    pub(crate) p: Vec<f64>,
    pub(crate) r_p: Vec<f64>,
    pub(crate) dr_p: Vec<f64>,
    pub(crate) r_q: Vec<f64>,
}

impl RadialGrid {
    pub(crate) fn sample(g: &SurfaceGeometry, size: usize) -> Result<Self> {
        let len = g.length();
        let h = len / (size as f64 + 0.5);
        let mut p = Vec::with_capacity(size);
        let mut r_p = Vec::with_capacity(size);
        let mut dr_p = Vec::with_capacity(size);
        let mut r_q = Vec::with_capacity(size);
        for j in 0..size {
            let sp = (j as f64 + 0.5) * h;
            let sq = ((j + 1) as f64 * h).min(len);
            let a = g.radial(sp)?;
            let b = g.radial(sq)?;
            if !(a.r > 0.0 && a.r.is_finite() && a.dr.is_finite()) {
                return Err(Error::Singularity { s: sp });
            }
            if !(b.r > 0.0 && b.r.is_finite()) {
                return Err(Error::Singularity { s: sq });
            }
            p.push(sp);
            r_p.push(a.r);
            dr_p.push(a.dr);
            r_q.push(b.r);
        }
        Ok(Self {
            h,
            k: 0.5 * (g.n() as f64 - 1.0),
            p,
            r_p,
            dr_p,
            r_q,
        })
    }

    pub(crate) fn size(&self) -> usize {
        self.p.len()
    }
}

/// Symmetrised lower-bidiagonal `M`: `diag[j] = M[j][j]`,
/// `sub[j] = M[j][j-1]` (`sub[0]` unused).
#[derive(Debug, Clone)]
pub(crate) struct Bidiagonal {
    pub(crate) diag: Vec<f64>,
    pub(crate) sub: Vec<f64>,
}

impl Bidiagonal {
    pub(crate) fn assemble(grid: &RadialGrid, nu: f64) -> Result<Self> {
        let m = grid.size();
        let inv_h = 1.0 / grid.h;
        let mut diag = vec![0.0; m];
        let mut sub = vec![0.0; m];
        for j in 0..m {
            let rp = grid.r_p[j];
            let c = (grid.k * grid.dr_p[j] + nu) / rp;
            let wp = rp.powf(grid.k);
            diag[j] = wp * (inv_h + 0.5 * c) / grid.r_q[j].powf(grid.k);
            if j > 0 {
                sub[j] = wp * (-inv_h + 0.5 * c) / grid.r_q[j - 1].powf(grid.k);
            }
            if !(diag[j].is_finite() && sub[j].is_finite()) {
                return Err(Error::Singularity { s: grid.p[j] });
            }
        }
        Ok(Self { diag, sub })
    }

    /// `M^T M`, acting on the `psi1` unknowns.
    pub(crate) fn gram_q(&self) -> Result<TridiagSpec<f64>> {
        let m = self.diag.len();
        let d = (0..m)
            .map(|j| {
                let below = if j + 1 < m { self.sub[j + 1] } else { 0.0 };
                self.diag[j] * self.diag[j] + below * below
            })
            .collect();
        let e = (0..m.saturating_sub(1))
            .map(|j| self.sub[j + 1] * self.diag[j + 1])
            .collect();
        TridiagSpec::new(d, e)
    }

    /// `M M^T`, acting on the `psi2` unknowns.
    pub(crate) fn gram_p(&self) -> Result<TridiagSpec<f64>> {
        let m = self.diag.len();
        let d = (0..m)
            .map(|j| {
                let left = if j > 0 { self.sub[j] } else { 0.0 };
                self.diag[j] * self.diag[j] + left * left
            })
            .collect();
        let e = (0..m.saturating_sub(1))
            .map(|j| self.diag[j] * self.sub[j + 1])
            .collect();
        TridiagSpec::new(d, e)
    }

    /// `M x`.
    pub(crate) fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..x.len())
            .map(|j| {
                let mut y = self.diag[j] * x[j];
                if j > 0 {
                    y += self.sub[j] * x[j - 1];
                }
                y
            })
            .collect()
    }

    /// `M^T y`.
    pub(crate) fn apply_t(&self, y: &[f64]) -> Vec<f64> {
        let m = y.len();
        (0..m)
            .map(|j| {
                let mut x = self.diag[j] * y[j];
                if j + 1 < m {
                    x += self.sub[j + 1] * y[j + 1];
                }
                x
            })
            .collect()
    }
}
