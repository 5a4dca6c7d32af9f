use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SurfaceGeometry;

use super::{ground_operator, SpectrumResult};

/// Radially symmetric ground-state spinor density on the cell-centred grid,
/// normalised to unit `L^2` mass under the discrete volume measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialEigenspinor {
    pub n: usize,
    /// Cell centres (arclength from the north pole).
    pub s: Vec<f64>,
    pub cell_width: f64,
    /// `omega_{n-1} r^{n-1} h` for each cell.
    pub cell_volume: Vec<f64>,
    /// `|phi|^2` per cell.
    pub density: Vec<f64>,
    pub sup_norm_sq: f64,
    /// Discrete eigenvalue `lambda` of `D` on the grid used.
    pub lambda: f64,
    /// Extrapolated `lambda_1(D^2)` from the spectrum computation.
    pub lambda1_sq: f64,
    /// `|M^T v2 - lambda v1| / |v|`.
    pub residual: f64,
}

impl RadialEigenspinor {
    pub fn total_mass(&self) -> f64 {
        self.density
            .iter()
            .zip(&self.cell_volume)
            .map(|(d, v)| d * v)
            .sum()
    }

    fn accumulate(&self, radius: f64, weight: impl Fn(usize) -> f64) -> f64 {
        let h = self.cell_width;
        self.s
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let lo = c - 0.5 * h;
                let frac = ((radius - lo) / h).clamp(0.0, 1.0);
                frac * weight(j)
            })
            .sum()
    }

    /// `int_{B_R} |phi|^2` for the geodesic ball `{s < R}` about the north pole.
    pub fn ball_mass(&self, radius: f64) -> f64 {
        self.accumulate(radius, |j| self.density[j] * self.cell_volume[j])
    }

    /// Discrete volume of `{s < R}`.
    pub fn ball_volume(&self, radius: f64) -> f64 {
        self.accumulate(radius, |j| self.cell_volume[j])
    }
}

/// Reconstructs the ground-state spinor `phi = (psi1, psi2)` of a spectrum
/// result and its pointwise density.
pub fn eigenspinor_profile(
    g: &SurfaceGeometry,
    result: &SpectrumResult,
) -> Result<RadialEigenspinor> {
    if result.ground_vector.len() != result.ground_grid || result.ground_grid == 0 {
        return Err(Error::Precondition(
            "spectrum result carries no ground-mode eigenvector".into(),
        ));
    }
    let (grid, m) = ground_operator(g, result)?;
    let v1 = &result.ground_vector;
    let mv = m.apply(v1);
    let lambda_sq: f64 = mv.iter().map(|x| x * x).sum();
    let lambda = lambda_sq.sqrt();
    if !(lambda > 0.0) {
        return Err(Error::Degenerate(
            "zero eigenvalue: psi2 cannot be recovered".into(),
        ));
    }
    let v2: Vec<f64> = mv.iter().map(|x| x / lambda).collect();
    let back = m.apply_t(&v2);
    let res: f64 = back
        .iter()
        .zip(v1)
        .map(|(b, a)| (b - lambda * a).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm = (v1.iter().chain(&v2).map(|x| x * x).sum::<f64>()).sqrt();
    let residual = res / (lambda * norm);

    let size = grid.size();
    let k = grid.k;
    let n = g.n();
    let omega = g.fibre_area();
    let h = grid.h;
    let psi1_q: Vec<f64> = (0..size).map(|j| v1[j] / grid.r_q[j].powf(k)).collect();
    let mut density = Vec::with_capacity(size);
    let mut cell_volume = Vec::with_capacity(size);
    for j in 0..size {
        let left = if j > 0 { psi1_q[j - 1] } else { 0.0 };
        let psi1 = 0.5 * (left + psi1_q[j]);
        let psi2 = v2[j] / grid.r_p[j].powf(k);
        let d = psi1 * psi1 + psi2 * psi2;
        if !d.is_finite() {
            return Err(Error::Degenerate(format!(
                "density not finite at s = {}",
                grid.p[j]
            )));
        }
        density.push(d);
        cell_volume.push(omega * grid.r_p[j].powi(n as i32 - 1) * h);
    }
    let mass: f64 = density.iter().zip(&cell_volume).map(|(d, v)| d * v).sum();
    if !(mass > 0.0) {
        return Err(Error::Degenerate("spinor has zero mass".into()));
    }
    for d in &mut density {
        *d /= mass;
    }
    let sup_norm_sq = density.iter().copied().fold(0.0, f64::max);
    Ok(RadialEigenspinor {
        n,
        s: grid.p,
        cell_width: h,
        cell_volume,
        density,
        sup_norm_sq,
        lambda,
        lambda1_sq: result.lambda1_sq,
        residual,
    })
}
