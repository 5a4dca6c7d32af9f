//! Dirac spectrum of the warped product `ds^2 + r(s)^2 g_{S^{n-1}}` by
//! separation into angular modes.
//!
//! The angular Dirac operator on the round `S^{n-1}` has eigenvalues
//! `mu = ±((n-1)/2 + m)`. For each `mu` and chirality sign `epsilon` the
//! square of the Dirac operator restricted to the mode is a one-dimensional
//! Schrödinger operator with potential `(mu^2 - epsilon mu r') / r^2`. The
//! smallest eigenvalue of `D^2` is the minimum over modes.

mod clifford;
mod operator;
mod shooting;
mod spinor;

pub use clifford::{clifford_unit, skew_pairing};
pub use shooting::{shooting_lambda1, shooting_mode, ShootingConfig};
pub use spinor::{eigenspinor_profile, RadialEigenspinor};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SurfaceGeometry;
use crate::numerics::{tridiag_smallest, tridiag_solve};
use crate::profile::neck_radius;

use operator::{Bidiagonal, RadialGrid};

/// Hard ceiling for automatic truncation growth.
pub const MAX_MODES: usize = 64;
/// Smallest accepted radial grid.
pub const MIN_SPECTRAL_GRID: usize = 256;

/// `{±((n-1)/2 + m) : 0 <= m <= m_max}`, ascending.
pub fn mode_set(n: usize, m_max: usize) -> Vec<f64> {
    let k = 0.5 * (n as f64 - 1.0);
    let mut out: Vec<f64> = (0..=m_max)
        .flat_map(|m| {
            let v = k + m as f64;
            [-v, v]
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// One angular mode of `D^2` on a given geometry.
#[derive(Debug, Clone, Copy)]
pub struct ModeProblem<'g> {
    geometry: &'g SurfaceGeometry,
    mu: f64,
    epsilon: i8,
}

impl<'g> ModeProblem<'g> {
    pub fn new(geometry: &'g SurfaceGeometry, mu: f64, epsilon: i8) -> Result<Self> {
        if !(mu != 0.0 && mu.is_finite()) {
            return Err(Error::Domain(format!(
                "mode value must be non-zero, got {mu}"
            )));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Domain(format!("epsilon must be ±1, got {epsilon}")));
        }
        Ok(Self {
            geometry,
            mu,
            epsilon,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    /// `V(s) = (mu^2 - epsilon mu r'(s)) / r(s)^2`.
    pub fn potential(&self, s: f64) -> Result<f64> {
        let rp = self.geometry.radial(s)?;
        let v = (self.mu * self.mu - f64::from(self.epsilon) * self.mu * rp.dr) / (rp.r * rp.r);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Singularity { s })
        }
    }

    /// `true` when this `(mu, epsilon)` is the `A^* A` side, whose unknowns
    /// vanish at the north pole.
    fn on_q_side(&self) -> bool {
        f64::from(self.epsilon) * self.mu.signum() < 0.0
    }

    fn lambda1_on(&self, grid: &RadialGrid) -> Result<f64> {
        let m = Bidiagonal::assemble(grid, self.mu.abs())?;
        let spec = if self.on_q_side() {
            m.gram_q()?
        } else {
            m.gram_p()?
        };
        Ok(tridiag_smallest(&spec, 1)?[0])
    }
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < MIN_SPECTRAL_GRID {
        return Err(Error::Precondition(format!(
            "spectral grid must be >= {MIN_SPECTRAL_GRID}, got {grid_size}"
        )));
    }
    Ok(())
}

/// Smallest eigenvalue of `D^2` on the `(mu, epsilon)` mode with `grid_size`
/// unknowns per component (no extrapolation).
pub fn mode_lambda1(g: &SurfaceGeometry, mu: f64, epsilon: i8, grid_size: usize) -> Result<f64> {
    check_grid(grid_size)?;
    let problem = ModeProblem::new(g, mu, epsilon)?;
    problem.lambda1_on(&RadialGrid::sample(g, grid_size)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEstimate {
    pub mu: f64,
    pub epsilon: i8,
    pub coarse: f64,
    pub fine: f64,
    /// Second-order Richardson value `(4 fine - coarse) / 3`.
    pub extrapolated: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Richardson {
    pub grid_sizes: [usize; 3],
    pub coarse: f64,
    pub fine: f64,
    pub finest: f64,
    pub extrapolated: f64,
    /// `log2((l_N - l_2N) / (l_2N - l_4N))`, absent when the differences
    /// are below round-off.
    pub order: Option<f64>,
}

/// Lower bound of the potential over all modes not computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationCertificate {
    pub next_mu: f64,
    pub r_max: f64,
    pub potential_floor: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub n: usize,
    pub scale: f64,
    pub lambda1_sq: f64,
    pub ground_mu: f64,
    pub ground_epsilon: i8,
    pub m_max: usize,
    pub grid_size: usize,
    pub per_mode: Vec<ModeEstimate>,
    pub richardson: Richardson,
    pub certificate: TruncationCertificate,
    /// Ground-mode `psi1`-side vector of `M^T M` on the fine grid, in the
    /// substituted variable `v = r^k psi`.
    #[serde(skip)]
    pub(crate) ground_vector: Vec<f64>,
    #[serde(skip)]
    pub(crate) ground_grid: usize,
}

impl SpectrumResult {
    pub fn lambda1(&self) -> f64 {
        self.lambda1_sq.sqrt()
    }
}

/// Smallest eigenvalue of `D^2` over the modes `m <= m_max`, grown
/// automatically until the truncation certificate holds.
///
/// Each mode is solved on `N` and `2N` points and extrapolated; the ground
/// mode is additionally solved on `4N` to estimate the observed order.
pub fn dirac_lambda1(
    g: &SurfaceGeometry,
    m_max: usize,
    grid_size: usize,
) -> Result<SpectrumResult> {
    check_grid(grid_size)?;
    let grids = [
        RadialGrid::sample(g, grid_size)?,
        RadialGrid::sample(g, 2 * grid_size)?,
    ];
    let k = 0.5 * (g.n() as f64 - 1.0);
    let profile = g.profile();
    let r_max = if profile.is_round() {
        g.scale()
    } else {
        g.scale() / neck_radius(profile.eta())
    };

    let mut per_mode: Vec<ModeEstimate> = Vec::new();
    let mut m_cur = 0usize;
    let mut target = m_max;
    loop {
        while m_cur <= target {
            let nu = k + m_cur as f64;
            for mu in [-nu, nu] {
                for eps in [1i8, -1] {
                    let problem = ModeProblem::new(g, mu, eps)?;
                    let coarse = problem.lambda1_on(&grids[0])?;
                    let fine = problem.lambda1_on(&grids[1])?;
                    per_mode.push(ModeEstimate {
                        mu,
                        epsilon: eps,
                        coarse,
                        fine,
                        extrapolated: (4.0 * fine - coarse) / 3.0,
                    });
                }
            }
            m_cur += 1;
        }
        let lambda1_sq = per_mode
            .iter()
            .map(|m| m.extrapolated)
            .fold(f64::INFINITY, f64::min);
        let next_mu = k + m_cur as f64;
        // |dr/ds| <= 1 on any curve parametrised by arclength
        let floor = next_mu * (next_mu - 1.0) / (r_max * r_max);
        if floor > lambda1_sq {
            let certificate = TruncationCertificate {
                next_mu,
                r_max,
                potential_floor: floor,
                holds: true,
            };
            return finish(
                g,
                grids,
                per_mode,
                lambda1_sq,
                target,
                grid_size,
                certificate,
            );
        }
        if target >= MAX_MODES {
            return Err(Error::Truncation { m_max: target });
        }
        target += 1;
    }
}

fn finish(
    g: &SurfaceGeometry,
    grids: [RadialGrid; 2],
    mut per_mode: Vec<ModeEstimate>,
    lambda1_sq: f64,
    m_max: usize,
    grid_size: usize,
    certificate: TruncationCertificate,
) -> Result<SpectrumResult> {
    per_mode.sort_by(|a, b| a.mu.total_cmp(&b.mu).then(a.epsilon.cmp(&b.epsilon)));
    let ground = per_mode
        .iter()
        .copied()
        .min_by(|a, b| a.extrapolated.total_cmp(&b.extrapolated))
        .ok_or_else(|| Error::Precondition("no modes computed".into()))?;
    let problem = ModeProblem::new(g, ground.mu, ground.epsilon)?;
    let finest = problem.lambda1_on(&RadialGrid::sample(g, 4 * grid_size)?)?;
    let d1 = ground.coarse - ground.fine;
    let d2 = ground.fine - finest;
    let noise = 1e-13 * ground.fine.abs().max(1.0);
    let order = if d1.abs() > noise && d2.abs() > noise && d1 / d2 > 0.0 {
        Some((d1 / d2).log2())
    } else {
        None
    };
    let richardson = Richardson {
        grid_sizes: [grid_size, 2 * grid_size, 4 * grid_size],
        coarse: ground.coarse,
        fine: ground.fine,
        finest,
        extrapolated: ground.extrapolated,
        order,
    };
    let ground_vector = ground_eigenvector(&grids[1], ground.mu.abs(), ground.fine)?;
    Ok(SpectrumResult {
        n: g.n(),
        scale: g.scale(),
        lambda1_sq,
        ground_mu: ground.mu,
        ground_epsilon: ground.epsilon,
        m_max,
        grid_size,
        per_mode,
        richardson,
        certificate,
        ground_vector,
        ground_grid: grids[1].size(),
    })
}

/// Unit eigenvector of `M^T M` for its smallest eigenvalue by shifted
/// inverse iteration.
fn ground_eigenvector(grid: &RadialGrid, nu: f64, lambda_sq: f64) -> Result<Vec<f64>> {
    let m = Bidiagonal::assemble(grid, nu)?;
    let spec = m.gram_q()?;
    let shift = lambda_sq - 1e-9 * lambda_sq.abs().max(1e-12);
    let size = grid.size();
    let mut v = vec![1.0 / (size as f64).sqrt(); size];
    for _ in 0..4 {
        let w = tridiag_solve(&spec, shift, &v)?;
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Degenerate("inverse iteration broke down".into()));
        }
        v = w.into_iter().map(|x| x / norm).collect();
    }
    Ok(v)
}

pub(crate) fn ground_operator(
    g: &SurfaceGeometry,
    r: &SpectrumResult,
) -> Result<(RadialGrid, Bidiagonal)> {
    let grid = RadialGrid::sample(g, r.ground_grid)?;
    let m = Bidiagonal::assemble(&grid, r.ground_mu.abs())?;
    Ok((grid, m))
}
