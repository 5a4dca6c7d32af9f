//! Independent check of the mode solver: RK4 shooting on the first-order
//! system
//!
//! ```text
//! psi1' = -(k r'/r + nu/r) psi1 + lambda psi2
//! psi2' = (-k r'/r + nu/r) psi2 - lambda psi1
//! ```
//!
//! from both poles with the regular local solutions, matched at mid-length.

use crate::error::{Error, Result};
use crate::geometry::SurfaceGeometry;
use crate::numerics::bisect;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Distance from each pole where integration starts.
    pub start: f64,
    /// RK4 steps per half.
    pub steps: usize,
    /// Scan step in `lambda` when looking for the first sign change.
    pub scan_step: f64,
    pub scan_max: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            start: 1e-3,
            steps: 4000,
            scan_step: 0.02,
            scan_max: 20.0,
        }
    }
}

/// `(r, dr/ds)` sampled at RK4 nodes and midpoints of a graded mesh.
struct Half {
    s: Vec<f64>,
    node: Vec<(f64, f64)>,
    mid: Vec<(f64, f64)>,
}

impl Half {
    fn build<F: Fn(f64) -> Result<(f64, f64)>>(
        radial: &F,
        from: f64,
        to: f64,
        steps: usize,
    ) -> Result<Self> {
        // quadratic grading resolves the 1/s coefficients near the pole
        let s: Vec<f64> = (0..=steps)
            .map(|i| {
                let x = i as f64 / steps as f64;
                from + (to - from) * x * x
            })
            .collect();
        let node = s.iter().map(|&x| radial(x)).collect::<Result<Vec<_>>>()?;
        let mid = s
            .windows(2)
            .map(|w| radial(0.5 * (w[0] + w[1])))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { s, node, mid })
    }

    fn integrate(&self, k: f64, nu: f64, lambda: f64, y0: [f64; 2]) -> [f64; 2] {
        let f = |(r, dr): (f64, f64), y: [f64; 2]| -> [f64; 2] {
            let a = k * dr / r;
            let b = nu / r;
            [
                -(a + b) * y[0] + lambda * y[1],
                (b - a) * y[1] - lambda * y[0],
            ]
        };
        let mut y = y0;
        for i in 0..self.s.len() - 1 {
            let h = self.s[i + 1] - self.s[i];
            let k1 = f(self.node[i], y);
            let k2 = f(
                self.mid[i],
                [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]],
            );
            let k3 = f(
                self.mid[i],
                [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]],
            );
            let k4 = f(self.node[i + 1], [y[0] + h * k3[0], y[1] + h * k3[1]]);
            for c in 0..2 {
                y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
            let scale = y[0].abs().max(y[1].abs());
            if scale > 1e100 {
                y = [y[0] / scale, y[1] / scale];
            }
        }
        y
    }
}

/// Smallest `lambda^2` on the mode `nu = |mu|` for the curve `s -> (r, dr/ds)`
/// on `[0, length]` with round-sphere behaviour at both ends.
pub fn shooting_lambda1<F>(
    radial: F,
    n: usize,
    nu: f64,
    length: f64,
    cfg: ShootingConfig,
) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    if n < 2 || !(nu > 0.0) || !(length > 2.0 * cfg.start) {
        return Err(Error::Precondition("invalid shooting problem".into()));
    }
    let k = 0.5 * (n as f64 - 1.0);
    let e = nu - k;
    let mid = 0.5 * length;
    let s0 = cfg.start;
    let left = Half::build(&radial, s0, mid, cfg.steps)?;
    let right = Half::build(&radial, length - s0, mid, cfg.steps)?;

    let mismatch = |lambda: f64| -> f64 {
        let a = s0.powf(e);
        let b = lambda * s0.powf(e + 1.0) / (2.0 * nu + 1.0);
        let l = left.integrate(k, nu, lambda, [b, a]);
        let r = right.integrate(k, nu, lambda, [a, b]);
        let det = l[0] * r[1] - l[1] * r[0];
        let norm = (l[0].hypot(l[1])) * (r[0].hypot(r[1]));
        det / norm
    };

    let mut lo = cfg.scan_step;
    let mut f_lo = mismatch(lo);
    while lo < cfg.scan_max {
        let hi = lo + cfg.scan_step;
        let f_hi = mismatch(hi);
        if f_lo.signum() != f_hi.signum() {
            let lambda = bisect(mismatch, lo, hi, 1e-13)?;
            return Ok(lambda * lambda);
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::Bracket {
        lo: cfg.scan_step,
        hi: cfg.scan_max,
        f_lo: mismatch(cfg.scan_step),
        f_hi: f_lo,
    })
}

/// [`shooting_lambda1`] on a measured geometry.
pub fn shooting_mode(g: &SurfaceGeometry, nu: f64, cfg: ShootingConfig) -> Result<f64> {
    shooting_lambda1(
        |s| g.radial(s).map(|p| (p.r, p.dr)),
        g.n(),
        nu,
        g.length(),
        cfg,
    )
}
