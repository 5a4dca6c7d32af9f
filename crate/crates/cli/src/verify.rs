//! Cross-module invariant suite behind `pinched verify`.

use std::time::Instant;

use pinched_sphere::geometry::{principal_curvatures, CurvatureFn};
use pinched_sphere::profile::{junction_accel, DEFAULT_TOLERANCE};
use pinched_sphere::spectral::{shooting_mode, ShootingConfig};
use pinched_sphere::{
    build_profile, curvature_report_with, cutoff_chain, default_r0, dirac_lambda1,
    eigenspinor_profile, extrinsic_bound, friedrich_bound, measure, mode_lambda1, rescale,
    validate_profile, Result, SurfaceGeometry, WarpProfile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: &'static str,
    pub pass: bool,
    /// Worst signed slack; negative means violated.
    pub margin: f64,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{:<4} {:<32} margin {:>12.4e}  {}",
            if self.pass { "ok" } else { "FAIL" },
            self.id,
            self.margin,
            self.detail
        )
    }
}

struct Grids {
    profile: usize,
    spectral: usize,
    etas: &'static [f64],
}

fn grids(depth: Depth) -> Grids {
    match depth {
        Depth::Quick => Grids {
            profile: 128,
            spectral: 256,
            etas: &[0.1],
        },
        Depth::Full => Grids {
            profile: 512,
            spectral: 1024,
            etas: &[0.1, 0.05, 0.025],
        },
    }
}

fn outcome(id: &'static str, margin: f64, detail: String) -> Outcome {
    Outcome {
        id,
        pass: margin >= 0.0,
        margin,
        detail,
    }
}

fn failed(id: &'static str, e: impl std::fmt::Display) -> Outcome {
    Outcome {
        id,
        pass: false,
        margin: f64::NEG_INFINITY,
        detail: format!("error: {e}"),
    }
}

fn run_one(id: &'static str, f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(|e| failed(id, e))
}

fn pinched(n: usize, eta: f64, s: f64, grid: usize) -> Result<(WarpProfile, SurfaceGeometry)> {
    let p = build_profile(n, eta, s, grid)?;
    let g = rescale(&measure(&p)?, 1.0 - 4.0 * eta * eta)?;
    Ok((p, g))
}

/// Runs every invariant; `curvature` replaces the principal-curvature formula
/// in the geometric checks.
pub fn run_suite(depth: Depth, curvature: CurvatureFn) -> Vec<Outcome> {
    let gr = grids(depth);
    let mut out = Vec::new();

    out.push(run_one("profile.validator", || {
        let mut worst = f64::INFINITY;
        let mut count = 0;
        for &eta in &[0.2, 0.1, 0.05] {
            for &s in &[2.0, 4.0, 12.0] {
                let Ok(p) = build_profile(2, eta, s, gr.profile) else {
                    continue;
                };
                let v = validate_profile(&p, DEFAULT_TOLERANCE);
                worst = worst.min(v.iter().map(|v| v.margin).fold(0.0, f64::min));
                count += v.len();
            }
        }
        Ok(outcome(
            "profile.validator",
            if count == 0 {
                0.0
            } else {
                worst.min(-f64::MIN_POSITIVE)
            },
            format!("{count} violation(s) over the feasible lattice"),
        ))
    }));

    out.push(run_one("profile.acceleration_bounds", || {
        let eta = 0.1;
        let p = build_profile(2, eta, 4.0, gr.profile)?;
        let upper = junction_accel(eta);
        let margin = p
            .grid()
            .iter()
            .zip(p.samples())
            .filter(|(t, _)| t.abs() <= eta)
            .map(|(_, j)| (j.rddot + 8.0).min(upper - j.rddot))
            .fold(f64::INFINITY, f64::min);
        Ok(outcome(
            "profile.acceleration_bounds",
            margin + DEFAULT_TOLERANCE,
            "-2S <= r'' <= -(1-4eta^2)^(-3/2) on the neck".into(),
        ))
    }));

    out.push(run_one("geometry.cap_curvature", || {
        let mut worst = f64::INFINITY;
        for n in [2usize, 3, 4] {
            let p = build_profile(n, 0.1, 2.0, gr.profile)?;
            let g = measure(&p)?;
            let rep = curvature_report_with(&g, curvature)?;
            for name in ["cap_mean_curvature", "cap_scalar_curvature"] {
                if let Some(v) = rep.verdict(name) {
                    worst = worst.min(v.margin);
                }
            }
        }
        Ok(outcome(
            "geometry.cap_curvature",
            worst + 1e-9,
            "Scal = n(n-1), H = 1 on the caps".into(),
        ))
    }));

    out.push(run_one("geometry.rescaled_scal_floor", || {
        let mut worst = f64::INFINITY;
        for &eta in gr.etas {
            for n in [2usize, 3] {
                let (_, g) = pinched(n, eta, 2.0, gr.profile)?;
                let rep = curvature_report_with(&g, curvature)?;
                worst = worst.min(rep.min_scal - (n * (n - 1)) as f64 + 1e-6);
            }
        }
        Ok(outcome(
            "geometry.rescaled_scal_floor",
            worst,
            "min Scal >= n(n-1) after rescaling".into(),
        ))
    }));

    out.push(run_one("spectral.round_spheres", || {
        let mut worst = f64::INFINITY;
        let mut detail = String::new();
        for (n, exact, tol) in [(2usize, 1.0, 1e-4), (3, 2.25, 1e-3)] {
            let g = measure(&WarpProfile::round(n, gr.profile)?)?;
            let l = dirac_lambda1(&g, 4, gr.spectral)?.lambda1_sq;
            worst = worst.min(tol - (l - exact).abs());
            detail.push_str(&format!("S^{n}: {l:.8} "));
        }
        Ok(outcome("spectral.round_spheres", worst, detail))
    }));

    out.push(run_one("spectral.mode_symmetry", || {
        let (_, g) = pinched(2, 0.1, 4.0, gr.profile)?;
        let mut worst: f64 = 0.0;
        for mu in [0.5, 1.5] {
            for eps in [1i8, -1] {
                let a = mode_lambda1(&g, mu, eps, gr.spectral)?;
                let b = mode_lambda1(&g, -mu, -eps, gr.spectral)?;
                worst = worst.max((a - b).abs());
            }
        }
        Ok(outcome(
            "spectral.mode_symmetry",
            1e-9 - worst,
            format!("max |diff| {worst:.3e}"),
        ))
    }));

    out.push(run_one("spectral.homothety", || {
        let (_, g) = pinched(2, 0.1, 4.0, gr.profile)?;
        let c = 0.7;
        let a = dirac_lambda1(&g, 4, gr.spectral)?.lambda1_sq;
        let b = dirac_lambda1(&rescale(&g, c)?, 4, gr.spectral)?.lambda1_sq;
        let rel = (b * c * c - a).abs() / a;
        Ok(outcome(
            "spectral.homothety",
            1e-6 - rel,
            format!("relative {rel:.3e}"),
        ))
    }));

    out.push(run_one("spectral.shooting_oracle", || {
        let g = measure(&WarpProfile::round(2, gr.profile)?)?;
        let fd = mode_lambda1(&g, 0.5, 1, 2 * gr.spectral)?;
        let cfg = ShootingConfig::default();
        let sh = shooting_mode(&g, 0.5, cfg)?;
        let d = (fd - sh).abs();
        Ok(outcome(
            "spectral.shooting_oracle",
            1e-3 - d,
            format!("grid {fd:.8} vs shooting {sh:.8}"),
        ))
    }));

    out.push(run_one("bounds.eigenvalue_bracket", || {
        let mut worst = f64::INFINITY;
        for &eta in gr.etas {
            for n in [2usize, 3] {
                let (_, g) = pinched(n, eta, 2.0, gr.profile)?;
                let rep = curvature_report_with(&g, curvature)?;
                let l = dirac_lambda1(&g, 6, gr.spectral)?.lambda1_sq;
                let fr = friedrich_bound(n, rep.min_scal)?;
                let ex = extrinsic_bound(&g);
                worst = worst.min(l - fr + 5e-3).min(ex - l + 5e-3);
            }
        }
        Ok(outcome(
            "bounds.eigenvalue_bracket",
            worst,
            "friedrich <= lambda1 <= extrinsic (tol 5e-3)".into(),
        ))
    }));

    out.push(run_one("bounds.cutoff_chain", || {
        let g = measure(&WarpProfile::round(3, gr.profile)?)?;
        let spec = dirac_lambda1(&g, 4, gr.spectral)?;
        let phi = eigenspinor_profile(&g, &spec)?;
        let r0 = default_r0(&g);
        let mut worst = f64::INFINITY;
        for r in [0.2, 0.1, 0.05] {
            let c = cutoff_chain(&g, &phi, r, r0)?;
            worst = worst
                .min(c.quotient - c.lambda1_sq + 1e-9)
                .min(c.final_bound - c.quotient + 1e-9);
        }
        Ok(outcome(
            "bounds.cutoff_chain",
            worst,
            "lambda1 <= quotient <= final".into(),
        ))
    }));

    out
}

/// Runs the suite with the true curvature formula and prints one line per
/// invariant. Returns the identifiers of failing invariants.
pub fn run(depth: Depth) -> (Vec<Outcome>, f64) {
    let start = Instant::now();
    let out = run_suite(depth, principal_curvatures);
    (out, start.elapsed().as_secs_f64())
}
