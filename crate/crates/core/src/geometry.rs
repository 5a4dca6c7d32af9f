//! Extrinsic and intrinsic geometry of the hypersurface of revolution
//! `x_0 = t`, `|x'| = r(t)` in Euclidean space.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureRule};
use crate::profile::{neck_radius, Jet, WarpProfile};

/// Meridian and rotational principal curvatures for the outward normal.
pub fn principal_curvatures(j: &Jet) -> (f64, f64) {
    let w = (1.0 + j.rdot * j.rdot).sqrt();
    let kappa_t = -j.rddot / (w * w * w);
    let kappa_theta = 1.0 / (j.r * w);
    (kappa_t, kappa_theta)
}

/// `(Scal, H)` from the principal curvatures, with `kappa_theta` of
/// multiplicity `n - 1`.
pub fn scal_and_mean(kappa_t: f64, kappa_theta: f64, n: usize) -> (f64, f64) {
    let m = (n - 1) as f64;
    let scal = 2.0 * m * kappa_t * kappa_theta + m * (m - 1.0) * kappa_theta * kappa_theta;
    let mean = (kappa_t + m * kappa_theta) / n as f64;
    (scal, mean)
}

/// Volume of the unit `k`-sphere.
pub fn sphere_area(k: usize) -> f64 {
    use std::f64::consts::PI;
    match k {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (k - 1) as f64 * sphere_area(k - 2),
    }
}

/// `int_0^phi sin^k`.
fn sine_power_integral(k: usize, phi: f64) -> f64 {
    match k {
        0 => phi,
        1 => 1.0 - phi.cos(),
        _ => {
            let kf = k as f64;
            -phi.sin().powi(k as i32 - 1) * phi.cos() / kf
                + (kf - 1.0) / kf * sine_power_integral(k - 2, phi)
        }
    }
}

/// Polar angle of the cap boundary, `arccos(2 eta)`.
fn cap_angle(eta: f64) -> f64 {
    (2.0 * eta).acos()
}

/// Geometry of a profile at a given homothety factor. All accessors return
/// scaled quantities; the base integrals are kept unscaled so repeated
/// rescaling composes exactly.
#[derive(Debug, Clone)]
pub struct SurfaceGeometry {
    profile: Arc<WarpProfile>,
    scale: f64,
    base_vol: f64,
    base_h2: f64,
    phi_eta: f64,
    /// Arclength from `t = eta` down to each positive neck node.
    neck_sigma: Vec<f64>,
    neck_len: f64,
}

const NECK_PANELS: usize = 4;

/// Volume, total squared mean curvature and arclength tables.
pub fn measure(p: &WarpProfile) -> Result<SurfaceGeometry> {
    measure_shared(Arc::new(p.clone()))
}

pub fn measure_shared(profile: Arc<WarpProfile>) -> Result<SurfaceGeometry> {
    let n = profile.n();
    let eta = profile.eta();
    let phi_eta = cap_angle(eta);
    let omega = sphere_area(n - 1);
    let cap = sine_power_integral(n - 1, phi_eta);

    let nodes = profile.neck_nodes();
    let mut neck_sigma = vec![0.0; nodes.len()];
    let mut neck_vol = 0.0;
    let mut neck_h2 = 0.0;
    if !nodes.is_empty() {
        let rule = QuadratureRule::simpson(NECK_PANELS)?;
        let eval = |t: f64| {
            profile.eval(t).unwrap_or(Jet {
                r: f64::NAN,
                rdot: f64::NAN,
                rddot: f64::NAN,
            })
        };
        let fail = |e: Error| match e {
            Error::NonFinite { at } => Error::SubstitutionFailure { at },
            other => other,
        };
        for k in (0..nodes.len() - 1).rev() {
            let (a, b) = (nodes[k], nodes[k + 1]);
            let ds = integrate(
                |t| {
                    let j = eval(t);
                    (1.0 + j.rdot * j.rdot).sqrt()
                },
                a,
                b,
                rule,
            )
            .map_err(fail)?;
            neck_sigma[k] = neck_sigma[k + 1] + ds;
            neck_vol += integrate(
                |t| {
                    let j = eval(t);
                    j.r.powi(n as i32 - 1) * (1.0 + j.rdot * j.rdot).sqrt()
                },
                a,
                b,
                rule,
            )
            .map_err(fail)?;
            neck_h2 += integrate(
                |t| {
                    let j = eval(t);
                    let (kt, kth) = principal_curvatures(&j);
                    let (_, h) = scal_and_mean(kt, kth, n);
                    h * h * j.r.powi(n as i32 - 1) * (1.0 + j.rdot * j.rdot).sqrt()
                },
                a,
                b,
                rule,
            )
            .map_err(fail)?;
        }
    }
    let neck_len = 2.0 * neck_sigma.first().copied().unwrap_or(0.0);
    // caps have H = 1, so they contribute equally to volume and H^2 integral
    let base_vol = omega * (2.0 * cap + 2.0 * neck_vol);
    let base_h2 = omega * (2.0 * cap + 2.0 * neck_h2);
    Ok(SurfaceGeometry {
        profile,
        scale: 1.0,
        base_vol,
        base_h2,
        phi_eta,
        neck_sigma,
        neck_len,
    })
}

/// The homothetic image `c M`.
pub fn rescale(g: &SurfaceGeometry, c: f64) -> Result<SurfaceGeometry> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!(
            "scale factor must be positive, got {c}"
        )));
    }
    Ok(SurfaceGeometry {
        scale: g.scale * c,
        ..g.clone()
    })
}

/// Radius and slope of the generating curve at arclength `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    pub t: f64,
    pub r: f64,
    /// `dr/ds`, invariant under rescaling.
    pub dr: f64,
}

impl SurfaceGeometry {
    pub fn profile(&self) -> &WarpProfile {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn volume(&self) -> f64 {
        self.base_vol * self.scale.powi(self.n() as i32)
    }

    /// `int |H|^2 dvol`.
    pub fn h2_integral(&self) -> f64 {
        self.base_h2 * self.scale.powi(self.n() as i32 - 2)
    }

    /// Volume of the unit `(n-1)`-sphere fibre.
    pub fn fibre_area(&self) -> f64 {
        sphere_area(self.n() - 1)
    }

    /// Pole-to-pole meridian length.
    pub fn length(&self) -> f64 {
        (2.0 * self.phi_eta + self.neck_len) * self.scale
    }

    pub fn neck_length(&self) -> f64 {
        self.neck_len * self.scale
    }

    /// Arclength from the north pole to the point with coordinate `t`.
    pub fn arclength(&self, t: f64) -> Result<f64> {
        let eta = self.profile.eta();
        let (lo, hi) = self.profile.domain();
        if !(t >= lo && t <= hi) {
            return Err(Error::Range { t, lo, hi });
        }
        let l = 2.0 * self.phi_eta + self.neck_len;
        let s = if t >= eta {
            (t + eta).min(1.0).acos()
        } else if t <= -eta {
            l - (eta - t).min(1.0).acos()
        } else {
            let sigma = self.neck_sigma_at(t.abs())?;
            if t >= 0.0 {
                self.phi_eta + sigma
            } else {
                self.phi_eta + self.neck_len - sigma
            }
        };
        Ok(s * self.scale)
    }

    fn neck_sigma_at(&self, tau: f64) -> Result<f64> {
        let nodes = self.profile.neck_nodes();
        let k = nodes.partition_point(|&x| x <= tau);
        let i = k.saturating_sub(1).min(nodes.len() - 1);
        if nodes[i] == tau || i == nodes.len() - 1 {
            return Ok(self.neck_sigma[i]);
        }
        let rule = QuadratureRule::simpson(NECK_PANELS)?;
        let ds = integrate(
            |t| {
                let j = self.profile.eval(t).map(|j| j.rdot).unwrap_or(f64::NAN);
                (1.0 + j * j).sqrt()
            },
            tau,
            nodes[i + 1],
            rule,
        )?;
        Ok(self.neck_sigma[i + 1] + ds)
    }

    /// Radius and `dr/ds` at arclength `s` from the north pole.
    pub fn radial(&self, s: f64) -> Result<RadialPoint> {
        let c = self.scale;
        let l = 2.0 * self.phi_eta + self.neck_len;
        let u = s / c;
        if !(u >= 0.0 && u <= l) {
            return Err(Error::Range {
                t: s,
                lo: 0.0,
                hi: l * c,
            });
        }
        let eta = self.profile.eta();
        let (t, r, dr) = if u <= self.phi_eta {
            (u.cos() - eta, u.sin(), u.cos())
        } else if u >= l - self.phi_eta {
            let v = l - u;
            (eta - v.cos(), v.sin(), -v.cos())
        } else {
            let sigma = u - self.phi_eta;
            let half = 0.5 * self.neck_len;
            let (target, sign) = if sigma <= half {
                (sigma, 1.0)
            } else {
                (self.neck_len - sigma, -1.0)
            };
            let tau = self.invert_sigma(target)?;
            let t = sign * tau;
            let j = self.profile.eval(t)?;
            (t, j.r, -j.rdot / (1.0 + j.rdot * j.rdot).sqrt())
        };
        Ok(RadialPoint { t, r: r * c, dr })
    }

    /// Solves `sigma(tau) = target` for `tau in [0, eta]` by safeguarded
    /// Newton iteration inside the bracketing table interval.
    fn invert_sigma(&self, target: f64) -> Result<f64> {
        let nodes = self.profile.neck_nodes();
        let sig = &self.neck_sigma;
        // sigma decreases along the ascending nodes
        let k = sig.partition_point(|&x| x > target);
        if k == 0 {
            return Ok(0.0);
        }
        if k >= nodes.len() {
            return Ok(nodes[nodes.len() - 1]);
        }
        let (mut a, mut b) = (nodes[k - 1], nodes[k]);
        let (sa, sb) = (sig[k - 1], sig[k]);
        if sa == sb {
            return Ok(a);
        }
        let mut t = a + (b - a) * (sa - target) / (sa - sb);
        for _ in 0..60 {
            let f = self.neck_sigma_at(t)? - target;
            if f.abs() <= 1e-15 * (1.0 + target) {
                break;
            }
            if f > 0.0 {
                a = t;
            } else {
                b = t;
            }
            let j = self.profile.eval(t)?;
            let step = f / (1.0 + j.rdot * j.rdot).sqrt();
            let next = t + step;
            t = if next > a && next < b {
                next
            } else {
                0.5 * (a + b)
            };
            if b - a <= 1e-16 {
                break;
            }
        }
        Ok(t)
    }
}

// ---------------------------------------------------------------------------
// Curvature report

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub t: f64,
    pub s: f64,
    pub kappa_t: f64,
    pub kappa_theta: f64,
    pub scal: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    /// Worst signed slack over the region; negative means violated.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub n: usize,
    pub scale: f64,
    pub samples: Vec<CurvatureSample>,
    pub verdicts: Vec<Verdict>,
    pub min_scal: f64,
}

impl CurvatureReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

/// Maps a profile jet to `(kappa_t, kappa_theta)`; injectable so callers can
/// exercise the verdicts with a deliberately broken formula.
pub type CurvatureFn = fn(&Jet) -> (f64, f64);

pub fn curvature_report(g: &SurfaceGeometry) -> Result<CurvatureReport> {
    curvature_report_with(g, principal_curvatures)
}

const VERDICT_TOL: f64 = 1e-9;

struct Check {
    name: &'static str,
    margin: f64,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            margin: f64::INFINITY,
        }
    }

    fn at_least(&mut self, value: f64, bound: f64) {
        self.margin = self.margin.min(value - bound);
    }

    fn at_most(&mut self, value: f64, bound: f64) {
        self.margin = self.margin.min(bound - value);
    }

    fn equals(&mut self, value: f64, target: f64) {
        let scale = target.abs().max(1.0);
        self.margin = self.margin.min(-(value - target).abs() / scale);
    }

    fn finish(self) -> Verdict {
        let margin = if self.margin.is_nan() {
            f64::NEG_INFINITY
        } else {
            self.margin
        };
        Verdict {
            name: self.name.to_string(),
            holds: margin >= -VERDICT_TOL,
            margin,
        }
    }
}

/// Pointwise curvatures at every stored sample plus the inequality verdicts,
/// all in the scaled metric.
pub fn curvature_report_with(g: &SurfaceGeometry, curv: CurvatureFn) -> Result<CurvatureReport> {
    let p = g.profile();
    let n = p.n();
    let c = g.scale();
    let eta = p.eta();
    let nn = (n * (n - 1)) as f64;
    let mut samples = Vec::with_capacity(p.grid().len());
    for (&t, j) in p.grid().iter().zip(p.samples()) {
        if !(j.r > 0.0) {
            return Err(Error::PoleSingularity { t });
        }
        let (kt, kth) = curv(j);
        let (kt, kth) = (kt / c, kth / c);
        let (scal, mean) = scal_and_mean(kt, kth, n);
        samples.push(CurvatureSample {
            t,
            s: g.arclength(t)?,
            kappa_t: kt,
            kappa_theta: kth,
            scal,
            mean,
        });
    }
    let min_scal = samples.iter().map(|s| s.scal).fold(f64::INFINITY, f64::min);

    let mut cap_mean = Check::new("cap_mean_curvature");
    let mut cap_scal = Check::new("cap_scalar_curvature");
    let mut verdicts = Vec::new();
    let in_cap = |t: f64| if p.is_round() { true } else { t.abs() >= eta };
    for s in samples.iter().filter(|s| in_cap(s.t)) {
        cap_mean.equals(s.mean, 1.0 / c);
        cap_scal.equals(s.scal, nn / (c * c));
    }
    verdicts.push(cap_mean.finish());
    verdicts.push(cap_scal.finish());

    if let Some(s_target) = p.scal_target() {
        let q = neck_radius(eta);
        let q2 = q * q;
        let mut kt_range = Check::new("neck_kappa_t_range");
        let mut kt_strip = Check::new("strip_kappa_t_floor");
        let mut kth_range = Check::new("neck_kappa_theta_range");
        let mut scal_floor = Check::new("neck_scal_floor");
        let mut scal_strip = Check::new("strip_scal_exceeds_target");
        let mut mean_bound = Check::new("neck_mean_bound");
        let mut global = Check::new("global_scal_floor");
        for s in &samples {
            global.at_least(s.scal, nn * q2 * q2 / (c * c));
            if s.t.abs() > eta {
                continue;
            }
            kt_range.at_least(s.kappa_t, 1.0 / c);
            kt_range.at_most(s.kappa_t, 2.0 * s_target / c);
            kth_range.at_least(s.kappa_theta, q2 / c);
            kth_range.at_most(s.kappa_theta, 1.0 / (c * q));
            scal_floor.at_least(s.scal, nn * q2 * q2 / (c * c));
            mean_bound.at_most(s.mean, 2.0 * s_target / c);
            if s.t.abs() <= eta * eta {
                kt_strip.at_least(s.kappa_t, 2.0 * s_target * q2 * q / c);
                scal_strip.at_least(s.scal, s_target / (c * c));
            }
        }
        verdicts.extend([
            kt_range.finish(),
            kt_strip.finish(),
            kth_range.finish(),
            scal_floor.finish(),
            scal_strip.finish(),
            mean_bound.finish(),
            global.finish(),
        ]);
    }
    Ok(CurvatureReport {
        n,
        scale: c,
        samples,
        verdicts,
        min_scal,
    })
}
