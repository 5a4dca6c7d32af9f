//! Warping function of the pinched sphere.
//!
//! The pinched profile glues two translated unit-sphere caps,
//! `r(t) = sqrt(1 - (t ± eta)^2)` for `|t| >= eta`, through a neck on
//! `[-eta, eta]` whose second derivative is prescribed in closed form:
//!
//! * `r'' = -2S` on the plateau `|t| <= eta^2`;
//! * on `eta^2 <= |t| <= eta` a smooth-step blend from `-2S` to the cap value
//!   `c_eta = -(1 - 4 eta^2)^(-3/2)`, the step occupying a sub-window whose
//!   centre is tuned so that `r'(0) = 0`.
//!
//! `r'` and `r` are obtained by integrating `r''` inward from the cap data at
//! `t = eta`, never by differentiating samples. The blend is a convex
//! combination of `-2S` and `c_eta`, so the concavity and acceleration bounds
//! hold pointwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{bisect, integrate, smooth_step, QuadratureRule};

/// Validator tolerance used by the construction itself.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Smallest accepted `grid_size`.
pub const MIN_GRID_SIZE: usize = 64;

pub const BLEND_ID_WINDOW: &str = "smoothstep-window-v1";
pub const BLEND_ID_ROUND: &str = "round";

/// Value and first two `t`-derivatives of the warping function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub r: f64,
    pub rdot: f64,
    pub rddot: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    North,
    South,
}

/// `sqrt(1 - 4 eta^2)`.
pub fn neck_radius(eta: f64) -> f64 {
    ((1.0 - 2.0 * eta) * (1.0 + 2.0 * eta)).sqrt()
}

/// Second derivative of the cap at the junction, `-(1 - 4 eta^2)^(-3/2)`.
pub fn junction_accel(eta: f64) -> f64 {
    -neck_radius(eta).powi(-3)
}

/// Closed-form jet of a translated unit-sphere cap.
///
/// North: `sqrt(1 - (t + eta)^2)` on `[eta, 1 - eta]`; south:
/// `sqrt(1 - (t - eta)^2)` on `[-1 + eta, -eta]`. At the pole the
/// derivatives are infinite.
pub fn cap_eval(t: f64, eta: f64, side: Side) -> Result<Jet> {
    let (lo, hi, x) = match side {
        Side::North => (eta, 1.0 - eta, t + eta),
        Side::South => (-1.0 + eta, -eta, t - eta),
    };
    let slack = 1e-14;
    if !(t >= lo - slack && t <= hi + slack) {
        return Err(Error::Range { t, lo, hi });
    }
    let x = x.clamp(-1.0, 1.0);
    let one_minus_x2 = (1.0 - x) * (1.0 + x);
    let r = one_minus_x2.sqrt();
    if r == 0.0 {
        let inf = f64::INFINITY;
        let rdot = if x > 0.0 { -inf } else { inf };
        return Ok(Jet {
            r,
            rdot,
            rddot: -inf,
        });
    }
    Ok(Jet {
        r,
        rdot: -x / r,
        rddot: -1.0 / (one_minus_x2 * r),
    })
}

// ---------------------------------------------------------------------------
// Feasibility

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityCheck {
    pub name: String,
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub eta: f64,
    pub s_target: f64,
    pub ok: bool,
    pub checks: Vec<FeasibilityCheck>,
}

impl FeasibilityReport {
    pub fn failed(&self) -> impl Iterator<Item = &FeasibilityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failed()
            .map(|c| format!("({}) {} [{} vs {}]", c.name, c.relation, c.lhs, c.rhs))
            .collect();
        if failed.is_empty() {
            format!("eta = {}, S = {}: all checks pass", self.eta, self.s_target)
        } else {
            format!(
                "eta = {}, S = {}: violated {}",
                self.eta,
                self.s_target,
                failed.join("; ")
            )
        }
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "feasibility for eta = {}, S = {}:",
            self.eta, self.s_target
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<8} {:<52} lhs = {:<24e} rhs = {:<24e} {}",
                c.name,
                c.relation,
                c.lhs,
                c.rhs,
                if c.pass { "ok" } else { "VIOLATED" }
            )?;
        }
        Ok(())
    }
}

/// Evaluates the admissibility inequalities for the neck parameters.
///
/// (a) `2 S eta^2 < 2 eta / sqrt(1 - 4 eta^2)`,
/// (b) `S > 1 / sqrt(1 - 4 eta^2)`,
/// (c) `S < (1/eta + 1 - 8 eta) / (2 (1 - 4 eta^2)^(3/2))`,
/// together with `S > 1` and `eta < 1/2`. (b) and (c) are exactly the
/// conditions under which a concave neck with plateau `-2S` and acceleration
/// bounds can reach `r'(0) = 0`.
pub fn feasibility(eta: f64, s_target: f64) -> Result<FeasibilityReport> {
    if !eta.is_finite() || eta <= 0.0 {
        return Err(Error::Domain(format!(
            "eta must lie in (0, 1/2), got {eta}"
        )));
    }
    if eta >= 0.5 {
        return Err(Error::Domain(format!(
            "eta must lie in (0, 1/2), got {eta}: 1 - 4 eta^2 <= 0"
        )));
    }
    if !s_target.is_finite() {
        return Err(Error::Domain(format!("S must be finite, got {s_target}")));
    }
    let q = neck_radius(eta);
    let s = s_target;
    let check = |name: &str, relation: &str, lhs: f64, rhs: f64, pass: bool| FeasibilityCheck {
        name: name.to_string(),
        relation: relation.to_string(),
        lhs,
        rhs,
        pass,
    };
    let a_rhs = 2.0 * eta / q;
    let b_rhs = 1.0 / q;
    let c_rhs = (1.0 / eta + 1.0 - 8.0 * eta) / (2.0 * q * q * q);
    let checks = vec![
        check("S>1", "we need to assume S > 1", s, 1.0, s > 1.0),
        check("eta<1/2", "eta < 1/2", eta, 0.5, eta < 0.5),
        check(
            "a",
            "2 S eta^2 < 2 eta / sqrt(1 - 4 eta^2)",
            2.0 * s * eta * eta,
            a_rhs,
            2.0 * s * eta * eta < a_rhs,
        ),
        check("b", "S > 1 / sqrt(1 - 4 eta^2)", s, b_rhs, s > b_rhs),
        check(
            "c",
            "S < (1/eta + 1 - 8 eta) / (2 (1 - 4 eta^2)^(3/2))",
            s,
            c_rhs,
            s < c_rhs,
        ),
    ];
    let ok = checks.iter().all(|c| c.pass);
    Ok(FeasibilityReport {
        eta,
        s_target,
        ok,
        checks,
    })
}

// ---------------------------------------------------------------------------
// Neck

/// Closed-form neck acceleration. `center` places the smooth step inside
/// `u in [0, 1]`, `u = (|t| - eta^2) / (eta - eta^2)`; the step occupies
/// `[center - hw, center + hw]` with `hw = min(center, 1 - center)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeckBlend {
    eta: f64,
    s_target: f64,
    center: f64,
}

impl NeckBlend {
    fn half_width(&self) -> f64 {
        self.center.min(1.0 - self.center)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// `[start, end]` of the transition window in `t` (positive half).
    pub fn window(&self) -> (f64, f64) {
        let e2 = self.eta * self.eta;
        let span = self.eta - e2;
        let hw = self.half_width();
        (
            e2 + span * (self.center - hw),
            e2 + span * (self.center + hw),
        )
    }

    fn step(&self, tau: f64) -> f64 {
        let e2 = self.eta * self.eta;
        let u = (tau - e2) / (self.eta - e2);
        let hw = self.half_width();
        smooth_step((u - (self.center - hw)) / (2.0 * hw))
    }

    /// `r''(t)` for `|t| <= eta`.
    pub fn accel(&self, t: f64) -> f64 {
        let tau = t.abs();
        let plateau = -2.0 * self.s_target;
        if tau <= self.eta * self.eta {
            return plateau;
        }
        let w = self.step(tau);
        (1.0 - w) * plateau + w * junction_accel(self.eta)
    }

    /// `int_0^eta r''(t) dt`, by quadrature on the three pieces.
    fn accel_integral(&self) -> Result<f64> {
        let e2 = self.eta * self.eta;
        let (ws, we) = self.window();
        let plateau = -2.0 * self.s_target;
        let cj = junction_accel(self.eta);
        let mut total = plateau * ws + cj * (self.eta - we);
        if we > ws {
            let rule = QuadratureRule::simpson(2048)?;
            total += integrate(|t| self.accel(t), ws, we, rule)?;
        }
        debug_assert!(ws >= e2 - 1e-15);
        Ok(total)
    }
}

/// Fraction of `[eta^2, eta]` over which the blend must sit at the junction
/// value for `r'(0) = 0`.
fn required_blend_mass(eta: f64, s_target: f64) -> f64 {
    let target = -2.0 * eta / neck_radius(eta);
    let span = eta - eta * eta;
    (target + 2.0 * s_target * eta) / (span * (2.0 * s_target + junction_accel(eta)))
}

/// Cumulative neck data on the positive half, ascending in `t`, ending at
/// `t = eta` with cap-matched values.
#[derive(Debug, Clone, PartialEq)]
struct NeckTable {
    t: Vec<f64>,
    rdot: Vec<f64>,
    r: Vec<f64>,
}

const LOCAL_PANELS: usize = 8;

fn local_rule() -> QuadratureRule {
    QuadratureRule::simpson(LOCAL_PANELS).expect("valid panel count")
}

impl NeckTable {
    fn build(blend: &NeckBlend, nodes: Vec<f64>) -> Result<Self> {
        let eta = blend.eta;
        let m = nodes.len();
        let mut rdot = vec![0.0; m];
        let mut r = vec![0.0; m];
        rdot[m - 1] = -2.0 * eta / neck_radius(eta);
        r[m - 1] = neck_radius(eta);
        let rule = local_rule();
        for k in (0..m - 1).rev() {
            let (a, b) = (nodes[k], nodes[k + 1]);
            let i0 = integrate(|s| blend.accel(s), a, b, rule)?;
            let i1 = integrate(|s| (s - a) * blend.accel(s), a, b, rule)?;
            rdot[k] = rdot[k + 1] - i0;
            r[k] = r[k + 1] - (b - a) * rdot[k + 1] + i1;
        }
        Ok(Self { t: nodes, rdot, r })
    }

    /// Jet at `tau in [0, eta]`, integrating from the next node above.
    fn eval(&self, blend: &NeckBlend, tau: f64) -> Result<Jet> {
        let m = self.t.len();
        let k = self.t.partition_point(|&x| x <= tau);
        if k == 0 {
            return Err(Error::Range {
                t: tau,
                lo: self.t[0],
                hi: self.t[m - 1],
            });
        }
        let i = k - 1;
        if self.t[i] == tau || i == m - 1 {
            return Ok(Jet {
                r: self.r[i],
                rdot: self.rdot[i],
                rddot: blend.accel(tau),
            });
        }
        let b = self.t[i + 1];
        let rule = local_rule();
        let i0 = integrate(|s| blend.accel(s), tau, b, rule)?;
        let i1 = integrate(|s| (s - tau) * blend.accel(s), tau, b, rule)?;
        let rdot = self.rdot[i + 1] - i0;
        let r = self.r[i + 1] - (b - tau) * self.rdot[i + 1] + i1;
        Ok(Jet {
            r,
            rdot,
            rddot: blend.accel(tau),
        })
    }
}

// ---------------------------------------------------------------------------
// Profile

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Round,
    Pinched {
        s_target: f64,
        blend: NeckBlend,
        table: NeckTable,
    },
}

/// Sampled warping function together with everything needed to evaluate it
/// at arbitrary `t`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpProfile {
    n: usize,
    eta: f64,
    grid_size: usize,
    kind: Kind,
    grid: Vec<f64>,
    samples: Vec<Jet>,
}

impl WarpProfile {
    /// The unit round sphere `r = sqrt(1 - t^2)`, sampled with `grid_size`
    /// points per hemisphere.
    pub fn round(n: usize, grid_size: usize) -> Result<Self> {
        check_dimension(n)?;
        check_grid(grid_size)?;
        let mut p = Self {
            n,
            eta: 0.0,
            grid_size,
            kind: Kind::Round,
            grid: Vec::new(),
            samples: Vec::new(),
        };
        let half = cap_abscissae(0.0, grid_size);
        p.grid = assemble_grid(&half, &[]);
        p.samples = p.grid.iter().map(|&t| p.eval(t)).collect::<Result<_>>()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn is_round(&self) -> bool {
        matches!(self.kind, Kind::Round)
    }

    /// Scalar-curvature target `S`; `None` for the round sphere.
    pub fn scal_target(&self) -> Option<f64> {
        match &self.kind {
            Kind::Round => None,
            Kind::Pinched { s_target, .. } => Some(*s_target),
        }
    }

    pub fn blend_id(&self) -> &'static str {
        match self.kind {
            Kind::Round => BLEND_ID_ROUND,
            Kind::Pinched { .. } => BLEND_ID_WINDOW,
        }
    }

    pub fn blend(&self) -> Option<&NeckBlend> {
        match &self.kind {
            Kind::Round => None,
            Kind::Pinched { blend, .. } => Some(blend),
        }
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn samples(&self) -> &[Jet] {
        &self.samples
    }

    /// `(-1 + eta, 1 - eta)`.
    pub fn domain(&self) -> (f64, f64) {
        (-1.0 + self.eta, 1.0 - self.eta)
    }

    /// Positive-half neck nodes (ascending, ending at `eta`); empty for the
    /// round sphere.
    pub fn neck_nodes(&self) -> &[f64] {
        match &self.kind {
            Kind::Round => &[],
            Kind::Pinched { table, .. } => &table.t,
        }
    }

    /// `r''` on the neck, or the cap value outside it.
    pub fn neck_accel(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Pinched { blend, .. } if t.abs() <= self.eta => blend.accel(t),
            _ => self.eval(t).map(|j| j.rddot).unwrap_or(f64::NAN),
        }
    }

    /// Jet at an arbitrary `t` in the closed domain.
    pub fn eval(&self, t: f64) -> Result<Jet> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(Error::Range { t, lo, hi });
        }
        let eta = self.eta;
        match &self.kind {
            Kind::Round => {
                if t >= 0.0 {
                    cap_eval(t, 0.0, Side::North)
                } else {
                    cap_eval(t, 0.0, Side::South)
                }
            }
            Kind::Pinched { blend, table, .. } => {
                if t >= eta {
                    cap_eval(t, eta, Side::North)
                } else if t <= -eta {
                    cap_eval(t, eta, Side::South)
                } else {
                    let j = table.eval(blend, t.abs())?;
                    Ok(if t < 0.0 {
                        Jet { rdot: -j.rdot, ..j }
                    } else {
                        j
                    })
                }
            }
        }
    }

    /// Replaces the stored samples, e.g. with values read back from a file.
    /// The analytic description is untouched; run [`validate_profile`] on the
    /// result.
    pub fn with_samples(mut self, grid: Vec<f64>, samples: Vec<Jet>) -> Self {
        self.grid = grid;
        self.samples = samples;
        self
    }

    /// `r'(0)` left over after integrating inward from the junction.
    pub fn center_slope(&self) -> f64 {
        match &self.kind {
            Kind::Round => 0.0,
            Kind::Pinched { table, .. } => table.rdot[0],
        }
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < MIN_GRID_SIZE {
        return Err(Error::Precondition(format!(
            "grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}"
        )));
    }
    Ok(())
}

/// North-cap abscissae `t = cos(phi) - eta`, `phi = phi_eta * j / g`,
/// `j = 1..=g`, descending towards the junction. The pole is excluded.
fn cap_abscissae(eta: f64, g: usize) -> Vec<f64> {
    let phi_eta = (2.0 * eta).acos();
    (1..=g)
        .map(|j| {
            if j == g {
                eta
            } else {
                (phi_eta * j as f64 / g as f64).cos() - eta
            }
        })
        .collect()
}

/// Mirror-symmetric ascending grid from north-cap and positive neck points.
fn assemble_grid(cap: &[f64], neck_pos: &[f64]) -> Vec<f64> {
    let mut pos: Vec<f64> = cap
        .iter()
        .chain(neck_pos)
        .copied()
        .filter(|&t| t > 0.0)
        .collect();
    pos.sort_by(f64::total_cmp);
    pos.dedup();
    let mut grid: Vec<f64> = pos.iter().rev().map(|&t| -t).collect();
    grid.push(0.0);
    grid.extend(pos);
    grid
}

fn neck_nodes(blend: &NeckBlend, g: usize) -> Vec<f64> {
    let eta = blend.eta;
    let e2 = eta * eta;
    let step = eta / g as f64;
    let mut nodes: Vec<f64> = (0..g).map(|j| j as f64 * step).collect();
    nodes.push(e2);
    // 4x refinement over the transition window and a band around the plateau edge
    let (ws, we) = blend.window();
    let fine = step / 4.0;
    let k = (((we - ws) / fine).ceil() as usize).max(16);
    nodes.extend((0..=k).map(|i| ws + (we - ws) * i as f64 / k as f64));
    let band = (e2 * eta).max(fine);
    let kb = 8;
    nodes.extend((0..=2 * kb).map(|i| e2 - band + band * i as f64 / kb as f64));
    nodes.retain(|&t| (0.0..eta).contains(&t));
    nodes.sort_by(f64::total_cmp);
    let tol = eta * 1e-13;
    nodes.dedup_by(|a, b| (*a - *b).abs() <= tol);
    nodes.push(eta);
    nodes
}

/// Builds the pinched profile for dimension `n`, neck half-width `eta`,
/// plateau target `S`, with `grid_size` points per cap and neck half.
pub fn build_profile(n: usize, eta: f64, s_target: f64, grid_size: usize) -> Result<WarpProfile> {
    check_dimension(n)?;
    check_grid(grid_size)?;
    let report = feasibility(eta, s_target)?;
    if !report.ok {
        return Err(Error::Infeasible(Box::new(report)));
    }

    let mass = required_blend_mass(eta, s_target);
    if !(mass > 0.0 && mass < 1.0) {
        return Err(Error::Construction {
            detail: format!("required blend fraction {mass} outside (0, 1)"),
            mismatch: mass,
        });
    }
    let target = -2.0 * eta / neck_radius(eta);
    let guess = 1.0 - mass;
    let mismatch = |center: f64| -> f64 {
        let blend = NeckBlend {
            eta,
            s_target,
            center,
        };
        blend
            .accel_integral()
            .map(|v| v - target)
            .unwrap_or(f64::NAN)
    };
    let (lo, hi) = (0.5 * guess, guess + 0.5 * (1.0 - guess));
    let center = bisect(mismatch, lo, hi, 1e-15).map_err(|_| Error::Construction {
        detail: format!("transition window could not be bracketed in [{lo}, {hi}]"),
        mismatch: mismatch(guess),
    })?;
    let blend = NeckBlend {
        eta,
        s_target,
        center,
    };
    let achieved = mismatch(center);

    let table = NeckTable::build(&blend, neck_nodes(&blend, grid_size))?;
    if table.rdot[0].abs() > 1e-10 {
        return Err(Error::Construction {
            detail: format!("r'(0) = {} after integration", table.rdot[0]),
            mismatch: achieved,
        });
    }

    let cap = cap_abscissae(eta, grid_size);
    let neck_pos: Vec<f64> = table.t[..table.t.len() - 1].to_vec();
    let grid = assemble_grid(&cap, &neck_pos);

    let mut p = WarpProfile {
        n,
        eta,
        grid_size,
        kind: Kind::Pinched {
            s_target,
            blend,
            table,
        },
        grid,
        samples: Vec::new(),
    };
    p.samples = p.grid.iter().map(|&t| p.eval(t)).collect::<Result<_>>()?;

    let upper = junction_accel(eta);
    let lower = -2.0 * s_target;
    for (&t, j) in p.grid.iter().zip(&p.samples) {
        if t.abs() <= eta
            && !(j.rddot >= lower - DEFAULT_TOLERANCE && j.rddot <= upper + DEFAULT_TOLERANCE)
        {
            return Err(Error::Construction {
                detail: format!("r''({t}) = {} leaves [{lower}, {upper}]", j.rddot),
                mismatch: achieved,
            });
        }
    }
    let violations = validate_profile(&p, DEFAULT_TOLERANCE);
    if let Some(v) = violations.first() {
        return Err(Error::Construction {
            detail: format!("{} violation(s), first: {v}", violations.len()),
            mismatch: achieved,
        });
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Condition number 1..=8.
    pub condition: u8,
    pub t: f64,
    /// Signed slack; negative means violated by that amount.
    pub margin: f64,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition ({}) at t = {:e}: {} (margin {:e})",
            self.condition, self.t, self.detail, self.margin
        )
    }
}

fn scaled(tol: f64, x: f64) -> f64 {
    tol * x.abs().max(1.0)
}

/// Checks conditions (1)–(8) at every stored sample. Returns an empty list
/// iff all hold within `tol`.
///
/// (1) even and finite with `r > 0` on the open interval; (2)/(3) south and
/// north caps; (4) `sqrt(1-4eta^2) <= r <= 1/sqrt(1-4eta^2)`,
/// (5) `|r'| <= 2 eta / sqrt(1-4eta^2)` and (8)
/// `-2S <= r'' <= -(1-4eta^2)^(-3/2)` on the neck; (6) `r'' < 0`
/// everywhere; (7) `r'' = -2S` on `|t| <= eta^2`.
pub fn validate_profile(p: &WarpProfile, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |condition: u8, t: f64, margin: f64, detail: String| {
        out.push(Violation {
            condition,
            t,
            margin,
            detail,
        })
    };
    let grid = p.grid();
    let samples = p.samples();
    if grid.len() != samples.len() {
        push(
            1,
            f64::NAN,
            -1.0,
            format!("{} abscissae but {} samples", grid.len(), samples.len()),
        );
        return out;
    }
    let m = grid.len();
    let eta = p.eta();
    let (lo, hi) = p.domain();

    // (1)
    for (i, (&t, j)) in grid.iter().zip(samples).enumerate() {
        if i > 0 && !(t > grid[i - 1]) {
            push(
                1,
                t,
                t - grid[i - 1],
                "abscissae not strictly increasing".into(),
            );
        }
        if !(t > lo && t < hi) {
            push(
                1,
                t,
                (t - lo).min(hi - t),
                "abscissa outside the open domain".into(),
            );
        }
        if !(j.r.is_finite() && j.rdot.is_finite() && j.rddot.is_finite()) {
            push(1, t, f64::NEG_INFINITY, "non-finite sample".into());
        } else if j.r <= 0.0 {
            push(
                1,
                t,
                j.r,
                "radius must be positive on the open interval".into(),
            );
        }
    }
    for i in 0..m / 2 + 1 {
        let k = m - 1 - i;
        if k < i {
            break;
        }
        let (a, b) = (&samples[i], &samples[k]);
        let (ta, tb) = (grid[i], grid[k]);
        let dt = (ta + tb).abs();
        if dt > scaled(tol, ta) {
            push(
                1,
                ta,
                -dt,
                format!("grid not symmetric: t = {ta} pairs with {tb}"),
            );
            continue;
        }
        let dr = (a.r - b.r).abs();
        let dv = (a.rdot + b.rdot).abs();
        let da = (a.rddot - b.rddot).abs();
        if dr > tol {
            push(1, ta, -dr, "r(-t) != r(t)".into());
        }
        if dv > scaled(tol, a.rdot) {
            push(1, ta, -dv, "r'(-t) != -r'(t)".into());
        }
        if da > scaled(tol, a.rddot) {
            push(1, ta, -da, "r''(-t) != r''(t)".into());
        }
    }

    let plateau = p.scal_target().map(|s| -2.0 * s);
    let q = neck_radius(eta);
    let edge = eta * (1.0 + 1e-12);
    for (&t, j) in grid.iter().zip(samples) {
        // (2), (3)
        let cap = if p.is_round() {
            Some(if t >= 0.0 {
                (3, Side::North)
            } else {
                (2, Side::South)
            })
        } else if t >= eta {
            Some((3, Side::North))
        } else if t <= -eta {
            Some((2, Side::South))
        } else {
            None
        };
        if let Some((cond, side)) = cap {
            if let Ok(c) = cap_eval(t, eta, side) {
                let what = if cond == 3 { "north" } else { "south" };
                let dr = (j.r - c.r).abs();
                let dv = (j.rdot - c.rdot).abs();
                let da = (j.rddot - c.rddot).abs();
                if !(dr <= tol) {
                    push(cond, t, -dr, format!("r differs from the {what} cap"));
                }
                if !(dv <= scaled(tol, c.rdot)) {
                    push(cond, t, -dv, format!("r' differs from the {what} cap"));
                }
                if !(da <= scaled(tol, c.rddot)) {
                    push(cond, t, -da, format!("r'' differs from the {what} cap"));
                }
            }
        }

        // (6)
        if !(j.rddot < 0.0) {
            push(6, t, -j.rddot, "r'' must be negative".into());
        }

        let Some(plateau) = plateau else { continue };
        if t.abs() > edge {
            continue;
        }
        // (4)
        let m_lo = j.r - q;
        let m_hi = 1.0 / q - j.r;
        if !(m_lo >= -tol) {
            push(4, t, m_lo, format!("r below sqrt(1-4eta^2) = {q}"));
        }
        if !(m_hi >= -tol) {
            push(
                4,
                t,
                m_hi,
                format!("r above 1/sqrt(1-4eta^2) = {}", 1.0 / q),
            );
        }
        // (5)
        let vmax = 2.0 * eta / q;
        let mv = vmax - j.rdot.abs();
        if !(mv >= -tol) {
            push(
                5,
                t,
                mv,
                format!("|r'| exceeds 2 eta / sqrt(1-4eta^2) = {vmax}"),
            );
        }
        // (7)
        if t.abs() <= eta * eta * (1.0 + 1e-12) {
            let d = (j.rddot - plateau).abs();
            if !(d <= tol) {
                push(7, t, -d, format!("r'' must equal -2S = {plateau}"));
            }
        }
        // (8)
        let upper = junction_accel(eta);
        let a_lo = j.rddot - plateau;
        let a_hi = upper - j.rddot;
        if !(a_lo >= -tol) {
            push(8, t, a_lo, format!("r'' below -2S = {plateau}"));
        }
        if !(a_hi >= -tol) {
            push(
                8,
                t,
                a_hi,
                format!("r'' above -(1-4eta^2)^(-3/2) = {upper}"),
            );
        }
    }
    out
}
