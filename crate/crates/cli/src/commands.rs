use std::path::Path;

use pinched_sphere::{
    bounds_report, build_profile, curvature_report, dirac_lambda1, extrinsic_bound, feasibility,
    friedrich_bound, measure, rescale, Error as CoreError, SpectrumResult, SurfaceGeometry,
    WarpProfile,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::{self, SweepRow};

/// Bracket tolerance for sweep rows.
pub const SWEEP_TOL: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescaleMode {
    /// Multiply by `1 - 4 eta^2` (identity on the round sphere).
    Auto,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Curvature,
    Bounds,
}

pub fn profile_build(
    n: usize,
    eta: f64,
    s: f64,
    grid: usize,
    round: bool,
    out: &Path,
) -> CliResult<WarpProfile> {
    let p = if round {
        WarpProfile::round(n, grid)?
    } else {
        build_profile(n, eta, s, grid)?
    };
    format::write_text(out, &format::profile_to_json(&p))?;
    Ok(p)
}

fn geometry(p: &WarpProfile, mode: RescaleMode) -> CliResult<SurfaceGeometry> {
    let g = measure(p)?;
    Ok(match mode {
        RescaleMode::None => g,
        RescaleMode::Auto => {
            let eta = p.eta();
            rescale(&g, 1.0 - 4.0 * eta * eta)?
        }
    })
}

/// Writes the CSV and returns a human summary for standard output.
pub fn report(
    profile: &Path,
    kind: ReportKind,
    mode: RescaleMode,
    out: &Path,
) -> CliResult<String> {
    let p = format::read_profile(profile)?;
    let g = geometry(&p, mode)?;
    match kind {
        ReportKind::Curvature => {
            let rep = curvature_report(&g)?;
            format::write_text(out, &format::curvature_csv(&rep))?;
            let mut s = format!(
                "scale {} ; min Scal {}\n",
                g.scale(),
                format::num(rep.min_scal)
            );
            for v in &rep.verdicts {
                s.push_str(&format!(
                    "{:<28} {:<5} margin {}\n",
                    v.name,
                    if v.holds { "ok" } else { "FAIL" },
                    format::num(v.margin)
                ));
            }
            Ok(s)
        }
        ReportKind::Bounds => {
            let rep = bounds_report(&g)?;
            format::write_text(out, &format::bounds_csv(&rep))?;
            Ok(format!(
                "scale {} ; friedrich {} ; extrinsic {}\n",
                g.scale(),
                format::num(rep.friedrich),
                format::num(rep.extrinsic)
            ))
        }
    }
}

#[derive(Debug, Serialize)]
struct SpectrumFile<'a> {
    scale: f64,
    scale_note: &'static str,
    result: &'a SpectrumResult,
}

pub fn spectrum(
    profile: &Path,
    modes: usize,
    grid: usize,
    mode: RescaleMode,
    out: Option<&Path>,
) -> CliResult<(SpectrumResult, String)> {
    let p = format::read_profile(profile)?;
    let g = geometry(&p, mode)?;
    let result = dirac_lambda1(&g, modes, grid)?;
    if !result.certificate.holds {
        return Err(CliError::Certificate(
            "mode truncation not certified".into(),
        ));
    }
    let note = if g.scale() == 1.0 {
        "lambda1_sq refers to the unscaled surface"
    } else {
        "lambda1_sq refers to the surface rescaled by `scale`"
    };
    let file = SpectrumFile {
        scale: g.scale(),
        scale_note: note,
        result: &result,
    };
    let mut json = serde_json::to_string_pretty(&file)
        .map_err(|e| CliError::Invariant(format!("serialisation failed: {e}")))?;
    json.push('\n');
    if let Some(path) = out {
        format::write_text(path, &json)?;
    }
    Ok((result, json))
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub n: usize,
    pub s: f64,
    pub grid: usize,
    pub modes: usize,
    pub profile_grid: usize,
}

pub fn sweep_rows(cfg: SweepConfig, etas: &[f64]) -> CliResult<Vec<SweepRow>> {
    if etas.is_empty() {
        return Err(CliError::Infeasible("no eta values given".into()));
    }
    for &eta in etas {
        let rep = feasibility(eta, cfg.s)?;
        if !rep.ok {
            return Err(CoreError::Infeasible(Box::new(rep)).into());
        }
    }
    let mut etas = etas.to_vec();
    etas.sort_by(|a, b| b.total_cmp(a));
    etas.dedup();
    let n = cfg.n;
    let nf = n as f64;
    let mut rows = Vec::with_capacity(etas.len());
    for eta in etas {
        let p = build_profile(n, eta, cfg.s, cfg.profile_grid)?;
        let c = 1.0 - 4.0 * eta * eta;
        let g = rescale(&measure(&p)?, c)?;
        let curv = curvature_report(&g)?;
        let spec = dirac_lambda1(&g, cfg.modes, cfg.grid)?;
        let lambda = spec.lambda1_sq;
        let friedrich = friedrich_bound(n, curv.min_scal)?;
        let extrinsic = extrinsic_bound(&g);
        let bracket_ok = friedrich <= lambda + SWEEP_TOL
            && nf * nf / 4.0 - SWEEP_TOL <= lambda
            && lambda <= extrinsic + SWEEP_TOL;
        let neck_strip_scal_ok = curv
            .samples
            .iter()
            .filter(|s| s.t.abs() <= eta * eta)
            .all(|s| s.scal >= cfg.s);
        rows.push(SweepRow {
            eta,
            delta_equiv: lambda - nf * nf / 4.0,
            r2: eta * eta * (1.0 - 4.0 * eta * eta),
            min_scal: curv.min_scal,
            lambda1_sq: lambda,
            friedrich,
            extrinsic,
            bracket_ok,
            neck_strip_scal_ok,
        });
    }
    Ok(rows)
}

/// Excess `lambda_1 - n^2/4` does not grow as `eta` decreases (rows are in
/// descending `eta`).
pub fn excess_non_increasing(rows: &[SweepRow]) -> bool {
    rows.windows(2)
        .all(|w| w[1].delta_equiv <= w[0].delta_equiv)
}

pub fn sweep(cfg: SweepConfig, etas: &[f64], out: &Path) -> CliResult<Vec<SweepRow>> {
    let rows = sweep_rows(cfg, etas)?;
    let monotone = excess_non_increasing(&rows);
    format::write_text(out, &format::sweep_csv(&rows, monotone))?;
    let floor = (cfg.n * (cfg.n - 1)) as f64 - 1e-6;
    if let Some(r) = rows.iter().find(|r| !r.bracket_ok) {
        return Err(CliError::Invariant(format!(
            "bracket violated at eta = {}",
            r.eta
        )));
    }
    if let Some(r) = rows.iter().find(|r| r.min_scal < floor) {
        return Err(CliError::Invariant(format!(
            "scalar curvature {} below n(n-1) at eta = {}",
            r.min_scal, r.eta
        )));
    }
    if !monotone {
        return Err(CliError::Invariant(
            "eigenvalue excess increases as eta decreases".into(),
        ));
    }
    Ok(rows)
}
