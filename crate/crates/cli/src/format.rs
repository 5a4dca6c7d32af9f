//! On-disk formats. Floats are written with 17 significant digits so that
//! every value reads back bit-for-bit; line endings are `\n` only.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use pinched_sphere::{
    build_profile, validate_profile, BoundsReport, CurvatureReport, Jet, WarpProfile,
};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Scientific notation with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn array(out: &mut String, name: &str, values: impl Iterator<Item = f64>, last: bool) {
    let body: Vec<String> = values.map(num).collect();
    let _ = write!(out, "  \"{name}\": [{}]", body.join(", "));
    out.push_str(if last { "\n" } else { ",\n" });
}

pub fn profile_to_json(p: &WarpProfile) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"n\": {},", p.n());
    let _ = writeln!(out, "  \"eta\": {},", num(p.eta()));
    match p.scal_target() {
        Some(s) => {
            let _ = writeln!(out, "  \"S\": {},", num(s));
        }
        None => out.push_str("  \"S\": null,\n"),
    }
    let _ = writeln!(out, "  \"grid_size\": {},", p.grid_size());
    let _ = writeln!(out, "  \"blend_id\": \"{}\",", p.blend_id());
    array(&mut out, "t", p.grid().iter().copied(), false);
    array(&mut out, "r", p.samples().iter().map(|j| j.r), false);
    array(&mut out, "rdot", p.samples().iter().map(|j| j.rdot), false);
    array(&mut out, "rddot", p.samples().iter().map(|j| j.rddot), true);
    out.push_str("}\n");
    out
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    format_version: u32,
    n: usize,
    eta: f64,
    #[serde(rename = "S")]
    s: Option<f64>,
    grid_size: usize,
    blend_id: String,
    t: Vec<f64>,
    r: Vec<f64>,
    rdot: Vec<f64>,
    rddot: Vec<f64>,
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Reads a profile file, validates its samples and checks that they are the
/// construction's own output for the stored parameters.
pub fn read_profile(path: &Path) -> CliResult<WarpProfile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_profile(&text)
}

pub fn parse_profile(text: &str) -> CliResult<WarpProfile> {
    let f: ProfileFile = serde_json::from_str(text)
        .map_err(|e| CliError::Corrupt(format!("malformed profile: {e}")))?;
    if f.format_version != FORMAT_VERSION {
        return Err(CliError::Corrupt(format!(
            "unsupported format_version {}",
            f.format_version
        )));
    }
    let m = f.t.len();
    if f.r.len() != m || f.rdot.len() != m || f.rddot.len() != m {
        return Err(CliError::Corrupt("sample arrays differ in length".into()));
    }
    let rebuilt = if f.blend_id == pinched_sphere::profile::BLEND_ID_ROUND {
        WarpProfile::round(f.n, f.grid_size)
    } else {
        let s =
            f.s.ok_or_else(|| CliError::Corrupt("pinched profile without S".into()))?;
        build_profile(f.n, f.eta, s, f.grid_size)
    }
    .map_err(|e| CliError::Corrupt(format!("stored parameters are invalid: {e}")))?;

    let samples: Vec<Jet> = (0..m)
        .map(|i| Jet {
            r: f.r[i],
            rdot: f.rdot[i],
            rddot: f.rddot[i],
        })
        .collect();
    let candidate = rebuilt.clone().with_samples(f.t, samples);
    let violations = validate_profile(&candidate, pinched_sphere::profile::DEFAULT_TOLERANCE);
    if !violations.is_empty() {
        let mut conds: Vec<u8> = violations.iter().map(|v| v.condition).collect();
        conds.sort_unstable();
        conds.dedup();
        let list: Vec<String> = conds.iter().map(|c| format!("({c})")).collect();
        let mut msg = format!(
            "profile violates condition(s) {} at {} point(s)",
            list.join(", "),
            violations.len()
        );
        for v in violations.iter().take(10) {
            let _ = write!(msg, "\n  {v}");
        }
        return Err(CliError::Corrupt(msg));
    }
    if f.blend_id != rebuilt.blend_id() {
        return Err(CliError::Corrupt(format!(
            "unknown blend_id {:?}",
            f.blend_id
        )));
    }
    let same = candidate.grid().len() == rebuilt.grid().len()
        && candidate
            .grid()
            .iter()
            .zip(rebuilt.grid())
            .all(|(a, b)| a.to_bits() == b.to_bits())
        && candidate
            .samples()
            .iter()
            .zip(rebuilt.samples())
            .all(|(a, b)| {
                a.r.to_bits() == b.r.to_bits()
                    && a.rdot.to_bits() == b.rdot.to_bits()
                    && a.rddot.to_bits() == b.rddot.to_bits()
            });
    if !same {
        return Err(CliError::Corrupt(
            "samples are valid but differ from the construction for the stored parameters".into(),
        ));
    }
    Ok(rebuilt)
}

pub fn curvature_csv(rep: &CurvatureReport) -> String {
    let mut out = String::from("t,s,kappa_t,kappa_theta,scal,mean\n");
    for s in &rep.samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            num(s.t),
            num(s.s),
            num(s.kappa_t),
            num(s.kappa_theta),
            num(s.scal),
            num(s.mean)
        );
    }
    out
}

pub fn bounds_csv(rep: &BoundsReport) -> String {
    let mut out = String::from("quantity,value\n");
    let mut row = |k: &str, v: f64| {
        let _ = writeln!(out, "{k},{}", num(v));
    };
    row("n", rep.n as f64);
    row("scale", rep.scale);
    row("min_scal", rep.min_scal);
    row("volume", rep.volume);
    row("h2_integral", rep.h2_integral);
    row("friedrich", rep.friedrich);
    if let Some(c) = rep.conjecture {
        row("conjecture", c);
    }
    row("extrinsic", rep.extrinsic);
    for (class, c) in &rep.class_constants {
        row(&format!("class_constant_{}", class.name()), *c);
    }
    out
}

/// One line of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub eta: f64,
    /// `lambda_1 - n^2/4`; the matching `epsilon` is `2 delta`.
    pub delta_equiv: f64,
    /// `eta^2 (1 - 4 eta^2)`.
    pub r2: f64,
    pub min_scal: f64,
    pub lambda1_sq: f64,
    pub friedrich: f64,
    pub extrinsic: f64,
    pub bracket_ok: bool,
    pub neck_strip_scal_ok: bool,
}

pub fn sweep_csv(rows: &[SweepRow], monotone: bool) -> String {
    let mut out = String::from(
        "eta,delta_equiv,R2,min_scal,lambda1_sq,friedrich,extrinsic,bracket_ok,neck_strip_scal_ok\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            num(r.eta),
            num(r.delta_equiv),
            num(r.r2),
            num(r.min_scal),
            num(r.lambda1_sq),
            num(r.friedrich),
            num(r.extrinsic),
            r.bracket_ok,
            r.neck_strip_scal_ok
        );
    }
    let all = rows.iter().all(|r| r.bracket_ok);
    let _ = writeln!(
        out,
        "# summary: rows={} all_bracket_ok={all} excess_non_increasing={monotone} epsilon=2*delta_equiv",
        rows.len()
    );
    out
}
