use thiserror::Error;

use crate::profile::FeasibilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("integrand is not finite at x = {at}")]
    NonFinite { at: f64 },

    #[error("requested {requested} eigenvalues of a {available}x{available} matrix")]
    Dimension { requested: usize, available: usize },

    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible parameters: {}", .0.summary())]
    Infeasible(Box<FeasibilityReport>),

    #[error("profile construction failed: {detail} (integral mismatch {mismatch:e})")]
    Construction { detail: String, mismatch: f64 },

    #[error("t = {t} outside [{lo}, {hi}]")]
    Range { t: f64, lo: f64, hi: f64 },

    #[error("profile radius vanishes at t = {t}")]
    PoleSingularity { t: f64 },

    #[error("non-finite quadrature sample near the pole at t = {at}")]
    SubstitutionFailure { at: f64 },

    #[error("mode potential is not finite at s = {s}")]
    Singularity { s: f64 },

    #[error("mode truncation certificate not reached with m_max = {m_max}")]
    Truncation { m_max: usize },

    #[error("degenerate reconstruction: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
