//! Pinched spheres with almost-sharp Friedrich estimates.
//!
//! A family of hypersurfaces of revolution in `R^{n+1}` whose scalar
//! curvature is bounded below by `n(n-1)` while the smallest eigenvalue of
//! the squared Dirac operator tends to the round-sphere value `n^2/4`. The
//! crate builds the warping profile, measures its geometry, computes the
//! Dirac spectrum by mode separation and evaluates the classical and
//! conjectured eigenvalue estimates.
//!
//! ```
//! use pinched_sphere::{bounds_report, build_profile, dirac_lambda1, measure, rescale};
//!
//! let eta = 0.1;
//! let p = build_profile(2, eta, 4.0, 256).unwrap();
//! let g = rescale(&measure(&p).unwrap(), 1.0 - 4.0 * eta * eta).unwrap();
//! let spec = dirac_lambda1(&g, 4, 512).unwrap();
//! let bounds = bounds_report(&g).unwrap();
//! assert!(bounds.friedrich <= spec.lambda1_sq && spec.lambda1_sq <= bounds.extrinsic);
//! ```

// `!(x < y)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod profile;
pub mod spectral;

pub use bounds::{
    bounds_report, class_constant, conjecture_constant, cutoff_chain, default_r0, extrinsic_bound,
    friedrich_bound, radius_for_excess, BoundsReport, CutoffChain, ManifoldClass, Scalar,
};
pub use error::{Error, Result};
pub use geometry::{
    curvature_report, curvature_report_with, measure, principal_curvatures, rescale, scal_and_mean,
    sphere_area, CurvatureReport, CurvatureSample, SurfaceGeometry, Verdict,
};
pub use numerics::{Real, TridiagSpec};
pub use profile::{
    build_profile, cap_eval, feasibility, validate_profile, FeasibilityReport, Jet, Side,
    Violation, WarpProfile,
};
pub use spectral::{
    dirac_lambda1, eigenspinor_profile, mode_lambda1, mode_set, ModeProblem, RadialEigenspinor,
    SpectrumResult,
};

/// Double-precision tridiagonal matrix.
pub type TridiagF64 = TridiagSpec<f64>;
/// Single-precision tridiagonal matrix.
pub type TridiagF32 = TridiagSpec<f32>;
