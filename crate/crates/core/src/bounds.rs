//! Lower and upper estimates for `lambda_1(D^2)` and the cutoff chain that
//! transplants the ground spinor into a small ball.
//!
//! The dimensional constants are generic over [`Scalar`] so they can be
//! evaluated exactly in rational arithmetic.

use std::collections::BTreeMap;

use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{curvature_report, SurfaceGeometry};
use crate::spectral::RadialEigenspinor;

/// Exact-enough field for the dimensional constants.
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive {}

impl<T: Num + Copy + PartialOrd + FromPrimitive> Scalar for T {}

fn lit<T: Scalar>(x: usize) -> T {
    T::from_usize(x).expect("small integer representable")
}

fn need_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("dimension {n} below {min}")));
    }
    Ok(())
}

/// `n / (4 (n - 1)) * min Scal`.
pub fn friedrich_bound<T: Scalar>(n: usize, min_scal: T) -> Result<T> {
    need_dim(n, 2)?;
    Ok(lit::<T>(n) / (lit::<T>(4) * lit::<T>(n - 1)) * min_scal)
}

/// `(n - 1) / (4 (n - 2)) * min Scal`, the conjectured sharp constant for
/// spin manifolds with `Scal > 0`. Undefined on surfaces.
pub fn conjecture_constant<T: Scalar>(n: usize, min_scal: T) -> Result<T> {
    if n == 2 {
        return Err(Error::Domain(
            "conjectured constant (n-1)/(4(n-2)) is undefined for n = 2".into(),
        ));
    }
    need_dim(n, 3)?;
    Ok(lit::<T>(n - 1) / (lit::<T>(4) * lit::<T>(n - 2)) * min_scal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ManifoldClass {
    Kahler,
    QuaternionicKahler,
    ParallelOneForm,
}

impl ManifoldClass {
    pub const ALL: [ManifoldClass; 3] = [
        ManifoldClass::Kahler,
        ManifoldClass::QuaternionicKahler,
        ManifoldClass::ParallelOneForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ManifoldClass::Kahler => "kahler",
            ManifoldClass::QuaternionicKahler => "quaternionic_kahler",
            ManifoldClass::ParallelOneForm => "parallel_one_form",
        }
    }
}

/// Known improved Friedrich constants (multiplying `min Scal`) on special
/// holonomy classes.
pub fn class_constant<T: Scalar>(n: usize, class: ManifoldClass) -> Result<T> {
    let four = lit::<T>(4);
    match class {
        ManifoldClass::Kahler => {
            if n < 2 || !n.is_multiple_of(2) {
                return Err(Error::Domain(format!("Kähler needs even n >= 2, got {n}")));
            }
            if (n / 2) % 2 == 1 {
                Ok(lit::<T>(n + 2) / (four * lit::<T>(n)))
            } else {
                Ok(lit::<T>(n) / (four * lit::<T>(n - 2)))
            }
        }
        ManifoldClass::QuaternionicKahler => {
            if n == 0 || !n.is_multiple_of(4) {
                return Err(Error::Domain(format!(
                    "quaternionic Kähler needs n divisible by 4, got {n}"
                )));
            }
            Ok(lit::<T>(n + 12) / (four * lit::<T>(n + 8)))
        }
        ManifoldClass::ParallelOneForm => {
            need_dim(n, 3)?;
            Ok(lit::<T>(n - 2) / (four * lit::<T>(n - 1)))
        }
    }
}

/// `n^2 / (4 vol) * int |H|^2`, valid for hypersurfaces of Euclidean space.
pub fn extrinsic_bound(g: &SurfaceGeometry) -> f64 {
    let n = g.n() as f64;
    n * n * g.h2_integral() / (4.0 * g.volume())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub scale: f64,
    pub min_scal: f64,
    pub volume: f64,
    pub h2_integral: f64,
    pub friedrich: f64,
    pub conjecture: Option<f64>,
    pub extrinsic: f64,
    pub class_constants: BTreeMap<ManifoldClass, f64>,
}

/// All closed-form estimates for one geometry.
pub fn bounds_report(g: &SurfaceGeometry) -> Result<BoundsReport> {
    let n = g.n();
    let min_scal = curvature_report(g)?.min_scal;
    let class_constants = ManifoldClass::ALL
        .iter()
        .filter_map(|&c| class_constant::<f64>(n, c).ok().map(|v| (c, v)))
        .collect();
    Ok(BoundsReport {
        n,
        scale: g.scale(),
        min_scal,
        volume: g.volume(),
        h2_integral: g.h2_integral(),
        friedrich: friedrich_bound(n, min_scal)?,
        conjecture: conjecture_constant(n, min_scal).ok(),
        extrinsic: extrinsic_bound(g),
        class_constants,
    })
}

/// Quantities along the cutoff argument for one radius `r`.
///
/// The ground spinor `phi` is multiplied by a cutoff that is 1 outside
/// `B(2r)`, 0 on `B(r)` and has gradient at most `2/r`. Because Clifford
/// multiplication is skew, the Rayleigh quotient of the cut-off spinor is
/// `lambda_1 + |grad f|^2 mass / (1 - mass)` with `mass = int_{B(2r)} |phi|^2`.
/// The constant `C` absorbs the sup norm and the volume of `B(2r)` so that
/// the excess is bounded by `C r^{n-2}` uniformly for `r <= r0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffChain {
    pub r: f64,
    pub r0: f64,
    pub lambda1_sq: f64,
    /// `int_{B(2r)} |phi|^2`.
    pub inner_mass: f64,
    /// `int_{M \ B(2 r0)} |phi|^2`.
    pub outer_mass: f64,
    pub ball_volume: f64,
    pub quotient: f64,
    pub constant: f64,
    pub final_bound: f64,
}

impl CutoffChain {
    /// Every step of the chain is at least the previous one.
    pub fn is_monotone(&self) -> bool {
        self.lambda1_sq <= self.quotient && self.quotient <= self.final_bound
    }
}

/// Default outer radius: an eighth of the pole-to-pole length.
pub fn default_r0(g: &SurfaceGeometry) -> f64 {
    g.length() / 8.0
}

pub fn cutoff_chain(
    g: &SurfaceGeometry,
    phi: &RadialEigenspinor,
    r: f64,
    r0: f64,
) -> Result<CutoffChain> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Domain("the cutoff chain needs n >= 3".into()));
    }
    if !(r > 0.0 && r <= r0) {
        return Err(Error::Precondition(format!(
            "need 0 < r <= r0, got r = {r}, r0 = {r0}"
        )));
    }
    let len = g.length();
    if !(2.0 * r0 < len) {
        return Err(Error::Precondition(format!(
            "2 r0 = {} must stay below the length {len}",
            2.0 * r0
        )));
    }
    let total = phi.total_mass();
    let inner_mass = phi.ball_mass(2.0 * r) / total;
    let outer_mass = (total - phi.ball_mass(2.0 * r0)) / total;
    if !(inner_mass < 1.0 && outer_mass > 0.0) {
        return Err(Error::Degenerate(
            "spinor mass concentrates in the ball".into(),
        ));
    }
    let lambda1_sq = phi.lambda1_sq;
    let quotient = lambda1_sq + 4.0 / (r * r) * inner_mass / (1.0 - inner_mass);
    let ball_volume = phi.ball_volume(2.0 * r);
    let constant = 4.0 * ball_volume * phi.sup_norm_sq / (r.powi(n as i32) * outer_mass);
    let final_bound = lambda1_sq + constant * r.powi(n as i32 - 2);
    Ok(CutoffChain {
        r,
        r0,
        lambda1_sq,
        inner_mass,
        outer_mass,
        ball_volume,
        quotient,
        constant,
        final_bound,
    })
}

/// Radius at which the chain's excess `C r^{n-2}` equals `delta`.
pub fn radius_for_excess(delta: f64, constant: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain("radius_for_excess needs n >= 3".into()));
    }
    if !(delta > 0.0 && constant > 0.0) {
        return Err(Error::Precondition("delta and C must be positive".into()));
    }
    Ok((delta / constant).powf(1.0 / (n as f64 - 2.0)))
}
