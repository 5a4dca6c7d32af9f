//! Small numerical kernel shared by the construction, geometry and spectral
//! code: composite Simpson quadrature, Sturm-bisection eigenvalues of
//! symmetric tridiagonal matrices, the flat smooth step, and bisection.
//!
//! Everything here is generic over [`Real`], so `f32` works as well as `f64`.

mod quadrature;
mod roots;
mod smooth;
mod tridiag;

pub use quadrature::{integrate, QuadratureRule};
pub use roots::bisect;
pub use smooth::{flat_exp, smooth_step};
pub use tridiag::{sturm_count, tridiag_smallest, tridiag_solve, TridiagSpec};

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar accepted by the numerical kernel.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
