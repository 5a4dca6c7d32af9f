use crate::error::{Error, Result};

use super::Real;

/// Bisection on a sign-changing bracket. Stops once the bracket is no wider
/// than `tol` (or an endpoint is an exact root) and returns its midpoint.
pub fn bisect<T, F>(f: F, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: a.as_f64(),
            hi: b.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }
    let half = T::lit(0.5);
    // 200 halvings exhaust any f64 bracket
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mid = a + (b - a) * half;
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(a + (b - a) * half)
}
