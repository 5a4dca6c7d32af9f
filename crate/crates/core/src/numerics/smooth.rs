use super::Real;

/// `exp(-1/x)` for `x > 0`, zero otherwise. Every derivative vanishes at 0.
pub fn flat_exp<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        (-x.recip()).exp()
    }
}

/// C-infinity step: 0 for `x <= 0`, 1 for `x >= 1`, strictly increasing in
/// between and flat to all orders at both ends. Satisfies
/// `smooth_step(x) + smooth_step(1 - x) == 1`.
pub fn smooth_step<T: Real>(x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x >= T::one() {
        return T::one();
    }
    let a = flat_exp(x);
    let b = flat_exp(T::one() - x);
    a / (a + b)
}
