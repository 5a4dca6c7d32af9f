use crate::error::{Error, Result};

use super::Real;

/// Composite Newton–Cotes rule. Only the order-4 (Simpson) scheme is
/// provided; `order` is carried so callers can report it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureRule {
    panel_count: usize,
    order: usize,
}

impl QuadratureRule {
    pub const ORDER: usize = 4;

    pub fn simpson(panel_count: usize) -> Result<Self> {
        if panel_count < 4 || !panel_count.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "panel count must be even and >= 4, got {panel_count}"
            )));
        }
        Ok(Self {
            panel_count,
            order: Self::ORDER,
        })
    }

    pub fn panel_count(&self) -> usize {
        self.panel_count
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Composite Simpson approximation of the integral of `f` over `[a, b]`.
///
/// Fails on the first non-finite sample, naming its abscissa.
pub fn integrate<T, F>(f: F, a: T, b: T, rule: QuadratureRule) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(a < b) {
        return Err(Error::Precondition(format!(
            "integration interval [{a}, {b}] is empty"
        )));
    }
    let m = rule.panel_count;
    let h = (b - a) / T::lit(m as f64);
    let two = T::lit(2.0);
    let four = T::lit(4.0);

    let sample = |i: usize| -> Result<T> {
        let x = if i == m { b } else { a + h * T::lit(i as f64) };
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { at: x.as_f64() })
        }
    };

    let mut acc = sample(0)? + sample(m)?;
    for i in 1..m {
        let w = if i % 2 == 1 { four } else { two };
        acc = acc + w * sample(i)?;
    }
    Ok(acc * h / T::lit(3.0))
}
