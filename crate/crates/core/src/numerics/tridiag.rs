use crate::error::{Error, Result};

use super::Real;

/// Symmetric tridiagonal matrix given by its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSpec<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> TridiagSpec<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Precondition("tridiagonal matrix is empty".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Precondition(format!(
                "off-diagonal has length {}, expected {}",
                offdiag.len(),
                diag.len() - 1
            )));
        }
        if let Some(i) = diag.iter().chain(&offdiag).position(|x| !x.is_finite()) {
            return Err(Error::Precondition(format!("entry {i} is not finite")));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let m = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..m {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                T::zero()
            };
            let right = if i + 1 < m {
                self.offdiag[i].abs()
            } else {
                T::zero()
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y = y + self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < m {
                    y = y + self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Number of eigenvalues strictly below `x`, from the signs of the LDLᵀ
/// pivots of `A - x I`.
pub fn sturm_count<T: Real>(spec: &TridiagSpec<T>, x: T) -> usize {
    let (lo, hi) = spec.gershgorin();
    let guard = T::epsilon() * T::epsilon() * (lo.abs().max(hi.abs()).max(T::one()));
    let mut count = 0;
    let mut q = spec.diag[0] - x;
    for i in 0..spec.dim() {
        if i > 0 {
            let e = spec.offdiag[i - 1];
            let prev = if q.abs() < guard {
                if q < T::zero() {
                    -guard
                } else {
                    guard
                }
            } else {
                q
            };
            q = spec.diag[i] - x - e * e / prev;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues in ascending order, each by Sturm-sequence
/// bisection down to a relative width of a few ulps.
pub fn tridiag_smallest<T: Real>(spec: &TridiagSpec<T>, k: usize) -> Result<Vec<T>> {
    let m = spec.dim();
    if k > m {
        return Err(Error::Dimension {
            requested: k,
            available: m,
        });
    }
    let (glo, ghi) = spec.gershgorin();
    let pad = (ghi - glo).abs().max(T::one()) * T::lit(1e-3);
    let (lo0, hi0) = (glo - pad, ghi + pad);
    let half = T::lit(0.5);
    let rel = T::epsilon() * T::lit(4.0);

    let mut out = Vec::with_capacity(k);
    let mut floor = lo0;
    for j in 0..k {
        let (mut a, mut b) = (floor, hi0);
        for _ in 0..400 {
            let mid = a + (b - a) * half;
            let scale = mid.abs().max(T::min_positive_value().sqrt());
            if b - a <= rel * scale || mid <= a || mid >= b {
                break;
            }
            if sturm_count(spec, mid) <= j {
                a = mid;
            } else {
                b = mid;
            }
        }
        let ev = a + (b - a) * half;
        out.push(ev);
        floor = a;
    }
    Ok(out)
}

/// Solves `(A - shift I) x = rhs` by the Thomas algorithm (no pivoting).
pub fn tridiag_solve<T: Real>(spec: &TridiagSpec<T>, shift: T, rhs: &[T]) -> Result<Vec<T>> {
    let m = spec.dim();
    if rhs.len() != m {
        return Err(Error::Precondition(format!(
            "right-hand side has length {}, expected {m}",
            rhs.len()
        )));
    }
    let tiny = T::min_positive_value().sqrt();
    let mut c = vec![T::zero(); m];
    let mut d = vec![T::zero(); m];
    let mut piv = spec.diag[0] - shift;
    if piv.abs() < tiny {
        piv = tiny;
    }
    if m > 1 {
        c[0] = spec.offdiag[0] / piv;
    }
    d[0] = rhs[0] / piv;
    for i in 1..m {
        let e = spec.offdiag[i - 1];
        piv = spec.diag[i] - shift - e * c[i - 1];
        if piv.abs() < tiny {
            piv = tiny;
        }
        if i + 1 < m {
            c[i] = spec.offdiag[i] / piv;
        }
        d[i] = (rhs[i] - e * d[i - 1]) / piv;
    }
    let mut x = d;
    for i in (0..m.saturating_sub(1)).rev() {
        let next = x[i + 1];
        x[i] = x[i] - c[i] * next;
    }
    Ok(x)
}
