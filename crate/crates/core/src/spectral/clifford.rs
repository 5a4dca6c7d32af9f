use num_complex::Complex64;

/// Skew-adjoint surrogate for Clifford multiplication by a unit tangent
/// vector on two-component spinors: `J = [[0, -1], [1, 0]]`, `J^2 = -1`.
pub fn clifford_unit(w: [Complex64; 2]) -> [Complex64; 2] {
    [-w[1], w[0]]
}

/// `<w, J w>`. Skew-adjointness makes it purely imaginary, which is why the
/// cross term drops out of the cutoff Rayleigh quotient.
pub fn skew_pairing(w: [Complex64; 2]) -> Complex64 {
    let jw = clifford_unit(w);
    w[0].conj() * jw[0] + w[1].conj() * jw[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spinor() -> impl Strategy<Value = [Complex64; 2]> {
        prop::array::uniform4(-1e3f64..1e3)
            .prop_map(|a| [Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3])])
    }

    proptest! {
        #[test]
        fn pairing_is_imaginary(w in spinor()) {
            let p = skew_pairing(w);
            let scale = w[0].norm_sqr() + w[1].norm_sqr();
            prop_assert!(p.re.abs() <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn squares_to_minus_one(w in spinor()) {
            let jj = clifford_unit(clifford_unit(w));
            prop_assert_eq!(jj, [-w[0], -w[1]]);
        }
    }
}
