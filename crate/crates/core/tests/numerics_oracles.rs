use pinched_sphere::numerics::{
    bisect, integrate, smooth_step, sturm_count, tridiag_smallest, QuadratureRule, TridiagSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Characteristic polynomial `det(A - x I)` by the three-term recurrence,
/// evaluated directly without pivots.
fn char_poly(diag: &[f64], off: &[f64], x: f64) -> f64 {
    let mut p_prev = 1.0;
    let mut p = diag[0] - x;
    for i in 1..diag.len() {
        let next = (diag[i] - x) * p - off[i - 1] * off[i - 1] * p_prev;
        p_prev = p;
        p = next;
    }
    p
}

/// Every root of the characteristic polynomial, found by scanning for sign
/// changes on a fine mesh and refining each bracket.
fn roots_by_scan(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let bound = diag.iter().map(|d| d.abs()).sum::<f64>()
        + 2.0 * off.iter().map(|e| e.abs()).sum::<f64>()
        + 1.0;
    let steps = 400_000;
    let dx = 2.0 * bound / steps as f64;
    let mut roots = Vec::new();
    let mut a = -bound;
    let mut fa = char_poly(diag, off, a);
    for i in 1..=steps {
        let b = -bound + i as f64 * dx;
        let fb = char_poly(diag, off, b);
        if fa == 0.0 {
            roots.push(a);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            roots.push(bisect(|x| char_poly(diag, off, x), a, b, 1e-15).unwrap());
        }
        a = b;
        fa = fb;
    }
    roots
}

#[test]
fn random_eight_by_eight_against_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for _ in 0..20 {
        let diag: Vec<f64> = (0..8).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let off: Vec<f64> = (0..7).map(|_| rng.gen_range(0.2..3.0)).collect();
        let spec = TridiagSpec::new(diag.clone(), off.clone()).unwrap();
        let ev = tridiag_smallest(&spec, 8).unwrap();
        let oracle = roots_by_scan(&diag, &off);
        assert_eq!(oracle.len(), 8, "scan found {} roots", oracle.len());
        for (a, b) in ev.iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "{a} vs {b}");
        }
    }
}

#[test]
fn eigenvalues_sorted_and_repeatable() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let diag: Vec<f64> = (0..50).map(|_| rng.gen_range(0.0..10.0)).collect();
    let off: Vec<f64> = (0..49).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let spec = TridiagSpec::new(diag, off).unwrap();
    let a = tridiag_smallest(&spec, 10).unwrap();
    let b = tridiag_smallest(&spec, 10).unwrap();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(sturm_count(&spec, a[9] + 1e-9), 10);
}

#[test]
fn quadrature_is_linear() {
    let rule = QuadratureRule::simpson(64).unwrap();
    let (alpha, beta) = (2.5, -0.75);
    let f = |x: f64| x.exp();
    let g = |x: f64| (3.0 * x).cos();
    let lhs = integrate(|x| alpha * f(x) + beta * g(x), 0.0, 1.3, rule).unwrap();
    let rhs = alpha * integrate(f, 0.0, 1.3, rule).unwrap()
        + beta * integrate(g, 0.0, 1.3, rule).unwrap();
    assert!((lhs - rhs).abs() < 1e-12);
}

#[test]
fn quadrature_reference_values() {
    let rule = QuadratureRule::simpson(64).unwrap();
    let v = integrate(|x: f64| x * x, 0.0, 1.0, rule).unwrap();
    assert!((v - 1.0 / 3.0).abs() < 1e-12);
    assert!(integrate(|x: f64| x, 1.0, 1.0, rule).is_err());
}

#[test]
fn smooth_step_is_flat_at_both_ends() {
    let h = 1e-5;
    for x in [1e-3, 1.0 - 1e-3] {
        let d: f64 = (smooth_step(x + h) - smooth_step(x - h)) / (2.0 * h);
        assert!(d.abs() < 1e-6, "derivative {d} at {x}");
    }
    assert_eq!(smooth_step(0.0f64), 0.0);
    assert_eq!(smooth_step(1.0f64), 1.0);
    assert_eq!(smooth_step(0.5f64), 0.5);
}
