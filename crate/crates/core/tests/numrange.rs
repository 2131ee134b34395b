mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zenger::numrange::{
    jacobi_eigen, spectrum_hull_check, support_curve, support_function, ComplexMatrix,
};

#[test]
fn jacobi_matches_inertia_bisection() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 3, 4, 4, 5, 6] {
        let h = common::random_hermitian(&mut rng, n);
        let jac = jacobi_eigen(&h).unwrap();
        let oracle = common::bisection_eigenvalues(&h);
        for (a, b) in jac.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "{jac:?} vs {oracle:?}");
        }
        let trace = h.trace().re;
        assert!((jac.iter().sum::<f64>() - trace).abs() < 1e-10);
        let fro = jac.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((fro - h.frobenius()).abs() < 1e-10);
    }
}

#[test]
fn support_curve_is_continuous_and_above_the_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = common::random_upper_triangular(&mut rng, 5);
    let curve = support_curve(&a, 256).unwrap();
    let step = 2.0 * PI / 256.0;
    let lip = a.max_abs() * a.dim() as f64 * step + 1e-8;
    let mean = a.trace() / a.dim() as f64;
    for i in 0..256 {
        let next = curve.values[(i + 1) % 256];
        assert!((next - curve.values[i]).abs() <= lip);
        let theta = curve.thetas[i];
        assert!(curve.values[i] >= (Complex64::from_polar(1.0, -theta) * mean).re - 1e-12);
    }
}

#[test]
fn hermitian_matrices_touch_both_ends() {
    let d = ComplexMatrix::diagonal(&[
        Complex64::new(-1.5, 0.0),
        Complex64::new(0.25, 0.0),
        Complex64::new(2.0, 0.0),
    ]);
    assert_eq!(support_function(&d, 0.0).unwrap(), 2.0);
    assert!((support_function(&d, PI).unwrap() - 1.5).abs() < 1e-12);
    let r = spectrum_hull_check(&d, 64).unwrap();
    assert!(r.ok && r.worst_margin.abs() <= 1e-8, "{}", r.worst_margin);
}

#[test]
fn normal_matrices_have_hull_equal_to_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a = common::random_upper_triangular(&mut rng, 4);
        let diag: Vec<Complex64> = (0..4).map(|k| a.get(k, k)).collect();
        let d = ComplexMatrix::diagonal(&diag);
        let curve = support_curve(&d, 128).unwrap();
        for (t, h) in curve.thetas.iter().zip(&curve.values) {
            let rot = Complex64::from_polar(1.0, -t);
            let hull = diag
                .iter()
                .map(|z| (rot * z).re)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((hull - h).abs() <= 1e-8);
        }
    }
}
