mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zenger::norms::{example2_w, PolyhedralNorm};
use zenger::seq::{dot, renormalize_weights};
use zenger::solver::{brute_force_zenger, objective};
use zenger::{certify, solve_zenger, NormSpec, Tolerances, ZengerProblem};

fn problems(seed: u64, count: usize, dims: std::ops::RangeInclusive<usize>) -> Vec<ZengerProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(dims.clone());
            let spec = common::random_composite(&mut rng, n);
            let alpha = common::random_alpha(&mut rng, n);
            ZengerProblem::new(spec, alpha, Tolerances::default()).unwrap()
        })
        .collect()
}

#[test]
fn trace_ascends_and_stays_off_the_axes() {
    for p in problems(21, 20, 2..=5) {
        let pair = solve_zenger(&p).unwrap();
        for step in pair.trace.windows(2) {
            assert!(step[1].objective >= step[0].objective, "{step:?}");
        }
        let c_lower = p.norm.equivalence_constants().unwrap().c_lower;
        let f0 = pair.trace[0].objective;
        let slack = (1.0 / c_lower).ln().max(0.0);
        let alpha = p.alpha.as_slice();
        let a_min = p.alpha.min();
        let floor = ((f0 - (1.0 - a_min) * slack) / a_min).exp() / 2.0;
        for rec in &pair.trace {
            assert!(
                rec.min_abs_coordinate >= floor,
                "{} < {floor}",
                rec.min_abs_coordinate
            );
        }
        assert!(pair.w.iter().all(|&v| v != 0.0));
        assert_eq!(alpha.len(), pair.w.len());
    }
}

#[test]
fn converged_pairs_are_stationary() {
    for p in problems(22, 20, 2..=6) {
        let pair = solve_zenger(&p).unwrap();
        let dual = p.norm.dual_norm(&pair.phi).unwrap();
        let lower = 1.0 - 10.0 * p.tol.gap / p.alpha.min();
        assert!(dual >= lower && dual <= 1.0 + p.tol.certificate, "{dual}");
        assert!((dot(&pair.w, &pair.phi) - 1.0).abs() <= p.tol.certificate);
        for ((w, phi), a) in pair.w.iter().zip(&pair.phi).zip(p.alpha.as_slice()) {
            assert_eq!(w * phi, *a);
        }
        assert!(certify(&pair, &p).unwrap().passed());
    }
}

#[test]
fn solver_agrees_with_grid_search_in_low_dimension() {
    for p in problems(23, 12, 2..=3) {
        let pair = solve_zenger(&p).unwrap();
        let brute = brute_force_zenger(&p).unwrap();
        assert!(
            (pair.objective - brute.objective).abs() <= 1e-6,
            "{} vs {}",
            pair.objective,
            brute.objective
        );
    }
}

#[test]
fn example2_truncations() {
    let alpha =
        renormalize_weights(&(1..=12).map(|k| 3.0 / 4f64.powi(k)).collect::<Vec<_>>()).unwrap();
    let p = ZengerProblem::new(NormSpec::Example2(12), alpha, Tolerances::default()).unwrap();
    let pair = solve_zenger(&p).unwrap();
    assert!(certify(&pair, &p).unwrap().passed());

    let alpha = renormalize_weights(&[16.0, 4.0, 1.0]).unwrap();
    let p = ZengerProblem::new(NormSpec::Example2(3), alpha, Tolerances::default()).unwrap();
    let pair = solve_zenger(&p).unwrap();
    let brute = brute_force_zenger(&p).unwrap();
    assert!((pair.objective - brute.objective).abs() <= 1e-6);
    for (a, b) in pair.w.iter().zip(&brute.w) {
        assert!((a - b).abs() <= 1e-4, "{:?} vs {:?}", pair.w, brute.w);
    }
    // The maximizer is w = (1, 1/2, 1/4) for these weights.
    assert!(
        pair.w
            .iter()
            .zip(example2_w(3))
            .all(|(a, b)| (a - b).abs() < 1e-9),
        "{:?}",
        pair.w
    );
    assert!((objective(p.alpha.as_slice(), &pair.w) - pair.objective).abs() == 0.0);
}

#[test]
fn scaling_the_norm_scales_the_pair() {
    for p in problems(24, 8, 2..=4) {
        let base = solve_zenger(&p).unwrap();
        for t in [2.0, 0.5, 3.0] {
            let spec = p.spec().scaled(t).unwrap();
            let q = ZengerProblem::new(spec, p.alpha.clone(), p.tol).unwrap();
            let pair = solve_zenger(&q).unwrap();
            for k in 0..p.dim() {
                assert!((pair.w[k] * t - base.w[k]).abs() <= 1e-6 * base.w[k].abs().max(1.0));
                assert!((pair.phi[k] / t - base.phi[k]).abs() <= 1e-6 * base.phi[k].abs().max(1.0));
            }
            if t != 3.0 {
                // Powers of two scale every intermediate quantity exactly.
                assert_eq!(pair.trace.len(), base.trace.len());
                for (a, b) in pair.trace.iter().zip(&base.trace) {
                    assert!((a.gap - b.gap).abs() <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn weighted_sup_problems_have_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..10 {
        let n = rng.gen_range(2..=6);
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..4.0)).collect();
        let alpha = common::random_alpha(&mut rng, n);
        let p = ZengerProblem::new(
            NormSpec::weighted_sup(&d).unwrap(),
            alpha.clone(),
            Tolerances::default(),
        )
        .unwrap();
        let pair = solve_zenger(&p).unwrap();
        for k in 0..n {
            assert!((pair.w[k] - 1.0 / d[k]).abs() < 1e-9);
            assert!((pair.phi[k] - alpha.as_slice()[k] * d[k]).abs() < 1e-9);
        }
        assert!(PolyhedralNorm::new(p.spec().clone()).is_ok());
    }
}
