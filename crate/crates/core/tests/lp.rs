mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zenger::lp::{brute_force_vertices, LpError, LpStatus};
use zenger::seq::dot;

#[test]
fn simplex_agrees_with_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut infeasible = 0;
    for case in 0..300 {
        let lp = common::random_lp(&mut rng);
        let res = lp.solve().unwrap();
        match brute_force_vertices(&lp) {
            Ok((value, _)) => {
                assert_eq!(res.status, LpStatus::Optimal, "case {case}");
                assert!(
                    (res.value - value).abs() <= 1e-9,
                    "case {case}: {} vs {value}",
                    res.value
                );
                assert!((dot(&lp.objective, &res.point) - res.value).abs() <= 1e-9);
                for (a, b) in lp.rows.iter().zip(&lp.bounds) {
                    assert!(dot(a, &res.point) <= b + 1e-9, "case {case}");
                }
            }
            Err(LpError::NoFeasibleVertex) => {
                infeasible += 1;
                assert_eq!(res.status, LpStatus::Infeasible, "case {case}");
            }
            Err(e) => panic!("case {case}: {e}"),
        }
    }
    assert!(infeasible < 300);
}
