use proptest::prelude::*;
use zenger::asymptotics::{example1_refute, liminf_check, pn_table, AlphaRule, NormFamily};
use zenger::{Block, NormSpec, TailVector};

#[test]
fn example2_projection_norms_shrink_to_one() {
    let table = pn_table(&NormFamily::Example2, 1..=8).unwrap();
    assert!(table.within_bounds());
    for pair in table.rows.windows(2) {
        assert!(pair[1].pn_norm < pair[0].pn_norm);
    }
    for row in &table.rows {
        assert!(
            row.pn_norm >= 1.0 && row.pn_norm <= row.bound.unwrap() + 1e-9,
            "{row:?}"
        );
    }
}

#[test]
fn fixed_composite_family() {
    let spec = NormSpec::composite(vec![Block::identity(2.0, 3)]).unwrap();
    let t = pn_table(&NormFamily::Fixed(spec), 1..=4).unwrap();
    assert!(t.rows.iter().all(|r| (r.pn_norm - 1.0).abs() < 1e-12));
}

fn candidate() -> impl Strategy<Value = TailVector> {
    (
        prop::collection::vec((0.01..1.0f64, any::<bool>()), 0..6),
        0.01..0.5f64,
        any::<bool>(),
    )
        .prop_map(|(head, c, neg)| {
            let top = 1.0 - c;
            let mut head: Vec<f64> = head
                .into_iter()
                .map(|(v, s)| if s { -v * top } else { v * top })
                .collect();
            if let Some(first) = head.first_mut() {
                *first = first.signum() * top;
            }
            let tail = if neg { -c } else { c };
            if head.is_empty() {
                // sup = |c| + |c| must be one.
                return TailVector::constant(if neg { -0.5 } else { 0.5 });
            }
            TailVector::new(head, tail)
        })
}

proptest! {
    #[test]
    fn witnesses_have_unit_norm_and_exceed_one(w in candidate(), ratio in 0.05..0.95f64) {
        let r = example1_refute(&w, AlphaRule::Geometric { ratio }).unwrap();
        prop_assert_eq!(NormSpec::Example1Tail.eval_tail(&r.x).unwrap(), 1.0);
        prop_assert!(r.value > 1.0);
        prop_assert_eq!(r.x.head.len(), r.n);
        for k in 0..r.n {
            prop_assert_eq!(r.x.head[k], w.get(k).signum());
        }
    }

    #[test]
    fn finitely_supported_vectors_pass_the_liminf_check(x in prop::collection::vec(-2.0..2.0f64, 1..5)) {
        let n = x.len();
        let v = TailVector::finite(x);
        for spec in [NormSpec::Sup(n), NormSpec::Example2(n), NormSpec::Example1Tail] {
            prop_assert!(liminf_check(&spec, &v, 1..=2 * n + 2).unwrap().consistent);
        }
    }
}
