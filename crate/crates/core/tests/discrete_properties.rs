use ess_core::{
    ess, ess_profile, make_pmf, product_pmf, renyi_entropy, shannon_entropy, support_size, Alpha,
    Pmf,
};
use proptest::prelude::*;

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Weights with some exact zeros, at least one positive entry.
fn weights(max_m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 3 => 1e-6f64..1.0], 1..=max_m)
        .prop_filter("needs positive mass", |w| w.iter().any(|&x| x > 0.0))
}

fn pmf(max_m: usize) -> impl Strategy<Value = Pmf> {
    weights(max_m).prop_map(|w| make_pmf(&w, true).unwrap())
}

fn alpha() -> impl Strategy<Value = Alpha> {
    prop_oneof![
        Just(Alpha::One),
        Just(Alpha::Inf),
        (0.001f64..0.99).prop_map(Alpha::Finite),
        (1.01f64..50.0).prop_map(Alpha::Finite),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn symmetric_under_reversal_and_rotation(p in pmf(10), a in alpha(), k in 0usize..10) {
        let mut rev = p.probs().to_vec();
        rev.reverse();
        let mut rot = p.probs().to_vec();
        let shift = k % rot.len();
        rot.rotate_left(shift);
        let v = ess(&p, a);
        prop_assert!(rel_diff(ess(&make_pmf(&rev, false).unwrap(), a), v) < 1e-12);
        prop_assert!(rel_diff(ess(&make_pmf(&rot, false).unwrap(), a), v) < 1e-12);
    }

    #[test]
    fn bounded_by_one_and_support(p in pmf(10), a in alpha()) {
        let v = ess(&p, a);
        prop_assert!(v >= 1.0 - 1e-12);
        prop_assert!(v <= support_size(&p) as f64 * (1.0 + 1e-12));
    }

    #[test]
    fn zero_padding_is_invisible(p in pmf(10), a in alpha(), extra in 1usize..4) {
        prop_assert!(rel_diff(ess(&p.padded(extra), a), ess(&p, a)) < 1e-12);
    }

    #[test]
    fn multiplicative_over_independent_products(p in pmf(8), q in pmf(8), a in alpha()) {
        let lhs = ess(&product_pmf(&p, &q), a);
        prop_assert!(rel_diff(lhs, ess(&p, a) * ess(&q, a)) < 1e-10);
    }

    #[test]
    fn continuous_in_alpha_at_one(p in pmf(10)) {
        let one = ess(&p, Alpha::One);
        for a in [1.0 - 1e-7, 1.0 + 1e-7] {
            prop_assert!((ess(&p, Alpha::finite(a).unwrap()) - one).abs() < 1e-5);
        }
    }

    #[test]
    fn nonincreasing_in_alpha(p in pmf(10), mut grid in prop::collection::vec(0.001f64..60.0, 2..12)) {
        grid.sort_by(f64::total_cmp);
        grid.retain(|a| (a - 1.0).abs() > 1e-9);
        let mut alphas: Vec<Alpha> = grid.into_iter().map(Alpha::Finite).collect();
        let at_one = alphas.partition_point(|a| a.value() < 1.0);
        alphas.insert(at_one, Alpha::One);
        alphas.push(Alpha::Inf);
        let prof = ess_profile(&p, &alphas).unwrap();
        for w in prof.values().windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12, "{:?}", prof);
        }
    }

    #[test]
    fn large_order_approaches_inf(p in pmf(10)) {
        prop_assume!(p.max_prob() >= 0.2);
        prop_assert!((ess(&p, Alpha::Finite(1000.0)) - ess(&p, Alpha::Inf)).abs() < 1e-2);
    }

    #[test]
    fn log_domain_matches_naive(p in pmf(4), a in prop_oneof![0.001f64..0.999, 1.001f64..30.0]) {
        let naive = p.probs().iter().map(|x| x.powf(a)).sum::<f64>().powf(1.0 / (1.0 - a));
        prop_assert!(rel_diff(ess(&p, Alpha::Finite(a)), naive) < 1e-12);
    }

    #[test]
    fn entropy_is_log_of_ess(p in pmf(10), a in alpha()) {
        prop_assert!((renyi_entropy(&p, a).exp() - ess(&p, a)).abs() <= 1e-12 * ess(&p, a));
        let h = shannon_entropy(&p);
        prop_assert!(h >= 0.0 && h <= (p.len() as f64).ln() + 1e-12);
    }
}

#[test]
fn delta_and_uniform_equality_cases() {
    let alphas = [
        Alpha::Finite(0.001),
        Alpha::Finite(0.5),
        Alpha::One,
        Alpha::Finite(2.0),
        Alpha::Finite(10.0),
        Alpha::Inf,
    ];
    for m in 1..=10 {
        let u = Pmf::uniform(m).unwrap();
        for at in 0..m {
            let d = Pmf::delta(m, at).unwrap();
            for a in alphas {
                assert_eq!(ess(&d, a), 1.0);
            }
        }
        for a in alphas {
            assert!(rel_diff(ess(&u, a), m as f64) < 1e-12, "m={m} alpha={a}");
        }
    }
}
