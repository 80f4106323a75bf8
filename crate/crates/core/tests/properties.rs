use std::collections::BTreeMap;

use num::BigUint;
use proptest::prelude::*;
use urnstat::{
    binomial, confidence_set, enumerate_compositions, enumerate_samples, p_value,
    p_value_enumerated, power, randomization_p_value, space_size, srs_draw, BinaryFamily,
    Composition, ExactProportion, ModelFamily, Sided, TestStatistic, Urn, Value,
};

fn arb_urn(max_values: usize, max_count: u64) -> impl Strategy<Value = Urn> {
    prop::collection::btree_map(-5i64..=5, 1..=max_count, 1..=max_values)
        .prop_map(|m| Urn::new(m.into_iter().map(|(v, c)| (Value::from(v), c))).unwrap())
}

fn arb_urn_and_n(max_values: usize, max_count: u64) -> impl Strategy<Value = (Urn, u64)> {
    arb_urn(max_values, max_count).prop_flat_map(|u| {
        let total = u.total();
        (Just(u), 1..=total)
    })
}

fn arb_stat() -> impl Strategy<Value = TestStatistic> {
    prop_oneof![
        Just(TestStatistic::sum()),
        Just(TestStatistic::mean()),
        (-5i64..=5).prop_map(|v| TestStatistic::count_of(Value::from(v))),
        (-10i64..=10).prop_map(|c| TestStatistic::abs_deviation(Value::from(c))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complementary_events_sum_to_one(u in arb_urn(6, 20), cut in -5i64..=5) {
        let cut = Value::from(cut);
        let p = u.event_proportion(|v| v < &cut);
        let q = u.event_proportion(|v| v >= &cut);
        prop_assert_eq!(p.checked_add(&q), Some(ExactProportion::one()));
    }

    #[test]
    fn union_commutes_and_associates(a in arb_urn(4, 5), b in arb_urn(4, 5), c in arb_urn(4, 5)) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
        prop_assert_eq!(a.union(&b).total(), a.total() + b.total());
    }

    #[test]
    fn conditioning_twice_is_conditioning_on_the_union(
        base in arb_urn(4, 6),
        x in arb_urn(4, 3),
        y in arb_urn(4, 3),
    ) {
        let u = base.union(&x).union(&y).union(&x);
        let twice = u.condition_urn(&x).and_then(|r| r.condition_urn(&y));
        let once = u.condition_urn(&x.union(&y));
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn vandermonde((u, n) in arb_urn_and_n(5, 8)) {
        let total: BigUint = enumerate_compositions(&u, n).unwrap().map(|(_, w)| w).sum();
        prop_assert_eq!(total, binomial(u.total(), n));
    }

    #[test]
    fn compositions_are_valid_and_descending((u, n) in arb_urn_and_n(4, 6)) {
        let comps: Vec<Composition> = enumerate_compositions(&u, n).unwrap().map(|(c, _)| c).collect();
        for c in &comps {
            prop_assert!(c.validate_for(&u, n).is_ok());
        }
        for w in comps.windows(2) {
            prop_assert!(w[0] > w[1]);
        }
        let again: Vec<Composition> = enumerate_compositions(&u, n).unwrap().map(|(c, _)| c).collect();
        prop_assert_eq!(comps, again);
    }

    #[test]
    fn sample_histogram_matches_weights((u, n) in arb_urn_and_n(4, 4)) {
        let limit = BigUint::from(100_000u32);
        prop_assume!(space_size(&u, n).unwrap() <= limit);
        let mut hist: BTreeMap<Composition, BigUint> = BTreeMap::new();
        for s in enumerate_samples(&u, n, &limit).unwrap() {
            *hist.entry(s).or_default() += 1u32;
        }
        let weighted: BTreeMap<Composition, BigUint> = enumerate_compositions(&u, n)
            .unwrap()
            .collect();
        prop_assert_eq!(hist, weighted);
    }

    #[test]
    fn counting_matches_enumeration((u, n) in arb_urn_and_n(4, 4), stat in arb_stat(), t in -12i64..=12) {
        let limit = BigUint::from(100_000u32);
        let t = Value::from(t);
        let exact = p_value(&u, n, &stat, &t).unwrap();
        let brute = p_value_enumerated(&u, n, &stat, &t, &limit).unwrap();
        prop_assert_eq!(&exact.p, &brute.p);
        prop_assert_eq!(exact.tail_count(), brute.tail_count());
        // The unreduced numerator over C(N, n) is an integer.
        let recovered = exact.p.count_in(&exact.space_size);
        prop_assert_eq!(recovered.as_ref(), exact.tail_count());
    }

    #[test]
    fn tails_shrink_as_threshold_grows((u, n) in arb_urn_and_n(4, 6), stat in arb_stat(), t in -12i64..=12) {
        let lo = p_value(&u, n, &stat, &Value::from(t)).unwrap();
        let hi = p_value(&u, n, &stat, &Value::from(t + 1)).unwrap();
        prop_assert!(lo.p >= hi.p);
    }

    #[test]
    fn power_never_exceeds_alpha_and_matches_null(
        (u, n) in arb_urn_and_n(4, 6),
        stat in arb_stat(),
        alpha_pct in 1u64..=100,
    ) {
        let alpha = Value::from_ratio(alpha_pct as i64, 100);
        let r = power(&u, &u, n, &stat, &alpha).unwrap();
        prop_assert!(r.achieved_alpha <= ExactProportion::try_from(&alpha).unwrap());
        prop_assert_eq!(r.beta, r.achieved_alpha);
    }

    #[test]
    fn lower_thresholds_reject_more_of_the_alternative(
        (alt, n) in arb_urn_and_n(4, 6),
        stat in arb_stat(),
    ) {
        let mut prev: Option<ExactProportion> = None;
        for t in (-12i64..=12).rev() {
            let beta = p_value(&alt, n, &stat, &Value::from(t)).unwrap().p;
            if let Some(p) = &prev {
                prop_assert!(&beta >= p);
            }
            prev = Some(beta);
        }
    }

    #[test]
    fn inversion_is_literal_and_nested(
        denominator in 1u64..=12,
        n_frac in 0.0f64..1.0,
        ones_frac in 0.0f64..=1.0,
        a in 1u64..=30,
        b in 1u64..=30,
    ) {
        let n = 1 + ((denominator.min(6) - 1) as f64 * n_frac).round() as u64;
        let ones = (n as f64 * ones_frac).round() as u64;
        let fam = BinaryFamily::new(denominator).unwrap();
        let grid = fam.lattice();
        let x = Composition::new(vec![n - ones, ones]);
        let (small, large) = (a.min(b), a.max(b));
        let alpha_small = Value::from_ratio(small as i64, 100);
        let alpha_large = Value::from_ratio(large as i64, 100);
        let wide = confidence_set(&fam, &grid, &x, &alpha_small).unwrap();
        let narrow = confidence_set(&fam, &grid, &x, &alpha_large).unwrap();
        for point in &wide.points {
            let model = fam.model_urn(&point.theta).unwrap();
            let stat = fam.theta_statistic(&point.theta, n).unwrap();
            let t_obs = stat.evaluate(&x, &fam.support()).unwrap();
            let direct = p_value(&model, n, &stat, &t_obs).unwrap();
            prop_assert_eq!(&point.p, &direct.p);
            prop_assert_eq!(point.included, direct.p >= ExactProportion::try_from(&alpha_small).unwrap());
        }
        for theta in narrow.members() {
            prop_assert_eq!(wide.contains(theta), Some(true));
        }
    }

    #[test]
    fn binary_statistic_is_symmetric_under_label_swap(
        denominator in 1u64..=20,
        k in 0u64..=20,
        n in 1u64..=20,
        ones in 0u64..=20,
    ) {
        prop_assume!(k <= denominator && ones <= n);
        let fam = BinaryFamily::new(denominator).unwrap();
        let theta = Value::from_ratio(k as i64, denominator as i64);
        let mirrored = Value::from_ratio((denominator - k) as i64, denominator as i64);
        let support = fam.support();
        let t = fam.theta_statistic(&theta, n).unwrap();
        let t_mirror = fam.theta_statistic(&mirrored, n).unwrap();
        let x = Composition::new(vec![n - ones, ones]);
        let swapped = Composition::new(vec![ones, n - ones]);
        prop_assert_eq!(
            t.evaluate(&x, &support).unwrap(),
            t_mirror.evaluate(&swapped, &support).unwrap()
        );
    }

    #[test]
    fn randomization_label_swap(n_a in 1u64..=25, n_b in 1u64..=25, fa in 0u64..=25, fb in 0u64..=25) {
        prop_assume!(fa <= n_a && fb <= n_b);
        let a = randomization_p_value(n_a, n_b, fa, fb, Sided::OneA).unwrap();
        let b = randomization_p_value(n_b, n_a, fb, fa, Sided::OneB).unwrap();
        prop_assert_eq!(&a.p, &b.p);
        let two = randomization_p_value(n_a, n_b, fa, fb, Sided::Two).unwrap();
        let two_swapped = randomization_p_value(n_b, n_a, fb, fa, Sided::Two).unwrap();
        prop_assert_eq!(&two.p, &two_swapped.p);
        prop_assert!(two.p <= ExactProportion::one());
    }
}

#[test]
fn srs_marginals_match_weights() {
    let urns = [
        Urn::new(vec![(Value::from(0i64), 2), (Value::from(1i64), 2)]).unwrap(),
        Urn::new(vec![
            (Value::from(0i64), 3),
            (Value::from(1i64), 1),
            (Value::from(2i64), 2),
        ])
        .unwrap(),
    ];
    let draws = 100_000u64;
    for (u, n) in urns.iter().zip([2u64, 3]) {
        let size = space_size(u, n).unwrap();
        let mut hist: BTreeMap<Composition, u64> = BTreeMap::new();
        for pos in 0..draws {
            *hist.entry(srs_draw(u, n, 17, pos).unwrap()).or_default() += 1;
        }
        let comps: Vec<_> = enumerate_compositions(u, n).unwrap().collect();
        assert!(comps.len() <= 10);
        for (c, w) in comps {
            let p = ExactProportion::from_counts(&w, &size).unwrap().to_f64();
            let sigma = (p * (1.0 - p) / draws as f64).sqrt();
            let got = *hist.get(&c).unwrap_or(&0) as f64 / draws as f64;
            assert!((got - p).abs() <= 4.0 * sigma, "{c:?}: {got} vs {p}");
        }
    }
}
