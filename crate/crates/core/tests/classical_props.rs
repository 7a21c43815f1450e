use proptest::prelude::*;
use qfp_core::classical::{
    count_confusable_pairs, evaluate_classical, find_confusable_pair_indices, separation_params,
    OneBitScheme, RefereeTable, SeparationBranch,
};

fn probs(s: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0..=1.0f64, s)
}

fn scheme() -> impl Strategy<Value = OneBitScheme> {
    (3usize..=8)
        .prop_flat_map(|s| (probs(s), probs(s), proptest::array::uniform4(0.0..=1.0f64)))
        .prop_map(|(p, q, r)| {
            OneBitScheme::with_numbered_strings(p, q, RefereeTable::new(r[0], r[1], r[2], r[3]))
                .unwrap()
        })
}

/// Referee on the dyadic grid with zero cross coefficient.
fn degenerate_scheme() -> impl Strategy<Value = OneBitScheme> {
    (3usize..=8, 0u32..=341, 0u32..=341, 0u32..=341)
        .prop_flat_map(|(s, a, b, d)| (probs(s), probs(s), Just((a, b, d))))
        .prop_map(|(p, q, (a, b, d))| {
            let (r00, r01, r10) = (
                f64::from(a) / 1024.0,
                f64::from(a + b) / 1024.0,
                f64::from(a + d) / 1024.0,
            );
            let r11 = r01 + r10 - r00;
            OneBitScheme::with_numbered_strings(p, q, RefereeTable::new(r00, r01, r10, r11))
                .unwrap()
        })
}

/// Deterministic messages with a referee that accepts every matching pair.
fn one_sided_scheme() -> impl Strategy<Value = OneBitScheme> {
    (3usize..=8)
        .prop_flat_map(|s| {
            (
                proptest::collection::vec(any::<bool>(), s),
                proptest::collection::vec(any::<bool>(), s),
                proptest::array::uniform4(0.0..=1.0f64),
            )
        })
        .prop_map(|(p, q, mut r)| {
            for (&a, &b) in p.iter().zip(&q) {
                r[2 * a as usize + b as usize] = 1.0;
            }
            let to_f = |v: &[bool]| v.iter().map(|&x| if x { 1.0 } else { 0.0 }).collect();
            OneBitScheme::with_numbered_strings(
                to_f(&p),
                to_f(&q),
                RefereeTable::new(r[0], r[1], r[2], r[3]),
            )
            .unwrap()
        })
}

fn check_separation(scheme: &OneBitScheme, eps: f64) -> Result<(), TestCaseError> {
    let params = separation_params(scheme, eps);
    for a in 0..scheme.len() {
        for b in 0..scheme.len() {
            let gap = scheme.positive_prob_at(a, b) - (1.0 - eps);
            if gap.abs() > 1e-9 {
                prop_assert_eq!(
                    params.holds(a, b),
                    gap > 0.0,
                    "pair ({}, {}) gap {}",
                    a,
                    b,
                    gap
                );
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn false_positive_bound(s in scheme()) {
        let r = evaluate_classical(&s);
        prop_assert!(r.worst_false_positive >= r.min_matching_accept() - 1e-12);
        prop_assert!(r.worst_false_negative.max(r.worst_false_positive) >= 0.5 - 1e-12);
    }

    #[test]
    fn one_sided_schemes_always_err(s in one_sided_scheme()) {
        let r = evaluate_classical(&s);
        prop_assert_eq!(r.worst_false_negative, 0.0);
        prop_assert!(r.worst_false_positive >= 1.0 - 1e-12);
    }

    #[test]
    fn confusable_count_meets_bound(s in scheme()) {
        let r = evaluate_classical(&s);
        let count = count_confusable_pairs(&s, r.worst_false_negative).unwrap();
        prop_assert!(count.meets_bound(), "{:?}", count);
        prop_assert!(count.ordered >= count.unordered);
    }

    #[test]
    fn separation_cross_branch(s in scheme(), eps in 0.0..1.0f64) {
        prop_assume!(s.referee().cross_coefficient() != 0.0);
        prop_assert_eq!(separation_params(&s, eps).branch, SeparationBranch::Cross);
        check_separation(&s, eps)?;
    }

    #[test]
    fn separation_degenerate_branch(s in degenerate_scheme(), eps in 0.0..1.0f64) {
        prop_assert_eq!(separation_params(&s, eps).branch, SeparationBranch::Degenerate);
        check_separation(&s, eps)?;
    }

    #[test]
    fn confusable_pair_is_accepted(s in scheme()) {
        let r = evaluate_classical(&s);
        let (mu, nu) = find_confusable_pair_indices(&s);
        prop_assert_ne!(mu, nu);
        prop_assert!(s.positive_prob_at(mu, nu) >= r.min_matching_accept() - 1e-12);
    }

    #[test]
    fn probabilities_stay_in_unit_interval(s in scheme()) {
        for row in evaluate_classical(&s).accept {
            for p in row {
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }
    }
}
