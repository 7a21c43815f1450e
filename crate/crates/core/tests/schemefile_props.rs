mod common;

use common::{alice_set, asymmetry};
use proptest::prelude::*;
use qfp_core::classical::{OneBitScheme, RefereeTable};
use qfp_core::schemefile::{ReportFile, Scheme, SchemeFile};
use qfp_core::strictq::{derive_bob_states, StrictScheme};

fn classical_file() -> impl Strategy<Value = SchemeFile> {
    (3usize..=8)
        .prop_flat_map(|s| {
            (
                proptest::collection::vec(0.0..=1.0f64, s),
                proptest::collection::vec(0.0..=1.0f64, s),
                proptest::array::uniform4(0.0..=1.0f64),
            )
        })
        .prop_map(|(p, q, r)| {
            let scheme = OneBitScheme::with_numbered_strings(
                p,
                q,
                RefereeTable::new(r[0], r[1], r[2], r[3]),
            )
            .unwrap();
            SchemeFile::from_classical(&scheme)
        })
}

fn reload(file: &SchemeFile) -> SchemeFile {
    SchemeFile::from_json(&file.to_json_pretty()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn classical_round_trip_is_exact(file in classical_file()) {
        let once = reload(&file);
        prop_assert_eq!(&once, &file);
        let scheme = once.to_scheme().unwrap();
        prop_assert_eq!(reload(&SchemeFile::from(&scheme)), once);
    }

    #[test]
    fn strict_round_trip_is_exact(alice in alice_set(3, 6), c in asymmetry(), explicit in any::<bool>()) {
        let scheme = if explicit {
            StrictScheme::new(alice.clone(), derive_bob_states(&alice, c).unwrap()).unwrap()
        } else {
            StrictScheme::with_asymmetry(alice, c).unwrap()
        };
        let file = SchemeFile::from_strict(&scheme);
        let once = reload(&file);
        prop_assert_eq!(&once, &file);
        let Scheme::Strict(back) = once.to_scheme().unwrap() else { panic!("kind changed") };
        let twice = reload(&SchemeFile::from_strict(&back));
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn reports_are_probabilities_and_deterministic(file in classical_file()) {
        let a = ReportFile::evaluate(&file).unwrap();
        prop_assert_eq!(&a, &ReportFile::evaluate(&file).unwrap());
        for p in &a.pairs {
            prop_assert!((0.0..=1.0).contains(&p.accept_prob));
        }
        prop_assert!((0.0..=1.0).contains(&a.w_plus) && (0.0..=1.0).contains(&a.w_minus));
    }
}
