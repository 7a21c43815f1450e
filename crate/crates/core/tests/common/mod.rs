#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qfp_core::qlin::{PureQubit, TwoQubitState};
use qfp_core::FingerprintSet;

pub fn qubit() -> impl Strategy<Value = PureQubit> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(t, p)| PureQubit::from_bloch_angles(t, p).unwrap())
}

pub fn two_qubit() -> impl Strategy<Value = TwoQubitState> {
    proptest::array::uniform8(-1.0..1.0f64)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            TwoQubitState::new([0, 1, 2, 3].map(|i| Complex64::new(v[2 * i], v[2 * i + 1])))
                .unwrap()
        })
}

/// Between `min` and `max` states whose pairwise trace distance exceeds 0.05.
pub fn alice_set(min: usize, max: usize) -> impl Strategy<Value = FingerprintSet> {
    proptest::collection::vec(qubit(), min..=max).prop_filter_map("distinct states", |states| {
        for i in 0..states.len() {
            for j in 0..i {
                if states[i].trace_distance(&states[j]) < 0.05 {
                    return None;
                }
            }
        }
        FingerprintSet::numbered(states).ok()
    })
}

pub fn asymmetry() -> impl Strategy<Value = f64> {
    ((0.1f64).ln()..(10.0f64).ln()).prop_map(f64::exp)
}
