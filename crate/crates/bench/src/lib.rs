//! Shared fixtures for the criterion benchmarks.

use qfp_core::qlin::ComplexScalar;
use qfp_core::strictq::{make_fingerprint_set, FingerprintKind};
use qfp_core::{FingerprintSet, StrictScheme};

/// Alice set with u = 0, 2, −2.
pub fn asymmetric_alice() -> FingerprintSet {
    let us = [0.0, 2.0, -2.0].map(|u| ComplexScalar::new(u, 0.0));
    FingerprintSet::from_u_values(&us).expect("distinct states")
}

pub fn packed_scheme(s: usize) -> StrictScheme {
    let set = make_fingerprint_set(FingerprintKind::Packed, s, 1).expect("packing succeeds");
    StrictScheme::with_asymmetry(set, 0.8).expect("valid strict scheme")
}
