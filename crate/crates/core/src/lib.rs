//! Numerical laboratory for one-bit and one-qubit equality fingerprinting in
//! the simultaneous message passing model.
//!
//! - [`qlin`]: one- and two-qubit linear algebra (states, Schmidt form, complements).
//! - [`classical`]: one-bit schemes, their exact error probabilities and
//!   the constructive impossibility arguments.
//! - [`strictq`]: one-qubit strict schemes, reject states, canonical form,
//!   K constants and the optimal referee.
//! - [`search`]: asymmetry optimization, Bloch-sphere packing, symmetry advisory.
//! - [`audit`]: seeded randomized audits of the invariants above.
//! - [`reproduce`]: the reference tables and worked example, computed from
//!   the library.
//! - [`schemefile`]: JSON scheme and report formats.

pub mod audit;
pub mod classical;
pub mod qlin;
pub mod reproduce;
pub mod rng;
pub mod schemefile;
pub mod search;
pub mod strictq;

pub use classical::{evaluate_classical, ClassicalReport, OneBitScheme, RefereeTable};
pub use qlin::{ComplexScalar, DensityMatrix, PureQubit, TwoQubitState};
pub use search::{
    optimize_c, pack_states, symmetric_optimality_check, CSearchResult, OptimalityDiagnosis,
};
pub use strictq::{
    canonicalize, evaluate_strict, CanonicalForm, FingerprintKind, FingerprintSet, QuantumReport,
    RefereePovm, StrictScheme,
};
