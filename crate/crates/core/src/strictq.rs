//! One-qubit fingerprinting with one-sided error.
//!
//! A strict scheme is determined by Alice's and Bob's pure fingerprint states.
//! The matching states φ_σ⊗ψ_σ span a three-dimensional accept space; its
//! orthogonal complement is the reject state |R⟩, and the optimal referee
//! projects onto |R⟩. Local unitaries bring |R⟩ to the canonical form
//! (|01⟩ − C|10⟩)/√(1+C²), where Bob's states follow from Alice's through
//! w = C·u. All u-plane formulas are written in amplitude form so that the
//! state |1⟩ (u = ∞) needs no special casing.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::qlin::{
    self, c, check_effect, inner_product, kron, orthogonal_complement, projector,
    schmidt_decompose, span_basis, swap_operator, tensor, DensityMatrix, Operator2, Operator4,
    PureQubit, QlinError, TwoQubitState, RANK_CUTOFF,
};
use crate::search;

/// Minimum trace distance between two fingerprints of the same party.
pub const DISTINCTNESS_EPS: f64 = 1e-9;

/// Default iteration count used by [`make_fingerprint_set`] for packed sets.
pub const DEFAULT_PACK_ITERS: usize = 4000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrictError {
    #[error("fingerprint set needs at least 2 states, got {0}")]
    TooFewStates(usize),
    #[error("{labels} labels for {states} states")]
    LabelCountMismatch { labels: usize, states: usize },
    #[error("duplicate string label {0:?}")]
    DuplicateString(String),
    #[error("fingerprints for {0:?} and {1:?} coincide (trace distance {2:e})")]
    IndistinctFingerprints(String, String, f64),
    #[error("Alice and Bob use different string sets")]
    StringSetMismatch,
    #[error("accept space has dimension {0}; a strict scheme needs 3")]
    InvalidStrictScheme(usize),
    #[error("reject state is (nearly) a product state: Schmidt ratio {0:e}")]
    DegenerateRejectState(f64),
    #[error("unknown string label {0:?}")]
    UnknownString(String),
    #[error("hybrid probability requested for the matching input ({0:?}, {0:?})")]
    MatchingPair(String),
    #[error("{kind} fingerprint sets have {expected} states, requested {requested}")]
    KindSizeMismatch {
        kind: &'static str,
        expected: usize,
        requested: usize,
    },
    #[error("asymmetry parameter must be positive and finite, got {0}")]
    InvalidAsymmetry(f64),
    #[error("C search grid needs at least 64 points, got {0}")]
    InvalidGrid(usize),
    #[error("error probability must lie in [0, 1), got {0}")]
    InvalidErrorProbability(f64),
    #[error(transparent)]
    Qlin(#[from] QlinError),
}

pub type Result<T> = std::result::Result<T, StrictError>;

/// Pure fingerprint states for one party, one per string.
#[derive(Debug, Clone, PartialEq)]
pub struct FingerprintSet {
    strings: Vec<String>,
    states: Vec<PureQubit>,
    delta: f64,
}

impl FingerprintSet {
    pub fn new(strings: Vec<String>, states: Vec<PureQubit>) -> Result<Self> {
        if states.len() < 2 {
            return Err(StrictError::TooFewStates(states.len()));
        }
        if strings.len() != states.len() {
            return Err(StrictError::LabelCountMismatch {
                labels: strings.len(),
                states: states.len(),
            });
        }
        let mut delta = 0.0_f64;
        for i in 0..states.len() {
            if strings[..i].contains(&strings[i]) {
                return Err(StrictError::DuplicateString(strings[i].clone()));
            }
            for j in 0..i {
                let dist = states[i].trace_distance(&states[j]);
                if dist <= DISTINCTNESS_EPS {
                    return Err(StrictError::IndistinctFingerprints(
                        strings[j].clone(),
                        strings[i].clone(),
                        dist,
                    ));
                }
                delta = delta.max(inner_product(&states[i], &states[j]).norm());
            }
        }
        Ok(Self {
            strings,
            states,
            delta: delta.min(1.0),
        })
    }

    /// Labels "0".."n-1".
    pub fn numbered(states: Vec<PureQubit>) -> Result<Self> {
        let strings = (0..states.len()).map(|i| i.to_string()).collect();
        Self::new(strings, states)
    }

    /// States (|0⟩ + u|1⟩)/√(1+|u|²), labelled "0".."n-1".
    pub fn from_u_values(us: &[Complex64]) -> Result<Self> {
        let states = us
            .iter()
            .map(|&u| PureQubit::from_u(u))
            .collect::<qlin::Result<Vec<_>>>()?;
        Self::numbered(states)
    }

    pub fn strings(&self) -> &[String] {
        &self.strings
    }

    pub fn states(&self) -> &[PureQubit] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &PureQubit {
        &self.states[i]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Largest |⟨φ_α|φ_β⟩| over distinct pairs.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.strings
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| StrictError::UnknownString(label.to_string()))
    }

    /// Applies `op` to every state, keeping labels.
    pub fn transformed(&self, op: &Operator2) -> Result<FingerprintSet> {
        let states = self
            .states
            .iter()
            .map(|s| s.apply(op))
            .collect::<qlin::Result<Vec<_>>>()?;
        FingerprintSet::new(self.strings.clone(), states)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FingerprintKind {
    Triangle,
    Tetrahedron,
    Octahedron,
    Packed,
}

impl FingerprintKind {
    fn fixed_size(self) -> Option<(&'static str, usize)> {
        match self {
            FingerprintKind::Triangle => Some(("triangle", 3)),
            FingerprintKind::Tetrahedron => Some(("tetrahedron", 4)),
            FingerprintKind::Octahedron => Some(("octahedron", 6)),
            FingerprintKind::Packed => None,
        }
    }
}

pub fn make_fingerprint_set(kind: FingerprintKind, s: usize, seed: u64) -> Result<FingerprintSet> {
    if let Some((name, expected)) = kind.fixed_size() {
        if s != expected {
            return Err(StrictError::KindSizeMismatch {
                kind: name,
                expected,
                requested: s,
            });
        }
    }
    let states = match kind {
        FingerprintKind::Triangle => (0..3)
            .map(|k| PureQubit::from_bloch_angles(2.0 * PI * k as f64 / 3.0, 0.0))
            .collect::<qlin::Result<Vec<_>>>()?,
        FingerprintKind::Tetrahedron => {
            let mut v = vec![PureQubit::zero()];
            for k in 0..3 {
                let ph = Complex64::from_polar(2f64.sqrt(), 2.0 * PI * k as f64 / 3.0);
                v.push(PureQubit::new(c(1.0, 0.0), ph)?);
            }
            v
        }
        FingerprintKind::Octahedron => vec![
            PureQubit::zero(),
            PureQubit::one(),
            PureQubit::new(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0))?,
            PureQubit::new(c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0))?,
            PureQubit::new(c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2))?,
            PureQubit::new(c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2))?,
        ],
        FingerprintKind::Packed => return search::pack_states(s, seed, DEFAULT_PACK_ITERS),
    };
    FingerprintSet::numbered(states)
}

/// Bob's states a_σ|0⟩ + C·b_σ|1⟩ (normalized) from Alice's a_σ|0⟩ + b_σ|1⟩.
pub fn derive_bob_states(alice: &FingerprintSet, asymmetry: f64) -> Result<FingerprintSet> {
    check_asymmetry(asymmetry)?;
    let states = alice
        .states
        .iter()
        .map(|s| PureQubit::new(s.amp0(), s.amp1() * asymmetry))
        .collect::<qlin::Result<Vec<_>>>()?;
    FingerprintSet::new(alice.strings.clone(), states)
}

fn check_asymmetry(asymmetry: f64) -> Result<()> {
    if asymmetry.is_finite() && asymmetry > 0.0 {
        Ok(())
    } else {
        Err(StrictError::InvalidAsymmetry(asymmetry))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptSpace {
    pub dim: usize,
    pub basis: Vec<TwoQubitState>,
}

/// Span of arbitrary matching states (duplicates allowed).
pub fn accept_space_of(matching: &[TwoQubitState]) -> AcceptSpace {
    let basis = span_basis(matching);
    AcceptSpace {
        dim: basis.len(),
        basis,
    }
}

fn matching_states(alice: &FingerprintSet, bob: &FingerprintSet) -> Result<Vec<TwoQubitState>> {
    if alice.strings != bob.strings {
        return Err(StrictError::StringSetMismatch);
    }
    Ok(alice
        .states
        .iter()
        .zip(&bob.states)
        .map(|(a, b)| tensor(a, b))
        .collect())
}

pub fn accept_space(alice: &FingerprintSet, bob: &FingerprintSet) -> Result<AcceptSpace> {
    Ok(accept_space_of(&matching_states(alice, bob)?))
}

/// Unique state orthogonal to all matching states.
pub fn reject_state_of(matching: &[TwoQubitState]) -> Result<TwoQubitState> {
    let comp = orthogonal_complement(matching);
    if comp.len() != 1 {
        return Err(StrictError::InvalidStrictScheme(4 - comp.len()));
    }
    Ok(comp[0])
}

pub fn reject_state(alice: &FingerprintSet, bob: &FingerprintSet) -> Result<TwoQubitState> {
    reject_state_of(&matching_states(alice, bob)?)
}

/// How Bob's fingerprints were specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BobSource {
    Explicit,
    /// Derived from Alice's states with asymmetry parameter C.
    Derived(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrictScheme {
    alice: FingerprintSet,
    bob: FingerprintSet,
    bob_source: BobSource,
    reject: TwoQubitState,
    accept_dim: usize,
}

impl StrictScheme {
    pub fn new(alice: FingerprintSet, bob: FingerprintSet) -> Result<Self> {
        Self::build(alice, bob, BobSource::Explicit)
    }

    /// Alice and Bob share the same fingerprints.
    pub fn symmetric(alice: FingerprintSet) -> Result<Self> {
        let bob = alice.clone();
        Self::build(alice, bob, BobSource::Derived(1.0))
    }

    /// Bob's fingerprints derived from Alice's with w = C·u.
    pub fn with_asymmetry(alice: FingerprintSet, asymmetry: f64) -> Result<Self> {
        let bob = derive_bob_states(&alice, asymmetry)?;
        Self::build(alice, bob, BobSource::Derived(asymmetry))
    }

    fn build(alice: FingerprintSet, bob: FingerprintSet, bob_source: BobSource) -> Result<Self> {
        let matching = matching_states(&alice, &bob)?;
        let space = accept_space_of(&matching);
        if space.dim != 3 {
            return Err(StrictError::InvalidStrictScheme(space.dim));
        }
        let reject = reject_state_of(&matching)?;
        Ok(Self {
            alice,
            bob,
            bob_source,
            reject,
            accept_dim: space.dim,
        })
    }

    pub fn strings(&self) -> &[String] {
        self.alice.strings()
    }

    pub fn alice(&self) -> &FingerprintSet {
        &self.alice
    }

    pub fn bob(&self) -> &FingerprintSet {
        &self.bob
    }

    pub fn bob_source(&self) -> BobSource {
        self.bob_source
    }

    pub fn reject_state(&self) -> &TwoQubitState {
        &self.reject
    }

    pub fn accept_dim(&self) -> usize {
        self.accept_dim
    }

    pub fn len(&self) -> usize {
        self.alice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alice.is_empty()
    }

    pub fn hybrid_state(&self, alpha: usize, beta: usize) -> TwoQubitState {
        tensor(self.alice.state(alpha), self.bob.state(beta))
    }
}

/// Two-outcome referee measurement, stored as its negative-outcome effect E₋.
#[derive(Debug, Clone, PartialEq)]
pub struct RefereePovm {
    neg_op: Operator4,
}

impl RefereePovm {
    pub fn new(neg_op: Operator4) -> Result<Self> {
        check_effect(&neg_op)?;
        Ok(Self { neg_op })
    }

    /// E₋ = |R⟩⟨R|.
    pub fn projective(reject: &TwoQubitState) -> Self {
        Self {
            neg_op: projector(reject),
        }
    }

    /// E₋ = (I − SWAP)/2, the controlled-SWAP test.
    pub fn swap_test() -> Self {
        Self {
            neg_op: (Operator4::identity() - swap_operator()) * c(0.5, 0.0),
        }
    }

    pub fn neg_op(&self) -> &Operator4 {
        &self.neg_op
    }
}

/// 1 − Tr(E₋ · ρ⊗τ), clamped to [0, 1].
pub fn povm_accept_prob(
    rho: &DensityMatrix<2>,
    tau: &DensityMatrix<2>,
    referee: &RefereePovm,
) -> f64 {
    let joint = kron(rho.entries(), tau.entries());
    let reject = (referee.neg_op * joint).trace();
    debug_assert!(reject.im.abs() < 1e-12);
    (1.0 - reject.re).clamp(0.0, 1.0)
}

/// Analytic controlled-SWAP acceptance (1 + |⟨φ|ψ⟩|²)/2.
pub fn cswap_accept_prob(phi: &PureQubit, psi: &PureQubit) -> f64 {
    ((1.0 + inner_product(phi, psi).norm_sqr()) / 2.0).min(1.0)
}

/// Runs (H⊗I⊗I)·CSWAP·(H⊗I⊗I) on |0⟩|φ⟩|ψ⟩.
///
/// Amplitude index is 4·q₁ + 2·q₂ + q₃ with q₁ the control. Returns the final
/// state and the probability of reading 0 on the control.
pub fn cswap_circuit(phi: &PureQubit, psi: &PureQubit) -> ([Complex64; 8], f64) {
    let mut state = [c(0.0, 0.0); 8];
    for i in 0..2 {
        for j in 0..2 {
            state[2 * i + j] = phi.amps()[i] * psi.amps()[j];
        }
    }
    let hadamard_control = |s: &mut [Complex64; 8]| {
        for low in 0..4 {
            let (a, b) = (s[low], s[4 + low]);
            s[low] = (a + b) * FRAC_1_SQRT_2;
            s[4 + low] = (a - b) * FRAC_1_SQRT_2;
        }
    };
    hadamard_control(&mut state);
    // Control set: exchange |1,0,1⟩ and |1,1,0⟩.
    state.swap(0b101, 0b110);
    hadamard_control(&mut state);
    let p0: f64 = state[..4].iter().map(|a| a.norm_sqr()).sum();
    (state, p0.clamp(0.0, 1.0))
}

/// Local-unitary frame in which the reject state is (|01⟩ − C|10⟩)/√(1+C²).
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub c: f64,
    pub u: Operator2,
    pub v: Operator2,
    pub canon_alice: FingerprintSet,
    pub canon_bob: FingerprintSet,
    pub canon_reject: TwoQubitState,
}

impl CanonicalForm {
    /// K_σ for every string, from the canonical Alice states.
    pub fn k_values(&self) -> Vec<f64> {
        self.canon_alice
            .states()
            .iter()
            .map(|s| k_constant(self.c, s))
            .collect()
    }
}

/// (|01⟩ − C|10⟩)/√(1+C²).
pub fn canonical_reject_state(asymmetry: f64) -> TwoQubitState {
    TwoQubitState::from_real([0.0, 1.0, -asymmetry, 0.0]).expect("nonzero vector")
}

pub fn canonicalize(scheme: &StrictScheme) -> Result<CanonicalForm> {
    let schmidt = schmidt_decompose(&scheme.reject);
    let [s0, s1] = schmidt.coeffs;
    let ratio = s1 / s0;
    // Also rejects NaN from a zero leading coefficient.
    if ratio.is_nan() || ratio < RANK_CUTOFF {
        return Err(StrictError::DegenerateRejectState(ratio));
    }
    // R = s0 η0⊗κ0 − s1 η1⊗κ1 with κ1 = −(second B basis vector).
    let eta = schmidt.basis_a;
    let kappa0 = schmidt.basis_b[0];
    let kappa1 = schmidt.basis_b[1].map(|z| -z);
    let u = Operator2::new(
        eta[0][0].conj(),
        eta[0][1].conj(),
        eta[1][0].conj(),
        eta[1][1].conj(),
    );
    let v = Operator2::new(
        kappa1[0].conj(),
        kappa1[1].conj(),
        kappa0[0].conj(),
        kappa0[1].conj(),
    );
    let canon_reject = scheme.reject.apply_local(&u, &v)?;
    Ok(CanonicalForm {
        c: ratio,
        canon_alice: scheme.alice.transformed(&u)?,
        canon_bob: scheme.bob.transformed(&v)?,
        canon_reject,
        u,
        v,
    })
}

/// C² / ((|a|² + C²|b|²)(1 + C²)) for the state a|0⟩ + b|1⟩.
pub fn k_constant(asymmetry: f64, alice_state: &PureQubit) -> f64 {
    let c2 = asymmetry * asymmetry;
    let a2 = alice_state.amp0().norm_sqr();
    let b2 = alice_state.amp1().norm_sqr();
    c2 / ((a2 + c2 * b2) * (1.0 + c2))
}

fn pair_indices(scheme: &StrictScheme, alpha: &str, beta: &str) -> Result<(usize, usize)> {
    let a = scheme.alice.index_of(alpha)?;
    let b = scheme.alice.index_of(beta)?;
    if a == b {
        return Err(StrictError::MatchingPair(alpha.to_string()));
    }
    Ok((a, b))
}

/// |⟨R | φ_α ⊗ ψ_β⟩|² by indices.
pub fn hybrid_reject_prob_at(scheme: &StrictScheme, alpha: usize, beta: usize) -> f64 {
    scheme
        .reject
        .overlap_sq(&scheme.hybrid_state(alpha, beta))
        .clamp(0.0, 1.0)
}

/// Probability that the optimal referee rejects the hybrid input (α, β).
pub fn hybrid_reject_prob(scheme: &StrictScheme, alpha: &str, beta: &str) -> Result<f64> {
    let (a, b) = pair_indices(scheme, alpha, beta)?;
    Ok(hybrid_reject_prob_at(scheme, a, b))
}

/// K_β·(1 − |⟨φ_β|φ_α⟩|²) in the canonical frame.
pub fn reject_prob_via_k(canon: &CanonicalForm, alpha: usize, beta: usize) -> f64 {
    let fa = canon.canon_alice.state(alpha);
    let fb = canon.canon_alice.state(beta);
    k_constant(canon.c, fb) * (1.0 - inner_product(fb, fa).norm_sqr())
}

/// C²|b_α a_β − a_α b_β|² / ((|a_β|² + C²|b_β|²)(1 + C²)) in the canonical frame.
///
/// Amplitude form of C²|u_α − u_β|² / ((1+|u_α|²)(1+C²|u_β|²)(1+C²)).
pub fn reject_prob_closed_form(canon: &CanonicalForm, alpha: usize, beta: usize) -> f64 {
    let fa = canon.canon_alice.state(alpha);
    let fb = canon.canon_alice.state(beta);
    let c2 = canon.c * canon.c;
    let cross = fa.amp1() * fb.amp0() - fa.amp0() * fb.amp1();
    c2 * cross.norm_sqr() / ((fb.amp0().norm_sqr() + c2 * fb.amp1().norm_sqr()) * (1.0 + c2))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantumReport {
    pub strings: Vec<String>,
    /// `accept[α][β]`: acceptance probability of the optimal referee.
    pub accept: Vec<Vec<f64>>,
    pub w_plus: f64,
    pub w_minus: f64,
    pub argmax_pair: (String, String),
    pub canonical_c: Option<f64>,
    pub k_values: Option<Vec<f64>>,
}

/// Exact evaluation under the optimal strict referee E₋ = |R⟩⟨R|.
pub fn evaluate_strict(scheme: &StrictScheme) -> Result<QuantumReport> {
    let n = scheme.len();
    let mut accept = vec![vec![0.0; n]; n];
    let mut w_minus = 0.0_f64;
    let mut best = (0, 1);
    for a in 0..n {
        for b in 0..n {
            let reject = hybrid_reject_prob_at(scheme, a, b);
            accept[a][b] = 1.0 - reject;
            if a == b {
                w_minus = w_minus.max(reject);
            } else if accept[a][b] > accept[best.0][best.1] {
                best = (a, b);
            }
        }
    }
    let canon = match canonicalize(scheme) {
        Ok(canon) => Some(canon),
        Err(StrictError::DegenerateRejectState(_)) => None,
        Err(e) => return Err(e),
    };
    let strings = scheme.strings().to_vec();
    Ok(QuantumReport {
        w_plus: accept[best.0][best.1],
        w_minus,
        argmax_pair: (strings[best.0].clone(), strings[best.1].clone()),
        canonical_c: canon.as_ref().map(|f| f.c),
        k_values: canon.as_ref().map(CanonicalForm::k_values),
        strings,
        accept,
    })
}

/// Referee that flips a positive result to negative with probability `flip_prob`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSidedConversion {
    pub one_sided_error: f64,
    pub flip_prob: f64,
    /// Probability a matching input is rejected after flipping.
    pub matching_error: f64,
    /// Probability the worst hybrid input is still accepted after flipping.
    pub hybrid_error: f64,
    pub two_sided_error: f64,
}

/// Error probabilities of the flipped referee, composed from the one-sided
/// acceptance probabilities of the worst matching and hybrid inputs.
pub fn compose_flip(matching_accept: f64, hybrid_accept: f64, flip_prob: f64) -> (f64, f64) {
    let keep = 1.0 - flip_prob;
    (1.0 - matching_accept * keep, hybrid_accept * keep)
}

/// Balances both error types: flip probability ε/(1+ε).
pub fn to_two_sided(strict_error: f64) -> Result<TwoSidedConversion> {
    if !(0.0..1.0).contains(&strict_error) {
        return Err(StrictError::InvalidErrorProbability(strict_error));
    }
    let flip_prob = strict_error / (1.0 + strict_error);
    let (matching_error, hybrid_error) = compose_flip(1.0, strict_error, flip_prob);
    Ok(TwoSidedConversion {
        one_sided_error: strict_error,
        flip_prob,
        matching_error,
        hybrid_error,
        two_sided_error: matching_error.max(hybrid_error),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn asym_alice() -> FingerprintSet {
        FingerprintSet::from_u_values(&[c(0.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0)]).unwrap()
    }

    #[test]
    fn named_sets_have_expected_delta() {
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        assert_abs_diff_eq!(t.delta(), 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        let tri = make_fingerprint_set(FingerprintKind::Triangle, 3, 0).unwrap();
        assert_abs_diff_eq!(tri.delta(), 0.5, epsilon = 1e-12);
        assert!(tri.states().iter().all(|s| s.amp1().im == 0.0));
        let oct = make_fingerprint_set(FingerprintKind::Octahedron, 6, 0).unwrap();
        assert_abs_diff_eq!(oct.delta(), FRAC_1_SQRT_2, epsilon = 1e-12);
        assert!(matches!(
            make_fingerprint_set(FingerprintKind::Triangle, 4, 0),
            Err(StrictError::KindSizeMismatch { expected: 3, .. })
        ));
    }

    #[test]
    fn fingerprint_set_rejects_duplicates() {
        let z = PureQubit::zero();
        let err = FingerprintSet::numbered(vec![z, PureQubit::one(), z]).unwrap_err();
        assert!(matches!(err, StrictError::IndistinctFingerprints(..)));
    }

    #[test]
    fn cswap_examples() {
        let z = PureQubit::zero();
        let o = PureQubit::one();
        assert_eq!(cswap_accept_prob(&z, &z), 1.0);
        assert_eq!(cswap_accept_prob(&z, &o), 0.5);
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        assert_abs_diff_eq!(
            cswap_accept_prob(t.state(0), t.state(1)),
            2.0 / 3.0,
            epsilon = 1e-15
        );

        let (state, p) = cswap_circuit(&z, &z);
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(state[0].re, 1.0, epsilon = 1e-15);
        assert!(state[1..].iter().all(|a| a.norm() < 1e-15));
        let (_, p) = cswap_circuit(&z, &o);
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn accept_space_dimensions() {
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        assert_eq!(accept_space(&t, &t).unwrap().dim, 3);
        let tri = make_fingerprint_set(FingerprintKind::Triangle, 3, 0).unwrap();
        assert_eq!(accept_space(&tri, &tri).unwrap().dim, 3);
        let m = tensor(tri.state(0), tri.state(0));
        assert_eq!(
            accept_space_of(&[m, m, tensor(tri.state(1), tri.state(1))]).dim,
            2
        );
    }

    #[test]
    fn reject_state_examples() {
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        let r = reject_state(&t, &t).unwrap();
        assert_abs_diff_eq!(
            r.overlap_sq(&TwoQubitState::singlet()),
            1.0,
            epsilon = 1e-12
        );

        let alice = asym_alice();
        let bob = derive_bob_states(&alice, FRAC_1_SQRT_2).unwrap();
        let r = reject_state(&alice, &bob).unwrap();
        assert_abs_diff_eq!(
            r.overlap_sq(&canonical_reject_state(FRAC_1_SQRT_2)),
            1.0,
            epsilon = 1e-12
        );

        let z = tensor(&PureQubit::zero(), &PureQubit::zero());
        let o = tensor(&PureQubit::one(), &PureQubit::one());
        assert_eq!(
            reject_state_of(&[z, z, o]),
            Err(StrictError::InvalidStrictScheme(2))
        );
    }

    #[test]
    fn octahedron_accept_space_is_three_dimensional() {
        let o = make_fingerprint_set(FingerprintKind::Octahedron, 6, 0).unwrap();
        let s = StrictScheme::symmetric(o).unwrap();
        assert_eq!(s.accept_dim(), 3);
    }

    #[test]
    fn explicit_bob_with_full_span_is_rejected() {
        let alice = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        let mut states = alice.states().to_vec();
        states.rotate_left(1);
        let bob = FingerprintSet::numbered(states).unwrap();
        assert_eq!(
            StrictScheme::new(alice, bob),
            Err(StrictError::InvalidStrictScheme(4))
        );
    }

    #[test]
    fn canonicalize_examples() {
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        let canon = canonicalize(&StrictScheme::symmetric(t).unwrap()).unwrap();
        assert_abs_diff_eq!(canon.c, 1.0, epsilon = 1e-12);

        let alice = asym_alice();
        let canon =
            canonicalize(&StrictScheme::with_asymmetry(alice.clone(), FRAC_1_SQRT_2).unwrap())
                .unwrap();
        assert_abs_diff_eq!(canon.c, FRAC_1_SQRT_2, epsilon = 1e-12);
        for (x, y) in canon.canon_alice.states().iter().zip(alice.states()) {
            assert!(x.trace_distance(y) < 1e-10);
        }
        assert_abs_diff_eq!(
            canon
                .canon_reject
                .overlap_sq(&canonical_reject_state(canon.c)),
            1.0,
            epsilon = 1e-12
        );
        assert!(qlin::unitarity_defect(&canon.u) < 1e-12);
        assert!(qlin::unitarity_defect(&canon.v) < 1e-12);
    }

    #[test]
    fn derive_bob_examples() {
        let alice = asym_alice();
        let same = derive_bob_states(&alice, 1.0).unwrap();
        assert_eq!(same, alice);

        let with_one = FingerprintSet::numbered(vec![
            PureQubit::one(),
            PureQubit::zero(),
            PureQubit::from_real(1.0, 1.0).unwrap(),
        ])
        .unwrap();
        let bob = derive_bob_states(&with_one, 0.3).unwrap();
        assert_eq!(bob.state(0), &PureQubit::one());

        let bob = derive_bob_states(&alice, FRAC_1_SQRT_2).unwrap();
        let expected = PureQubit::from_real(1.0, 2f64.sqrt()).unwrap();
        assert!(bob.state(1).trace_distance(&expected) < 1e-12);
        assert_abs_diff_eq!(
            bob.state(1).amp1().re,
            (2.0f64 / 3.0).sqrt(),
            epsilon = 1e-15
        );

        assert!(matches!(
            derive_bob_states(&alice, 0.0),
            Err(StrictError::InvalidAsymmetry(_))
        ));
        assert!(matches!(
            derive_bob_states(&alice, f64::NAN),
            Err(StrictError::InvalidAsymmetry(_))
        ));
    }

    #[test]
    fn k_constant_examples() {
        let mut rng = trial_rng(9, 0);
        for _ in 0..20 {
            let q = PureQubit::new(c(rng.gen(), rng.gen()), c(rng.gen(), rng.gen())).unwrap();
            assert_abs_diff_eq!(k_constant(1.0, &q), 0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(
            k_constant(FRAC_1_SQRT_2, &PureQubit::zero()),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        let u2 = PureQubit::from_u(c(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(k_constant(FRAC_1_SQRT_2, &u2), 5.0 / 9.0, epsilon = 1e-15);
        // u = ∞ limit
        assert_abs_diff_eq!(
            k_constant(0.4, &PureQubit::one()),
            1.0 / 1.16,
            epsilon = 1e-15
        );
    }

    #[test]
    fn k_amplitude_form_matches_u_form() {
        let mut rng = trial_rng(10, 0);
        for _ in 0..500 {
            let u = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let cc: f64 = rng.gen_range(0.05..20.0);
            let q = PureQubit::from_u(u).unwrap();
            let uf =
                cc * cc * (1.0 + u.norm_sqr()) / ((1.0 + cc * cc * u.norm_sqr()) * (1.0 + cc * cc));
            assert!((k_constant(cc, &q) - uf).abs() < 1e-13);
        }
    }

    #[test]
    fn closed_form_amplitude_matches_u_form() {
        let mut rng = trial_rng(12, 0);
        for _ in 0..200 {
            let us: Vec<_> = (0..3)
                .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect();
            let cc: f64 = rng.gen_range(0.1..1.0);
            let alice = FingerprintSet::from_u_values(&us).unwrap();
            let canon = canonicalize(&StrictScheme::with_asymmetry(alice, cc).unwrap()).unwrap();
            let (ua, ub) = (us[0], us[1]);
            let c2 = cc * cc;
            let uf = c2 * (ua - ub).norm_sqr()
                / ((1.0 + ua.norm_sqr()) * (1.0 + c2 * ub.norm_sqr()) * (1.0 + c2));
            assert!((reject_prob_closed_form(&canon, 0, 1) - uf).abs() < 1e-10);
        }
    }

    #[test]
    fn hybrid_reject_examples() {
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        let sym = StrictScheme::symmetric(t).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert_abs_diff_eq!(
                        hybrid_reject_prob_at(&sym, a, b),
                        1.0 / 3.0,
                        epsilon = 1e-12
                    );
                }
            }
        }
        let q = StrictScheme::with_asymmetry(asym_alice(), FRAC_1_SQRT_2).unwrap();
        assert_abs_diff_eq!(
            hybrid_reject_prob(&q, "1", "2").unwrap(),
            16.0 / 45.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            hybrid_reject_prob(&q, "1", "0").unwrap(),
            4.0 / 15.0,
            epsilon = 1e-12
        );
        assert!(matches!(
            hybrid_reject_prob(&q, "1", "1"),
            Err(StrictError::MatchingPair(_))
        ));
        assert!(matches!(
            hybrid_reject_prob(&q, "1", "7"),
            Err(StrictError::UnknownString(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let tri = make_fingerprint_set(FingerprintKind::Triangle, 3, 0).unwrap();
        let rep = evaluate_strict(&StrictScheme::symmetric(tri).unwrap()).unwrap();
        assert_abs_diff_eq!(rep.w_plus, 5.0 / 8.0, epsilon = 1e-12);
        assert!(rep.w_minus < 1e-20);
        let oct = make_fingerprint_set(FingerprintKind::Octahedron, 6, 0).unwrap();
        let rep = evaluate_strict(&StrictScheme::symmetric(oct).unwrap()).unwrap();
        assert_abs_diff_eq!(rep.w_plus, 0.75, epsilon = 1e-12);

        let rep =
            evaluate_strict(&StrictScheme::with_asymmetry(asym_alice(), FRAC_1_SQRT_2).unwrap())
                .unwrap();
        assert_abs_diff_eq!(rep.w_plus, 11.0 / 15.0, epsilon = 1e-12);
        assert_eq!(rep.argmax_pair, ("1".to_string(), "0".to_string()));
        let k = rep.k_values.unwrap();
        assert_abs_diff_eq!(k[0], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(k[1], 5.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn two_sided_examples() {
        let t = to_two_sided(5.0 / 8.0).unwrap();
        assert_abs_diff_eq!(t.two_sided_error, 5.0 / 13.0, epsilon = 1e-15);
        let t = to_two_sided(2.0 / 3.0).unwrap();
        assert_abs_diff_eq!(t.two_sided_error, 0.4, epsilon = 1e-15);
        let t = to_two_sided(0.0).unwrap();
        assert_eq!(t.two_sided_error, 0.0);
        assert!(to_two_sided(1.0).is_err());
    }

    #[test]
    fn povm_examples() {
        let singlet = RefereePovm::projective(&TwoQubitState::singlet());
        let z = DensityMatrix::<2>::from_pure(&PureQubit::zero());
        let o = DensityMatrix::<2>::from_pure(&PureQubit::one());
        assert_abs_diff_eq!(povm_accept_prob(&z, &z, &singlet), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(povm_accept_prob(&z, &o, &singlet), 0.5, epsilon = 1e-15);

        let swap = RefereePovm::swap_test();
        assert!((swap.neg_op() - singlet.neg_op())
            .iter()
            .all(|x| x.norm() < 1e-15));
        let mut rng = trial_rng(13, 0);
        for _ in 0..100 {
            let a = PureQubit::new(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
            .unwrap();
            let b = PureQubit::new(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
            .unwrap();
            let p = povm_accept_prob(
                &DensityMatrix::<2>::from_pure(&a),
                &DensityMatrix::<2>::from_pure(&b),
                &swap,
            );
            assert!((p - cswap_accept_prob(&a, &b)).abs() < 1e-12);
        }
        assert!(RefereePovm::new(Operator4::identity() * c(2.0, 0.0)).is_err());
    }

    #[test]
    fn mixed_fingerprint_acceptance_below_one() {
        // A mixed matching input cannot lie entirely in the accept space.
        let t = make_fingerprint_set(FingerprintKind::Tetrahedron, 4, 0).unwrap();
        let referee = RefereePovm::projective(&TwoQubitState::singlet());
        let mixed = DensityMatrix::mixture(&[(0.5, *t.state(0)), (0.5, *t.state(1))]).unwrap();
        let pure = DensityMatrix::<2>::from_pure(t.state(0));
        assert!(povm_accept_prob(&mixed, &pure, &referee) < 1.0 - 1e-3);
    }
}
