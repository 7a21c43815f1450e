//! Seeded randomized audits.
//!
//! Trial `t` draws from stream `(seed, t)` only, so a report is a pure
//! function of the configuration and trials may run in any order.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::classical::{
    count_confusable_pairs, evaluate_classical, find_confusable_pair_indices,
    random_degenerate_scheme_with, random_one_sided_scheme_with, random_scheme_with,
    separation_params, OneBitScheme, SeparationBranch, PROB_TOL,
};
use crate::qlin::{c, inner_product, Operator2, PureQubit, TwoQubitState};
use crate::rng::{trial_rng, TrialRng};
use crate::strictq::{
    accept_space, canonical_reject_state, canonicalize, derive_bob_states, hybrid_reject_prob_at,
    reject_prob_closed_form, reject_prob_via_k, FingerprintSet, StrictScheme,
};

/// Width of the band around P₊ = 1 − ε where sign agreement is not asserted.
pub const SEPARATION_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditConfig {
    pub trials: u64,
    pub seed: u64,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub evaluated: u64,
    pub violations: u64,
    pub first_violation: Option<u64>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            evaluated: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, trial: u64, ok: bool) {
        self.evaluated += 1;
        if !ok {
            self.violations += 1;
            self.first_violation.get_or_insert(trial);
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub checks: Vec<CheckResult>,
    pub cross_branch_trials: u64,
    pub degenerate_branch_trials: u64,
    pub passed: bool,
}

impl AuditReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Which generator trial `t` uses: mostly uniform schemes, with every fifth
/// trial a zero-cross-coefficient referee and every fifth (offset) a
/// scheme without false negatives.
fn classical_trial_scheme(rng: &mut TrialRng, trial: u64, s: usize) -> OneBitScheme {
    let scheme = match trial % 5 {
        3 => random_degenerate_scheme_with(rng, s),
        4 => random_one_sided_scheme_with(rng, s),
        _ => random_scheme_with(rng, s),
    };
    scheme.expect("audit sizes are validated to be at least 3")
}

/// Runs every one-bit invariant on `config.trials` seeded schemes.
///
/// Panics if `config.sizes` is empty or contains a size below 3.
pub fn run_classical_audit(config: &AuditConfig) -> AuditReport {
    assert!(
        !config.sizes.is_empty() && config.sizes.iter().all(|&s| s >= 3),
        "sizes must be ≥ 3"
    );
    let mut fp_bound = CheckResult::new("false-positive-lower-bound");
    let mut half_bound = CheckResult::new("two-sided-error-at-least-half");
    let mut one_sided = CheckResult::new("one-sided-error-is-one");
    let mut count_bound = CheckResult::new("confusable-count-bound");
    let mut separation = CheckResult::new("separation-parameter-equivalence");
    let mut pair = CheckResult::new("confusable-pair-construction");
    let (mut cross, mut degenerate) = (0, 0);

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial);
        let s = config.sizes[(trial % config.sizes.len() as u64) as usize];
        let scheme = classical_trial_scheme(&mut rng, trial, s);
        let report = evaluate_classical(&scheme);
        let min_match = report.min_matching_accept();

        fp_bound.record(trial, report.worst_false_positive >= min_match - PROB_TOL);
        half_bound.record(
            trial,
            report.worst_false_negative.max(report.worst_false_positive) >= 0.5 - PROB_TOL,
        );
        if report.worst_false_negative == 0.0 {
            one_sided.record(trial, report.worst_false_positive >= 1.0 - PROB_TOL);
        }
        let count = count_confusable_pairs(&scheme, report.worst_false_negative);
        count_bound.record(trial, count.map(|c| c.meets_bound()).unwrap_or(false));

        let (mu, nu) = find_confusable_pair_indices(&scheme);
        pair.record(
            trial,
            mu != nu && scheme.positive_prob_at(mu, nu) >= min_match - PROB_TOL,
        );

        let eps: f64 = rng.gen();
        let params = separation_params(&scheme, eps);
        match params.branch {
            SeparationBranch::Cross => cross += 1,
            SeparationBranch::Degenerate => degenerate += 1,
        }
        let mut agree = true;
        for a in 0..s {
            for b in 0..s {
                let gap = report.accept[a][b] - (1.0 - eps);
                if gap.abs() > SEPARATION_BAND && params.holds(a, b) != (gap > 0.0) {
                    agree = false;
                }
            }
        }
        separation.record(trial, agree);
    }

    let checks = vec![
        fp_bound,
        half_bound,
        one_sided,
        count_bound,
        separation,
        pair,
    ];
    let passed = checks.iter().all(CheckResult::passed);
    AuditReport {
        config: config.clone(),
        checks,
        cross_branch_trials: cross,
        degenerate_branch_trials: degenerate,
        passed,
    }
}

/// Haar-ish random 2×2 unitary from Euler angles and a global phase.
pub fn random_unitary(rng: &mut TrialRng) -> Operator2 {
    let theta: f64 = rng.gen_range(0.0..PI);
    let (a, b, g): (f64, f64, f64) = (
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
    );
    let (s, co) = (theta / 2.0).sin_cos();
    let e = |x: f64| num_complex::Complex64::from_polar(1.0, x);
    Operator2::new(e(g + a) * co, -e(g + b) * s, e(g - b) * s, e(g - a) * co)
}

pub fn random_qubit(rng: &mut TrialRng) -> PureQubit {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    PureQubit::from_bloch_angles(z.acos(), phi).expect("unit vector")
}

/// Random distinct Alice states (pairwise trace distance above 1e-3).
pub fn random_alice(rng: &mut TrialRng, s: usize) -> FingerprintSet {
    let mut states: Vec<PureQubit> = Vec::with_capacity(s);
    while states.len() < s {
        let q = random_qubit(rng);
        if states.iter().all(|x| x.trace_distance(&q) > 1e-3) {
            states.push(q);
        }
    }
    FingerprintSet::numbered(states).expect("distinct states")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrictAuditReport {
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub worst_three_way_gap: f64,
    pub worst_idempotence_gap: f64,
    pub worst_invariance_gap: f64,
    pub passed: bool,
}

/// Structure audit over random (Alice states, C) draws with s ∈ {3..6} and
/// C log-uniform in [0.1, 10].
pub fn run_strict_audit(trials: u64, seed: u64) -> StrictAuditReport {
    let mut dim = CheckResult::new("accept-space-dimension-three");
    let mut three_way = CheckResult::new("hybrid-reject-three-way-agreement");
    let mut idem = CheckResult::new("canonicalization-idempotence");
    let mut invariance = CheckResult::new("local-unitary-invariance");
    let mut canon_bob = CheckResult::new("canonical-bob-derivation");
    let (mut worst_gap, mut worst_idem, mut worst_inv) = (0.0_f64, 0.0_f64, 0.0_f64);

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let s = 3 + (trial % 4) as usize;
        let alice = random_alice(&mut rng, s);
        let cval = (rng.gen_range((0.1f64).ln()..(10.0f64).ln())).exp();
        let bob = derive_bob_states(&alice, cval).expect("valid asymmetry");
        let ok_dim = accept_space(&alice, &bob)
            .map(|sp| sp.dim == 3)
            .unwrap_or(false);
        dim.record(trial, ok_dim);
        let Ok(scheme) = StrictScheme::new(alice, bob) else {
            for chk in [&mut three_way, &mut idem, &mut invariance, &mut canon_bob] {
                chk.record(trial, false);
            }
            continue;
        };
        let Ok(canon) = canonicalize(&scheme) else {
            for chk in [&mut three_way, &mut idem, &mut invariance, &mut canon_bob] {
                chk.record(trial, false);
            }
            continue;
        };

        let mut gap = 0.0_f64;
        for a in 0..s {
            for b in 0..s {
                if a == b {
                    continue;
                }
                let direct = hybrid_reject_prob_at(&scheme, a, b);
                gap = gap.max((direct - reject_prob_via_k(&canon, a, b)).abs());
                gap = gap.max((direct - reject_prob_closed_form(&canon, a, b)).abs());
            }
        }
        worst_gap = worst_gap.max(gap);
        three_way.record(trial, gap <= 1e-10);

        let derived = derive_bob_states(&canon.canon_alice, canon.c).expect("valid asymmetry");
        let bob_gap = derived
            .states()
            .iter()
            .zip(canon.canon_bob.states())
            .map(|(x, y)| x.trace_distance(y))
            .fold(0.0, f64::max);
        let reject_gap = 1.0
            - canon
                .canon_reject
                .overlap_sq(&canonical_reject_state(canon.c));
        canon_bob.record(trial, bob_gap <= 1e-10 && reject_gap <= 1e-10);

        let canonical_scheme =
            StrictScheme::new(canon.canon_alice.clone(), canon.canon_bob.clone());
        let idem_gap = match canonical_scheme.as_ref().map(canonicalize) {
            Ok(Ok(again)) => {
                let mut g = (again.c - canon.c).abs();
                g = g
                    .max(phase_free_distance(&again.u))
                    .max(phase_free_distance(&again.v));
                g
            }
            _ => f64::INFINITY,
        };
        worst_idem = worst_idem.max(idem_gap);
        idem.record(trial, idem_gap <= 1e-10);

        let (u0, v0) = (random_unitary(&mut rng), random_unitary(&mut rng));
        let moved = canon
            .canon_alice
            .transformed(&u0)
            .and_then(|a| Ok((a, canon.canon_bob.transformed(&v0)?)))
            .and_then(|(a, b)| StrictScheme::new(a, b))
            .and_then(|sch| canonicalize(&sch));
        let inv_gap = moved
            .map(|m| (m.c - canon.c).abs())
            .unwrap_or(f64::INFINITY);
        worst_inv = worst_inv.max(inv_gap);
        invariance.record(trial, inv_gap <= 1e-10);
    }

    let checks = vec![dim, three_way, canon_bob, idem, invariance];
    let passed = checks.iter().all(CheckResult::passed);
    StrictAuditReport {
        trials,
        seed,
        checks,
        worst_three_way_gap: worst_gap,
        worst_idempotence_gap: worst_idem,
        worst_invariance_gap: worst_inv,
        passed,
    }
}

/// Distance of a 2×2 matrix from the nearest e^{iθ}·I.
pub fn phase_free_distance(u: &Operator2) -> f64 {
    let tr = u.trace();
    let ph = if tr.norm() > 0.0 {
        tr / tr.norm()
    } else {
        c(1.0, 0.0)
    };
    (u - Operator2::identity() * ph)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Product state |u⟩|w⟩ orthogonal to `reject`, for a given |u⟩.
///
/// Solves the single linear condition ⟨R|u⊗w⟩ = 0 for w directly from the
/// amplitudes of |R⟩.
pub fn accepted_partner(reject: &TwoQubitState, u: &PureQubit) -> Option<PureQubit> {
    let r = reject.amps();
    let l = [0, 1].map(|j| r[j].conj() * u.amp0() + r[2 + j].conj() * u.amp1());
    if l[0].norm() + l[1].norm() < 1e-12 {
        return None;
    }
    PureQubit::new(l[1], -l[0]).ok()
}

/// Equality of two states up to global phase, within `tol` on the overlap.
pub fn same_up_to_phase(a: &PureQubit, b: &PureQubit, tol: f64) -> bool {
    1.0 - inner_product(a, b).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_audit_small_run_passes() {
        let report = run_classical_audit(&AuditConfig {
            trials: 500,
            seed: 7,
            sizes: vec![3, 4, 5],
        });
        assert!(report.passed, "{report:?}");
        assert!(report.degenerate_branch_trials >= 100);
        assert!(report.check("one-sided-error-is-one").unwrap().evaluated >= 100);
    }

    #[test]
    fn classical_audit_is_deterministic() {
        let cfg = AuditConfig {
            trials: 200,
            seed: 3,
            sizes: vec![4, 6],
        };
        assert_eq!(run_classical_audit(&cfg), run_classical_audit(&cfg));
    }

    #[test]
    fn strict_audit_small_run_passes() {
        let report = run_strict_audit(100, 5);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = trial_rng(1, 1);
        for _ in 0..50 {
            assert!(crate::qlin::unitarity_defect(&random_unitary(&mut rng)) < 1e-14);
        }
    }

    #[test]
    fn accepted_partner_follows_linear_relation() {
        // Accepted product states of a canonical scheme satisfy w = C·u.
        let mut rng = trial_rng(2, 0);
        for _ in 0..200 {
            let cval: f64 = rng.gen_range(0.1..1.0);
            let reject = canonical_reject_state(cval);
            let u = random_qubit(&mut rng);
            let w = accepted_partner(&reject, &u).unwrap();
            let prod = crate::qlin::tensor(&u, &w);
            assert!(reject.overlap_sq(&prod) < 1e-18);
            let expected = PureQubit::new(u.amp0(), u.amp1() * cval).unwrap();
            assert!(same_up_to_phase(&w, &expected, 1e-8));
        }
    }
}
