//! One-bit fingerprinting schemes.
//!
//! A scheme is fixed by Alice's and Bob's per-string probabilities of sending
//! the bit 1 and the referee's acceptance probability for each of the four
//! message pairs. Everything here is exact evaluation; the impossibility
//! results for one-bit schemes are exposed as constructive procedures
//! ([`find_confusable_pair`], [`count_confusable_pairs`]) that the audit
//! harness checks against brute force.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::rng::{trial_rng, TrialRng};

/// Slack used when comparing probabilities that are equal in exact arithmetic.
pub const PROB_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassicalError {
    #[error("a scheme needs at least 3 strings, got {0}")]
    TooFewStrings(usize),
    #[error("expected {expected} probabilities for {field}, got {got}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{field}[{index}] = {value} is not a probability")]
    NotAProbability {
        field: &'static str,
        index: usize,
        value: f64,
    },
    #[error("unknown string label {0:?}")]
    UnknownString(String),
    #[error("duplicate string label {0:?}")]
    DuplicateString(String),
    #[error("worst-case false negative {w_minus} exceeds epsilon {epsilon}")]
    FalseNegativeAboveEpsilon { w_minus: f64, epsilon: f64 },
}

pub type Result<T> = std::result::Result<T, ClassicalError>;

/// Referee acceptance probabilities indexed by (Alice bit, Bob bit).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefereeTable {
    pub r00: f64,
    pub r01: f64,
    pub r10: f64,
    pub r11: f64,
}

impl RefereeTable {
    pub fn new(r00: f64, r01: f64, r10: f64, r11: f64) -> Self {
        Self { r00, r01, r10, r11 }
    }

    pub fn constant(r: f64) -> Self {
        Self::new(r, r, r, r)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.r00, self.r01, self.r10, self.r11]
    }

    pub fn get(&self, a: bool, b: bool) -> f64 {
        match (a, b) {
            (false, false) => self.r00,
            (false, true) => self.r01,
            (true, false) => self.r10,
            (true, true) => self.r11,
        }
    }

    /// Coefficient of the p·q cross term.
    pub fn cross_coefficient(&self) -> f64 {
        self.r00 - self.r01 - self.r10 + self.r11
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneBitScheme {
    strings: Vec<String>,
    p: Vec<f64>,
    q: Vec<f64>,
    r: RefereeTable,
}

fn check_probs(field: &'static str, values: &[f64]) -> Result<()> {
    for (index, &value) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(ClassicalError::NotAProbability {
                field,
                index,
                value,
            });
        }
    }
    Ok(())
}

impl OneBitScheme {
    pub fn new(strings: Vec<String>, p: Vec<f64>, q: Vec<f64>, r: RefereeTable) -> Result<Self> {
        let s = strings.len();
        if s < 3 {
            return Err(ClassicalError::TooFewStrings(s));
        }
        for (i, label) in strings.iter().enumerate() {
            if strings[..i].contains(label) {
                return Err(ClassicalError::DuplicateString(label.clone()));
            }
        }
        for (field, v) in [("p", &p), ("q", &q)] {
            if v.len() != s {
                return Err(ClassicalError::LengthMismatch {
                    field,
                    expected: s,
                    got: v.len(),
                });
            }
        }
        check_probs("p", &p)?;
        check_probs("q", &q)?;
        check_probs("r", &r.as_array())?;
        Ok(Self { strings, p, q, r })
    }

    /// Scheme with labels "0".."s-1".
    pub fn with_numbered_strings(p: Vec<f64>, q: Vec<f64>, r: RefereeTable) -> Result<Self> {
        let strings = (0..p.len()).map(|i| i.to_string()).collect();
        Self::new(strings, p, q, r)
    }

    pub fn strings(&self) -> &[String] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn referee(&self) -> RefereeTable {
        self.r
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.strings
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| ClassicalError::UnknownString(label.to_string()))
    }

    /// P₊ for string indices.
    pub fn positive_prob_at(&self, alpha: usize, beta: usize) -> f64 {
        let (pa, qb) = (self.p[alpha], self.q[beta]);
        let RefereeTable { r00, r01, r10, r11 } = self.r;
        let lower = lerp(r00, r01, qb);
        let upper = lerp(r10, r11, qb);
        lerp(lower, upper, pa).clamp(0.0, 1.0)
    }
}

/// Exact at both endpoints and when `a == b`, so deterministic messages and
/// constant referees give exact probabilities.
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    if t == 1.0 {
        b
    } else {
        a + t * (b - a)
    }
}

/// Probability that the referee declares a match on input (α, β).
pub fn positive_prob(scheme: &OneBitScheme, alpha: &str, beta: &str) -> Result<f64> {
    Ok(scheme.positive_prob_at(scheme.index_of(alpha)?, scheme.index_of(beta)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeparationBranch {
    /// Nonzero cross coefficient: P₊ is affine in x_α·y_β.
    Cross,
    /// Zero cross coefficient: P₊ is additive in p and q, exponentiated.
    Degenerate,
}

/// Separation parameters with x_α·y_β ≥ d ⟺ P₊(α,β) ≥ 1 − ε.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationParams {
    pub branch: SeparationBranch,
    pub c: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub d: f64,
}

impl SeparationParams {
    pub fn holds(&self, alpha: usize, beta: usize) -> bool {
        self.x[alpha] * self.y[beta] >= self.d
    }
}

pub fn separation_params(scheme: &OneBitScheme, epsilon: f64) -> SeparationParams {
    let RefereeTable { r00, r01, r10, .. } = scheme.r;
    let c = scheme.r.cross_coefficient();
    if c != 0.0 {
        SeparationParams {
            branch: SeparationBranch::Cross,
            c,
            x: scheme.p.iter().map(|&p| c * p + (r01 - r00)).collect(),
            y: scheme.q.iter().map(|&q| q + (r10 - r00) / c).collect(),
            d: (1.0 - epsilon) + (r00 - r01) * (r00 - r10) / c - r00,
        }
    } else {
        SeparationParams {
            branch: SeparationBranch::Degenerate,
            c,
            x: scheme.p.iter().map(|&p| ((r10 - r00) * p).exp()).collect(),
            y: scheme.q.iter().map(|&q| ((r01 - r00) * q).exp()).collect(),
            d: (1.0 - epsilon - r00).exp(),
        }
    }
}

/// Ordered and unordered counts of hybrid inputs accepted with probability ≥ 1 − ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfusableCount {
    pub ordered: usize,
    pub unordered: usize,
    /// ⌈(s² − 2s)/4⌉
    pub bound: usize,
}

impl ConfusableCount {
    pub fn meets_bound(&self) -> bool {
        self.ordered >= self.bound && self.unordered >= self.bound
    }
}

pub fn confusable_bound(s: usize) -> usize {
    (s * s - 2 * s).div_ceil(4)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub strings: Vec<String>,
    /// `accept[α][β] = P₊(α, β)`.
    pub accept: Vec<Vec<f64>>,
    pub worst_false_negative: f64,
    pub worst_false_positive: f64,
    pub argmax_pair: (String, String),
    pub confusable: ConfusableCount,
}

impl ClassicalReport {
    pub fn min_matching_accept(&self) -> f64 {
        1.0 - self.worst_false_negative
    }
}

pub fn evaluate_classical(scheme: &OneBitScheme) -> ClassicalReport {
    let s = scheme.len();
    let accept: Vec<Vec<f64>> = (0..s)
        .map(|a| (0..s).map(|b| scheme.positive_prob_at(a, b)).collect())
        .collect();
    let min_match = (0..s).map(|i| accept[i][i]).fold(f64::INFINITY, f64::min);
    let mut best = (0, 1);
    for a in 0..s {
        for b in 0..s {
            if a != b && accept[a][b] > accept[best.0][best.1] {
                best = (a, b);
            }
        }
    }
    let w_minus = 1.0 - min_match;
    ClassicalReport {
        strings: scheme.strings.clone(),
        worst_false_positive: accept[best.0][best.1],
        worst_false_negative: w_minus,
        argmax_pair: (
            scheme.strings[best.0].clone(),
            scheme.strings[best.1].clone(),
        ),
        confusable: count_from_matrix(&accept, 1.0 - w_minus),
        accept,
    }
}

fn sign(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Index form of [`find_confusable_pair`].
pub fn find_confusable_pair_indices(scheme: &OneBitScheme) -> (usize, usize) {
    let params = separation_params(scheme, 0.0);
    let (pos, neg): (Vec<usize>, Vec<usize>) = (0..scheme.len()).partition(|&i| params.x[i] >= 0.0);
    let group = if pos.len() >= neg.len() { pos } else { neg };
    let key = |i: usize| sign(params.x[i]) * params.y[i];
    let mu = *group
        .iter()
        .min_by(|&&a, &&b| key(a).total_cmp(&key(b)))
        .expect("larger sign class has at least two members");
    let nu = *group
        .iter()
        .filter(|&&i| i != mu)
        .max_by(|&&a, &&b| key(a).total_cmp(&key(b)))
        .expect("larger sign class has at least two members");
    (mu, nu)
}

/// Two distinct strings μ, ν whose hybrid input is accepted at least as often
/// as the matching input (μ, μ), found by grouping on the sign of x_σ.
pub fn find_confusable_pair(scheme: &OneBitScheme) -> (String, String) {
    let (mu, nu) = find_confusable_pair_indices(scheme);
    (scheme.strings[mu].clone(), scheme.strings[nu].clone())
}

fn count_from_matrix(accept: &[Vec<f64>], threshold: f64) -> ConfusableCount {
    let s = accept.len();
    let hit = |a: usize, b: usize| accept[a][b] >= threshold - PROB_TOL;
    let mut ordered = 0;
    let mut unordered = 0;
    for a in 0..s {
        for b in 0..s {
            if a != b && hit(a, b) {
                ordered += 1;
            }
            if a < b && (hit(a, b) || hit(b, a)) {
                unordered += 1;
            }
        }
    }
    ConfusableCount {
        ordered,
        unordered,
        bound: confusable_bound(s),
    }
}

/// Counts hybrid inputs with P₊ ≥ 1 − ε (within [`PROB_TOL`]); requires W⁻ ≤ ε.
pub fn count_confusable_pairs(scheme: &OneBitScheme, epsilon: f64) -> Result<ConfusableCount> {
    let report = evaluate_classical(scheme);
    if report.worst_false_negative > epsilon + PROB_TOL {
        return Err(ClassicalError::FalseNegativeAboveEpsilon {
            w_minus: report.worst_false_negative,
            epsilon,
        });
    }
    Ok(count_from_matrix(&report.accept, 1.0 - epsilon))
}

fn uniform_probs(rng: &mut TrialRng, s: usize) -> Vec<f64> {
    (0..s).map(|_| rng.gen::<f64>()).collect()
}

/// Scheme with every probability drawn uniformly from [0, 1).
pub fn random_scheme_with(rng: &mut TrialRng, s: usize) -> Result<OneBitScheme> {
    if s < 3 {
        return Err(ClassicalError::TooFewStrings(s));
    }
    let p = uniform_probs(rng, s);
    let q = uniform_probs(rng, s);
    let r = RefereeTable::new(rng.gen(), rng.gen(), rng.gen(), rng.gen());
    OneBitScheme::with_numbered_strings(p, q, r)
}

/// Deterministic in `(seed, s)`.
pub fn random_scheme(seed: u64, s: usize) -> Result<OneBitScheme> {
    random_scheme_with(&mut trial_rng(seed, s as u64), s)
}

/// Random scheme whose referee has an exactly zero cross coefficient.
///
/// The referee entries live on a dyadic grid (multiples of 1/1024), so
/// r00 − r01 − r10 + r11 evaluates to exactly 0.0 in floating point.
pub fn random_degenerate_scheme_with(rng: &mut TrialRng, s: usize) -> Result<OneBitScheme> {
    if s < 3 {
        return Err(ClassicalError::TooFewStrings(s));
    }
    let grid = |rng: &mut TrialRng| f64::from(rng.gen_range(0u32..=1024)) / 1024.0;
    let r = loop {
        let (r00, r01, r10) = (grid(rng), grid(rng), grid(rng));
        let r11 = r01 + r10 - r00;
        if (0.0..=1.0).contains(&r11) {
            break RefereeTable::new(r00, r01, r10, r11);
        }
    };
    let p = uniform_probs(rng, s);
    let q = uniform_probs(rng, s);
    OneBitScheme::with_numbered_strings(p, q, r)
}

/// Random scheme with W⁻ = 0: deterministic messages and a referee that
/// accepts every message pair produced by a matching input.
pub fn random_one_sided_scheme_with(rng: &mut TrialRng, s: usize) -> Result<OneBitScheme> {
    if s < 3 {
        return Err(ClassicalError::TooFewStrings(s));
    }
    let p: Vec<f64> = (0..s)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { 0.0 })
        .collect();
    let q: Vec<f64> = (0..s)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { 0.0 })
        .collect();
    let mut r = [rng.gen::<f64>(), rng.gen(), rng.gen(), rng.gen()];
    for i in 0..s {
        r[2 * (p[i] as usize) + q[i] as usize] = 1.0;
    }
    OneBitScheme::with_numbered_strings(p, q, RefereeTable::new(r[0], r[1], r[2], r[3]))
}
