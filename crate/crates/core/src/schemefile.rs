//! JSON scheme files and evaluation reports.
//!
//! Complex amplitudes are written as `[re, im]` pairs. Floats are emitted in
//! shortest round-trip form, which reproduces every double exactly on reload.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classical::{evaluate_classical, ClassicalError, OneBitScheme, RefereeTable};
use crate::qlin::{PureQubit, QlinError};
use crate::search::{symmetric_optimality_check, OptimalityVerdict, SymmetryCriterion};
use crate::strictq::{evaluate_strict, FingerprintSet, StrictError, StrictScheme};

#[derive(Debug, Error)]
pub enum SchemeFileError {
    #[error("malformed scheme JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Strict(#[from] StrictError),
    #[error(transparent)]
    Qlin(#[from] QlinError),
    #[error("strict scheme needs exactly one of \"bob\" and \"C\"")]
    BobSpecification,
}

impl SchemeFileError {
    /// Stable machine-readable category for structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            SchemeFileError::Json(_) => "malformed-json",
            SchemeFileError::Classical(_) => "invalid-classical-scheme",
            SchemeFileError::Strict(_) | SchemeFileError::Qlin(_) => "invalid-strict-scheme",
            SchemeFileError::BobSpecification => "invalid-strict-scheme",
        }
    }
}

pub type Result<T> = std::result::Result<T, SchemeFileError>;

pub type AmpPair = [[f64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SchemeFile {
    Classical {
        strings: Vec<String>,
        p: Vec<f64>,
        q: Vec<f64>,
        /// `[r00, r01, r10, r11]`.
        r: [f64; 4],
    },
    Strict {
        strings: Vec<String>,
        alice: Vec<AmpPair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bob: Option<Vec<AmpPair>>,
        #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
        asymmetry: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    Classical(OneBitScheme),
    Strict(StrictScheme),
}

pub fn state_to_pair(s: &PureQubit) -> AmpPair {
    s.amps().map(|z| [z.re, z.im])
}

fn from_pairs(strings: &[String], pairs: &[AmpPair]) -> Result<FingerprintSet> {
    let states = pairs
        .iter()
        .map(|[a, b]| PureQubit::new(Complex64::new(a[0], a[1]), Complex64::new(b[0], b[1])))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(FingerprintSet::new(strings.to_vec(), states)?)
}

impl SchemeFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme files always serialize")
    }

    fn to_json_compact(&self) -> String {
        serde_json::to_string(self).expect("scheme files always serialize")
    }

    /// Hex SHA-256 of the compact JSON encoding.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json_compact().as_bytes()))
    }

    pub fn to_scheme(&self) -> Result<Scheme> {
        match self {
            SchemeFile::Classical { strings, p, q, r } => Ok(Scheme::Classical(OneBitScheme::new(
                strings.clone(),
                p.clone(),
                q.clone(),
                RefereeTable::new(r[0], r[1], r[2], r[3]),
            )?)),
            SchemeFile::Strict {
                strings,
                alice,
                bob,
                asymmetry,
            } => {
                let alice = from_pairs(strings, alice)?;
                let scheme = match (bob, asymmetry) {
                    (Some(bob), None) => StrictScheme::new(alice, from_pairs(strings, bob)?)?,
                    (None, Some(c)) => StrictScheme::with_asymmetry(alice, *c)?,
                    _ => return Err(SchemeFileError::BobSpecification),
                };
                Ok(Scheme::Strict(scheme))
            }
        }
    }

    pub fn from_classical(scheme: &OneBitScheme) -> Self {
        SchemeFile::Classical {
            strings: scheme.strings().to_vec(),
            p: scheme.p().to_vec(),
            q: scheme.q().to_vec(),
            r: scheme.referee().as_array(),
        }
    }

    /// Bob's states are written explicitly unless they were derived from a
    /// scalar asymmetry, in which case only that scalar is stored.
    pub fn from_strict(scheme: &StrictScheme) -> Self {
        let alice = scheme.alice().states().iter().map(state_to_pair).collect();
        let (bob, asymmetry) = match scheme.bob_source() {
            crate::strictq::BobSource::Derived(c) => (None, Some(c)),
            crate::strictq::BobSource::Explicit => (
                Some(scheme.bob().states().iter().map(state_to_pair).collect()),
                None,
            ),
        };
        SchemeFile::Strict {
            strings: scheme.strings().to_vec(),
            alice,
            bob,
            asymmetry,
        }
    }

    /// Alice-only fragment with C = 1.
    pub fn symmetric_fragment(alice: &FingerprintSet) -> Self {
        SchemeFile::Strict {
            strings: alice.strings().to_vec(),
            alice: alice.states().iter().map(state_to_pair).collect(),
            bob: None,
            asymmetry: Some(1.0),
        }
    }
}

impl From<&Scheme> for SchemeFile {
    fn from(s: &Scheme) -> Self {
        match s {
            Scheme::Classical(c) => SchemeFile::from_classical(c),
            Scheme::Strict(q) => SchemeFile::from_strict(q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairEntry {
    pub alpha: String,
    pub beta: String,
    pub accept_prob: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportFlags {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confusable_bound_met: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confusable_ordered: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confusable_unordered: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry_verdict: Option<OptimalityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fired_criteria: Option<Vec<SymmetryCriterion>>,
    /// Matching inputs are rejected with positive probability, so the
    /// scheme is not one-sided.
    pub false_negatives: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportFile {
    pub kind: &'static str,
    pub scheme_digest: String,
    pub strings: Vec<String>,
    pub pairs: Vec<PairEntry>,
    pub w_plus: f64,
    pub w_minus: f64,
    pub argmax: (String, String),
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub asymmetry: Option<f64>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k_values: Option<Vec<f64>>,
    pub flags: ReportFlags,
}

fn pair_entries(strings: &[String], accept: &[Vec<f64>]) -> Vec<PairEntry> {
    let mut out = Vec::with_capacity(strings.len() * strings.len());
    for (a, row) in accept.iter().enumerate() {
        for (b, &p) in row.iter().enumerate() {
            out.push(PairEntry {
                alpha: strings[a].clone(),
                beta: strings[b].clone(),
                accept_prob: p.clamp(0.0, 1.0),
            });
        }
    }
    out
}

impl ReportFile {
    pub fn evaluate(file: &SchemeFile) -> Result<Self> {
        let digest = file.digest();
        Ok(match file.to_scheme()? {
            Scheme::Classical(scheme) => {
                let r = evaluate_classical(&scheme);
                ReportFile {
                    kind: "classical",
                    scheme_digest: digest,
                    pairs: pair_entries(&r.strings, &r.accept),
                    w_plus: r.worst_false_positive.clamp(0.0, 1.0),
                    w_minus: r.worst_false_negative.clamp(0.0, 1.0),
                    argmax: r.argmax_pair,
                    asymmetry: None,
                    k_values: None,
                    flags: ReportFlags {
                        confusable_bound_met: Some(r.confusable.meets_bound()),
                        confusable_ordered: Some(r.confusable.ordered),
                        confusable_unordered: Some(r.confusable.unordered),
                        false_negatives: r.worst_false_negative > 0.0,
                        ..Default::default()
                    },
                    strings: r.strings,
                }
            }
            Scheme::Strict(scheme) => {
                let r = evaluate_strict(&scheme)?;
                let diag = symmetric_optimality_check(scheme.alice());
                ReportFile {
                    kind: "strict",
                    scheme_digest: digest,
                    pairs: pair_entries(&r.strings, &r.accept),
                    w_plus: r.w_plus.clamp(0.0, 1.0),
                    w_minus: r.w_minus.clamp(0.0, 1.0),
                    argmax: r.argmax_pair,
                    asymmetry: r.canonical_c,
                    k_values: r.k_values,
                    flags: ReportFlags {
                        symmetry_verdict: Some(diag.verdict),
                        fired_criteria: Some(diag.fired_criteria),
                        false_negatives: r.w_minus > 1e-12,
                        ..Default::default()
                    },
                    strings: r.strings,
                }
            }
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// `alpha,beta,accept_prob` rows with a header line.
    pub fn to_csv(&self) -> String {
        pairs_csv(&self.pairs)
    }
}

pub fn pairs_csv(pairs: &[PairEntry]) -> String {
    let mut out = String::from("alpha,beta,accept_prob\n");
    for p in pairs {
        out.push_str(&format!(
            "{},{},{}\n",
            csv_field(&p.alpha),
            csv_field(&p.beta),
            p.accept_prob
        ));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
