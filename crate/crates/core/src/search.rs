//! Optimization over strict schemes with Alice's fingerprints held fixed.
//!
//! The worst-case false positive of the scheme derived at asymmetry C is
//! `W⁺(C) = 1 − min_{α≠β} K_β(C)·(1 − |⟨φ_β|φ_α⟩|²)`. It is a max of smooth
//! unimodal pieces with kinks where the binding pair changes, so the search
//! samples a log-uniform grid and refines the brackets around sampled local
//! minima with golden-section search.

use rand::Rng;
use serde::Serialize;

use crate::qlin::{inner_product, PureQubit};
use crate::rng::trial_rng;
use crate::strictq::{k_constant, FingerprintSet, Result, StrictError};

pub const C_MIN: f64 = 1e-3;
pub const C_MAX: f64 = 1e3;
pub const MIN_GRID_POINTS: usize = 64;

/// Number of sampled local minima whose brackets are refined.
const REFINED_BRACKETS: usize = 8;

/// Ties in |⟨φ_α|φ_β⟩| and equator membership are decided at this tolerance.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CSearchResult {
    pub best_c: f64,
    pub best_error: f64,
    pub curve: Vec<(f64, f64)>,
    pub symmetric_error: f64,
}

/// W⁺(C) evaluator with pair overlaps precomputed.
#[derive(Debug, Clone)]
pub struct AsymmetryObjective {
    states: Vec<PureQubit>,
    /// min over α ≠ β of 1 − |⟨φ_β|φ_α⟩|², per β.
    min_distinguishability: Vec<f64>,
}

impl AsymmetryObjective {
    pub fn new(alice: &FingerprintSet) -> Self {
        let states = alice.states().to_vec();
        let n = states.len();
        let min_distinguishability = (0..n)
            .map(|b| {
                (0..n)
                    .filter(|&a| a != b)
                    .map(|a| 1.0 - inner_product(&states[b], &states[a]).norm_sqr())
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        Self {
            states,
            min_distinguishability,
        }
    }

    pub fn worst_false_positive(&self, asymmetry: f64) -> f64 {
        let reject = self
            .states
            .iter()
            .zip(&self.min_distinguishability)
            .map(|(s, m)| k_constant(asymmetry, s) * m)
            .fold(f64::INFINITY, f64::min);
        1.0 - reject
    }
}

/// Golden-section minimization of `f` on `[a, b]`, returning `(x, f(x))`.
pub fn golden_section_minimize(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    iters: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Log-uniform sample points over [C_MIN, C_MAX]; symmetric about C = 1 in log C.
pub fn log_grid(points: usize) -> Vec<f64> {
    let (lo, hi) = (C_MIN.ln(), C_MAX.ln());
    (0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

pub fn optimize_c(
    alice: &FingerprintSet,
    grid_points: usize,
    refine_iters: usize,
) -> Result<CSearchResult> {
    if grid_points < MIN_GRID_POINTS {
        return Err(StrictError::InvalidGrid(grid_points));
    }
    let objective = AsymmetryObjective::new(alice);
    let grid = log_grid(grid_points);
    let values: Vec<f64> = grid
        .iter()
        .map(|&cv| objective.worst_false_positive(cv))
        .collect();
    let symmetric_error = objective.worst_false_positive(1.0);

    let mut minima: Vec<usize> = (0..grid_points)
        .filter(|&i| {
            let left = i == 0 || values[i] <= values[i - 1];
            let right = i + 1 == grid_points || values[i] <= values[i + 1];
            left && right
        })
        .collect();
    minima.sort_by(|&x, &y| values[x].total_cmp(&values[y]).then(x.cmp(&y)));
    minima.truncate(REFINED_BRACKETS);

    let mut best = (1.0, symmetric_error);
    let mut consider = |cv: f64, w: f64| {
        if w < best.1 {
            best = (cv, w);
        }
    };
    for &i in &minima {
        consider(grid[i], values[i]);
        let lo = grid[i.saturating_sub(1)].ln();
        let hi = grid[(i + 1).min(grid_points - 1)].ln();
        let (t, w) = golden_section_minimize(
            |t| objective.worst_false_positive(t.exp()),
            lo,
            hi,
            refine_iters,
        );
        consider(t.exp(), w);
    }

    Ok(CSearchResult {
        best_c: best.0,
        best_error: best.1,
        curve: grid.into_iter().zip(values).collect(),
        symmetric_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OptimalityVerdict {
    SymmetricForced,
    AsymmetricCandidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryCriterion {
    /// A member of a maximal-overlap pair lies on the Bloch equator.
    Equator,
    /// The members of a maximal-overlap pair lie in opposite hemispheres.
    OppositeSides,
    /// Two maximal-overlap pairs lie in opposite hemispheres.
    TwoPairsOpposite,
    /// More than one pair attains the maximal overlap.
    NonUniqueMaxPair,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalityDiagnosis {
    pub minimally_distinguishable_pairs: Vec<(String, String)>,
    pub verdict: OptimalityVerdict,
    pub fired_criteria: Vec<SymmetryCriterion>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Hemisphere {
    North,
    South,
    Equator,
}

fn hemisphere(s: &PureQubit) -> Hemisphere {
    let gap = s.amp0().norm() - s.amp1().norm();
    if gap.abs() <= TIE_TOL {
        Hemisphere::Equator
    } else if gap > 0.0 {
        Hemisphere::North
    } else {
        Hemisphere::South
    }
}

/// Advisory necessary conditions for an asymmetric scheme to beat C = 1.
///
/// The verdict annotates reports only; it is cross-checked against
/// [`optimize_c`] in the test suite rather than trusted.
pub fn symmetric_optimality_check(alice: &FingerprintSet) -> OptimalityDiagnosis {
    let n = alice.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let ov = inner_product(alice.state(a), alice.state(b)).norm();
            if ov >= alice.delta() - TIE_TOL {
                pairs.push((a, b));
            }
        }
    }
    let sides: Vec<(Hemisphere, Hemisphere)> = pairs
        .iter()
        .map(|&(a, b)| (hemisphere(alice.state(a)), hemisphere(alice.state(b))))
        .collect();
    let all_in = |side: (Hemisphere, Hemisphere), h: Hemisphere| side.0 == h && side.1 == h;

    let mut fired = Vec::new();
    if sides
        .iter()
        .any(|s| s.0 == Hemisphere::Equator || s.1 == Hemisphere::Equator)
    {
        fired.push(SymmetryCriterion::Equator);
    }
    if sides.iter().any(|s| {
        matches!(
            s,
            (Hemisphere::North, Hemisphere::South) | (Hemisphere::South, Hemisphere::North)
        )
    }) {
        fired.push(SymmetryCriterion::OppositeSides);
    }
    if sides.iter().any(|&s| all_in(s, Hemisphere::North))
        && sides.iter().any(|&s| all_in(s, Hemisphere::South))
    {
        fired.push(SymmetryCriterion::TwoPairsOpposite);
    }
    if pairs.len() > 1 {
        fired.push(SymmetryCriterion::NonUniqueMaxPair);
    }

    let labels = alice.strings();
    OptimalityDiagnosis {
        minimally_distinguishable_pairs: pairs
            .iter()
            .map(|&(a, b)| (labels[a].clone(), labels[b].clone()))
            .collect(),
        verdict: if fired.is_empty() {
            OptimalityVerdict::AsymmetricCandidate
        } else {
            OptimalityVerdict::SymmetricForced
        },
        fired_criteria: fired,
    }
}

const REPULSION_EXPONENT: i32 = 12;

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Spreads `s` states over the Bloch sphere by Riesz-energy descent.
///
/// Minimizing Σ 1/|x_i − x_j|^12 approximately maximizes the smallest chordal
/// distance, hence minimizes the largest overlap |⟨φ_α|φ_β⟩|. Each step moves
/// every point along its tangential force, scaled so the largest move equals
/// the current step length, which decays geometrically from 0.1 to 1e-7.
pub fn pack_states(s: usize, seed: u64, iters: usize) -> Result<FingerprintSet> {
    if s < 3 {
        return Err(StrictError::TooFewStates(s));
    }
    let mut rng = trial_rng(seed, s as u64);
    // Uniform on the sphere: z uniform in [-1, 1], azimuth uniform.
    let mut pts: Vec<[f64; 3]> = (0..s)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).max(0.0).sqrt();
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect();

    let (step0, step1) = (0.1_f64, 1e-7_f64);
    let decay = if iters > 1 {
        (step1 / step0).powf(1.0 / (iters - 1) as f64)
    } else {
        1.0
    };
    let mut step = step0;
    let mut forces = vec![[0.0; 3]; s];
    for _ in 0..iters {
        forces.iter_mut().for_each(|f| *f = [0.0; 3]);
        for i in 0..s {
            for j in i + 1..s {
                let d = [
                    pts[i][0] - pts[j][0],
                    pts[i][1] - pts[j][1],
                    pts[i][2] - pts[j][2],
                ];
                let r2 = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).max(1e-24);
                let mag = 1.0 / r2.powi(REPULSION_EXPONENT / 2 + 1);
                for k in 0..3 {
                    forces[i][k] += mag * d[k];
                    forces[j][k] -= mag * d[k];
                }
            }
        }
        let mut max_f = 0.0_f64;
        for (p, f) in pts.iter().zip(forces.iter_mut()) {
            let radial = f[0] * p[0] + f[1] * p[1] + f[2] * p[2];
            for k in 0..3 {
                f[k] -= radial * p[k];
            }
            max_f = max_f.max((f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt());
        }
        if max_f > 0.0 {
            let scale = step / max_f;
            for (p, f) in pts.iter_mut().zip(&forces) {
                *p = normalize3([
                    p[0] + scale * f[0],
                    p[1] + scale * f[1],
                    p[2] + scale * f[2],
                ]);
            }
        }
        step *= decay;
    }

    let states = pts
        .into_iter()
        .map(PureQubit::from_bloch_vector)
        .collect::<crate::qlin::Result<Vec<_>>>()?;
    FingerprintSet::numbered(states)
}
