//! Small complex linear algebra for one- and two-qubit systems.
//!
//! Every state type here is immutable and carries a global-phase convention:
//! the first amplitude with magnitude above [`PHASE_EPS`] is real and
//! nonnegative. Comparisons "up to global phase" should still go through
//! overlaps ([`PureQubit::trace_distance`]) because the convention is
//! discontinuous near states whose leading amplitude is tiny.

use nalgebra::{DMatrix, Matrix2, Matrix4, SMatrix};
use num_complex::Complex64;
use thiserror::Error;

/// Complex amplitude.
pub type ComplexScalar = Complex64;

/// 2×2 complex operator (local unitaries).
pub type Operator2 = Matrix2<Complex64>;

/// 4×4 complex operator on two qubits, basis order |00⟩,|01⟩,|10⟩,|11⟩.
pub type Operator4 = Matrix4<Complex64>;

/// Relative singular-value cutoff used for every rank decision.
pub const RANK_CUTOFF: f64 = 1e-9;

/// Amplitudes below this magnitude are skipped when fixing the global phase.
pub const PHASE_EPS: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QlinError {
    #[error("amplitudes contain NaN or infinity")]
    NonFinite,
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("density matrix trace is {0}, expected 1")]
    InvalidTrace(f64),
    #[error("eigenvalue {0:e} outside the allowed range")]
    EigenvalueOutOfRange(f64),
    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
}

pub type Result<T> = std::result::Result<T, QlinError>;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn normalize_in_place<const N: usize>(amps: &mut [Complex64; N]) -> Result<()> {
    if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(QlinError::NonFinite);
    }
    let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(QlinError::ZeroVector);
    }
    // Skipping already-unit vectors keeps normalization idempotent bit-for-bit.
    if (norm_sq - 1.0).abs() > 1e-15 {
        let inv = 1.0 / norm_sq.sqrt();
        for a in amps.iter_mut() {
            *a *= inv;
        }
    }
    Ok(())
}

fn fix_phase<const N: usize>(amps: &mut [Complex64; N]) {
    let Some(lead) = amps.iter().position(|a| a.norm() > PHASE_EPS) else {
        return;
    };
    let a = amps[lead];
    if a.im == 0.0 && a.re > 0.0 {
        return;
    }
    let mag = a.norm();
    let rot = a.conj() / mag;
    for (i, x) in amps.iter_mut().enumerate() {
        *x = if i == lead { c(mag, 0.0) } else { *x * rot };
    }
}

/// Pure single-qubit state a|0⟩ + b|1⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    amps: [Complex64; 2],
}

impl PureQubit {
    /// Normalizes and phase-fixes the given amplitude pair.
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let mut amps = [amp0, amp1];
        normalize_in_place(&mut amps)?;
        fix_phase(&mut amps);
        Ok(Self { amps })
    }

    pub fn from_real(amp0: f64, amp1: f64) -> Result<Self> {
        Self::new(c(amp0, 0.0), c(amp1, 0.0))
    }

    pub fn zero() -> Self {
        Self {
            amps: [c(1.0, 0.0), c(0.0, 0.0)],
        }
    }

    pub fn one() -> Self {
        Self {
            amps: [c(0.0, 0.0), c(1.0, 0.0)],
        }
    }

    /// State (|0⟩ + u|1⟩)/√(1+|u|²).
    pub fn from_u(u: Complex64) -> Result<Self> {
        Self::new(c(1.0, 0.0), u)
    }

    /// State cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Result<Self> {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::new(c(co, 0.0), Complex64::from_polar(s, phi))
    }

    /// State whose Bloch vector points along `v` (need not be unit length).
    pub fn from_bloch_vector(v: [f64; 3]) -> Result<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !r.is_finite() {
            return Err(QlinError::NonFinite);
        }
        if r == 0.0 {
            return Err(QlinError::ZeroVector);
        }
        let z = (v[2] / r).clamp(-1.0, 1.0);
        Self::from_bloch_angles(z.acos(), v[1].atan2(v[0]))
    }

    pub fn amp0(&self) -> Complex64 {
        self.amps[0]
    }

    pub fn amp1(&self) -> Complex64 {
        self.amps[1]
    }

    pub fn amps(&self) -> [Complex64; 2] {
        self.amps
    }

    /// Extended complex parameter u = b/a; `None` stands for u = ∞ (the state |1⟩).
    pub fn u_parameter(&self) -> Option<Complex64> {
        if self.amps[0].norm() <= PHASE_EPS {
            None
        } else {
            Some(self.amps[1] / self.amps[0])
        }
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let [a, b] = self.amps;
        let cross = a.conj() * b;
        [2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()]
    }

    /// Trace distance between the two pure-state projectors.
    ///
    /// Computed as |a₀b₁ − a₁b₀|, which equals √(1 − |⟨a|b⟩|²) without the
    /// cancellation near identical states.
    pub fn trace_distance(&self, other: &PureQubit) -> f64 {
        (self.amps[0] * other.amps[1] - self.amps[1] * other.amps[0])
            .norm()
            .min(1.0)
    }

    pub fn apply(&self, op: &Operator2) -> Result<PureQubit> {
        let [a, b] = self.amps;
        PureQubit::new(
            op[(0, 0)] * a + op[(0, 1)] * b,
            op[(1, 0)] * a + op[(1, 1)] * b,
        )
    }
}

/// ⟨a|b⟩.
pub fn inner_product(a: &PureQubit, b: &PureQubit) -> Complex64 {
    a.amps[0].conj() * b.amps[0] + a.amps[1].conj() * b.amps[1]
}

/// Pure two-qubit state in basis order |00⟩,|01⟩,|10⟩,|11⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let mut amps = amps;
        normalize_in_place(&mut amps)?;
        fix_phase(&mut amps);
        Ok(Self { amps })
    }

    pub fn from_real(amps: [f64; 4]) -> Result<Self> {
        Self::new(amps.map(|x| c(x, 0.0)))
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [c(0.0, 0.0); 4];
        amps[index] = c(1.0, 0.0);
        Self { amps }
    }

    /// (|01⟩ − |10⟩)/√2.
    pub fn singlet() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: [c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)],
        }
    }

    pub fn amps(&self) -> [Complex64; 4] {
        self.amps
    }

    pub fn inner(&self, other: &TwoQubitState) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Overlap magnitude equals one for states equal up to global phase.
    pub fn overlap_sq(&self, other: &TwoQubitState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// (U ⊗ V)|s⟩.
    pub fn apply_local(&self, u: &Operator2, v: &Operator2) -> Result<TwoQubitState> {
        let mut out = [c(0.0, 0.0); 4];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = c(0.0, 0.0);
                for k in 0..2 {
                    for l in 0..2 {
                        acc += u[(i, k)] * v[(j, l)] * self.amps[2 * k + l];
                    }
                }
                out[2 * i + j] = acc;
            }
        }
        TwoQubitState::new(out)
    }
}

/// a ⊗ b, with `amps[2i+j] = a_i b_j`.
pub fn tensor(a: &PureQubit, b: &PureQubit) -> TwoQubitState {
    let mut amps = [c(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            amps[2 * i + j] = a.amps[i] * b.amps[j];
        }
    }
    // Products of unit vectors are unit up to roundoff; renormalize regardless.
    TwoQubitState::new(amps).expect("product of unit vectors is nonzero")
}

/// Schmidt decomposition s0·a0⊗b0 + s1·a1⊗b1.
///
/// The basis vectors are stored as raw orthonormal amplitude pairs rather than
/// [`PureQubit`]s: the phases of `basis_b` are tied to those of `basis_a` so
/// that the reconstruction is exact, not merely up to a per-term phase. Each
/// `basis_a` vector has its larger amplitude made real and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtForm {
    pub coeffs: [f64; 2],
    pub basis_a: [[Complex64; 2]; 2],
    pub basis_b: [[Complex64; 2]; 2],
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> [Complex64; 4] {
        let mut out = [c(0.0, 0.0); 4];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    out[2 * i + j] += self.coeffs[k] * self.basis_a[k][i] * self.basis_b[k][j];
                }
            }
        }
        out
    }

    pub fn basis_a_state(&self, k: usize) -> PureQubit {
        PureQubit::new(self.basis_a[k][0], self.basis_a[k][1]).expect("unit basis vector")
    }

    pub fn basis_b_state(&self, k: usize) -> PureQubit {
        PureQubit::new(self.basis_b[k][0], self.basis_b[k][1]).expect("unit basis vector")
    }
}

fn perp(v: [Complex64; 2]) -> [Complex64; 2] {
    [-v[1].conj(), v[0].conj()]
}

fn unit2(v: [Complex64; 2]) -> [Complex64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Schmidt decomposition via the closed-form SVD of the 2×2 coefficient
/// matrix `M[i][j] = amps[2i+j]`.
///
/// The smaller coefficient is taken from |det M| / s0 so it keeps full
/// relative precision for nearly-product states. When the two coefficients
/// coincide (within 1e-12) the computational basis is used on the A side.
pub fn schmidt_decompose(s: &TwoQubitState) -> SchmidtForm {
    let a = s.amps;
    let m = [[a[0], a[1]], [a[2], a[3]]];
    let h00 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let h11 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let h01 = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let trace = h00 + h11;
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    let disc = (trace * trace - 4.0 * det * det).max(0.0).sqrt();
    let s0 = ((trace + disc) / 2.0).sqrt();
    let s1 = if s0 > 0.0 { (det / s0).min(s0) } else { 0.0 };

    let (mut ea, mut fb);
    if s0 - s1 <= 1e-12 {
        // Degenerate: rows of M are orthogonal with equal norm.
        ea = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let f0 = unit2(m[0]);
        let f1p = perp(f0);
        let proj = f1p[0].conj() * m[1][0] + f1p[1].conj() * m[1][1];
        let ph = if proj.norm() > 0.0 {
            proj / proj.norm()
        } else {
            c(1.0, 0.0)
        };
        fb = [f0, [f1p[0] * ph, f1p[1] * ph]];
    } else {
        let lambda = s0 * s0;
        let cand1 = [h01, c(lambda - h00, 0.0)];
        let cand2 = [c(lambda - h11, 0.0), h01.conj()];
        let n1 = cand1[0].norm_sqr() + cand1[1].norm_sqr();
        let n2 = cand2[0].norm_sqr() + cand2[1].norm_sqr();
        let v0 = unit2(if n1 >= n2 { cand1 } else { cand2 });
        let mv = [
            m[0][0] * v0[0] + m[0][1] * v0[1],
            m[1][0] * v0[0] + m[1][1] * v0[1],
        ];
        let e0 = unit2(mv);
        let f0 = [v0[0].conj(), v0[1].conj()];
        let e1 = perp(e0);
        let f1p = perp(f0);
        let g = [
            e1[0].conj() * m[0][0] + e1[1].conj() * m[1][0],
            e1[0].conj() * m[0][1] + e1[1].conj() * m[1][1],
        ];
        let proj = f1p[0].conj() * g[0] + f1p[1].conj() * g[1];
        let ph = if proj.norm() > 0.0 {
            proj / proj.norm()
        } else {
            c(1.0, 0.0)
        };
        ea = [e0, e1];
        fb = [f0, [f1p[0] * ph, f1p[1] * ph]];
    }

    for k in 0..2 {
        // Anchor on the dominant amplitude: a near-zero leading entry carries
        // an arbitrary rounding phase.
        let lead = if ea[k][0].norm() >= ea[k][1].norm() {
            0
        } else {
            1
        };
        {
            let z = ea[k][lead];
            let rot = z.conj() / z.norm();
            ea[k] = [ea[k][0] * rot, ea[k][1] * rot];
            ea[k][lead] = c(z.norm(), 0.0);
            let back = rot.conj();
            fb[k] = [fb[k][0] * back, fb[k][1] * back];
        }
    }

    SchmidtForm {
        coeffs: [s0, s1],
        basis_a: ea,
        basis_b: fb,
    }
}

/// Singular values and right singular vectors (as columns of V) of the
/// matrix whose rows are ⟨s_i|, padded with zero rows to at least four.
fn span_svd(states: &[TwoQubitState]) -> (Vec<f64>, Vec<[Complex64; 4]>) {
    let rows = states.len().max(4);
    let mut a = DMatrix::<Complex64>::zeros(rows, 4);
    for (i, s) in states.iter().enumerate() {
        for j in 0..4 {
            a[(i, j)] = s.amps[j].conj();
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let cols = (0..4)
        .map(|i| [0, 1, 2, 3].map(|j| v_t[(i, j)].conj()))
        .collect();
    (svd.singular_values.iter().copied().collect(), cols)
}

fn split_span(states: &[TwoQubitState]) -> (Vec<TwoQubitState>, Vec<TwoQubitState>) {
    let (sv, cols) = span_svd(states);
    let max = sv.iter().copied().fold(0.0_f64, f64::max);
    let mut span = Vec::new();
    let mut complement = Vec::new();
    for (sigma, col) in sv.into_iter().zip(cols) {
        let v = TwoQubitState::new(col).expect("unit singular vector");
        if max > 0.0 && sigma > RANK_CUTOFF * max {
            span.push(v);
        } else {
            complement.push(v);
        }
    }
    (span, complement)
}

/// Orthonormal basis of span{states}.
pub fn span_basis(states: &[TwoQubitState]) -> Vec<TwoQubitState> {
    split_span(states).0
}

/// Orthonormal basis of the orthogonal complement of span{states}.
pub fn orthogonal_complement(states: &[TwoQubitState]) -> Vec<TwoQubitState> {
    split_span(states).1
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &Operator2, b: &Operator2) -> Operator4 {
    Operator4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Max-entry deviation of U†U from the identity.
pub fn unitarity_defect(u: &Operator2) -> f64 {
    let d = u.adjoint() * u - Operator2::identity();
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn check_unitary(u: &Operator2, tol: f64) -> Result<()> {
    let d = unitarity_defect(u);
    if d > tol {
        Err(QlinError::NotUnitary(d))
    } else {
        Ok(())
    }
}

/// True when `u` equals `e^{iθ}·I` for some θ, within `tol`.
pub fn is_identity_up_to_phase(u: &Operator2, tol: f64) -> bool {
    let ph = u[(0, 0)];
    if (ph.norm() - 1.0).abs() > tol {
        return false;
    }
    let d = u - Operator2::identity() * ph;
    d.iter().all(|z| z.norm() <= tol)
}

fn hermitian_defect<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn hermitian_eigenvalues<const N: usize>(m: &SMatrix<Complex64, N, N>) -> Vec<f64> {
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let dm = DMatrix::from_fn(N, N, |i, j| h[(i, j)]);
    dm.symmetric_eigenvalues().iter().copied().collect()
}

/// Density matrix of dimension 2 (one qubit) or 4 (two qubits).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<const N: usize> {
    entries: SMatrix<Complex64, N, N>,
}

impl<const N: usize> DensityMatrix<N> {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: SMatrix<Complex64, N, N>) -> Result<Self> {
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(QlinError::NonFinite);
        }
        let herm = hermitian_defect(&entries);
        if herm > 1e-12 {
            return Err(QlinError::NotHermitian(herm));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(QlinError::InvalidTrace(tr.re));
        }
        if let Some(&low) = hermitian_eigenvalues(&entries)
            .iter()
            .find(|&&e| e < -1e-10)
        {
            return Err(QlinError::EigenvalueOutOfRange(low));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &SMatrix<Complex64, N, N> {
        &self.entries
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    /// Tr(ρ²); one for pure states.
    pub fn purity(&self) -> f64 {
        (self.entries * self.entries).trace().re
    }
}

impl DensityMatrix<2> {
    pub fn from_pure(q: &PureQubit) -> Self {
        let v = nalgebra::Vector2::new(q.amp0(), q.amp1());
        Self {
            entries: v * v.adjoint(),
        }
    }

    /// Convex mixture Σ w_i |q_i⟩⟨q_i|; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, PureQubit)]) -> Result<Self> {
        let mut m = Operator2::zeros();
        for (w, q) in parts {
            m += Self::from_pure(q).entries * c(*w, 0.0);
        }
        Self::new(m)
    }

    pub fn tensor(&self, other: &DensityMatrix<2>) -> DensityMatrix<4> {
        DensityMatrix {
            entries: kron(&self.entries, &other.entries),
        }
    }
}

impl DensityMatrix<4> {
    pub fn from_pure(s: &TwoQubitState) -> Self {
        let v = nalgebra::Vector4::from_column_slice(&s.amps);
        Self {
            entries: v * v.adjoint(),
        }
    }
}

/// Hermitian operator 0 ≤ E ≤ I (eigenvalues within ±1e-10 of that range).
pub fn check_effect<const N: usize>(m: &SMatrix<Complex64, N, N>) -> Result<()> {
    let herm = hermitian_defect(m);
    if herm > 1e-12 {
        return Err(QlinError::NotHermitian(herm));
    }
    for e in hermitian_eigenvalues(m) {
        if !(-1e-10..=1.0 + 1e-10).contains(&e) {
            return Err(QlinError::EigenvalueOutOfRange(e));
        }
    }
    Ok(())
}

/// |s⟩⟨s|.
pub fn projector(s: &TwoQubitState) -> Operator4 {
    let v = nalgebra::Vector4::from_column_slice(&s.amps);
    v * v.adjoint()
}

/// SWAP on two qubits.
pub fn swap_operator() -> Operator4 {
    let mut m = Operator4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(2 * j + i, 2 * i + j)] = c(1.0, 0.0);
        }
    }
    m
}
