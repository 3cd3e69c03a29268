//! Exact density-matrix realization of the physical protocols, used as the
//! independent verification oracle for the fast diagonal maps in
//! [`crate::swap`] and [`crate::purify`].
//!
//! Everything here is dense complex linear algebra at dimension 4 or 16;
//! performance is irrelevant, fidelity to the protocol is everything.
//!
//! Conventions (fixed throughout): within a pair the sender qubit comes
//! first; pair `a` precedes pair `b`; the leftmost qubit is the most
//! significant bit of a basis index.

use nalgebra::{Complex, DMatrix, DVector};

use crate::bell_state::BellDiagonal;
use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Hermiticity / trace tolerance for density-matrix validation.
pub const DM_TOL: f64 = 1e-12;
/// Eigenvalue tolerance for the positive-semidefinite check; absorbs
/// accumulated rounding from repeated 16-dimensional products.
pub const DM_PSD_TOL: f64 = 1e-10;

fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

/// A validated density matrix of dimension 4 (one pair) or 16 (two pairs):
/// Hermitian, unit trace, positive semidefinite within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates and wraps a raw matrix.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || (dim != 4 && dim != 16) {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected a square matrix of dimension 4 or 16, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut herm_dev = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                herm_dev = herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if herm_dev > DM_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DM_TOL || tr.im.abs() > DM_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        let min_eig = m
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -DM_PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not positive semidefinite (minimum eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(Self { m })
    }

    /// Exact matrix of a Bell-diagonal state: `Σ_k b_k |B_k⟩⟨B_k|`.
    pub fn from_bell_diagonal(state: BellDiagonal) -> Self {
        let basis = bell_basis();
        let mut m = DMatrix::<C64>::zeros(4, 4);
        for (weight, vector) in state.as_array().iter().zip(basis.iter()) {
            m += (vector * vector.adjoint()).scale(*weight);
        }
        Self { m }
    }

    /// Bell-basis diagonal `⟨B_k|ρ|B_k⟩` of a one-pair state.
    pub fn bell_diagonal(&self) -> Result<[f64; 4]> {
        if self.dim() != 4 {
            return Err(Error::InvalidDensityMatrix(format!(
                "Bell diagonal requires dimension 4, got {}",
                self.dim()
            )));
        }
        let basis = bell_basis();
        let mut diag = [0.0; 4];
        for (slot, vector) in diag.iter_mut().zip(basis.iter()) {
            *slot = (vector.adjoint() * &self.m * vector)[(0, 0)].re;
        }
        Ok(diag)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    fn require_pair(&self, what: &str) -> Result<()> {
        if self.dim() != 4 {
            return Err(Error::InvalidDensityMatrix(format!(
                "{what} takes one-pair (4x4) states, got dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// The four Bell vectors in the computational basis (|00⟩, |01⟩, |10⟩, |11⟩):
///
/// ```text
/// |B1,2⟩ = (|00⟩ ± |11⟩)/√2      |B3,4⟩ = (|01⟩ ± |10⟩)/√2
/// ```
pub fn bell_basis() -> [DVector<C64>; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        DVector::from_vec(vec![c(s), c(0.0), c(0.0), c(s)]),
        DVector::from_vec(vec![c(s), c(0.0), c(0.0), c(-s)]),
        DVector::from_vec(vec![c(0.0), c(s), c(s), c(0.0)]),
        DVector::from_vec(vec![c(0.0), c(s), c(-s), c(0.0)]),
    ]
}

/// Rank-1 projector onto |B_k⟩ for `k ∈ 1..=4`.
pub fn bell_projector(k: usize) -> Result<DensityMatrix> {
    if !(1..=4).contains(&k) {
        return Err(Error::BadBellIndex(k));
    }
    let v = &bell_basis()[k - 1];
    Ok(DensityMatrix { m: v * v.adjoint() })
}

fn identity(dim: usize) -> DMatrix<C64> {
    DMatrix::identity(dim, dim)
}

fn pauli_x() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

fn pauli_z() -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

/// Sender-side rotation: |0⟩ → (|0⟩ − i|1⟩)/√2, |1⟩ → (|1⟩ − i|0⟩)/√2.
fn sender_rotation() -> DMatrix<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex::new(s, 0.0),
            Complex::new(0.0, -s),
            Complex::new(0.0, -s),
            Complex::new(s, 0.0),
        ],
    )
}

/// Receiver-side rotation: |0⟩ → (|0⟩ + i|1⟩)/√2, |1⟩ → (|1⟩ + i|0⟩)/√2.
fn receiver_rotation() -> DMatrix<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex::new(s, 0.0),
            Complex::new(0.0, s),
            Complex::new(0.0, s),
            Complex::new(s, 0.0),
        ],
    )
}

/// C-NOT, control on the more significant qubit: |a⟩|b⟩ → |a⟩|a ⊕ b⟩.
fn cnot() -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(4, 4);
    m[(0, 0)] = c(1.0);
    m[(1, 1)] = c(1.0);
    m[(2, 3)] = c(1.0);
    m[(3, 2)] = c(1.0);
    m
}

fn qubit_bit(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Embeds a two-qubit operator acting on qubits `(hi, lo)` — `hi` supplying
/// the operator's more significant bit — into an `n`-qubit space.
fn embed_two_qubit(op: &DMatrix<C64>, hi: usize, lo: usize, n: usize) -> DMatrix<C64> {
    let dim = 1 << n;
    let mut full = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let untouched = (0..n)
                .filter(|&q| q != hi && q != lo)
                .all(|q| qubit_bit(i, q, n) == qubit_bit(j, q, n));
            if !untouched {
                continue;
            }
            let it = (qubit_bit(i, hi, n) << 1) | qubit_bit(i, lo, n);
            let jt = (qubit_bit(j, hi, n) << 1) | qubit_bit(j, lo, n);
            full[(i, j)] = op[(it, jt)];
        }
    }
    full
}

/// Partial trace keeping the listed qubits (most significant first).
fn partial_trace_keep(rho: &DMatrix<C64>, keep: &[usize], n: usize) -> DMatrix<C64> {
    let dim = 1 << n;
    let out_dim = 1 << keep.len();
    let drop: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let mut out = DMatrix::<C64>::zeros(out_dim, out_dim);
    for i in 0..dim {
        for j in 0..dim {
            if drop.iter().any(|&q| qubit_bit(i, q, n) != qubit_bit(j, q, n)) {
                continue;
            }
            let mut ik = 0;
            let mut jk = 0;
            for &q in keep {
                ik = (ik << 1) | qubit_bit(i, q, n);
                jk = (jk << 1) | qubit_bit(j, q, n);
            }
            out[(ik, jk)] += rho[(i, j)];
        }
    }
    out
}

fn sandwich(op: &DMatrix<C64>, rho: &DMatrix<C64>) -> DMatrix<C64> {
    op * rho * op.adjoint()
}

/// Full distillation protocol on two pairs: local rotations on every qubit,
/// bilateral C-NOT with pair `a` as control and pair `b` as target, then
/// projection of both target qubits onto coinciding outcomes (00 or 11).
///
/// Returns the renormalized kept pair and the total coincidence probability.
/// Qubit layout: (sender-a, receiver-a, sender-b, receiver-b).
pub fn deutsch_protocol_dm(
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
) -> Result<(DensityMatrix, f64)> {
    rho_a.require_pair("deutsch_protocol_dm")?;
    rho_b.require_pair("deutsch_protocol_dm")?;

    let mut rho = rho_a.matrix().kronecker(rho_b.matrix());

    let u = sender_rotation();
    let v = receiver_rotation();
    let rotation = u.kronecker(&v).kronecker(&u).kronecker(&v);
    rho = sandwich(&rotation, &rho);

    let cnot_sender = embed_two_qubit(&cnot(), 0, 2, 4);
    let cnot_receiver = embed_two_qubit(&cnot(), 1, 3, 4);
    rho = sandwich(&cnot_sender, &rho);
    rho = sandwich(&cnot_receiver, &rho);

    let mut kept = DMatrix::<C64>::zeros(16, 16);
    for outcome in [0usize, 3] {
        let mut proj = DMatrix::<C64>::zeros(4, 4);
        proj[(outcome, outcome)] = c(1.0);
        let full = embed_two_qubit(&proj, 2, 3, 4);
        kept += sandwich(&full, &rho);
    }
    let probability = kept.trace().re;
    if probability <= 0.0 {
        return Err(Error::PurificationImpossible);
    }
    let reduced = partial_trace_keep(&kept, &[0, 1], 4).unscale(probability);
    Ok((DensityMatrix::new(reduced)?, probability))
}

/// Entanglement swapping on qubits (A, B₁, B₂, C): a Bell measurement on the
/// middle qubits, an outcome-dependent Pauli correction on C that returns
/// every ideal branch to the |B₁⟩ frame, and the probability-weighted mix of
/// the four branches.
pub fn swap_dm(rho_ab: &DensityMatrix, rho_bc: &DensityMatrix) -> Result<DensityMatrix> {
    rho_ab.require_pair("swap_dm")?;
    rho_bc.require_pair("swap_dm")?;

    let rho = rho_ab.matrix().kronecker(rho_bc.matrix());
    // Corrections per outcome: chosen so |B1⟩⊗|B1⟩ → |B1⟩ on every branch.
    let corrections = [
        identity(2),
        pauli_z(),
        pauli_x(),
        pauli_z() * pauli_x(),
    ];

    let mut out = DMatrix::<C64>::zeros(4, 4);
    for (k, correction) in corrections.iter().enumerate() {
        let projector = embed_two_qubit(bell_projector(k + 1)?.matrix(), 1, 2, 4);
        let branch = sandwich(&projector, &rho);
        let reduced = partial_trace_keep(&branch, &[0, 3], 4);
        let correction = identity(2).kronecker(correction);
        out += sandwich(&correction, &reduced);
    }
    DensityMatrix::new(out)
}

/// Dephasing monitor with robustness `R ∈ [0, 1]` attached to the pair as a
/// whole: |00⟩ keeps the environment in |0⟩, |11⟩ rotates it by `R`, and the
/// environment is traced out. In Kraus form: K₀ = diag(1,1,1,R),
/// K₁ = diag(0,0,0,√(1−R²)).
pub fn qnd_channel_dm(rho: &DensityMatrix, r: f64) -> Result<DensityMatrix> {
    rho.require_pair("qnd_channel_dm")?;
    if !r.is_finite() || !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfRange {
            name: "R",
            value: r,
            range: "[0, 1]",
        });
    }
    let k0 = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(1.0), c(1.0), c(r)]));
    let leak = (1.0 - r * r).max(0.0).sqrt();
    let k1 = DMatrix::from_diagonal(&DVector::from_vec(vec![
        c(0.0),
        c(0.0),
        c(0.0),
        c(leak),
    ]));
    DensityMatrix::new(sandwich(&k0, rho.matrix()) + sandwich(&k1, rho.matrix()))
}
