// Copyright 2026 entbath Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit density-matrix algebra.
//!
//! States live in two equivalent representations:
//!
//! - [`BlochState`]: the 15 real coefficients (ρ₀ᵢ, ρᵢ₀, ρᵢⱼ) of the Pauli
//!   expansion ρ = ¼[σ₀⊗σ₀ + ρ₀ᵢ σ₀⊗σᵢ + ρᵢ₀ σᵢ⊗σ₀ + ρᵢⱼ σᵢ⊗σⱼ], which the
//!   master equation evolves directly;
//! - [`DensityMatrix4`]: the explicit 4×4 complex matrix in the product
//!   basis |e⟩⊗|e⟩, |e⟩⊗|g⟩, |g⟩⊗|e⟩, |g⟩⊗|g⟩ with σ₃|e⟩ = +|e⟩, which the
//!   entanglement witnesses need.
//!
//! Entanglement detection is by the two-qubit Peres–Horodecki criterion
//! (negativity of the partial transpose, necessary *and* sufficient here)
//! and quantified by the Wootters concurrence.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::math;
use crate::model::Axis;

/// Hermiticity/trace tolerance when accepting an externally supplied matrix.
const MATRIX_TOL: f64 = 1e-10;
/// Eigenvalues of a nominally PSD matrix below this are rejected as
/// unphysical rather than clamped.
const NEGATIVE_EIG_TOL: f64 = -1e-10;
/// Spectral noise floor for the concurrence product chain: eigenvalues of
/// ρρ̃ below this are rounding debris of the unit-norm matrix products
/// (≈ 500 ulps), not signal. Taking their square roots would inject ~1e-8
/// phantom concurrence into pure and product states.
const CONCURRENCE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("matrix is not Hermitian: defect {0} exceeds tolerance")]
    NotHermitian(f64),
    #[error("matrix trace deviates from one by {0}")]
    TraceNotOne(f64),
    #[error("state has negative eigenvalue {0}")]
    NotPositive(f64),
}

/// The 15 real Bloch components of a two-qubit state.
///
/// `atom1` holds the ρᵢ₀ coefficients (first atom's polarization), `atom2`
/// the ρ₀ᵢ coefficients, `correlation[i][j]` the ρᵢⱼ block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub atom1: [f64; 3],
    pub atom2: [f64; 3],
    pub correlation: [[f64; 3]; 3],
}

impl BlochState {
    /// The maximally mixed state σ₀⊗σ₀/4.
    pub fn maximally_mixed() -> Self {
        BlochState {
            atom1: [0.0; 3],
            atom2: [0.0; 3],
            correlation: [[0.0; 3]; 3],
        }
    }

    /// Product state with the given single-atom Bloch vectors.
    pub fn product(atom1: [f64; 3], atom2: [f64; 3]) -> Self {
        let mut correlation = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                correlation[i][j] = atom1[i] * atom2[j];
            }
        }
        BlochState {
            atom1,
            atom2,
            correlation,
        }
    }

    /// |+⟩⟨+| ⊗ |−⟩⟨−| along `axis`: atom 1 excited, atom 2 in the ground
    /// state. The canonical separable initial state for creation tests;
    /// its correlation trace is −1.
    pub fn excited_ground(axis: Axis) -> Self {
        let minus = [-axis[0], -axis[1], -axis[2]];
        Self::product(axis, minus)
    }

    /// τ = Σᵢ ρᵢᵢ, the trace of the correlation block. Bounded in [−3, 1]
    /// for physical states and conserved by the dynamics at zero separation.
    pub fn correlation_trace(&self) -> f64 {
        self.correlation[0][0] + self.correlation[1][1] + self.correlation[2][2]
    }
}

/// 4×4 complex density matrix in the |ee⟩, |eg⟩, |ge⟩, |gg⟩ basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(pub Matrix<4>);

impl DensityMatrix4 {
    pub fn trace(&self) -> Complex64 {
        linalg::trace(&self.0)
    }

    /// Largest |ρᵢⱼ − ρⱼᵢ*|.
    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.0)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::hermitian_eigenvalues(&self.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }
}

const PAULI: [[[Complex64; 2]; 2]; 4] = {
    const fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }
    [
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
        [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
    ]
};

/// σ_a ⊗ σ_b, row-major over the product basis.
fn pauli_kron(a: usize, b: usize) -> Matrix<4> {
    let mut out = linalg::zero::<4>();
    for i1 in 0..2 {
        for j1 in 0..2 {
            for i2 in 0..2 {
                for j2 in 0..2 {
                    out[2 * i1 + i2][2 * j1 + j2] = PAULI[a][i1][j1] * PAULI[b][i2][j2];
                }
            }
        }
    }
    out
}

/// Reconstruct the 4×4 matrix from Bloch components. Trace is exactly one
/// and Hermiticity exact by construction (real coefficients on Hermitian
/// tensor products).
pub fn bloch_to_matrix(state: &BlochState) -> DensityMatrix4 {
    let mut acc = pauli_kron(0, 0);
    let add = |acc: &mut Matrix<4>, coeff: f64, term: Matrix<4>| {
        for i in 0..4 {
            for j in 0..4 {
                acc[i][j] += term[i][j].scale(coeff);
            }
        }
    };
    for i in 0..3 {
        add(&mut acc, state.atom2[i], pauli_kron(0, i + 1));
        add(&mut acc, state.atom1[i], pauli_kron(i + 1, 0));
        for j in 0..3 {
            add(&mut acc, state.correlation[i][j], pauli_kron(i + 1, j + 1));
        }
    }
    for row in acc.iter_mut() {
        for e in row.iter_mut() {
            *e = e.scale(0.25);
        }
    }
    DensityMatrix4(acc)
}

/// Project a matrix back onto Bloch components: ρ₀ᵢ = Tr[ρ·(σ₀⊗σᵢ)] etc.
///
/// Rejects inputs that are not Hermitian with unit trace at 1e-10.
pub fn matrix_to_bloch(rho: &DensityMatrix4) -> Result<BlochState, StateError> {
    let defect = rho.hermiticity_defect();
    if defect > MATRIX_TOL {
        return Err(StateError::NotHermitian(defect));
    }
    let trace_defect = (rho.trace() - Complex64::new(1.0, 0.0)).norm();
    if trace_defect > MATRIX_TOL {
        return Err(StateError::TraceNotOne(trace_defect));
    }
    let overlap = |a: usize, b: usize| -> f64 {
        let basis = pauli_kron(a, b);
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                t += rho.0[i][j] * basis[j][i];
            }
        }
        t.re
    };
    let mut state = BlochState::maximally_mixed();
    for i in 0..3 {
        state.atom2[i] = overlap(0, i + 1);
        state.atom1[i] = overlap(i + 1, 0);
        for j in 0..3 {
            state.correlation[i][j] = overlap(i + 1, j + 1);
        }
    }
    Ok(state)
}

/// Transpose on the second tensor factor. Preserves Hermiticity and trace;
/// positivity survives exactly for separable states and breaks for
/// entangled ones.
pub fn partial_transpose(rho: &DensityMatrix4) -> DensityMatrix4 {
    let mut out = linalg::zero::<4>();
    for i1 in 0..2 {
        for j1 in 0..2 {
            for i2 in 0..2 {
                for j2 in 0..2 {
                    out[2 * i1 + i2][2 * j1 + j2] = rho.0[2 * i1 + j2][2 * j1 + i2];
                }
            }
        }
    }
    DensityMatrix4(out)
}

/// Minimum eigenvalue of the partial transpose. The state is entangled if
/// and only if this is negative (two qubits: PPT is necessary and
/// sufficient).
pub fn ppt_min_eigenvalue(rho: &DensityMatrix4) -> f64 {
    partial_transpose(rho).min_eigenvalue()
}

/// Wootters concurrence C(ρ) = max{λ₁ − λ₂ − λ₃ − λ₄, 0}, the λ's being the
/// decreasing square roots of the eigenvalues of ρ·(σ₂⊗σ₂)ρᵀ(σ₂⊗σ₂).
///
/// The spectrum is extracted from the Hermitian product √ρ·ρ̃·√ρ, which
/// shares eigenvalues with ρρ̃. Eigenvalues in [−1e-10, 0) are clamped to
/// zero before the square root; anything more negative flags an invalid
/// state. Product eigenvalues below the [`CONCURRENCE_FLOOR`] noise floor
/// are likewise zeroed so that exactly separable states report exactly 0.
pub fn concurrence(rho: &DensityMatrix4) -> Result<f64, StateError> {
    let (eigs, vecs) = linalg::hermitian_eigen(&rho.0);
    let mut clamped = [0.0; 4];
    for (k, &w) in eigs.iter().enumerate() {
        if w < NEGATIVE_EIG_TOL {
            return Err(StateError::NotPositive(w));
        }
        clamped[k] = if w > 0.0 { w } else { 0.0 };
    }
    // √ρ = V diag(√w) V†.
    let mut sqrt_rho = linalg::zero::<4>();
    for (k, &w) in clamped.iter().enumerate() {
        let s = math::sqrt(w);
        for i in 0..4 {
            for j in 0..4 {
                sqrt_rho[i][j] += vecs[i][k] * vecs[j][k].conj() * s;
            }
        }
    }
    let spin_flipped = spin_flip(rho);
    let product = linalg::matmul(&linalg::matmul(&sqrt_rho, &spin_flipped.0), &sqrt_rho);
    let mu = linalg::hermitian_eigenvalues(&product);
    let mut lambdas = [0.0_f64; 4];
    for (k, &m) in mu.iter().enumerate() {
        if m < NEGATIVE_EIG_TOL {
            return Err(StateError::NotPositive(m));
        }
        lambdas[k] = if m > CONCURRENCE_FLOOR {
            math::sqrt(m)
        } else {
            0.0
        };
    }
    // Ascending order from the solver: λ₁ is the last entry.
    let c = lambdas[3] - lambdas[2] - lambdas[1] - lambdas[0];
    Ok(if c > 0.0 { c } else { 0.0 })
}

/// ρ̃ = (σ₂⊗σ₂) ρᵀ (σ₂⊗σ₂).
fn spin_flip(rho: &DensityMatrix4) -> DensityMatrix4 {
    let yy = pauli_kron(2, 2);
    let rho_t = linalg::transpose(&rho.0);
    DensityMatrix4(linalg::matmul(&linalg::matmul(&yy, &rho_t), &yy))
}
