//! Density matrices, partial traces and tomography-style deviation metrics.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec, C64};

const DENSITY_TOL: f64 = 1e-10;

/// A validated density matrix on `n` qubits: unit trace, Hermitian and
/// positive semidefinite, each within `1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: CMat,
}

impl DensityMatrix {
    pub fn new(matrix: CMat) -> Result<Self> {
        if !matrix.is_square() || !matrix.rows().is_power_of_two() {
            return Err(Error::InvalidDensity(format!(
                "shape {}x{} is not a 2^n square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace is {trace}")));
        }
        let herm = matrix.hermiticity_error();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let n = matrix.rows();
        let m = DMatrix::from_row_slice(n, n, matrix.as_slice());
        let sym = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let min_eig = sym.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self::from_matrix_unchecked(matrix))
    }

    /// Wraps a matrix known to be a valid state (e.g. a unitary image of one).
    pub(crate) fn from_matrix_unchecked(matrix: CMat) -> Self {
        Self {
            n_qubits: matrix.rows().trailing_zeros() as usize,
            matrix,
        }
    }

    /// `|ψ><ψ|` for a normalized `ψ`.
    pub fn from_pure(state: &CVec) -> Self {
        assert!(state.dim().is_power_of_two(), "state dimension must be a power of two");
        Self::from_matrix_unchecked(state.projector())
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Self::from_matrix_unchecked(CMat::identity(d).scale(C64::new(1.0 / d as f64, 0.0)))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    /// `ρ ⊗ σ`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self::from_matrix_unchecked(self.matrix.kron(&other.matrix))
    }

    /// `Tr(ρ·op)`.
    pub fn expectation(&self, op: &CMat) -> C64 {
        (&self.matrix * op).trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Diagonal of `ρ`: computational-basis probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// Reduced state on `keep` (0-based qubits, in the given order).
    pub fn partial_trace_keep(&self, keep: &[usize]) -> DensityMatrix {
        let n = self.n_qubits;
        assert!(keep.iter().all(|&q| q < n), "qubit out of range");
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let compose = |kept_bits: usize, traced_bits: usize| -> usize {
            let mut idx = 0usize;
            for (pos, &q) in keep.iter().enumerate() {
                if kept_bits >> (keep.len() - 1 - pos) & 1 == 1 {
                    idx |= 1 << (n - 1 - q);
                }
            }
            for (pos, &q) in traced.iter().enumerate() {
                if traced_bits >> (traced.len() - 1 - pos) & 1 == 1 {
                    idx |= 1 << (n - 1 - q);
                }
            }
            idx
        };
        let dk = 1usize << keep.len();
        let dt = 1usize << traced.len();
        let mut out = CMat::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                out[(a, b)] = (0..dt)
                    .map(|t| self.matrix[(compose(a, t), compose(b, t))])
                    .sum();
            }
        }
        Self::from_matrix_unchecked(out)
    }

    /// Fidelity `<ψ|ρ|ψ>` with a pure state.
    pub fn fidelity_with_pure(&self, state: &CVec) -> f64 {
        state.inner(&self.matrix.apply(state)).re
    }
}

/// Average and maximum absolute entrywise deviation between two matrices,
/// as percentages of the largest entry magnitude of `ideal`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviationMetrics {
    pub avg_abs_dev: f64,
    pub max_abs_dev: f64,
}

pub fn deviation_metrics(ideal: &CMat, observed: &CMat) -> Result<DeviationMetrics> {
    if (ideal.rows(), ideal.cols()) != (observed.rows(), observed.cols()) {
        return Err(Error::DimensionMismatch {
            expected: ideal.rows(),
            found: observed.rows(),
        });
    }
    let scale = ideal.max_abs();
    if scale == 0.0 {
        return Err(Error::InvalidArgument("ideal matrix is zero".into()));
    }
    let devs: Vec<f64> = ideal
        .as_slice()
        .iter()
        .zip(observed.as_slice())
        .map(|(a, b)| (a - b).norm())
        .collect();
    let avg = devs.iter().sum::<f64>() / devs.len() as f64;
    let max = devs.iter().copied().fold(0.0, f64::max);
    Ok(DeviationMetrics {
        avg_abs_dev: 100.0 * avg / scale,
        max_abs_dev: 100.0 * max / scale,
    })
}
