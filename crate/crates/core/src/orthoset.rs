//! Ordered orthonormal state sets and the families used as worked examples:
//! single-qubit sets, the two-qubit `S(α, β)` family, Bell and GHZ states.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{r, CMat, CVec, UNITARY_TOL};

/// An ordered set of `2^n` orthonormal `n`-qubit states together with the
/// matrix `V` whose `i`-th column is `states[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoSet {
    n_qubits: usize,
    states: Vec<CVec>,
    v_matrix: CMat,
}

impl OrthoSet {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert-space dimension, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[CVec] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &CVec {
        &self.states[i]
    }

    pub fn v_matrix(&self) -> &CMat {
        &self.v_matrix
    }
}

/// Validates `vectors` and assembles `V` column-wise in input order.
///
/// The list must hold `2^n` vectors of dimension `2^n` for some `n ≥ 1`, and
/// every Gram entry must match the identity within [`UNITARY_TOL`].
pub fn make_ortho_set(vectors: Vec<CVec>) -> Result<OrthoSet> {
    let count = vectors.len();
    let dim = vectors.first().map_or(0, CVec::dim);
    if count < 2 || !count.is_power_of_two() || vectors.iter().any(|v| v.dim() != count) {
        let dim = vectors.iter().map(CVec::dim).find(|&d| d != count).unwrap_or(dim);
        return Err(Error::BadCardinality { count, dim });
    }
    for i in 0..count {
        for j in i..count {
            let overlap = vectors[i].inner(&vectors[j]);
            let expected = if i == j { 1.0 } else { 0.0 };
            if (overlap - r(expected)).norm() > UNITARY_TOL {
                return Err(Error::NotOrthonormal {
                    pair: (i, j),
                    overlap: overlap.norm(),
                });
            }
        }
    }
    let v_matrix = CMat::from_columns(&vectors);
    Ok(OrthoSet {
        n_qubits: count.trailing_zeros() as usize,
        states: vectors,
        v_matrix,
    })
}

fn check_amplitudes(alpha: f64, beta: f64) -> Result<()> {
    if !alpha.is_finite() || !beta.is_finite() || (alpha * alpha + beta * beta - 1.0).abs() > UNITARY_TOL {
        return Err(Error::NotNormalized { alpha, beta });
    }
    Ok(())
}

/// `{α|0> + β|1>, β|0> − α|1>}` for real `α, β` with `α² + β² = 1`.
pub fn single_qubit_family(alpha: f64, beta: f64) -> Result<OrthoSet> {
    check_amplitudes(alpha, beta)?;
    make_ortho_set(vec![
        CVec::from_real(&[alpha, beta]),
        CVec::from_real(&[beta, -alpha]),
    ])
}

/// The two-qubit product family `S(α, β)`, in order
/// `α|00>+β|01>, α|10>+β|11>, β|10>−α|11>, β|00>−α|01>`.
pub fn family_s(alpha: f64, beta: f64) -> Result<OrthoSet> {
    check_amplitudes(alpha, beta)?;
    make_ortho_set(vec![
        CVec::from_real(&[alpha, beta, 0.0, 0.0]),
        CVec::from_real(&[0.0, 0.0, alpha, beta]),
        CVec::from_real(&[0.0, 0.0, beta, -alpha]),
        CVec::from_real(&[beta, -alpha, 0.0, 0.0]),
    ])
}

/// The four Bell states: `(|00>+|11>)`, `(|00>−|11>)`, `(|01>+|10>)`,
/// `(|01>−|10>)`, each over `√2`.
pub fn bell_set() -> OrthoSet {
    ghz_set(2).expect("two-qubit GHZ set is valid")
}

/// The `2^k` GHZ-type states `(|x> ± |x̄>)/√2`.
///
/// Flip classes are taken in ascending order of their smaller label `x`
/// (the member with a leading 0), with the `+` state before the `−` state.
pub fn ghz_set(k: usize) -> Result<OrthoSet> {
    if !(2..=10).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "GHZ sets need between 2 and 10 qubits, got {k}"
        )));
    }
    let dim = 1usize << k;
    let mask = dim - 1;
    let mut states = Vec::with_capacity(dim);
    for x in 0..dim / 2 {
        for sign in [1.0, -1.0] {
            let mut v = CVec::zeros(dim);
            v[x] = r(FRAC_1_SQRT_2);
            v[x ^ mask] = r(sign * FRAC_1_SQRT_2);
            states.push(v);
        }
    }
    make_ortho_set(states)
}
