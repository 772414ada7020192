//! Eigenvalue arrays and the synthesis of discrimination operators.
//!
//! Each operator `U_j` has the set states as eigenvectors with eigenvalues
//! `±1` taken from array `j`. Running `H · C-U_j · H` on an ancilla then
//! leaves it in `|0>` for eigenvalue `+1` and in `|1>` for `−1`, so the
//! arrays read column-wise give every state a distinct ancilla bit string.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gates::{Gate, GateSeq};
use crate::linalg::{is_unitary, r, CMat, CVec, PROBABILITY_TOL, UNITARY_TOL};
use crate::orthoset::OrthoSet;

/// Validated eigenvalue arrays: `n` arrays of `2^n` entries in `{+1, −1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenArraySet {
    n: usize,
    arrays: Vec<Vec<i8>>,
}

impl EigenArraySet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrays(&self) -> &[Vec<i8>] {
        &self.arrays
    }

    /// `(e_1^i, …, e_n^i)` for state `i` (0-based).
    pub fn signature(&self, i: usize) -> Vec<i8> {
        self.arrays.iter().map(|a| a[i]).collect()
    }

    /// Ancilla bits expected for state `i`: `+1 → 0`, `−1 → 1`.
    pub fn bits(&self, i: usize) -> Vec<u8> {
        self.arrays.iter().map(|a| eigenvalue_to_bit(a[i])).collect()
    }

    /// Inverse of [`EigenArraySet::bits`].
    pub fn index_of_bits(&self, bits: &[u8]) -> Option<usize> {
        (0..1usize << self.n).find(|&i| self.bits(i) == bits)
    }
}

pub fn eigenvalue_to_bit(e: i8) -> u8 {
    if e > 0 {
        0
    } else {
        1
    }
}

/// Binary-code arrays: `e_j^i = +1` iff bit `j` (most significant first) of
/// `i` is 0. State `i` is then read out as the binary digits of `i`.
pub fn canonical_eigenarrays(n: usize) -> EigenArraySet {
    assert!(n >= 1, "need at least one qubit");
    let dim = 1usize << n;
    let arrays = (0..n)
        .map(|j| {
            (0..dim)
                .map(|i| if (i >> (n - 1 - j)) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect();
    EigenArraySet { n, arrays }
}

/// Checks balance, pairwise distinctness up to complement, and injectivity
/// of the joint signature map, reporting the first violation found.
pub fn validate_eigenarrays(arrays: Vec<Vec<i8>>) -> Result<EigenArraySet> {
    let n = arrays.len();
    if n == 0 || n > 10 {
        return Err(Error::MalformedArrays(format!("expected 1 to 10 arrays, got {n}")));
    }
    let dim = 1usize << n;
    for (j, a) in arrays.iter().enumerate() {
        if a.len() != dim {
            return Err(Error::MalformedArrays(format!(
                "array {} has {} entries, expected {dim}",
                j + 1,
                a.len()
            )));
        }
        if a.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::MalformedArrays(format!(
                "array {} has entries other than +1/-1",
                j + 1
            )));
        }
    }
    for (j, a) in arrays.iter().enumerate() {
        if a.iter().map(|&e| e as i64).sum::<i64>() != 0 {
            return Err(Error::UnbalancedArray(j + 1));
        }
        for (m, b) in arrays[..j].iter().enumerate() {
            let equal = a == b;
            let complement = a.iter().zip(b).all(|(x, y)| *x == -*y);
            if equal || complement {
                return Err(Error::DuplicateOrComplement(j + 1, m + 1));
            }
        }
    }
    let mut seen: HashMap<Vec<i8>, usize> = HashMap::with_capacity(dim);
    for i in 0..dim {
        let sig: Vec<i8> = arrays.iter().map(|a| a[i]).collect();
        if let Some(&first) = seen.get(&sig) {
            return Err(Error::NonInjectiveSignatures(first, i));
        }
        seen.insert(sig, i);
    }
    Ok(EigenArraySet { n, arrays })
}

/// Arrays paired with the Bell-state decompositions: `U_1 = X⊗X`,
/// `U_2 = Y⊗Y`.
pub fn bell_eigenarrays() -> EigenArraySet {
    validate_eigenarrays(vec![vec![1, -1, 1, -1], vec![-1, 1, 1, -1]])
        .expect("Bell arrays are valid")
}

/// Arrays paired with the three-qubit GHZ decompositions:
/// `U_1 = XXX`, `U_2 = XYY`, `U_3 = YXY`.
pub fn ghz3_eigenarrays() -> EigenArraySet {
    validate_eigenarrays(vec![
        vec![1, -1, 1, -1, 1, -1, 1, -1],
        vec![-1, 1, 1, -1, 1, -1, -1, 1],
        vec![-1, 1, 1, -1, -1, 1, 1, -1],
    ])
    .expect("GHZ arrays are valid")
}

/// `U = V · diag(array) · V†`, so that `U φ_i = array[i] φ_i`.
///
/// Panics if `array.len()` differs from the set size.
pub fn synth_operator(ortho: &OrthoSet, array: &[i8]) -> CMat {
    assert_eq!(array.len(), ortho.len(), "eigenvalue array length must match the set");
    let v = ortho.v_matrix();
    let d = ortho.dim();
    let mut out = CMat::zeros(d, d);
    // Σ_i e_i |φ_i><φ_i|, computed without forming diag(array).
    for (k, &e) in array.iter().enumerate() {
        let e = f64::from(e);
        for i in 0..d {
            let vik = v[(i, k)] * e;
            for j in 0..d {
                out[(i, j)] += vik * v[(j, k)].conj();
            }
        }
    }
    out
}

/// Rotation angle of the single-qubit operator: `θ = 2·atan2(β, α)`.
pub fn theta_from(alpha: f64, beta: f64) -> f64 {
    2.0 * beta.atan2(alpha)
}

/// The reflection `[[cos θ, sin θ], [sin θ, −cos θ]]`.
pub fn reflection(theta: f64) -> CMat {
    let (s, c) = theta.sin_cos();
    CMat::from_real_rows(&[&[c, s], &[s, -c]])
}

/// `diag(I_d, u)`: `u` applied when the leading (ancilla) qubit is `|1>`.
pub fn controlled_embed(u: &CMat) -> Result<CMat> {
    if !is_unitary(u, UNITARY_TOL) {
        return Err(Error::NotUnitary {
            deviation: if u.is_square() { u.unitarity_error() } else { f64::INFINITY },
        });
    }
    let d = u.rows();
    let mut out = CMat::identity(2 * d);
    for i in 0..d {
        for j in 0..d {
            out[(d + i, d + j)] = u[(i, j)];
        }
    }
    Ok(out)
}

/// State families with known two-qubit-gate decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bell,
    Ghz,
}

impl Family {
    pub fn work_qubits(self) -> usize {
        match self {
            Family::Bell => 2,
            Family::Ghz => 3,
        }
    }

    pub fn eigenarrays(self) -> EigenArraySet {
        match self {
            Family::Bell => bell_eigenarrays(),
            Family::Ghz => ghz3_eigenarrays(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Bell => "bell",
            Family::Ghz => "ghz",
        })
    }
}

/// CNOT/CZ sequence realizing `C-U_j` (1-based `j`) for the Bell or
/// three-qubit GHZ arrays.
///
/// The register is laid out like [`controlled_embed`]: the ancilla is qubit
/// 0 and work qubit `w` (1-based) is qubit `w`. Use [`GateSeq::remap`] to
/// place it in a larger register.
pub fn decompose_controlled(family: Family, j: usize) -> Result<GateSeq> {
    let k = family.work_qubits();
    let fan_out = || (1..=k).map(|w| Gate::Cnot { control: 0, target: w });
    // The CZ pair that conjugates the fan-out for operators past the first.
    let conjugating_cz = match (family, j) {
        (Family::Bell, 1) | (Family::Ghz, 1) => None,
        (Family::Bell, 2) => Some(Gate::Cz(2, 1)),
        (Family::Ghz, 2) => Some(Gate::Cz(2, 3)),
        (Family::Ghz, 3) => Some(Gate::Cz(1, 3)),
        _ => {
            return Err(Error::UnsupportedFamily {
                family: family.to_string(),
                index: j,
            })
        }
    };
    let mut seq = GateSeq::default();
    if let Some(cz) = &conjugating_cz {
        seq.push(cz.clone());
    }
    fan_out().for_each(|g| seq.push(g));
    if let Some(cz) = conjugating_cz {
        seq.push(cz);
    }
    Ok(seq)
}

/// A complete discriminator: the state set, its eigenvalue arrays and the
/// synthesized operators `U_1 … U_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminatorSpec {
    ortho: OrthoSet,
    eigen: EigenArraySet,
    operators: Vec<CMat>,
}

impl DiscriminatorSpec {
    /// Synthesizes one operator per array.
    pub fn new(ortho: OrthoSet, eigen: EigenArraySet) -> Result<Self> {
        check_sizes(&ortho, &eigen)?;
        let operators = eigen
            .arrays()
            .iter()
            .map(|a| synth_operator(&ortho, a))
            .collect();
        Self::from_parts(ortho, eigen, operators)
    }

    /// Assembles a spec from stored operators, re-checking unitarity and the
    /// eigen-equation.
    pub fn from_parts(ortho: OrthoSet, eigen: EigenArraySet, operators: Vec<CMat>) -> Result<Self> {
        check_sizes(&ortho, &eigen)?;
        if operators.len() != eigen.n() {
            return Err(Error::InvalidSpec(format!(
                "{} operators for {} eigenvalue arrays",
                operators.len(),
                eigen.n()
            )));
        }
        let spec = Self {
            ortho,
            eigen,
            operators,
        };
        for (j, u) in spec.operators.iter().enumerate() {
            if u.rows() != spec.ortho.dim() || !u.is_square() {
                return Err(Error::DimensionMismatch {
                    expected: spec.ortho.dim(),
                    found: u.rows(),
                });
            }
            if !is_unitary(u, UNITARY_TOL) {
                return Err(Error::NotUnitary {
                    deviation: u.unitarity_error(),
                });
            }
            let residual = spec.eigen_residual_for(j);
            if residual > PROBABILITY_TOL {
                return Err(Error::InvalidSpec(format!(
                    "operator {} violates its eigen-equation by {residual:.3e}",
                    j + 1
                )));
            }
        }
        Ok(spec)
    }

    pub fn ortho(&self) -> &OrthoSet {
        &self.ortho
    }

    pub fn eigen(&self) -> &EigenArraySet {
        &self.eigen
    }

    pub fn operators(&self) -> &[CMat] {
        &self.operators
    }

    pub fn n_qubits(&self) -> usize {
        self.ortho.n_qubits()
    }

    fn eigen_residual_for(&self, j: usize) -> f64 {
        let u = &self.operators[j];
        let array = &self.eigen.arrays()[j];
        self.ortho
            .states()
            .iter()
            .zip(array)
            .map(|(phi, &e)| u.apply(phi).max_abs_diff(&phi.scale(r(f64::from(e)))))
            .fold(0.0, f64::max)
    }

    /// `max_{i,j} |U_j φ_i − e_j^i φ_i|`.
    pub fn eigen_residual(&self) -> f64 {
        (0..self.operators.len())
            .map(|j| self.eigen_residual_for(j))
            .fold(0.0, f64::max)
    }

    /// The set member whose expected bits are `bits`, if any.
    pub fn member_for_bits(&self, bits: &[u8]) -> Option<(usize, &CVec)> {
        self.eigen
            .index_of_bits(bits)
            .map(|i| (i, self.ortho.state(i)))
    }
}

fn check_sizes(ortho: &OrthoSet, eigen: &EigenArraySet) -> Result<()> {
    if ortho.n_qubits() != eigen.n() {
        return Err(Error::DimensionMismatch {
            expected: ortho.n_qubits(),
            found: eigen.n(),
        });
    }
    Ok(())
}
