//! Gate primitives and a dense statevector kernel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_unitary, CMat, CVec, C64, UNITARY_TOL};

/// A gate on a register of qubits (0-based, qubit 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot { control: usize, target: usize },
    /// Controlled-Z: phase −1 on `|11>` of the two qubits. Symmetric.
    Cz(usize, usize),
    /// `matrix` applied to `targets` (first target most significant) when
    /// `control` is `|1>`.
    CuBlock {
        control: usize,
        targets: Vec<usize>,
        matrix: CMat,
    },
    /// Uncontrolled `matrix` applied to `targets`.
    Unitary { targets: Vec<usize>, matrix: CMat },
}

impl Gate {
    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::CuBlock { control, targets, .. } => {
                std::iter::once(*control).chain(targets.iter().copied()).collect()
            }
            Gate::Unitary { targets, .. } => targets.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Cnot { .. } => "cnot",
            Gate::Cz(..) => "cz",
            Gate::CuBlock { .. } => "cu",
            Gate::Unitary { .. } => "unitary",
        }
    }

    /// Checks bounds, distinctness and block unitarity.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if let Some(q) = qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::InvalidCircuit(format!(
                "{} gate uses qubit {q} on a {n_qubits}-qubit register",
                self.name()
            )));
        }
        for (i, a) in qubits.iter().enumerate() {
            if qubits[i + 1..].contains(a) {
                return Err(Error::InvalidCircuit(format!(
                    "{} gate repeats qubit {a}",
                    self.name()
                )));
            }
        }
        if let Gate::CuBlock { targets, matrix, .. } | Gate::Unitary { targets, matrix } = self {
            let dim = 1usize << targets.len();
            if targets.is_empty() || matrix.rows() != dim || matrix.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: matrix.rows(),
                });
            }
            if !is_unitary(matrix, UNITARY_TOL) {
                return Err(Error::NotUnitary {
                    deviation: matrix.unitarity_error(),
                });
            }
        }
        Ok(())
    }

    /// Relabels qubit `q` as `mapping[q]`.
    pub fn remap(&self, mapping: &[usize]) -> Gate {
        let m = |q: &usize| mapping[*q];
        match self {
            Gate::H(q) => Gate::H(m(q)),
            Gate::X(q) => Gate::X(m(q)),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: m(control),
                target: m(target),
            },
            Gate::Cz(a, b) => Gate::Cz(m(a), m(b)),
            Gate::CuBlock {
                control,
                targets,
                matrix,
            } => Gate::CuBlock {
                control: m(control),
                targets: targets.iter().map(m).collect(),
                matrix: matrix.clone(),
            },
            Gate::Unitary { targets, matrix } => Gate::Unitary {
                targets: targets.iter().map(m).collect(),
                matrix: matrix.clone(),
            },
        }
    }

    fn as_controlled_matrix(&self) -> (Vec<usize>, Vec<usize>, CMat) {
        match self {
            Gate::H(q) => (vec![], vec![*q], CMat::hadamard()),
            Gate::X(q) => (vec![], vec![*q], CMat::pauli_x()),
            Gate::Cnot { control, target } => (vec![*control], vec![*target], CMat::pauli_x()),
            Gate::Cz(a, b) => (vec![*a], vec![*b], CMat::pauli_z()),
            Gate::CuBlock {
                control,
                targets,
                matrix,
            } => (vec![*control], targets.clone(), matrix.clone()),
            Gate::Unitary { targets, matrix } => (vec![], targets.clone(), matrix.clone()),
        }
    }

    /// Applies the gate in place to a `2^n_qubits` amplitude vector.
    pub fn apply(&self, amplitudes: &mut [C64], n_qubits: usize) {
        let (controls, targets, matrix) = self.as_controlled_matrix();
        apply_controlled(amplitudes, n_qubits, &controls, &targets, &matrix);
    }
}

#[inline]
fn bit(n_qubits: usize, q: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

/// Applies `matrix` to `targets` on every basis slice where all `controls`
/// are set.
pub fn apply_controlled(
    amplitudes: &mut [C64],
    n_qubits: usize,
    controls: &[usize],
    targets: &[usize],
    matrix: &CMat,
) {
    let dim = 1usize << n_qubits;
    assert_eq!(amplitudes.len(), dim, "register size mismatch");
    let k = targets.len();
    let sub = 1usize << k;
    assert_eq!(matrix.rows(), sub, "gate matrix does not match its targets");

    let control_mask: usize = controls.iter().map(|&q| bit(n_qubits, q)).sum();
    let target_mask: usize = targets.iter().map(|&q| bit(n_qubits, q)).sum();
    // offsets[t] is the register index contribution of local target index t.
    let offsets: Vec<usize> = (0..sub)
        .map(|t| {
            targets
                .iter()
                .enumerate()
                .filter(|(j, _)| t & (1 << (k - 1 - j)) != 0)
                .map(|(_, &q)| bit(n_qubits, q))
                .sum()
        })
        .collect();

    let mut gathered = vec![C64::default(); sub];
    for base in 0..dim {
        if base & target_mask != 0 || base & control_mask != control_mask {
            continue;
        }
        for (g, off) in gathered.iter_mut().zip(&offsets) {
            *g = amplitudes[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            amplitudes[base | off] = gathered
                .iter()
                .enumerate()
                .map(|(col, a)| matrix[(row, col)] * a)
                .sum();
        }
    }
}

/// An ordered gate list. Gates apply first to last.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateSeq {
    gates: Vec<Gate>,
}

impl GateSeq {
    pub fn new(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: GateSeq) {
        self.gates.extend(other.gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Gate> {
        self.gates.iter()
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(n_qubits))
    }

    pub fn remap(&self, mapping: &[usize]) -> GateSeq {
        GateSeq::new(self.gates.iter().map(|g| g.remap(mapping)).collect())
    }

    pub fn apply(&self, amplitudes: &mut [C64], n_qubits: usize) {
        for gate in &self.gates {
            gate.apply(amplitudes, n_qubits);
        }
    }

    pub fn apply_to(&self, state: &CVec, n_qubits: usize) -> CVec {
        let mut out = state.clone();
        self.apply(out.as_mut_slice(), n_qubits);
        out
    }

    /// Full `2^n × 2^n` matrix of the sequence.
    pub fn unitary(&self, n_qubits: usize) -> CMat {
        let dim = 1usize << n_qubits;
        let columns: Vec<CVec> = (0..dim)
            .map(|j| self.apply_to(&CVec::basis(dim, j), n_qubits))
            .collect();
        CMat::from_columns(&columns)
    }
}

impl<'a> IntoIterator for &'a GateSeq {
    type Item = &'a Gate;
    type IntoIter = std::slice::Iter<'a, Gate>;
    fn into_iter(self) -> Self::IntoIter {
        self.gates.iter()
    }
}

impl FromIterator<Gate> for GateSeq {
    fn from_iter<T: IntoIterator<Item = Gate>>(iter: T) -> Self {
        GateSeq::new(iter.into_iter().collect())
    }
}

/// Serialized form of a gate, used in circuit JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub gate: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        let matrix = match g {
            Gate::CuBlock { matrix, .. } | Gate::Unitary { matrix, .. } => Some(
                matrix
                    .row_vecs()
                    .into_iter()
                    .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            ),
            _ => None,
        };
        GateRecord {
            gate: g.name().to_string(),
            qubits: g.qubits(),
            matrix,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, kron_all, r};

    #[test]
    fn single_qubit_gate_uses_msb_first_ordering() {
        // X on qubit 0 of |00> gives |10> = index 2.
        let seq = GateSeq::new(vec![Gate::X(0)]);
        assert_eq!(seq.apply_to(&CVec::basis(4, 0), 2), CVec::basis(4, 2));
        let seq = GateSeq::new(vec![Gate::X(1)]);
        assert_eq!(seq.apply_to(&CVec::basis(4, 0), 2), CVec::basis(4, 1));
    }

    #[test]
    fn cnot_matrix() {
        let u = GateSeq::new(vec![Gate::Cnot { control: 0, target: 1 }]).unitary(2);
        let expected = CMat::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        assert_eq!(u, expected);
        let reversed = GateSeq::new(vec![Gate::Cnot { control: 1, target: 0 }]).unitary(2);
        assert_eq!(reversed[(3, 1)], r(1.0));
    }

    #[test]
    fn cz_is_symmetric() {
        let a = GateSeq::new(vec![Gate::Cz(0, 2)]).unitary(3);
        let b = GateSeq::new(vec![Gate::Cz(2, 0)]).unitary(3);
        assert_eq!(a, b);
        assert_eq!(a[(5, 5)], r(-1.0));
        assert_eq!(a[(7, 7)], r(-1.0));
        assert_eq!(a[(6, 6)], r(1.0));
    }

    #[test]
    fn unitary_gate_on_permuted_targets() {
        // A two-qubit matrix on targets [2, 0] of a 3-qubit register.
        let m = kron(&CMat::pauli_z(), &CMat::pauli_x());
        let u = GateSeq::new(vec![Gate::Unitary {
            targets: vec![2, 0],
            matrix: m,
        }])
        .unitary(3);
        let expected = kron_all(&[CMat::pauli_x(), CMat::identity(2), CMat::pauli_z()]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn validate_catches_bad_gates() {
        assert!(Gate::H(3).validate(3).is_err());
        assert!(Gate::Cnot { control: 1, target: 1 }.validate(3).is_err());
        let bad = Gate::CuBlock {
            control: 0,
            targets: vec![1],
            matrix: CMat::identity(2).scale(r(2.0)),
        };
        assert!(matches!(bad.validate(2), Err(Error::NotUnitary { .. })));
        let wrong_dim = Gate::Unitary {
            targets: vec![0, 1],
            matrix: CMat::identity(2),
        };
        assert!(matches!(wrong_dim.validate(2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn remap_moves_qubits() {
        let seq = GateSeq::new(vec![Gate::Cnot { control: 0, target: 1 }, Gate::Cz(1, 2)]);
        let moved = seq.remap(&[3, 0, 1, 2]);
        assert_eq!(
            moved.gates(),
            &[Gate::Cnot { control: 3, target: 0 }, Gate::Cz(0, 1)]
        );
    }
}
