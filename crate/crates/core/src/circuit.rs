//! The phase-estimation discrimination circuit and its exact simulation.
//!
//! Registers are laid out as `[work qubits…, ancilla qubits…]`. Ancillas
//! start in `|0…0>`, receive a Hadamard, control one operator each, receive
//! a second Hadamard and are measured. Measurement is modelled by
//! enumerating every ancilla outcome, not by sampling.

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::gates::{Gate, GateRecord, GateSeq};
use crate::linalg::{r, CMat, CVec, PROBABILITY_TOL};
use crate::synth::{decompose_controlled, DiscriminatorSpec, Family};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 10;

/// Branches below this probability are treated as absent.
const BRANCH_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_work: usize,
    n_ancilla: usize,
    gates: GateSeq,
    /// Controlled section of each ancilla, on the full register. Present only
    /// for circuits in the `H – controlled sections – H` shape.
    sections: Vec<GateSeq>,
}

impl Circuit {
    /// An arbitrary circuit over `n_work + n_ancilla` qubits.
    pub fn new(n_work: usize, n_ancilla: usize, gates: GateSeq) -> Result<Self> {
        let total = n_work + n_ancilla;
        if n_work == 0 || total > MAX_QUBITS {
            return Err(Error::InvalidCircuit(format!(
                "{n_work} work + {n_ancilla} ancilla qubits is outside 1..={MAX_QUBITS}"
            )));
        }
        gates.validate(total)?;
        Ok(Self {
            n_work,
            n_ancilla,
            gates,
            sections: Vec::new(),
        })
    }

    /// A phase-estimation circuit: Hadamards on every ancilla, then
    /// `sections[j]` (controlled by ancilla `j`), then Hadamards again.
    pub fn phase_estimation(n_work: usize, sections: Vec<GateSeq>) -> Result<Self> {
        let n_ancilla = sections.len();
        let ancillas = n_work..n_work + n_ancilla;
        let mut gates: GateSeq = ancillas.clone().map(Gate::H).collect();
        for section in &sections {
            gates.extend(section.clone());
        }
        ancillas.for_each(|a| gates.push(Gate::H(a)));
        let mut circuit = Self::new(n_work, n_ancilla, gates)?;
        circuit.sections = sections;
        Ok(circuit)
    }

    pub fn n_work(&self) -> usize {
        self.n_work
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn n_qubits(&self) -> usize {
        self.n_work + self.n_ancilla
    }

    pub fn gates(&self) -> &GateSeq {
        &self.gates
    }

    pub fn work_qubits(&self) -> Vec<usize> {
        (0..self.n_work).collect()
    }

    pub fn ancilla_qubits(&self) -> Vec<usize> {
        (self.n_work..self.n_qubits()).collect()
    }

    pub fn is_phase_estimation(&self) -> bool {
        !self.sections.is_empty()
    }

    /// Full register unitary.
    pub fn unitary(&self) -> CMat {
        self.gates.unitary(self.n_qubits())
    }

    pub fn to_record(&self) -> CircuitRecord {
        CircuitRecord {
            schema: 1,
            n_work: self.n_work,
            n_ancilla: self.n_ancilla,
            gates: self.gates.iter().map(GateRecord::from).collect(),
        }
    }
}

/// JSON form of a circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitRecord {
    pub schema: u32,
    pub n_work: usize,
    pub n_ancilla: usize,
    pub gates: Vec<GateRecord>,
}

/// `H` on each ancilla, `C-U_j` from ancilla `j` onto the whole work
/// register, `H` on each ancilla.
pub fn build_pea_circuit(spec: &DiscriminatorSpec) -> Circuit {
    let n = spec.n_qubits();
    let work: Vec<usize> = (0..n).collect();
    let sections = spec
        .operators()
        .iter()
        .enumerate()
        .map(|(j, u)| {
            GateSeq::new(vec![Gate::CuBlock {
                control: n + j,
                targets: work.clone(),
                matrix: u.clone(),
            }])
        })
        .collect();
    Circuit::phase_estimation(n, sections).expect("synthesized operators form a valid circuit")
}

/// Same topology as [`build_pea_circuit`] for the Bell/GHZ arrays, with each
/// controlled operator expanded into its CNOT/CZ sequence.
pub fn build_decomposed_circuit(family: Family) -> Result<Circuit> {
    let k = family.work_qubits();
    let sections = (0..family.eigenarrays().n())
        .map(|j| {
            let mut mapping = vec![k + j];
            mapping.extend(0..k);
            decompose_controlled(family, j + 1).map(|seq| seq.remap(&mapping))
        })
        .collect::<Result<Vec<_>>>()?;
    Circuit::phase_estimation(k, sections)
}

/// One single-ancilla circuit per controlled section, each measuring only
/// that section's ancilla.
pub fn split_single_ancilla(c: &Circuit) -> Result<Vec<Circuit>> {
    if !c.is_phase_estimation() {
        return Err(Error::InvalidCircuit(
            "only phase-estimation circuits can be split".into(),
        ));
    }
    if c.n_ancilla == 1 {
        return Ok(vec![c.clone()]);
    }
    let n_work = c.n_work;
    c.sections
        .iter()
        .enumerate()
        .map(|(j, section)| {
            let mut mapping: Vec<usize> = (0..c.n_qubits()).collect();
            mapping[n_work + j] = n_work;
            Circuit::phase_estimation(n_work, vec![section.remap(&mapping)])
        })
        .collect()
}

/// One ancilla outcome with its probability and the normalized work state
/// it leaves behind.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub ancilla_bits: Vec<u8>,
    pub probability: f64,
    pub post_work_state: CVec,
}

impl MeasurementRecord {
    pub fn bit_string(&self) -> String {
        bits_to_string(&self.ancilla_bits)
    }
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

fn check_work_input(c: &Circuit, input: &CVec) -> Result<()> {
    let expected = 1usize << c.n_work;
    if input.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: input.dim(),
        });
    }
    if !input.is_normalized(1e-10) {
        return Err(Error::InvalidArgument(format!(
            "input state has norm {}",
            input.norm()
        )));
    }
    Ok(())
}

/// Evolves `input ⊗ |0…0>` and returns every ancilla outcome with nonzero
/// probability, ordered by outcome.
pub fn run_statevector(c: &Circuit, input_work: &CVec) -> Result<Vec<MeasurementRecord>> {
    check_work_input(c, input_work)?;
    let n_anc = c.n_ancilla;
    let anc_dim = 1usize << n_anc;
    let work_dim = 1usize << c.n_work;
    let full = input_work.kron(&CVec::basis(anc_dim, 0));
    let out = c.gates.apply_to(&full, c.n_qubits());

    let mut records = Vec::new();
    for outcome in 0..anc_dim {
        let branch = CVec::new((0..work_dim).map(|w| out[w * anc_dim + outcome]).collect());
        let probability = branch.norm_sqr();
        if probability <= BRANCH_CUTOFF {
            continue;
        }
        records.push(MeasurementRecord {
            ancilla_bits: (0..n_anc)
                .map(|j| ((outcome >> (n_anc - 1 - j)) & 1) as u8)
                .collect(),
            probability,
            post_work_state: branch.scale(r(1.0 / probability.sqrt())),
        });
    }
    Ok(records)
}

/// `U·(ρ ⊗ |0…0><0…0|)·U†` on the full register.
pub fn run_density(c: &Circuit, rho_work: &DensityMatrix) -> Result<DensityMatrix> {
    let expected = 1usize << c.n_work;
    if rho_work.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: rho_work.dim(),
        });
    }
    let ancilla = DensityMatrix::from_pure(&CVec::basis(1 << c.n_ancilla, 0));
    let rho = rho_work.tensor(&ancilla).into_matrix();
    let n = c.n_qubits();
    // U ρ U† = (U (U ρ)†)†, applying the gates column by column.
    let left = apply_to_columns(&c.gates, &rho, n).adjoint();
    let both = apply_to_columns(&c.gates, &left, n).adjoint();
    Ok(DensityMatrix::from_matrix_unchecked(both))
}

fn apply_to_columns(gates: &GateSeq, m: &CMat, n_qubits: usize) -> CMat {
    let columns: Vec<CVec> = (0..m.cols())
        .map(|j| gates.apply_to(&m.column(j), n_qubits))
        .collect();
    CMat::from_columns(&columns)
}

/// Reduced state of the work register after [`run_density`].
pub fn reduced_work(c: &Circuit, rho: &DensityMatrix) -> DensityMatrix {
    rho.partial_trace_keep(&c.work_qubits())
}

/// Outcome distribution of the ancillas after [`run_density`].
pub fn ancilla_marginal(c: &Circuit, rho: &DensityMatrix) -> Vec<f64> {
    rho.partial_trace_keep(&c.ancilla_qubits()).probabilities()
}

/// Result of discriminating one member state.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrimination {
    /// 0-based position of the identified state in the set.
    pub index: usize,
    pub bits: Vec<u8>,
    pub probability: f64,
    pub post_state: CVec,
}

/// Runs the discrimination circuit on a member state and identifies it.
///
/// Fails with `NotAMember` unless one outcome occurs with probability at
/// least `1 − 1e-9`.
pub fn discriminate(spec: &DiscriminatorSpec, input_work: &CVec) -> Result<Discrimination> {
    let circuit = build_pea_circuit(spec);
    let records = run_statevector(&circuit, input_work)?;
    let best = records
        .into_iter()
        .max_by(|a, b| a.probability.total_cmp(&b.probability))
        .expect("at least one branch has nonzero probability");
    if best.probability < 1.0 - PROBABILITY_TOL {
        return Err(Error::NotAMember {
            best_probability: best.probability,
        });
    }
    let index = spec
        .eigen()
        .index_of_bits(&best.ancilla_bits)
        .expect("signature map is a bijection");
    Ok(Discrimination {
        index,
        bits: best.ancilla_bits,
        probability: best.probability,
        post_state: best.post_work_state,
    })
}

/// `|<a|b>|²`.
pub fn state_fidelity(a: &CVec, b: &CVec) -> f64 {
    a.inner(b).norm_sqr()
}
