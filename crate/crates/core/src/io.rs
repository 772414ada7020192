//! JSON forms of state sets, eigenvalue arrays, discriminator specs,
//! measurement records and density-matrix dumps.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row lists.
//! Top-level documents carry `"schema": 1`.

use serde::{Deserialize, Serialize};

use crate::circuit::MeasurementRecord;
use crate::density::{DensityMatrix, DeviationMetrics};
use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec, C64};
use crate::orthoset::{make_ortho_set, OrthoSet};
use crate::synth::{validate_eigenarrays, DiscriminatorSpec, EigenArraySet};

pub const SCHEMA: u32 = 1;

pub type Entry = [f64; 2];

pub fn vec_to_entries(v: &CVec) -> Vec<Entry> {
    v.as_slice().iter().map(|z| [z.re, z.im]).collect()
}

pub fn entries_to_vec(entries: &[Entry]) -> CVec {
    CVec::new(entries.iter().map(|&[re, im]| C64::new(re, im)).collect())
}

pub fn mat_to_entries(m: &CMat) -> Vec<Vec<Entry>> {
    m.row_vecs()
        .into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn entries_to_mat(rows: &[Vec<Entry>]) -> Result<CMat> {
    let width = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            found: bad.len(),
        });
    }
    Ok(CMat::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect(),
    ))
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA {
        return Err(Error::InvalidSpec(format!("unsupported schema {schema}")));
    }
    Ok(())
}

/// A state set is either a bare list of states or `{"schema": 1, "states": …}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum StatesDoc {
    Bare(Vec<Vec<Entry>>),
    Wrapped { schema: u32, states: Vec<Vec<Entry>> },
}

#[derive(Serialize)]
struct StatesOut<'a> {
    schema: u32,
    states: &'a [Vec<Entry>],
}

pub fn states_from_json(text: &str) -> Result<Vec<CVec>> {
    let states = match serde_json::from_str::<StatesDoc>(text)? {
        StatesDoc::Bare(s) => s,
        StatesDoc::Wrapped { schema, states } => {
            check_schema(schema)?;
            states
        }
    };
    Ok(states.iter().map(|s| entries_to_vec(s)).collect())
}

pub fn states_to_json(states: &[CVec]) -> String {
    let entries: Vec<Vec<Entry>> = states.iter().map(vec_to_entries).collect();
    serde_json::to_string_pretty(&StatesOut {
        schema: SCHEMA,
        states: &entries,
    })
    .expect("plain data serializes")
}

/// Parses and validates an orthonormal state set.
pub fn ortho_set_from_json(text: &str) -> Result<OrthoSet> {
    make_ortho_set(states_from_json(text)?)
}

/// Eigenvalue arrays: a bare list of `±1` lists or `{"schema": 1, "arrays": …}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum ArraysDoc {
    Bare(Vec<Vec<i8>>),
    Wrapped { schema: u32, arrays: Vec<Vec<i8>> },
}

pub fn arrays_from_json(text: &str) -> Result<EigenArraySet> {
    let arrays = match serde_json::from_str::<ArraysDoc>(text)? {
        ArraysDoc::Bare(a) => a,
        ArraysDoc::Wrapped { schema, arrays } => {
            check_schema(schema)?;
            arrays
        }
    };
    validate_eigenarrays(arrays)
}

/// Serialized [`DiscriminatorSpec`]. `operators` may be omitted on input,
/// in which case they are synthesized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub schema: u32,
    pub n_qubits: usize,
    pub states: Vec<Vec<Entry>>,
    pub arrays: Vec<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<Vec<Vec<Entry>>>>,
}

impl From<&DiscriminatorSpec> for SpecRecord {
    fn from(spec: &DiscriminatorSpec) -> Self {
        SpecRecord {
            schema: SCHEMA,
            n_qubits: spec.n_qubits(),
            states: spec.ortho().states().iter().map(vec_to_entries).collect(),
            arrays: spec.eigen().arrays().to_vec(),
            operators: Some(spec.operators().iter().map(mat_to_entries).collect()),
        }
    }
}

impl SpecRecord {
    pub fn into_spec(self) -> Result<DiscriminatorSpec> {
        check_schema(self.schema)?;
        let ortho = make_ortho_set(self.states.iter().map(|s| entries_to_vec(s)).collect())?;
        if ortho.n_qubits() != self.n_qubits {
            return Err(Error::InvalidSpec(format!(
                "n_qubits is {} but the states have {} qubits",
                self.n_qubits,
                ortho.n_qubits()
            )));
        }
        let eigen = validate_eigenarrays(self.arrays)?;
        match self.operators {
            None => DiscriminatorSpec::new(ortho, eigen),
            Some(ops) => {
                let ops = ops.iter().map(|m| entries_to_mat(m)).collect::<Result<Vec<_>>>()?;
                DiscriminatorSpec::from_parts(ortho, eigen, ops)
            }
        }
    }
}

pub fn spec_to_json(spec: &DiscriminatorSpec) -> String {
    serde_json::to_string_pretty(&SpecRecord::from(spec)).expect("plain data serializes")
}

pub fn spec_from_json(text: &str) -> Result<DiscriminatorSpec> {
    serde_json::from_str::<SpecRecord>(text)?.into_spec()
}

/// One ancilla outcome as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementJson {
    pub bits: String,
    pub probability: f64,
    pub post_state: Vec<Entry>,
}

impl From<&MeasurementRecord> for MeasurementJson {
    fn from(m: &MeasurementRecord) -> Self {
        MeasurementJson {
            bits: m.bit_string(),
            probability: m.probability,
            post_state: vec_to_entries(&m.post_work_state),
        }
    }
}

/// A basis state's 1-based index and its ket, e.g. `1 → |000>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub index: usize,
    pub ket: String,
}

pub fn basis_labels(n_qubits: usize) -> Vec<BasisLabel> {
    (0..1usize << n_qubits)
        .map(|i| BasisLabel {
            index: i + 1,
            ket: format!("|{:0width$b}>", i, width = n_qubits),
        })
        .collect()
}

/// Real and imaginary parts of a density matrix as row grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityDump {
    pub real: Vec<Vec<f64>>,
    pub imag: Vec<Vec<f64>>,
}

impl DensityDump {
    pub fn from_matrix(m: &CMat) -> Self {
        let rows = m.row_vecs();
        DensityDump {
            real: rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            imag: rows.iter().map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        let rows: Vec<Vec<Entry>> = self
            .real
            .iter()
            .zip(&self.imag)
            .map(|(re, im)| re.iter().zip(im).map(|(&a, &b)| [a, b]).collect())
            .collect();
        if self.real.len() != self.imag.len() {
            return Err(Error::DimensionMismatch {
                expected: self.real.len(),
                found: self.imag.len(),
            });
        }
        entries_to_mat(&rows)
    }
}

/// Initial and final register states of one run, with the qubit order the
/// basis kets are written in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyDump {
    pub schema: u32,
    pub label: String,
    pub qubit_order: Vec<String>,
    pub basis: Vec<BasisLabel>,
    pub initial: DensityDump,
    #[serde(rename = "final")]
    pub final_state: DensityDump,
    pub ideal_final: DensityDump,
    pub metrics: DeviationMetrics,
}

impl TomographyDump {
    pub fn new(
        label: impl Into<String>,
        qubit_order: Vec<String>,
        initial: &DensityMatrix,
        final_state: &DensityMatrix,
        ideal_final: &CMat,
        metrics: DeviationMetrics,
    ) -> Self {
        TomographyDump {
            schema: SCHEMA,
            label: label.into(),
            basis: basis_labels(qubit_order.len()),
            qubit_order,
            initial: DensityDump::from_matrix(initial.matrix()),
            final_state: DensityDump::from_matrix(final_state.matrix()),
            ideal_final: DensityDump::from_matrix(ideal_final),
            metrics,
        }
    }
}
