use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Deserialize;
use serde_json::json;

use phasedisc::circuit::{build_pea_circuit, run_density, run_statevector, split_single_ancilla, state_fidelity};
use phasedisc::io::{self, TomographyDump};
use phasedisc::linalg::{CMat, CVec};
use phasedisc::nmr::{self, compile_pulses, PulseSeq, SpinConfig, SpinSystem};
use phasedisc::orthoset::{family_s, ghz_set, single_qubit_family};
use phasedisc::synth::{bell_eigenarrays, canonical_eigenarrays, ghz3_eigenarrays};
use phasedisc::{deviation_metrics, Circuit, DensityMatrix, DiscriminatorSpec, EigenArraySet, Error, GateSeq, OrthoSet};

use crate::report::{CliError, Row, RunReport, SpecSummary};

pub type CliResult<T> = std::result::Result<T, CliError>;

const TABLE_TWO_QUBIT: &str = include_str!("../data/table_two_qubit.json");
const TABLE_GHZ3: &str = include_str!("../data/table_ghz3.json");

const MEMBER_TOL: f64 = 1e-9;

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", text.trim_end()).and_then(|()| out.flush()) {
                // A closed pipe (e.g. `| head`) is not an error for the run.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                }),
                _ => Ok(()),
            }
        }
    }
}

/// `bell`, `ghz<k>`, `family-s`, `single` or `hadamard`.
pub fn preset_states(name: &str, alpha: f64, beta: f64) -> CliResult<OrthoSet> {
    let set = match name {
        "bell" => ghz_set(2)?,
        "family-s" => family_s(alpha, beta)?,
        "single" => single_qubit_family(alpha, beta)?,
        "hadamard" => single_qubit_family(FRAC_1_SQRT_2, FRAC_1_SQRT_2)?,
        other => match other.strip_prefix("ghz").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) => ghz_set(k)?,
            None => return Err(Error::UnknownPreset(other.to_string()).into()),
        },
    };
    Ok(set)
}

/// `canonical`, `bell`, `ghz3` or a JSON file.
pub fn load_arrays(source: &str, n_qubits: usize) -> CliResult<EigenArraySet> {
    let arrays = match source {
        "canonical" => canonical_eigenarrays(n_qubits),
        "bell" => bell_eigenarrays(),
        "ghz3" => ghz3_eigenarrays(),
        path => io::arrays_from_json(&read_file(Path::new(path))?)?,
    };
    Ok(arrays)
}

pub struct SynthArgs<'a> {
    pub preset: Option<&'a str>,
    pub states: Option<&'a Path>,
    pub alpha: f64,
    pub beta: f64,
    pub arrays: &'a str,
}

pub fn synth(args: &SynthArgs) -> CliResult<String> {
    let ortho = match (args.preset, args.states) {
        (Some(name), None) => preset_states(name, args.alpha, args.beta)?,
        (None, Some(path)) => io::ortho_set_from_json(&read_file(path)?)?,
        _ => return Err(CliError::Usage("give exactly one of --preset or --states".into())),
    };
    let eigen = load_arrays(args.arrays, ortho.n_qubits())?;
    let spec = DiscriminatorSpec::new(ortho, eigen)?;
    Ok(io::spec_to_json(&spec))
}

#[derive(Deserialize)]
struct TableDoc {
    schema: u32,
    rows: Vec<String>,
}

/// `tableI`, `tableII` or a JSON file with a `rows` list.
pub fn load_table(source: &str) -> CliResult<Vec<String>> {
    let text = match source {
        "tableI" => TABLE_TWO_QUBIT.to_string(),
        "tableII" => TABLE_GHZ3.to_string(),
        path => read_file(Path::new(path))?,
    };
    let doc: TableDoc = serde_json::from_str(&text).map_err(Error::from)?;
    if doc.schema != io::SCHEMA {
        return Err(Error::InvalidSpec(format!("unsupported table schema {}", doc.schema)).into());
    }
    Ok(doc.rows)
}

pub fn load_spec(path: &Path) -> CliResult<DiscriminatorSpec> {
    Ok(io::spec_from_json(&read_file(path)?)?)
}

/// Member states for `all`, otherwise the states in a JSON file.
pub fn load_inputs(spec: &DiscriminatorSpec, source: &str) -> CliResult<Vec<CVec>> {
    if source == "all" {
        return Ok(spec.ortho().states().to_vec());
    }
    let states = io::states_from_json(&read_file(Path::new(source))?)?;
    let dim = spec.ortho().dim();
    for s in &states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            }
            .into());
        }
        if !s.is_normalized(1e-10) {
            return Err(Error::InvalidArgument(format!("input state has norm {}", s.norm())).into());
        }
    }
    Ok(states)
}

pub fn discriminate(spec: &DiscriminatorSpec, inputs: &[CVec], expect: Option<&str>) -> CliResult<RunReport> {
    let table = expect.map(load_table).transpose()?;
    let circuit = build_pea_circuit(spec);
    let mut rows = Vec::with_capacity(inputs.len());
    for (i, input) in inputs.iter().enumerate() {
        let records = run_statevector(&circuit, input)?;
        let best = records
            .iter()
            .max_by(|a, b| a.probability.total_cmp(&b.probability))
            .expect("some outcome has nonzero probability");
        let bits = best.bit_string();
        let fidelity = state_fidelity(input, &best.post_work_state);
        let expected = table.as_ref().map(|t| t.get(i).cloned().unwrap_or_default());
        let verdict = if best.probability < 1.0 - MEMBER_TOL {
            "NotAMember"
        } else if fidelity < 1.0 - MEMBER_TOL {
            "fail"
        } else {
            match &expected {
                Some(e) if *e != bits => "fail",
                _ => "pass",
            }
        };
        rows.push(Row {
            input_index: i + 1,
            bits,
            probability: best.probability,
            fidelity,
            verdict: verdict.to_string(),
            expected,
        });
    }
    let summary = SpecSummary {
        n_qubits: spec.n_qubits(),
        arrays: spec.eigen().arrays().to_vec(),
    };
    Ok(RunReport::new("discriminate", summary, expect.map(str::to_string), rows))
}

pub fn nmr_verify(preset: &str, config: Option<&Path>) -> CliResult<nmr::NmrReport> {
    let system = match config {
        Some(path) => SpinConfig::from_json(&read_file(path)?)?.find(preset)?,
        None => SpinSystem::preset(preset)?,
    };
    Ok(nmr::verify_system(&system)?)
}

/// Which circuit the tomography run goes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TomoCircuit {
    Joint,
    Split,
    Identity,
}

fn member_index(spec: &DiscriminatorSpec, state: &CVec) -> Option<usize> {
    spec.ortho()
        .states()
        .iter()
        .position(|m| state_fidelity(m, state) >= 1.0 - MEMBER_TOL)
}

/// Reorders a register state so the ancillas come first.
fn ancilla_first(c: &Circuit, rho: &DensityMatrix) -> DensityMatrix {
    let mut order = c.ancilla_qubits();
    order.extend(c.work_qubits());
    rho.partial_trace_keep(&order)
}

fn qubit_labels(c: &Circuit, first_ancilla: usize) -> Vec<String> {
    let mut labels: Vec<String> = (0..c.n_ancilla())
        .map(|j| format!("ancilla{}", first_ancilla + j + 1))
        .collect();
    labels.extend((0..c.n_work()).map(|w| format!("work{}", w + 1)));
    labels
}

/// `|b><b| ⊗ |ψ><ψ|` in ancilla-first order.
fn ideal_state(bits: &[u8], state: &CVec) -> CMat {
    let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
    CVec::basis(1 << bits.len(), index).kron(state).projector()
}

pub fn tomo(spec: &DiscriminatorSpec, input: &CVec, which: TomoCircuit) -> CliResult<serde_json::Value> {
    let index = match which {
        TomoCircuit::Identity => None,
        _ => Some(member_index(spec, input).ok_or_else(|| {
            let best = spec
                .ortho()
                .states()
                .iter()
                .map(|m| state_fidelity(m, input))
                .fold(0.0, f64::max);
            Error::NotAMember {
                best_probability: best,
            }
        })?),
    };
    let n = spec.n_qubits();
    let circuits: Vec<Circuit> = match which {
        TomoCircuit::Joint => vec![build_pea_circuit(spec)],
        TomoCircuit::Split => split_single_ancilla(&build_pea_circuit(spec))?,
        TomoCircuit::Identity => vec![Circuit::new(n, n, GateSeq::default())?],
    };
    let rho_in = DensityMatrix::from_pure(input);
    let mut dumps = Vec::with_capacity(circuits.len());
    for (k, c) in circuits.iter().enumerate() {
        let zero_anc = DensityMatrix::from_pure(&CVec::basis(1 << c.n_ancilla(), 0));
        let initial = ancilla_first(c, &rho_in.tensor(&zero_anc));
        let final_state = ancilla_first(c, &run_density(c, &rho_in)?);
        let (label, first_ancilla, ideal) = match (which, index) {
            (TomoCircuit::Joint, Some(i)) => ("joint".to_string(), 0, ideal_state(&spec.eigen().bits(i), input)),
            (TomoCircuit::Split, Some(i)) => (
                format!("experiment {}", k + 1),
                k,
                ideal_state(&spec.eigen().bits(i)[k..=k], input),
            ),
            _ => ("identity".to_string(), 0, initial.matrix().clone()),
        };
        let metrics = deviation_metrics(&ideal, final_state.matrix())?;
        dumps.push(TomographyDump::new(
            label,
            qubit_labels(c, first_ancilla),
            &initial,
            &final_state,
            &ideal,
            metrics,
        ));
    }
    Ok(json!({
        "schema": io::SCHEMA,
        "input_index": index.map(|i| i + 1),
        "dumps": dumps,
    }))
}

/// Picks the input of a tomography run: a 1-based member index or the
/// first state in a JSON file.
pub fn tomo_input(spec: &DiscriminatorSpec, member: Option<usize>, state: Option<&Path>) -> CliResult<CVec> {
    match (member, state) {
        (Some(i), None) => spec
            .ortho()
            .states()
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("member {i} is outside 1..={}", spec.ortho().len()))),
        (None, Some(path)) => {
            let mut states = io::states_from_json(&read_file(path)?)?;
            if states.is_empty() {
                return Err(CliError::Usage("state file is empty".into()));
            }
            let s = states.swap_remove(0);
            if s.dim() != spec.ortho().dim() || !s.is_normalized(1e-10) {
                return Err(Error::InvalidArgument("input state has the wrong dimension or norm".into()).into());
            }
            Ok(s)
        }
        _ => Err(CliError::Usage("give exactly one of --member or --state".into())),
    }
}

pub struct PulsesArgs<'a> {
    pub builtin: Option<&'a str>,
    pub operator: usize,
    pub file: Option<&'a Path>,
    pub preset: Option<&'a str>,
}

pub fn pulses(args: &PulsesArgs) -> CliResult<serde_json::Value> {
    let (seq, default_preset) = match (args.builtin, args.file) {
        (Some(family), None) => {
            let seq = nmr::verify::builtin_sequence(family, args.operator)?;
            let preset = if family == "ghz" { "crotonic-4spin" } else { "chfbr2-3spin" };
            (seq, preset)
        }
        (None, Some(path)) => (PulseSeq::parse(&read_file(path)?)?, "chfbr2-3spin"),
        _ => return Err(CliError::Usage("give exactly one of --builtin or --file".into())),
    };
    let system = SpinSystem::preset(args.preset.unwrap_or(default_preset))?;
    let propagator = compile_pulses(&seq, &system)?;
    Ok(json!({
        "schema": io::SCHEMA,
        "system": system.name,
        "text": seq.to_text(),
        "elements": seq.len(),
        "total_delay_seconds": seq.total_delay_seconds(&system)?,
        "unitarity_error": propagator.unitarity_error(),
        "propagator": io::mat_to_entries(&propagator),
    }))
}
