//! End-to-end checks of the NMR realization against the ideal gates.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::circuit::{bits_to_string, reduced_work, run_density, Circuit};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::gates::{Gate, GateSeq};
use crate::linalg::{expm_i, phase_aligned_distance, CMat, PROPAGATOR_TOL, UNITARY_TOL};
use crate::nmr::product_op::{effective_hamiltonian, EffectiveHamiltonian};
use crate::nmr::pulses::{compile_pulses, PulseSeq};
use crate::nmr::sequences::{ancilla_readout, ghz_controlled_sequence, two_qubit_controlled_sequence};
use crate::nmr::spin::SpinSystem;
use crate::orthoset::{family_s, ghz_set};
use crate::synth::{canonical_eigenarrays, controlled_embed, ghz3_eigenarrays, DiscriminatorSpec};

/// Expected ancilla bits for the four two-qubit states, in input order.
pub const TABLE_TWO_QUBIT: [&str; 4] = ["00", "01", "10", "11"];
/// Expected ancilla bits for the eight GHZ states, in input order.
pub const TABLE_GHZ: [&str; 8] = ["011", "100", "000", "111", "001", "110", "010", "101"];

const COMMUTATION_TOL: f64 = 1e-12;
const FIDELITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NmrCheck {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl NmrCheck {
    fn new(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }
}

/// Readout of one input state through the pulse-compiled circuits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NmrRow {
    pub input_index: usize,
    /// One character per ancilla experiment; `?` for an indeterminate peak.
    pub bits: String,
    pub expected: String,
    /// Smallest work-state fidelity with the input over the experiments.
    pub fidelity: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NmrReport {
    pub schema: u32,
    pub system: String,
    pub n_spins: usize,
    pub checks: Vec<NmrCheck>,
    pub rows: Vec<NmrRow>,
    pub pass: bool,
}

pub fn verify_preset(name: &str) -> Result<NmrReport> {
    verify_system(&SpinSystem::preset(name)?)
}

/// Three spins run the two-qubit checks, four spins the GHZ checks.
pub fn verify_system(sys: &SpinSystem) -> Result<NmrReport> {
    sys.validate()?;
    let (checks, rows) = match sys.n_spins() {
        3 => verify_two_qubit(sys)?,
        4 => verify_ghz(sys)?,
        n => {
            return Err(Error::InvalidArgument(format!(
                "no built-in sequences for {n} spins (need 3 or 4)"
            )))
        }
    };
    let pass = checks.iter().all(|c| c.pass) && rows.iter().all(|r| r.pass);
    Ok(NmrReport {
        schema: 1,
        system: sys.name.clone(),
        n_spins: sys.n_spins(),
        checks,
        rows,
        pass,
    })
}

fn verify_two_qubit(sys: &SpinSystem) -> Result<(Vec<NmrCheck>, Vec<NmrRow>)> {
    let spec = DiscriminatorSpec::new(family_s(FRAC_1_SQRT_2, FRAC_1_SQRT_2)?, canonical_eigenarrays(2))?;
    let mut checks = Vec::new();
    let mut propagators = Vec::new();
    for (j, which) in [EffectiveHamiltonian::H1, EffectiveHamiltonian::H2].into_iter().enumerate() {
        let label = format!("H{}", j + 1);
        let mats: Vec<CMat> = which.terms().iter().map(|t| t.realize(3)).collect();
        let worst = mats
            .iter()
            .flat_map(|a| mats.iter().map(move |b| a.commutator(b).frobenius_norm()))
            .fold(0.0, f64::max);
        checks.push(NmrCheck::new(format!("{label} terms commute"), worst, COMMUTATION_TOL));

        let exp_h = expm_i(&effective_hamiltonian(which))?;
        let embedded = controlled_embed(&spec.operators()[j])?;
        checks.push(NmrCheck::new(
            format!("exp(i{label}) = C-U{}", j + 1),
            phase_aligned_distance(&exp_h, &embedded),
            PROPAGATOR_TOL,
        ));

        let compiled = compile_pulses(&two_qubit_controlled_sequence(j + 1)?, sys)?;
        checks.push(NmrCheck::new(
            format!("pulses C-U{} unitary", j + 1),
            compiled.unitarity_error(),
            UNITARY_TOL,
        ));
        checks.push(NmrCheck::new(
            format!("pulses C-U{} = exp(i{label})", j + 1),
            phase_aligned_distance(&compiled, &exp_h),
            PROPAGATOR_TOL,
        ));
        propagators.push(compiled);
    }
    let rows = readout_rows(&spec, &propagators, &TABLE_TWO_QUBIT)?;
    Ok((checks, rows))
}

fn verify_ghz(sys: &SpinSystem) -> Result<(Vec<NmrCheck>, Vec<NmrRow>)> {
    let spec = DiscriminatorSpec::new(ghz_set(3)?, ghz3_eigenarrays())?;
    let mut checks = Vec::new();
    let mut propagators = Vec::new();
    for j in 1..=3 {
        let compiled = compile_pulses(&ghz_controlled_sequence(j)?, sys)?;
        checks.push(NmrCheck::new(
            format!("pulses C-U{j} unitary"),
            compiled.unitarity_error(),
            UNITARY_TOL,
        ));
        let embedded = controlled_embed(&spec.operators()[j - 1])?;
        checks.push(NmrCheck::new(
            format!("pulses C-U{j} = C-U{j}"),
            phase_aligned_distance(&compiled, &embedded),
            PROPAGATOR_TOL,
        ));
        propagators.push(compiled);
    }
    let rows = readout_rows(&spec, &propagators, &TABLE_GHZ)?;
    Ok((checks, rows))
}

/// One single-ancilla experiment per propagator: `H`, the compiled
/// `C-U_j` (ancilla spin 0 placed on the last qubit), `H`.
pub fn single_ancilla_circuit(n_work: usize, propagator: &CMat) -> Result<Circuit> {
    let ancilla = n_work;
    let mut targets = vec![ancilla];
    targets.extend(0..n_work);
    let gates = GateSeq::new(vec![
        Gate::H(ancilla),
        Gate::Unitary {
            targets,
            matrix: propagator.clone(),
        },
        Gate::H(ancilla),
    ]);
    Circuit::new(n_work, 1, gates)
}

fn readout_rows(spec: &DiscriminatorSpec, propagators: &[CMat], table: &[&str]) -> Result<Vec<NmrRow>> {
    let n_work = spec.n_qubits();
    let circuits: Vec<Circuit> = propagators
        .iter()
        .map(|u| single_ancilla_circuit(n_work, u))
        .collect::<Result<_>>()?;
    spec.ortho()
        .states()
        .iter()
        .zip(table)
        .enumerate()
        .map(|(i, (state, expected))| {
            let rho_in = DensityMatrix::from_pure(state);
            let mut bits = String::new();
            let mut fidelity = f64::INFINITY;
            for c in &circuits {
                let rho = run_density(c, &rho_in)?;
                bits.push(match ancilla_readout(&rho, n_work).bit() {
                    Some(b) => char::from(b'0' + b),
                    None => '?',
                });
                fidelity = fidelity.min(reduced_work(c, &rho).fidelity_with_pure(state));
            }
            let pass = bits == *expected && fidelity >= 1.0 - FIDELITY_TOL;
            Ok(NmrRow {
                input_index: i + 1,
                bits,
                expected: expected.to_string(),
                fidelity,
                pass,
            })
        })
        .collect()
}

/// Spectrum-free shorthand: the ancilla bits read from each experiment.
pub fn readout_bits(rho_per_experiment: &[DensityMatrix], ancilla_spin: usize) -> Option<String> {
    let bits: Option<Vec<u8>> = rho_per_experiment
        .iter()
        .map(|rho| ancilla_readout(rho, ancilla_spin).bit())
        .collect();
    bits.map(|b| bits_to_string(&b))
}

/// Sequence text for the named built-in controlled operator, e.g. for
/// printing. `family` is `two-qubit` or `ghz`.
pub fn builtin_sequence(family: &str, j: usize) -> Result<PulseSeq> {
    match family {
        "two-qubit" => two_qubit_controlled_sequence(j),
        "ghz" => ghz_controlled_sequence(j),
        other => Err(Error::InvalidArgument(format!("unknown sequence family `{other}`"))),
    }
}
