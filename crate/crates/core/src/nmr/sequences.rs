//! Built-in pulse sequences for the controlled operators and the peak-sign
//! ancilla readout.
//!
//! Every sequence here works on a register with the ancilla at spin 0 and
//! work qubit `w` (1-based) at spin `w`, the layout of
//! [`controlled_embed`](crate::synth::controlled_embed).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::gates::{Gate, GateSeq};
use crate::nmr::product_op::{ProductOp, SpinOp};
use crate::nmr::pulses::{three_spin_cascade, two_spin_sandwich, Axis, PulseElement, PulseSeq};
use crate::synth::{decompose_controlled, Family};

const THREE_QUARTER_TURN: f64 = 3.0 * FRAC_PI_2;

fn rf(spin: usize, angle: f64, axis: Axis) -> PulseElement {
    PulseElement::Rf { spin, angle, axis }
}

fn zrot(spin: usize, angle: f64) -> PulseElement {
    PulseElement::ZRotation { spin, angle }
}

/// `C-U_1` on `[ancilla, work 1, work 2]`, one factor of `exp(i H_1)` at a
/// time: `(π/2)` z rotation of the ancilla, `(π/2)_x` on spin 2, then the
/// `I_z^0 I_x^2` coupling sandwich.
pub fn controlled_u1_sequence() -> PulseSeq {
    PulseSeq::new(vec![zrot(0, FRAC_PI_2), rf(2, FRAC_PI_2, Axis::X)])
        .then(two_spin_sandwich(0, 2, THREE_QUARTER_TURN))
}

/// `C-U_2` on `[ancilla, work 1, work 2]`, from the factors of `exp(i H_2)`.
pub fn controlled_u2_sequence() -> PulseSeq {
    PulseSeq::new(vec![zrot(0, FRAC_PI_2)])
        .then(two_spin_sandwich(1, 2, FRAC_PI_2))
        .then(three_spin_cascade(0, 1, 2, THREE_QUARTER_TURN))
}

/// CNOT up to global phase: `exp(iπ |1><1|_c ⊗ |−><−|_t)` split into its
/// commuting factors.
pub fn cnot_pulses(control: usize, target: usize) -> PulseSeq {
    PulseSeq::new(vec![zrot(control, FRAC_PI_2), rf(target, FRAC_PI_2, Axis::X)])
        .then(two_spin_sandwich(control, target, THREE_QUARTER_TURN))
}

/// CZ up to global phase.
pub fn cz_pulses(a: usize, b: usize) -> PulseSeq {
    PulseSeq::new(vec![
        zrot(a, FRAC_PI_2),
        zrot(b, FRAC_PI_2),
        PulseElement::CouplingDelay {
            i: a,
            j: b,
            angle: THREE_QUARTER_TURN,
        },
    ])
}

/// Translates a gate list into pulses, gate by gate. Equal to the gate
/// product up to global phase.
pub fn pulses_for_gates(gates: &GateSeq) -> Result<PulseSeq> {
    let mut seq = PulseSeq::default();
    for gate in gates.iter() {
        let part = match *gate {
            // (π)_x (π/2)_y = −i·H
            Gate::H(q) => PulseSeq::new(vec![rf(q, FRAC_PI_2, Axis::Y), rf(q, PI, Axis::X)]),
            Gate::X(q) => PulseSeq::new(vec![rf(q, PI, Axis::X)]),
            Gate::Cnot { control, target } => cnot_pulses(control, target),
            Gate::Cz(a, b) => cz_pulses(a, b),
            ref other => {
                return Err(Error::InvalidCircuit(format!(
                    "no pulse translation for {} gates",
                    other.name()
                )))
            }
        };
        seq = seq.then(part);
    }
    Ok(seq)
}

/// `C-U_j` (1-based) for the GHZ discriminator on `[ancilla, work 1..3]`,
/// translated from its CNOT/CZ decomposition.
pub fn ghz_controlled_sequence(j: usize) -> Result<PulseSeq> {
    pulses_for_gates(&decompose_controlled(Family::Ghz, j)?)
}

/// `C-U_j` (1-based) for the two-qubit discriminator.
pub fn two_qubit_controlled_sequence(j: usize) -> Result<PulseSeq> {
    match j {
        1 => Ok(controlled_u1_sequence()),
        2 => Ok(controlled_u2_sequence()),
        _ => Err(Error::UnsupportedFamily {
            family: "two-qubit".into(),
            index: j,
        }),
    }
}

/// Sign of the ancilla line in the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeakSign {
    Positive,
    Negative,
    Indeterminate,
}

impl PeakSign {
    /// Positive reads as `|0>`, negative as `|1>`.
    pub fn bit(self) -> Option<u8> {
        match self {
            PeakSign::Positive => Some(0),
            PeakSign::Negative => Some(1),
            PeakSign::Indeterminate => None,
        }
    }
}

const READOUT_THRESHOLD: f64 = 1e-6;

/// `Tr(ρ I_z)` of one spin.
pub fn ancilla_polarization(rho: &DensityMatrix, ancilla_spin: usize) -> f64 {
    let iz = ProductOp::single(1.0, ancilla_spin, SpinOp::Z).realize(rho.n_qubits());
    rho.expectation(&iz).re
}

pub fn ancilla_readout(rho: &DensityMatrix, ancilla_spin: usize) -> PeakSign {
    let m = ancilla_polarization(rho, ancilla_spin);
    if m > READOUT_THRESHOLD {
        PeakSign::Positive
    } else if m < -READOUT_THRESHOLD {
        PeakSign::Negative
    } else {
        PeakSign::Indeterminate
    }
}
