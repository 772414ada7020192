//! Spin-level realization: Hamiltonians, product operators, ideal pulse
//! sequences and peak-sign readout.
//!
//! Simulation runs in the rotating frame with instantaneous pulses, so only
//! the coupling topology matters; Larmor frequencies enter
//! [`spin_hamiltonian`] alone.

pub mod product_op;
pub mod pulses;
pub mod sequences;
pub mod spin;
pub mod verify;

pub use product_op::{effective_hamiltonian, realize_product_op, EffectiveHamiltonian, ProductOp, SpinOp};
pub use pulses::{
    compile_pulses, three_spin_cascade, two_spin_sandwich, two_spin_sandwich_y, Axis, PulseElement, PulseSeq,
};
pub use sequences::{
    ancilla_readout, cnot_pulses, controlled_u1_sequence, controlled_u2_sequence, cz_pulses,
    ghz_controlled_sequence, pulses_for_gates, PeakSign,
};
pub use spin::{equilibrium_rho, spin_hamiltonian, SpinConfig, SpinSystem};
pub use verify::{verify_preset, verify_system, NmrCheck, NmrReport, NmrRow};
