//! Non-destructive discrimination of orthogonal quantum states by phase
//! estimation.
//!
//! Given `2^n` orthonormal `n`-qubit states, [`synth`] builds `n` operators
//! whose `±1` eigenvalues encode each state as a distinct ancilla bit string,
//! [`circuit`] runs the resulting phase-estimation circuit exactly, and
//! [`nmr`] rebuilds the same controlled operators from spin Hamiltonians
//! and ideal pulse sequences.
//!
//! Qubit 0 is the most significant bit of every basis index.

pub mod circuit;
pub mod density;
pub mod error;
pub mod gates;
pub mod io;
pub mod linalg;
pub mod nmr;
pub mod orthoset;
pub mod synth;

pub use circuit::{
    build_decomposed_circuit, build_pea_circuit, discriminate, run_density, run_statevector,
    split_single_ancilla, state_fidelity, Circuit, Discrimination, MeasurementRecord,
};
pub use density::{deviation_metrics, DensityMatrix, DeviationMetrics};
pub use error::{Error, Result};
pub use gates::{Gate, GateSeq};
pub use linalg::{equal_up_to_global_phase, expm_i, is_unitary, kron, CMat, CVec, C64};
pub use orthoset::{bell_set, family_s, ghz_set, make_ortho_set, single_qubit_family, OrthoSet};
pub use synth::{
    canonical_eigenarrays, controlled_embed, decompose_controlled, synth_operator, theta_from,
    validate_eigenarrays, DiscriminatorSpec, EigenArraySet, Family,
};
