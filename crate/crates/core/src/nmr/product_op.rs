//! Product operators `c · I_α^i I_β^j …` and the effective Hamiltonians of
//! the two-qubit controlled operators.

use std::f64::consts::PI;

use crate::linalg::{kron_all, r, CMat};

/// Single-spin factor. `I_α = σ_α / 2`; `E` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinOp {
    E,
    X,
    Y,
    Z,
}

impl SpinOp {
    pub fn matrix(self) -> CMat {
        match self {
            SpinOp::E => CMat::identity(2),
            SpinOp::X => CMat::pauli_x().scale(r(0.5)),
            SpinOp::Y => CMat::pauli_y().scale(r(0.5)),
            SpinOp::Z => CMat::pauli_z().scale(r(0.5)),
        }
    }
}

/// `coeff · Π factors`, with identity on every spin not listed.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductOp {
    pub coeff: f64,
    pub factors: Vec<(usize, SpinOp)>,
}

impl ProductOp {
    pub fn new(coeff: f64, factors: Vec<(usize, SpinOp)>) -> Self {
        Self { coeff, factors }
    }

    pub fn identity(coeff: f64) -> Self {
        Self::new(coeff, Vec::new())
    }

    pub fn single(coeff: f64, spin: usize, op: SpinOp) -> Self {
        Self::new(coeff, vec![(spin, op)])
    }

    /// Highest spin index used, plus one.
    pub fn span(&self) -> usize {
        self.factors.iter().map(|(s, _)| s + 1).max().unwrap_or(0)
    }

    pub fn realize(&self, n_spins: usize) -> CMat {
        realize_product_op(self, n_spins)
    }

    pub fn realize_sum(terms: &[ProductOp], n_spins: usize) -> CMat {
        let d = 1usize << n_spins;
        terms
            .iter()
            .fold(CMat::zeros(d, d), |acc, t| &acc + &t.realize(n_spins))
    }
}

/// Dense matrix of a product operator on `n_spins` spins.
///
/// Panics if a factor names a spin outside the register or a spin twice.
pub fn realize_product_op(term: &ProductOp, n_spins: usize) -> CMat {
    assert!(term.span() <= n_spins, "product operator uses a spin beyond the register");
    let mut ops = vec![SpinOp::E; n_spins];
    for &(spin, op) in &term.factors {
        assert_eq!(ops[spin], SpinOp::E, "spin {spin} appears twice in a product operator");
        ops[spin] = op;
    }
    let mats: Vec<CMat> = ops.into_iter().map(SpinOp::matrix).collect();
    kron_all(&mats).scale(r(term.coeff))
}

/// The two effective Hamiltonians with `C-U_j = exp(i H_j)` on the
/// three-spin register `[ancilla, work 1, work 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffectiveHamiltonian {
    H1,
    H2,
}

impl EffectiveHamiltonian {
    /// The four mutually commuting terms.
    ///
    /// `H1 = π/4 − (π/2) I_z^a − (π/2) I_x^2 + π I_z^a I_x^2` and
    /// `H2 = π/4 − (π/2) I_z^a − π I_z^1 I_x^2 + 2π I_z^a I_z^1 I_x^2`, with
    /// `a = 0` the ancilla and work spins 1, 2.
    pub fn terms(self) -> Vec<ProductOp> {
        use SpinOp::{X, Z};
        match self {
            EffectiveHamiltonian::H1 => vec![
                ProductOp::identity(PI / 4.0),
                ProductOp::single(-PI / 2.0, 0, Z),
                ProductOp::single(-PI / 2.0, 2, X),
                ProductOp::new(PI, vec![(0, Z), (2, X)]),
            ],
            EffectiveHamiltonian::H2 => vec![
                ProductOp::identity(PI / 4.0),
                ProductOp::single(-PI / 2.0, 0, Z),
                ProductOp::new(-PI, vec![(1, Z), (2, X)]),
                ProductOp::new(2.0 * PI, vec![(0, Z), (1, Z), (2, X)]),
            ],
        }
    }
}

pub fn effective_hamiltonian(which: EffectiveHamiltonian) -> CMat {
    ProductOp::realize_sum(&which.terms(), 3)
}
