//! Random fixtures shared by the integration tests.

#![allow(dead_code)]

use phasedisc::linalg::{c, CMat, CVec, C64};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn gaussian_vec<R: Rng>(rng: &mut R, dim: usize) -> CVec {
    CVec::new(
        (0..dim)
            .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect(),
    )
}

/// Modified Gram-Schmidt on complex Gaussian vectors: a Haar-ish random
/// orthonormal basis of `C^(2^n)`.
pub fn random_orthonormal<R: Rng>(rng: &mut R, n_qubits: usize) -> Vec<CVec> {
    let dim = 1usize << n_qubits;
    let mut basis: Vec<CVec> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = gaussian_vec(rng, dim);
        for b in &basis {
            let overlap = b.inner(&v);
            v = &v - &b.scale(overlap);
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v.scale(C64::new(1.0 / norm, 0.0)));
        }
    }
    basis
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> CMat {
    let mut m = CMat::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = c(rng.sample(StandardNormal), 0.0);
        for j in i + 1..dim {
            let z = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}
