//! Weakly coupled spin systems and their named presets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::nmr::product_op::{ProductOp, SpinOp};

/// A weakly coupled spin-1/2 system. Spins are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinSystem {
    pub name: String,
    pub labels: Vec<String>,
    /// Larmor (or offset) frequencies, Hz.
    pub larmor_hz: Vec<f64>,
    /// Symmetric scalar-coupling matrix with zero diagonal, Hz.
    pub j_coupling_hz: Vec<Vec<f64>>,
    /// Gyromagnetic ratios relative to the first spin.
    pub gamma_rel: Vec<f64>,
}

/// A JSON file holding several named systems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinConfig {
    pub schema: u32,
    pub systems: Vec<SpinSystem>,
}

impl SpinSystem {
    pub fn n_spins(&self) -> usize {
        self.larmor_hz.len()
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.j_coupling_hz[i][j]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_spins();
        let bad = |msg: String| Err(Error::InvalidArgument(format!("spin system `{}`: {msg}", self.name)));
        if n == 0 || n > 10 {
            return bad(format!("{n} spins is outside 1..=10"));
        }
        if self.labels.len() != n || self.gamma_rel.len() != n || self.j_coupling_hz.len() != n {
            return bad("labels, gamma_rel and j_coupling_hz must have one entry per spin".into());
        }
        for (i, row) in self.j_coupling_hz.iter().enumerate() {
            if row.len() != n {
                return bad(format!("coupling row {} has {} entries", i + 1, row.len()));
            }
            if row[i] != 0.0 {
                return bad(format!("coupling diagonal at spin {} is nonzero", i + 1));
            }
            for (j, &value) in row.iter().enumerate() {
                if value != self.j_coupling_hz[j][i] {
                    return bad(format!("coupling ({}, {}) is not symmetric", i + 1, j + 1));
                }
            }
        }
        if self.gamma_rel[0] == 0.0 {
            return bad("first gyromagnetic ratio must be nonzero".into());
        }
        Ok(())
    }

    /// Three-spin ¹H–¹⁹F–¹³C system (spin 0 is the proton ancilla).
    pub fn chfbr2() -> Self {
        let (hf, hc, fc) = (49.7, 224.5, -310.9);
        Self {
            name: "chfbr2-3spin".into(),
            labels: vec!["1H".into(), "19F".into(), "13C".into()],
            larmor_hz: vec![500e6, 470e6, 125e6],
            j_coupling_hz: vec![vec![0.0, hf, hc], vec![hf, 0.0, fc], vec![hc, fc, 0.0]],
            gamma_rel: vec![1.0, 0.94, 0.25],
        }
    }

    /// Four ¹³C spins of labelled crotonic acid (spin 0 is the ancilla).
    ///
    /// Ideal-pulse simulation does not depend on these couplings; they only
    /// set the coupling-evolution delay lengths.
    pub fn crotonic() -> Self {
        let j = [
            [0.0, 72.4, 1.2, 7.0],
            [72.4, 0.0, 69.7, 1.4],
            [1.2, 69.7, 0.0, 41.6],
            [7.0, 1.4, 41.6, 0.0],
        ];
        let base = 125.76e6;
        let shifts_ppm = [172.0, 122.0, 146.0, 18.0];
        Self {
            name: "crotonic-4spin".into(),
            labels: vec!["C1".into(), "C2".into(), "C3".into(), "C4".into()],
            larmor_hz: shifts_ppm.iter().map(|s| base * (1.0 + s * 1e-6)).collect(),
            j_coupling_hz: j.iter().map(|row| row.to_vec()).collect(),
            gamma_rel: vec![1.0; 4],
        }
    }

    pub fn presets() -> Vec<SpinSystem> {
        vec![Self::chfbr2(), Self::crotonic()]
    }

    pub fn preset(name: &str) -> Result<SpinSystem> {
        Self::presets()
            .into_iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }
}

impl SpinConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SpinConfig = serde_json::from_str(text)?;
        if config.schema != 1 {
            return Err(Error::InvalidArgument(format!(
                "unsupported spin config schema {}",
                config.schema
            )));
        }
        config.systems.iter().try_for_each(SpinSystem::validate)?;
        Ok(config)
    }

    pub fn find(&self, name: &str) -> Result<SpinSystem> {
        self.systems
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }
}

/// `H = Σ ν_i I_z^i + Σ_{i<j} J_ij I_z^i I_z^j`, in Hz.
pub fn spin_hamiltonian(sys: &SpinSystem) -> CMat {
    let n = sys.n_spins();
    let mut terms: Vec<ProductOp> = (0..n)
        .map(|i| ProductOp::single(sys.larmor_hz[i], i, SpinOp::Z))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            terms.push(ProductOp::new(sys.coupling(i, j), vec![(i, SpinOp::Z), (j, SpinOp::Z)]));
        }
    }
    ProductOp::realize_sum(&terms, n)
}

/// Traceless equilibrium deviation `Σ (γ_i/γ_0) I_z^i`.
pub fn equilibrium_rho(sys: &SpinSystem) -> CMat {
    let n = sys.n_spins();
    let lead = sys.gamma_rel[0];
    let terms: Vec<ProductOp> = (0..n)
        .map(|i| ProductOp::single(sys.gamma_rel[i] / lead, i, SpinOp::Z))
        .collect();
    ProductOp::realize_sum(&terms, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::r;

    fn single(nu: f64) -> SpinSystem {
        SpinSystem {
            name: "one".into(),
            labels: vec!["A".into()],
            larmor_hz: vec![nu],
            j_coupling_hz: vec![vec![0.0]],
            gamma_rel: vec![1.0],
        }
    }

    #[test]
    fn single_spin_hamiltonian() {
        let h = spin_hamiltonian(&single(100.0));
        assert_eq!(h, CMat::from_real_rows(&[&[50.0, 0.0], &[0.0, -50.0]]));
        assert_eq!(equilibrium_rho(&single(100.0)), CMat::from_real_rows(&[&[0.5, 0.0], &[0.0, -0.5]]));
    }

    #[test]
    fn pure_zz_coupling() {
        let sys = SpinSystem {
            name: "zz".into(),
            labels: vec!["A".into(), "B".into()],
            larmor_hz: vec![0.0, 0.0],
            j_coupling_hz: vec![vec![0.0, 4.0], vec![4.0, 0.0]],
            gamma_rel: vec![1.0, 1.0],
        };
        let h = spin_hamiltonian(&sys);
        let expected = CMat::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
            &[0.0, 0.0, -1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(h.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn three_spin_levels() {
        let sys = SpinSystem::chfbr2();
        sys.validate().unwrap();
        let h = spin_hamiltonian(&sys);
        for idx in 0..8usize {
            let z: Vec<f64> = (0..3)
                .map(|q| if (idx >> (2 - q)) & 1 == 0 { 0.5 } else { -0.5 })
                .collect();
            let mut e = 0.0;
            for i in 0..3 {
                e += sys.larmor_hz[i] * z[i];
                for j in i + 1..3 {
                    e += sys.coupling(i, j) * z[i] * z[j];
                }
            }
            assert!((h[(idx, idx)].re - e).abs() < 1e-6);
            for col in 0..8 {
                if col != idx {
                    assert_eq!(h[(idx, col)], r(0.0));
                }
            }
        }
        // |000> and |001> differ by ν_C plus the couplings to C.
        let split = h[(0, 0)].re - h[(1, 1)].re;
        assert!((split - (125e6 + (224.5 - 310.9) / 2.0)).abs() < 1e-6);
    }

    #[test]
    fn equilibrium_state_of_three_spin_system() {
        let sys = SpinSystem::chfbr2();
        let rho = equilibrium_rho(&sys);
        let expected = ProductOp::realize_sum(
            &[
                ProductOp::single(1.0, 0, SpinOp::Z),
                ProductOp::single(0.94, 1, SpinOp::Z),
                ProductOp::single(0.25, 2, SpinOp::Z),
            ],
            3,
        );
        assert!(rho.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn equal_gammas_commute_with_hamiltonian() {
        let sys = SpinSystem::crotonic();
        sys.validate().unwrap();
        let rho = equilibrium_rho(&sys);
        let h = spin_hamiltonian(&sys);
        assert!(rho.commutator(&h).frobenius_norm() < 1e-6 * h.max_abs());
    }

    #[test]
    fn presets_and_config() {
        assert_eq!(SpinSystem::preset("chfbr2-3spin").unwrap().n_spins(), 3);
        assert_eq!(SpinSystem::preset("crotonic-4spin").unwrap().n_spins(), 4);
        assert!(matches!(SpinSystem::preset("nope"), Err(Error::UnknownPreset(_))));

        let config = SpinConfig {
            schema: 1,
            systems: SpinSystem::presets(),
        };
        let text = serde_json::to_string(&config).unwrap();
        let back = SpinConfig::from_json(&text).unwrap();
        assert_eq!(back, config);

        let mut broken = SpinSystem::chfbr2();
        broken.j_coupling_hz[0][1] = 1.0;
        assert!(broken.validate().is_err());
    }
}
