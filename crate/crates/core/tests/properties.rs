mod common;

use phasedisc::circuit::{build_pea_circuit, run_statevector, state_fidelity};
use phasedisc::linalg::{expm_i, kron, r, CMat};
use phasedisc::nmr::pulses::{compile_on, three_spin_cascade, two_spin_sandwich, PulseSeq};
use phasedisc::orthoset::{family_s, make_ortho_set};
use phasedisc::synth::{canonical_eigenarrays, reflection, synth_operator, theta_from, DiscriminatorSpec};
use phasedisc::DensityMatrix;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), da in 1usize..3, db in 1usize..3, dc in 1usize..3) {
        let mut g = rng(seed);
        let a = common::random_hermitian(&mut g, da);
        let b = common::random_hermitian(&mut g, db);
        let c = common::random_hermitian(&mut g, dc);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn exponential_inverts(seed in any::<u64>(), dim in 1usize..9) {
        let h = common::random_hermitian(&mut rng(seed), dim);
        let u = expm_i(&h).unwrap();
        let v = expm_i(&h.scale(r(-1.0))).unwrap();
        prop_assert!((&u * &v).max_abs_diff(&CMat::identity(dim)) < 1e-9);
        prop_assert!(u.unitarity_error() < 1e-10);
    }

    #[test]
    fn commuting_exponentials_factor(seed in any::<u64>(), s in -2.0f64..2.0) {
        // Polynomials in one Hermitian matrix commute with it.
        let a = common::random_hermitian(&mut rng(seed), 4);
        let b = &a.scale(r(s)) + &(&a * &a).scale(r(0.1));
        let whole = expm_i(&(&a + &b)).unwrap();
        let split = &expm_i(&a).unwrap() * &expm_i(&b).unwrap();
        prop_assert!(whole.max_abs_diff(&split) < 1e-8);
    }

    #[test]
    fn random_sets_give_reflections(seed in any::<u64>(), n in 1usize..4) {
        let set = make_ortho_set(common::random_orthonormal(&mut rng(seed), n)).unwrap();
        let arrays = canonical_eigenarrays(n);
        for array in arrays.arrays() {
            let u = synth_operator(&set, array);
            let id = CMat::identity(set.dim());
            prop_assert!(u.unitarity_error() < 1e-10);
            prop_assert!(u.hermiticity_error() < 1e-10);
            prop_assert!((&u * &u).max_abs_diff(&id) < 1e-10);
        }
    }

    #[test]
    fn members_are_identified_and_preserved(seed in any::<u64>(), n in 1usize..4) {
        let states = common::random_orthonormal(&mut rng(seed), n);
        let spec = DiscriminatorSpec::new(make_ortho_set(states.clone()).unwrap(), canonical_eigenarrays(n)).unwrap();
        let circuit = build_pea_circuit(&spec);
        for (i, state) in states.iter().enumerate() {
            let records = run_statevector(&circuit, state).unwrap();
            prop_assert_eq!(records.len(), 1);
            prop_assert_eq!(&records[0].ancilla_bits, &spec.eigen().bits(i));
            prop_assert!(state_fidelity(state, &records[0].post_work_state) > 1.0 - 1e-9);
        }
    }

    #[test]
    fn family_operators_vary_continuously(phi in 0.0f64..std::f64::consts::FRAC_PI_2, dphi in 1e-7f64..1e-5) {
        let ops = |phi: f64| {
            let (b, a) = phi.sin_cos();
            DiscriminatorSpec::new(family_s(a, b).unwrap(), canonical_eigenarrays(2)).unwrap()
        };
        let (u, v) = (ops(phi), ops(phi + dphi));
        for (x, y) in u.operators().iter().zip(v.operators()) {
            // |dR/dθ| = 1 and θ = 2φ.
            prop_assert!(x.max_abs_diff(y) <= 2.0 * dphi + 1e-12);
        }
        let (b, a) = phi.sin_cos();
        prop_assert!((theta_from(a, b) - 2.0 * phi).abs() < 1e-12);
        prop_assert!(reflection(2.0 * phi).max_abs_diff(&reflection(theta_from(a, b))) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_returns_factors(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = common::random_orthonormal(&mut g, 1).remove(0);
        let b = common::random_orthonormal(&mut g, 2).remove(1);
        let rho = DensityMatrix::from_pure(&a.kron(&b));
        prop_assert!(rho.partial_trace_keep(&[0]).matrix().max_abs_diff(&a.projector()) < 1e-12);
        prop_assert!(rho.partial_trace_keep(&[1, 2]).matrix().max_abs_diff(&b.projector()) < 1e-12);
    }

    #[test]
    fn pulse_text_round_trips(theta in -7.0f64..7.0, i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let k = 3 - i - j;
        let seq = two_spin_sandwich(i, j, theta).then(three_spin_cascade(i, j, k, theta));
        let back = PulseSeq::parse(&seq.to_text()).unwrap();
        prop_assert_eq!(back.len(), seq.len());
        let (u, v) = (compile_on(&seq, 3).unwrap(), compile_on(&back, 3).unwrap());
        prop_assert!(u.max_abs_diff(&v) < 1e-12);
        prop_assert!(u.unitarity_error() < 1e-10);
    }
}
