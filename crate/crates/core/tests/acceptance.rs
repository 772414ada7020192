//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Expected values are written out literally here (ancilla tables, Pauli
//! strings, reflection matrices) rather than taken from the library.

mod common;

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use phasedisc::circuit::{
    build_decomposed_circuit, build_pea_circuit, discriminate, run_density, run_statevector, split_single_ancilla,
    state_fidelity, Circuit,
};
use phasedisc::density::{deviation_metrics, DensityMatrix};
use phasedisc::gates::{Gate, GateSeq};
use phasedisc::linalg::{c, equal_up_to_global_phase, expm_i, kron, kron_all, r, CMat, CVec};
use phasedisc::nmr::{effective_hamiltonian, EffectiveHamiltonian};
use phasedisc::orthoset::{bell_set, family_s, ghz_set, make_ortho_set};
use phasedisc::synth::{
    canonical_eigenarrays, decompose_controlled, synth_operator, validate_eigenarrays, DiscriminatorSpec, Family,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

const TABLE_I: [&str; 4] = ["00", "01", "10", "11"];
const TABLE_II: [&str; 8] = ["011", "100", "000", "111", "001", "110", "010", "101"];

/// Two-qubit arrays of the product family.
fn two_qubit_arrays() -> Vec<Vec<i8>> {
    vec![vec![1, 1, -1, -1], vec![1, -1, 1, -1]]
}

/// Three-qubit GHZ arrays.
fn ghz_arrays() -> Vec<Vec<i8>> {
    vec![
        vec![1, -1, 1, -1, 1, -1, 1, -1],
        vec![-1, 1, 1, -1, 1, -1, -1, 1],
        vec![-1, 1, 1, -1, -1, 1, 1, -1],
    ]
}

fn bell_arrays() -> Vec<Vec<i8>> {
    vec![vec![1, -1, 1, -1], vec![-1, 1, 1, -1]]
}

fn eye() -> CMat {
    CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0]])
}

fn px() -> CMat {
    CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

fn py() -> CMat {
    CMat::from_rows(vec![vec![r(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), r(0.0)]])
}

fn pz() -> CMat {
    CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// `[[cos θ, sin θ], [sin θ, −cos θ]]`, written out.
fn rot(theta: f64) -> CMat {
    CMat::from_real_rows(&[&[theta.cos(), theta.sin()], &[theta.sin(), -theta.cos()]])
}

/// `|0><0| ⊗ I + |1><1| ⊗ u`, built entry by entry.
fn ctrl(u: &CMat) -> CMat {
    let d = u.rows();
    let mut out = CMat::zeros(2 * d, 2 * d);
    for i in 0..d {
        out[(i, i)] = r(1.0);
        for j in 0..d {
            out[(d + i, d + j)] = u[(i, j)];
        }
    }
    out
}

fn table_one_spec() -> DiscriminatorSpec {
    let set = family_s(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
    DiscriminatorSpec::new(set, validate_eigenarrays(two_qubit_arrays()).unwrap()).unwrap()
}

fn table_two_spec() -> DiscriminatorSpec {
    DiscriminatorSpec::new(ghz_set(3).unwrap(), validate_eigenarrays(ghz_arrays()).unwrap()).unwrap()
}

fn bell_spec() -> DiscriminatorSpec {
    DiscriminatorSpec::new(bell_set(), validate_eigenarrays(bell_arrays()).unwrap()).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail.into(),
        }
    } else {
        let shown: Vec<String> = failures.iter().take(5).cloned().collect();
        Outcome {
            pass: false,
            detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")),
        }
    }
}

fn table_reproduction(spec: &DiscriminatorSpec, table: &[&str]) -> Vec<String> {
    let mut failures = Vec::new();
    for (i, state) in spec.ortho().states().iter().enumerate() {
        match discriminate(spec, state) {
            Ok(d) => {
                let bits: String = d.bits.iter().map(|b| char::from(b'0' + b)).collect();
                if bits != table[i] {
                    failures.push(format!("phi{} read {bits}, expected {}", i + 1, table[i]));
                }
                if (d.probability - 1.0).abs() > 1e-9 {
                    failures.push(format!("phi{} probability {}", i + 1, d.probability));
                }
                if d.index != i {
                    failures.push(format!("phi{} identified as member {}", i + 1, d.index + 1));
                }
            }
            Err(e) => failures.push(format!("phi{}: {e}", i + 1)),
        }
    }
    failures
}

fn criterion_1() -> Outcome {
    let failures = table_reproduction(&table_one_spec(), &TABLE_I);
    outcome(failures, "00 01 10 11, probability 1")
}

fn criterion_2() -> Outcome {
    let failures = table_reproduction(&table_two_spec(), &TABLE_II);
    outcome(failures, TABLE_II.join(" "))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 1.0;
    for spec in [table_one_spec(), table_two_spec()] {
        let circuit = build_pea_circuit(&spec);
        for (i, state) in spec.ortho().states().iter().enumerate() {
            let records = run_statevector(&circuit, state).unwrap();
            for rec in &records {
                let f = state_fidelity(state, &rec.post_work_state);
                worst = worst.min(f);
                if f < 1.0 - 1e-9 {
                    failures.push(format!("{}-qubit phi{} fidelity {f}", spec.n_qubits(), i + 1));
                }
            }
            let rho = run_density(&circuit, &DensityMatrix::from_pure(state)).unwrap();
            let work = rho.partial_trace_keep(&circuit.work_qubits());
            let dev = work.matrix().max_abs_diff(&state.projector());
            if dev > 1e-10 {
                failures.push(format!("{}-qubit phi{} reduced state off by {dev:e}", spec.n_qubits(), i + 1));
            }
        }
    }

    // Metric format on synthetic perturbations of a known final state.
    let spec = table_one_spec();
    let circuit = build_pea_circuit(&spec);
    let ideal = run_density(&circuit, &DensityMatrix::from_pure(spec.ortho().state(0)))
        .unwrap()
        .into_matrix();
    let same = deviation_metrics(&ideal, &ideal).unwrap();
    if same.avg_abs_dev != 0.0 || same.max_abs_dev != 0.0 {
        failures.push(format!("self-deviation {same:?}"));
    }
    let scale = ideal.max_abs();
    let mut one_entry = ideal.clone();
    one_entry[(0, 1)] += r(0.05 * scale);
    let m = deviation_metrics(&ideal, &one_entry).unwrap();
    let n_entries = (ideal.rows() * ideal.cols()) as f64;
    if (m.max_abs_dev - 5.0).abs() > 1e-9 || (m.avg_abs_dev - 5.0 / n_entries).abs() > 1e-9 {
        failures.push(format!("single-entry perturbation gave {m:?}"));
    }
    let mut uniform = ideal.clone();
    for i in 0..ideal.rows() {
        for j in 0..ideal.cols() {
            uniform[(i, j)] += c(0.0, 0.03 * scale);
        }
    }
    let m = deviation_metrics(&ideal, &uniform).unwrap();
    if (m.max_abs_dev - 3.0).abs() > 1e-9 || (m.avg_abs_dev - 3.0).abs() > 1e-9 {
        failures.push(format!("uniform perturbation gave {m:?}"));
    }
    outcome(failures, format!("min fidelity {worst:.15}, metrics format ok"))
}

fn criterion_4() -> Outcome {
    let s = FRAC_1_SQRT_2;
    let set = make_ortho_set(vec![CVec::from_real(&[s, s]), CVec::from_real(&[s, -s])]).unwrap();
    let u = synth_operator(&set, &[1, -1]);
    let dev = u.max_abs_diff(&px());
    outcome(
        if dev <= 1e-12 { vec![] } else { vec![format!("deviation {dev:e}")] },
        format!("max deviation {dev:e}"),
    )
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let arrays = validate_eigenarrays(two_qubit_arrays()).unwrap();
    for (alpha, beta) in [(1.0, 0.0), (0.6, 0.8), (FRAC_1_SQRT_2, FRAC_1_SQRT_2)] {
        let theta = 2.0 * (beta / alpha).atan();
        let spec = DiscriminatorSpec::new(family_s(alpha, beta).unwrap(), arrays.clone()).unwrap();
        let expected = [kron(&eye(), &rot(theta)), kron(&pz(), &rot(theta))];
        for (j, (u, e)) in spec.operators().iter().zip(&expected).enumerate() {
            let dev = u.max_abs_diff(e);
            worst = worst.max(dev);
            if dev > 1e-10 {
                failures.push(format!("U{} at ({alpha}, {beta}) off by {dev:e}", j + 1));
            }
        }
    }
    // At θ = π/2 the operators are the plain patterns I⊗X and Z⊗X.
    let spec = table_one_spec();
    for (j, pattern) in [kron(&eye(), &px()), kron(&pz(), &px())].iter().enumerate() {
        let dev = spec.operators()[j].max_abs_diff(pattern);
        worst = worst.max(dev);
        if dev > 1e-10 {
            failures.push(format!("U{} at theta=pi/2 off pattern by {dev:e}", j + 1));
        }
    }
    outcome(failures, format!("max deviation {worst:e}"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let targets = [
        (EffectiveHamiltonian::H1, ctrl(&kron(&eye(), &px()))),
        (EffectiveHamiltonian::H2, ctrl(&kron(&pz(), &px()))),
    ];
    let spec = table_one_spec();
    let mut worst_comm: f64 = 0.0;
    for (j, (which, target)) in targets.iter().enumerate() {
        let u = expm_i(&effective_hamiltonian(*which)).unwrap();
        if !equal_up_to_global_phase(&u, target, 1e-9) {
            failures.push(format!("exp(iH{}) differs from the controlled pattern", j + 1));
        }
        if !equal_up_to_global_phase(&u, &ctrl(&spec.operators()[j]), 1e-9) {
            failures.push(format!("exp(iH{}) differs from the synthesized C-U{}", j + 1, j + 1));
        }
        let terms: Vec<CMat> = which.terms().iter().map(|t| t.realize(3)).collect();
        for a in &terms {
            for b in &terms {
                worst_comm = worst_comm.max(a.commutator(b).frobenius_norm());
            }
        }
    }
    if worst_comm > 1e-12 {
        failures.push(format!("term commutator norm {worst_comm:e}"));
    }
    outcome(failures, format!("largest term commutator {worst_comm:e}"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let cnots = |k: usize| -> Vec<Gate> { (1..=k).map(|w| Gate::Cnot { control: 0, target: w }).collect() };
    let conjugate = |cz: Gate, k: usize| -> GateSeq {
        let mut gates = vec![cz.clone()];
        gates.extend(cnots(k));
        gates.push(cz);
        GateSeq::new(gates)
    };
    // (family, j, gate product written out, operator from Pauli strings)
    let cases = [
        (Family::Bell, 1, GateSeq::new(cnots(2)), kron(&px(), &px())),
        (Family::Bell, 2, conjugate(Gate::Cz(1, 2), 2), kron(&py(), &py())),
        (Family::Ghz, 1, GateSeq::new(cnots(3)), kron_all(&[px(), px(), px()])),
        (Family::Ghz, 2, conjugate(Gate::Cz(2, 3), 3), kron_all(&[px(), py(), py()])),
        (Family::Ghz, 3, conjugate(Gate::Cz(1, 3), 3), kron_all(&[py(), px(), py()])),
    ];
    let specs = [bell_spec(), table_two_spec()];
    for (family, j, literal, pauli) in cases {
        let (spec, n) = match family {
            Family::Bell => (&specs[0], 3),
            Family::Ghz => (&specs[1], 4),
        };
        let synthesized = ctrl(&spec.operators()[j - 1]);
        let library = decompose_controlled(family, j).unwrap().unitary(n);
        let written = literal.unitary(n);
        let pairs = [
            ("library gates", &library),
            ("written gates", &written),
            ("Pauli string", &ctrl(&pauli)),
        ];
        for (what, m) in pairs {
            if !equal_up_to_global_phase(m, &synthesized, 1e-9) {
                failures.push(format!("{family} C-U{j}: {what} differ from the synthesized embedding"));
            }
        }
    }
    outcome(failures, "2 Bell + 3 GHZ products match")
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut count = 0;
    for n in 1..=3usize {
        let arrays = canonical_eigenarrays(n);
        let dim = 1usize << n;
        for trial in 0..100 {
            count += 1;
            let states = common::random_orthonormal(&mut rng, n);
            let tag = format!("n={n} trial {trial}");
            let spec = match DiscriminatorSpec::new(make_ortho_set(states.clone()).unwrap(), arrays.clone()) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            let id = CMat::identity(dim);
            for (j, u) in spec.operators().iter().enumerate() {
                if u.unitarity_error() > 1e-10 || u.hermiticity_error() > 1e-10 || (u * u).max_abs_diff(&id) > 1e-10 {
                    failures.push(format!("{tag}: U{} not a unitary involution", j + 1));
                }
                for (i, phi) in states.iter().enumerate() {
                    let e = f64::from(arrays.arrays()[j][i]);
                    let residual = (&u.apply(phi) - &phi.scale(r(e))).norm();
                    if residual > 1e-9 {
                        failures.push(format!("{tag}: eigen-equation residual {residual:e}"));
                    }
                }
            }
            let circuit = build_pea_circuit(&spec);
            let mut seen = std::collections::HashSet::new();
            for (i, phi) in states.iter().enumerate() {
                let records = run_statevector(&circuit, phi).unwrap();
                let expected: Vec<u8> = (0..n).map(|b| ((i >> (n - 1 - b)) & 1) as u8).collect();
                if records.len() != 1 || (records[0].probability - 1.0).abs() > 1e-9 {
                    failures.push(format!("{tag}: phi{} not deterministic", i + 1));
                    continue;
                }
                if records[0].ancilla_bits != expected {
                    failures.push(format!("{tag}: phi{} read {:?}", i + 1, records[0].ancilla_bits));
                }
                if !seen.insert(records[0].ancilla_bits.clone()) {
                    failures.push(format!("{tag}: repeated outcome"));
                }
                let f = state_fidelity(phi, &records[0].post_work_state);
                if f < 1.0 - 1e-9 {
                    failures.push(format!("{tag}: phi{} fidelity {f}", i + 1));
                }
            }
        }
    }
    outcome(failures, format!("{count} random sets"))
}

fn joint_bits(circuit: &Circuit, state: &CVec) -> Option<String> {
    let records = run_statevector(circuit, state).ok()?;
    (records.len() == 1 && (records[0].probability - 1.0).abs() <= 1e-9).then(|| records[0].bit_string())
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let ghz = table_two_spec();
    let cases: Vec<(&str, Circuit, DiscriminatorSpec)> = vec![
        ("two-qubit", build_pea_circuit(&table_one_spec()), table_one_spec()),
        ("bell", build_pea_circuit(&bell_spec()), bell_spec()),
        ("ghz", build_pea_circuit(&ghz), ghz.clone()),
        ("ghz gates", build_decomposed_circuit(Family::Ghz).unwrap(), ghz.clone()),
        ("bell gates", build_decomposed_circuit(Family::Bell).unwrap(), bell_spec()),
    ];
    let mut runs = 0;
    for (name, joint, spec) in &cases {
        let parts = split_single_ancilla(joint).unwrap();
        if parts.len() != joint.n_ancilla() || parts.iter().any(|p| p.n_ancilla() != 1) {
            failures.push(format!("{name}: split into {} circuits", parts.len()));
            continue;
        }
        for (i, state) in spec.ortho().states().iter().enumerate() {
            runs += 1;
            let whole = joint_bits(joint, state);
            let split: Option<String> = parts.iter().map(|p| joint_bits(p, state)).collect();
            if whole.is_none() || whole != split {
                failures.push(format!("{name} phi{}: joint {whole:?}, split {split:?}", i + 1));
            }
        }
    }
    if cases[2].1.n_ancilla() != 3 {
        failures.push("GHZ circuit should have three ancillas".into());
    }
    outcome(failures, format!("{runs} member runs agree"))
}

/// Brute-force measurement: `p_b = <ψ|(I ⊗ |b><b|)|ψ>` and
/// `w_b = (I ⊗ <b|)ψ / √p_b`, with every operator formed as a matrix.
fn projector_oracle(circuit: &Circuit, input: &CVec) -> Vec<(String, f64, CVec)> {
    let (nw, na) = (circuit.n_work(), circuit.n_ancilla());
    let psi = circuit.unitary().apply(&input.kron(&CVec::basis(1 << na, 0)));
    let id_work = CMat::identity(1 << nw);
    (0..1usize << na)
        .filter_map(|b| {
            let ket = CVec::basis(1 << na, b);
            let proj = kron(&id_work, &ket.projector());
            let p = psi.inner(&proj.apply(&psi)).re;
            if p < 1e-12 {
                return None;
            }
            let bra = CMat::from_rows(vec![ket.as_slice().iter().map(|z| z.conj()).collect()]);
            let w = kron(&id_work, &bra).apply(&psi).scale(r(1.0 / p.sqrt()));
            Some((format!("{b:0width$b}", width = na), p, w))
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let cases = [
        ("two-qubit", table_one_spec(), [TABLE_I[0], TABLE_I[1]]),
        ("ghz", table_two_spec(), [TABLE_II[0], TABLE_II[1]]),
    ];
    for (name, spec, expected) in cases {
        let circuit = build_pea_circuit(&spec);
        let (phi1, phi2) = (spec.ortho().state(0), spec.ortho().state(1));
        let input = (phi1 + phi2).scale(r(FRAC_1_SQRT_2));
        let records = run_statevector(&circuit, &input).unwrap();
        let oracle = projector_oracle(&circuit, &input);
        if records.len() != 2 || oracle.len() != 2 {
            failures.push(format!("{name}: {} branches, oracle {}", records.len(), oracle.len()));
            continue;
        }
        for (rec, (bits, p, w)) in records.iter().zip(&oracle) {
            if rec.bit_string() != *bits {
                failures.push(format!("{name}: branch {} vs oracle {bits}", rec.bit_string()));
            }
            if (rec.probability - 0.5).abs() > 1e-9 || (p - 0.5).abs() > 1e-9 {
                failures.push(format!("{name}: branch probability {} (oracle {p})", rec.probability));
            }
            let dev = (&rec.post_work_state - w).norm();
            if dev > 1e-10 {
                failures.push(format!("{name}: branch {bits} collapse differs from oracle by {dev:e}"));
            }
        }
        for (k, member) in [phi1, phi2].into_iter().enumerate() {
            let Some(rec) = records.iter().find(|rec| rec.bit_string() == expected[k]) else {
                failures.push(format!("{name}: no branch {}", expected[k]));
                continue;
            };
            let f = state_fidelity(member, &rec.post_work_state);
            if f < 1.0 - 1e-9 {
                failures.push(format!("{name}: branch {} collapses with fidelity {f}", expected[k]));
            }
        }
    }
    outcome(failures, "two branches of 1/2, collapse matches oracle")
}

/// Number, name, check and optional runtime limit.
type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "two-qubit table", criterion_1, Some(Duration::from_secs(1))),
        (2, "GHZ table", criterion_2, Some(Duration::from_secs(5))),
        (3, "non-destructiveness", criterion_3, None),
        (4, "single-qubit synthesis", criterion_4, None),
        (5, "parameterized two-qubit synthesis", criterion_5, None),
        (6, "effective Hamiltonian propagators", criterion_6, None),
        (7, "gate decompositions", criterion_7, None),
        (8, "randomized properties", criterion_8, Some(Duration::from_secs(60))),
        (9, "split-circuit equivalence", criterion_9, None),
        (10, "superposition branches", criterion_10, None),
    ];
    let mut all_pass = true;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                result.pass = false;
                result.detail = format!("{} (over the {limit:?} limit)", result.detail);
            }
        }
        all_pass &= result.pass;
        println!(
            "criterion {id:>2} {}  {name}: {} [{:.3}s]",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    if all_pass {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
