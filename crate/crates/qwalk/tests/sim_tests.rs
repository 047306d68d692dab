use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use num_complex::Complex64;
use qwalk::sim::{
    apply_circuit, apply_gate, circuit_unitary, decompose_mcx, measure_register, Circuit,
    Control, Gate, StateVector,
};

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[test]
fn x_flips_qubit_zero() {
    let s = StateVector::basis(2, 0b00);
    let out = apply_gate(&s, &Gate::x(0)).unwrap();
    assert_eq!(out.amplitudes()[0b01], Complex64::ONE);
}

#[test]
fn controlled_z_phase_flips_eleven() {
    let s = StateVector::basis(2, 0b11);
    let g = Gate::z(0).with_controls(vec![Control::on1(1)]);
    let out = apply_gate(&s, &g).unwrap();
    assert_eq!(out.amplitudes()[0b11], -Complex64::ONE);
}

#[test]
fn ry_pi_maps_zero_to_one() {
    let s = StateVector::basis(1, 0);
    let out = apply_gate(&s, &Gate::ry(0, std::f64::consts::PI)).unwrap();
    assert_abs_diff_eq!(out.amplitudes()[1].re, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(out.amplitudes()[0].norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn empty_circuit_is_identity() {
    let mut c = Circuit::new(3);
    c = c.with_register("W", 0, 2);
    let s = StateVector::basis(3, 5);
    assert_eq!(apply_circuit(&s, &c).unwrap(), s);
}

#[test]
fn double_x_is_identity() {
    let mut c = Circuit::new(1).with_register("W", 0, 0);
    c.push(Gate::x(0));
    c.push(Gate::x(0));
    let s = StateVector::basis(1, 0);
    assert_eq!(apply_circuit(&s, &c).unwrap(), s);
}

#[test]
fn unitary_of_single_x() {
    let mut c = Circuit::new(1).with_register("W", 0, 0);
    c.push(Gate::x(0));
    let u = circuit_unitary(&c).unwrap();
    assert_eq!(u[(0, 1)], Complex64::ONE);
    assert_eq!(u[(1, 0)], Complex64::ONE);
    assert_eq!(u[(0, 0)], Complex64::ZERO);
}

#[test]
fn unitary_size_limit_enforced() {
    let c = Circuit::new(13).with_register("W", 0, 12);
    assert!(circuit_unitary(&c).is_err());
}

#[test]
fn out_of_range_and_duplicate_qubits_rejected() {
    let s = StateVector::basis(2, 0);
    assert!(apply_gate(&s, &Gate::x(2)).is_err());
    let dup = Gate::x(0).with_controls(vec![Control::on1(0)]);
    assert!(apply_gate(&s, &dup).is_err());
    assert!(apply_gate(&s, &Gate::swap(1, 1)).is_err());
}

#[test]
fn norm_preserved_by_gates() {
    let amps: Vec<Complex64> = (0..8)
        .map(|i| Complex64::new(0.1 + i as f64 * 0.07, 0.05 * i as f64))
        .collect();
    let mut s = StateVector::from_amplitudes(amps).unwrap();
    s.normalize();
    for g in [
        Gate::x(1),
        Gate::z(2).with_controls(vec![Control::on0(0)]),
        Gate::ry(0, 0.7).with_controls(vec![Control::on1(2)]),
        Gate::swap(0, 2),
    ] {
        let out = apply_gate(&s, &g).unwrap();
        assert_abs_diff_eq!(out.norm(), 1.0, epsilon = 1e-10);
    }
}

/// Brute-force multi-controlled X for comparison.
fn mcx_matrix(num_qubits: usize, controls: &[Control], target: usize) -> DMatrix<Complex64> {
    let dim = 1 << num_qubits;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for j in 0..dim {
        let fire = controls.iter().all(|c| c.satisfied(j));
        let i = if fire { j ^ (1 << target) } else { j };
        m[(i, j)] = Complex64::ONE;
    }
    m
}

#[test]
fn mcx_zero_and_one_control() {
    let c = decompose_mcx(&[], 0, &[]).unwrap();
    assert_eq!(c.gates.len(), 1);
    let u = circuit_unitary(&c).unwrap();
    assert!(max_abs_diff(&u, &mcx_matrix(1, &[], 0)) < 1e-10);

    let c = decompose_mcx(&[Control::on1(1)], 0, &[]).unwrap();
    let u = circuit_unitary(&c).unwrap();
    assert!(max_abs_diff(&u, &mcx_matrix(2, &[Control::on1(1)], 0)) < 1e-10);
}

#[test]
fn mcx_matches_brute_force_up_to_five_controls() {
    // Mixed polarities; ancillas interleaved with data qubits to make sure
    // nothing depends on index layout.
    for nc in 1..=5usize {
        let controls: Vec<Control> = (0..nc)
            .map(|i| Control {
                qubit: 2 * i + 1,
                on: i % 2 == 0,
            })
            .collect();
        let target = 0;
        let ancillas: Vec<usize> = (0..nc.saturating_sub(2)).map(|i| 2 * i + 2).collect();
        let circ = decompose_mcx(&controls, target, &ancillas).unwrap();
        let u = circuit_unitary(&circ).unwrap();
        let expect = mcx_matrix(circ.num_qubits, &controls, target);
        assert!(
            max_abs_diff(&u, &expect) < 1e-10,
            "mcx decomposition wrong for {nc} controls"
        );
        // Equality of full unitaries means ancillas are restored on every
        // basis state, dirty or not.
        assert!(circ.gates.len() <= 4 * nc + 2, "gate count not linear");
    }
}

#[test]
fn mcx_insufficient_ancillas_rejected() {
    let controls: Vec<Control> = (1..=4).map(Control::on1).collect();
    assert!(decompose_mcx(&controls, 0, &[5]).is_err());
}

#[test]
fn mcx_overlapping_indices_rejected() {
    let controls = vec![Control::on1(1), Control::on1(2), Control::on1(3)];
    assert!(decompose_mcx(&controls, 1, &[4]).is_err());
    assert!(decompose_mcx(&controls, 0, &[2]).is_err());
}

#[test]
fn measure_basis_state_is_deterministic() {
    let s = StateVector::basis(2, 0b10);
    for seed in 0..5 {
        let (bits, post) = measure_register(&s, &[0, 1], seed).unwrap();
        assert_eq!(bits, vec![false, true]);
        assert_eq!(post, s);
    }
}

#[test]
fn measure_bell_state_frequencies() {
    let r = 1.0 / 2.0f64.sqrt();
    let amps = vec![
        Complex64::new(r, 0.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(r, 0.0),
    ];
    let s = StateVector::from_amplitudes(amps).unwrap();
    let mut ones = 0;
    for seed in 0..2000 {
        let (bits, post) = measure_register(&s, &[0], seed).unwrap();
        if bits[0] {
            ones += 1;
            assert_abs_diff_eq!(post.amplitudes()[3].re, 1.0, epsilon = 1e-12);
        } else {
            assert_abs_diff_eq!(post.amplitudes()[0].re, 1.0, epsilon = 1e-12);
        }
    }
    let f = ones as f64 / 2000.0;
    assert!((f - 0.5).abs() < 0.05, "frequency {f} too far from 0.5");
}

#[test]
fn measure_same_seed_reproduces() {
    let mut amps = vec![Complex64::ZERO; 8];
    for (i, a) in amps.iter_mut().enumerate() {
        *a = Complex64::new(1.0 + i as f64, 0.3);
    }
    let mut s = StateVector::from_amplitudes(amps).unwrap();
    s.normalize();
    let a = measure_register(&s, &[0, 2], 99).unwrap();
    let b = measure_register(&s, &[0, 2], 99).unwrap();
    assert_eq!(a.0, b.0);
    assert_eq!(a.1, b.1);
}

#[test]
fn circuit_json_round_trip() {
    let mut c = Circuit::new(3)
        .with_register("W", 0, 1)
        .with_register("C", 2, 2);
    c.push(Gate::x(0));
    c.push(Gate::ry(1, 0.25).with_controls(vec![Control::on0(0), Control::on1(2)]));
    c.push(Gate::swap(0, 1).with_controls(vec![Control::on1(2)]));
    c.push(Gate::z(2));
    let json = c.to_json().unwrap();
    let back = Circuit::from_json(&json).unwrap();
    assert_eq!(c, back);
    // Field shape: registers as [lo, hi], controls as [qubit, polarity].
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["registers"]["W"][0], 0);
    assert_eq!(v["registers"]["W"][1], 1);
    assert_eq!(v["gates"][1]["controls"][0][0], 0);
    assert_eq!(v["gates"][1]["controls"][0][1], 0);
    assert_eq!(v["gates"][1]["kind"], "RY");
}

#[test]
fn determinism_bit_identical_amplitudes() {
    let mut c = Circuit::new(4).with_register("W", 0, 3);
    for i in 0..4 {
        c.push(Gate::ry(i, 0.3 + i as f64));
        c.push(Gate::x((i + 1) % 4).with_controls(vec![Control::on1(i)]));
    }
    let s = StateVector::basis(4, 3);
    let a = apply_circuit(&s, &c).unwrap();
    let b = apply_circuit(&s, &c).unwrap();
    assert_eq!(a.amplitudes(), b.amplitudes());
}
