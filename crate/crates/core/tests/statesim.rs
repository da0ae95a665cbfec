use std::f64::consts::{FRAC_1_SQRT_2, PI};

use approx::assert_abs_diff_eq;
use hqsp::circuit::{decompose, Circuit, Gate};
use hqsp::qsynth::iqft;
use hqsp::signals::gen_periodic;
use hqsp::statesim::{
    equal_up_to_global_phase, fidelity, simulate, simulate_from, trace_distance, trace_distance_from_fidelity,
    unitary_of, StateVector, MAX_QUBITS,
};
use hqsp::transforms::dft;
use hqsp::{Complex64, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..1 << n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let s = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / s).collect()
}

fn random_circuit(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Circuit {
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let t = rng.random_range(-PI..PI);
        gates.push(match rng.random_range(0..9) {
            0 => Gate::H(a),
            1 => Gate::X(a),
            2 => Gate::Rx(a, t),
            3 => Gate::Ry(a, t),
            4 => Gate::Rz(a, t),
            5 => Gate::Phase(a, t),
            6 => Gate::Cx(a, b),
            7 => Gate::CPhase(a, b, t),
            _ => Gate::Swap(a, b),
        });
    }
    Circuit::from_gates(n, gates).unwrap()
}

#[test]
fn hadamard_and_bell_examples() {
    let s = simulate(&Circuit::from_gates(1, vec![Gate::H(0)]).unwrap()).unwrap();
    assert_abs_diff_eq!(s.amplitudes[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
    assert_abs_diff_eq!(s.amplitudes[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);
    let s = simulate(&Circuit::from_gates(2, vec![Gate::X(0), Gate::Cx(0, 1)]).unwrap()).unwrap();
    assert_eq!(s.amplitudes[3], Complex64::new(1.0, 0.0));
    assert_eq!(s.norm(), 1.0);
}

#[test]
fn qubit_zero_is_least_significant() {
    let s = simulate(&Circuit::from_gates(3, vec![Gate::X(1)]).unwrap()).unwrap();
    assert_eq!(s.amplitudes[2], Complex64::new(1.0, 0.0));
    assert_eq!(StateVector::basis(3, 5).unwrap().amplitudes[5], Complex64::new(1.0, 0.0));
}

#[test]
fn iqft8_recovers_periodic_signal() {
    let signal = gen_periodic(256).unwrap();
    let spectrum = dft(&signal);
    let out = simulate_from(&iqft(8, true), &spectrum.coefficients).unwrap();
    let max = out.amplitudes.iter().zip(signal.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(max < 1e-9, "max deviation {max}");
}

#[test]
fn metric_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_state(&mut rng, 4);
    assert_abs_diff_eq!(fidelity(&a, &a).unwrap(), 1.0, epsilon = 1e-14);
    assert!(trace_distance(&a, &a).unwrap() < 1e-12);
    let e0 = StateVector::basis(2, 0).unwrap().amplitudes;
    let e1 = StateVector::basis(2, 1).unwrap().amplitudes;
    assert_eq!(fidelity(&e0, &e1).unwrap(), 0.0);
    assert_eq!(trace_distance(&e0, &e1).unwrap(), 1.0);
    assert_abs_diff_eq!(trace_distance_from_fidelity(0.9999), 0.01, epsilon = 1e-12);
    assert!(matches!(fidelity(&e0, &a), Err(Error::LengthMismatch(..))));
}

#[test]
fn trace_distance_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let a = random_state(&mut rng, 5);
        let b = random_state(&mut rng, 5);
        let f = fidelity(&a, &b).unwrap();
        assert_abs_diff_eq!(trace_distance(&a, &b).unwrap(), (1.0 - f).sqrt(), epsilon = 1e-12);
    }
}

#[test]
fn capacity_limits() {
    assert!(matches!(StateVector::zero_state(MAX_QUBITS + 1), Err(Error::Capacity(..))));
    assert!(matches!(unitary_of(&Circuit::new(9)), Err(Error::Capacity(..))));
    let u = unitary_of(&Circuit::new(3)).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(u.get(i, j), Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
        }
    }
}

#[test]
fn norm_is_preserved_over_long_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [2, 5, 8, 10] {
        let c = random_circuit(&mut rng, n, 1000);
        let mut s = StateVector::zero_state(n).unwrap();
        for g in c.gates() {
            s.apply(&Circuit::from_gates(n, vec![g.clone()]).unwrap()).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn simulation_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c = random_circuit(&mut rng, 9, 400);
    assert_eq!(simulate(&c).unwrap(), simulate(&c).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decomposition_preserves_state(seed in any::<u64>(), n in 2usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(&mut rng, n, 60);
        let input = random_state(&mut rng, n);
        let a = simulate_from(&c, &input).unwrap();
        let b = simulate_from(&decompose(&c), &input).unwrap();
        prop_assert!(equal_up_to_global_phase(&a.amplitudes, &b.amplitudes, 1e-9));
    }

    #[test]
    fn trace_distance_is_symmetric(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_state(&mut rng, n);
        let b = random_state(&mut rng, n);
        let (ab, ba) = (trace_distance(&a, &b).unwrap(), trace_distance(&b, &a).unwrap());
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
        let phased: Vec<Complex64> = a.iter().map(|z| z * Complex64::from_polar(1.0, 0.7)).collect();
        prop_assert!(trace_distance(&a, &phased).unwrap() < 1e-7);
    }
}
