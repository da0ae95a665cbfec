use std::f64::consts::PI;

use hqsp::circuit::count;
use hqsp::loaders::{
    dense_complex_load, eae_real, eae_real_complex, sqsp, sqsp_cx_bound, sqsp_with, SparseState, SqspStrategy,
    LOADER_NORM_TOL,
};
use hqsp::signals::gen_periodic;
use hqsp::statesim::{fidelity, simulate};
use hqsp::transforms::dft;
use hqsp::{Complex64, Error};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INSTANCES: usize = 200;

fn unit_real(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / s).collect()
}

fn unit_complex(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..len).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let s = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / s).collect()
}

fn random_sparse(rng: &mut ChaCha8Rng, n: usize, d: usize, complex: bool) -> SparseState {
    let idx = sample(rng, 1 << n, d);
    let amps: Vec<Complex64> = if complex {
        unit_complex(rng, d)
    } else {
        unit_real(rng, d).into_iter().map(|x| Complex64::new(x, 0.0)).collect()
    };
    SparseState::normalized(n, idx.into_iter().map(|i| i as u64).zip(amps).collect()).unwrap()
}

fn padded(c: &hqsp::circuit::Circuit, n: usize) -> Vec<Complex64> {
    simulate(&c.widen(n).unwrap()).unwrap().amplitudes
}

#[test]
fn sqsp_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..INSTANCES {
        let n = rng.random_range(1..=10);
        let d = rng.random_range(1..=(1usize << n).min(40));
        let s = random_sparse(&mut rng, n, d, i % 2 == 0);
        let c = sqsp(&s);
        let f = fidelity(&padded(&c, n), &s.to_dense()).unwrap();
        assert!(f >= 1.0 - LOADER_NORM_TOL, "instance {i}: n={n} d={d} F={f}");
        assert!(count(&c).cnot_count <= sqsp_cx_bound(n, d));
    }
}

#[test]
fn sqsp_strategies_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..60 {
        let n = rng.random_range(2..=9);
        let d = rng.random_range(1..=(1usize << n).min(24));
        let s = random_sparse(&mut rng, n, d, i % 3 == 0);
        for strategy in [SqspStrategy::Compact, SqspStrategy::Merge] {
            let c = sqsp_with(&s, strategy);
            let f = fidelity(&padded(&c, n), &s.to_dense()).unwrap();
            assert!(f >= 1.0 - LOADER_NORM_TOL, "{strategy:?} n={n} d={d}");
        }
    }
}

#[test]
fn eae_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..INSTANCES {
        let n = rng.random_range(1..=10);
        let x = unit_real(&mut rng, 1 << n);
        let c = eae_real(&x).unwrap();
        let target: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let f = fidelity(&simulate(&c).unwrap().amplitudes, &target).unwrap();
        assert!(f >= 1.0 - LOADER_NORM_TOL, "instance {i}: n={n}");
    }
}

#[test]
fn dense_complex_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..INSTANCES {
        let m = rng.random_range(1..=10);
        let x = unit_complex(&mut rng, 1 << m);
        let c = dense_complex_load(&x).unwrap();
        let f = fidelity(&simulate(&c).unwrap().amplitudes, &x).unwrap();
        assert!(f >= 1.0 - LOADER_NORM_TOL, "instance {i}: m={m}");
        assert_eq!(count(&c).cnot_count, if m == 1 { 0 } else { 2 * ((1 << m) - 2) });
    }
}

#[test]
fn basis_state_needs_no_cx() {
    let s = SparseState::new(4, vec![(5, Complex64::new(1.0, 0.0))]).unwrap();
    let c = sqsp(&s);
    assert_eq!(count(&c).cnot_count, 0);
    assert!(c.gates().iter().all(|g| matches!(g, hqsp::circuit::Gate::X(_))));
    assert!(fidelity(&padded(&c, 4), &s.to_dense()).unwrap() > 1.0 - 1e-12);
}

#[test]
fn periodic_spectrum_is_cheap() {
    let x = dft(&gen_periodic(256).unwrap());
    let s = SparseState::from_compressed(&x).unwrap();
    assert_eq!(s.d(), 4);
    let c = sqsp(&s);
    assert!(count(&c).cnot_count <= 30, "{}", count(&c).cnot_count);
    assert!(fidelity(&padded(&c, 8), &x.coefficients).unwrap() > 1.0 - 1e-9);
}

#[test]
fn three_sparse_on_five_qubits() {
    let amps = [Complex64::new(0.6, 0.0), Complex64::new(0.0, -0.48), Complex64::new(0.64, 0.0)];
    let s = SparseState::new(5, vec![(3, amps[0]), (17, amps[1]), (30, amps[2])]).unwrap();
    assert!(fidelity(&padded(&sqsp(&s), 5), &s.to_dense()).unwrap() > 1.0 - 1e-9);
}

#[test]
fn eae_counts_are_structural() {
    for n in 2..=16 {
        let x = vec![1.0 / ((1u64 << n) as f64).sqrt(); 1 << n];
        assert_eq!(count(&eae_real(&x).unwrap()).cnot_count, (1 << n) - 2, "n={n}");
    }
    let c = eae_real(&[(0.3f64).cos(), (0.3f64).sin()]).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(count(&c).cnot_count, 0);
}

#[test]
fn dense_counts() {
    let x = vec![Complex64::new(1.0 / 16.0, 0.0); 256];
    assert_eq!(count(&dense_complex_load(&x).unwrap()).cnot_count, 508);
    let y = vec![Complex64::new(0.125, 0.0); 64];
    assert_eq!(count(&dense_complex_load(&y).unwrap()).cnot_count, 124);
}

#[test]
fn loader_input_errors() {
    let z = Complex64::new(0.6, 0.0);
    assert!(matches!(SparseState::new(3, vec![(1, z), (1, z)]), Err(Error::DuplicateIndex(1))));
    assert!(matches!(SparseState::new(3, vec![(1, z)]), Err(Error::NormViolation(_))));
    assert!(SparseState::new(2, vec![(4, Complex64::new(1.0, 0.0))]).is_err());
    assert!(eae_real_complex(&[Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)]).is_err());
    assert!(matches!(dense_complex_load(&[z, z]), Err(Error::NormViolation(_))));
}

#[test]
fn sqsp_cx_grows_at_most_linearly_in_d() {
    let n = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let ds = [4usize, 8, 16, 32, 64, 128];
    let mut points = Vec::new();
    for &d in &ds {
        let mean: f64 = (0..5)
            .map(|_| count(&sqsp(&random_sparse(&mut rng, n, d, false))).cnot_count as f64)
            .sum::<f64>()
            / 5.0;
        points.push((d as f64, mean));
    }
    let (mx, my) = (
        points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64,
        points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64,
    );
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    // residuals from the linear fit stay small relative to the largest count
    let max_resid = points.iter().map(|p| (p.1 - (my + slope * (p.0 - mx))).abs()).fold(0.0, f64::max);
    assert!(slope > 0.0);
    assert!(slope <= (sqsp_cx_bound(n, 2) as f64));
    assert!(max_resid < 0.25 * points.last().unwrap().1, "slope {slope}, residual {max_resid}");
    for (d, cx) in points {
        assert!(cx <= sqsp_cx_bound(n, d as usize) as f64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn low_support_touches_low_qubits(seed in any::<u64>(), q in 1usize..=5, extra in 0usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = q + extra;
        let d = rng.random_range(1..=(1usize << q));
        let idx = sample(&mut rng, 1 << q, d);
        let amps = unit_complex(&mut rng, d);
        let s = SparseState::normalized(n, idx.into_iter().map(|i| i as u64).zip(amps).collect()).unwrap();
        let c = sqsp(&s);
        prop_assert!(c.max_qubit().is_none_or(|m| m < q));
        prop_assert!(fidelity(&padded(&c, n), &s.to_dense()).unwrap() >= 1.0 - LOADER_NORM_TOL);
    }

    #[test]
    fn eae_handles_signs(seed in any::<u64>(), n in 1usize..=6, angle in -PI..PI) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = unit_real(&mut rng, 1 << n);
        x[0] = -x[0].abs() * angle.cos().signum();
        let s = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let x: Vec<f64> = x.into_iter().map(|v| v / s).collect();
        let target: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let f = fidelity(&simulate(&eae_real(&x).unwrap()).unwrap().amplitudes, &target).unwrap();
        prop_assert!(f >= 1.0 - LOADER_NORM_TOL);
    }
}
