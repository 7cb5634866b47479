mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use sparse_rc::experiment::{run_single, stream_label, Protocol};
use sparse_rc::linalg::{covariance_eigenvalues, DenseMatrix, DEFAULT_RCOND};
use sparse_rc::metrics::{
    effective_dimension, memory_capacity, memory_capacity_from_states, participation_ratio, squared_correlation,
    train_readout,
};
use sparse_rc::reservoir::{build_reservoir, generate_input_series, ReservoirConfig};
use sparse_rc::rng::derive_stream;

#[test]
fn delay_line_remembers_exactly_its_depth() {
    let mut s = derive_stream(1, "oracle/delay-line");
    for k in [1, 5, 10] {
        let res = common::delay_line(k, 1e-3);
        let input = common::uniform_series(3000, -0.8, 0.8, &mut s);
        let mc = memory_capacity(&res, &input, &common::delay_line_protocol()).unwrap();
        for (i, r2) in mc.per_delay.iter().enumerate() {
            let delay = i + 1;
            if delay <= k {
                assert!(*r2 > 0.99, "k={k} delay {delay}: {r2}");
            } else {
                assert!(*r2 < 0.02, "k={k} delay {delay}: {r2}");
            }
        }
        assert!((mc.total - k as f64).abs() < 0.5, "k={k}: MC={}", mc.total);
    }
}

#[test]
fn independent_targets_score_near_zero() {
    // States driven by one series, targets read from another, independent one.
    let config = ReservoirConfig { seed: 3, ..ReservoirConfig::default() };
    let res = build_reservoir(&config).unwrap();
    let protocol = sparse_rc::metrics::McProtocol::default();
    let mut s = derive_stream(3, "oracle/null");
    let drive = generate_input_series(6000, -0.8, 0.8, &mut s).unwrap();
    let other = generate_input_series(6000, -0.8, 0.8, &mut s).unwrap();
    let traj = res.run(&drive, protocol.washout).unwrap();
    let mc = memory_capacity_from_states(&traj, other.as_slice(), &protocol).unwrap();
    assert!(mc.total <= 5.0, "null MC {}", mc.total);
}

#[test]
fn iid_gaussian_states_have_full_dimension() {
    let (t, n) = (100_000, 10);
    let mut s = derive_stream(5, "oracle/gauss");
    let states = DenseMatrix::new(t, n, common::normals(t * n, &mut s)).unwrap();
    let neff = effective_dimension(&states).unwrap();
    assert!((neff.value - 10.0).abs() < 0.2, "N_eff {}", neff.value);
}

#[test]
fn rank_one_states_have_dimension_one() {
    let mut s = derive_stream(6, "oracle/rank1");
    let z = common::normals(500, &mut s);
    let states = DenseMatrix::from_fn(500, 8, |r, c| z[r] * (c as f64 + 1.0));
    let neff = effective_dimension(&states).unwrap();
    assert!((neff.value - 1.0).abs() < 1e-9, "N_eff {}", neff.value);
}

#[test]
fn jacobi_oracle_self_check() {
    let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
    let ev = common::jacobi_eigenvalues(a);
    assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
}

#[test]
fn covariance_spectrum_matches_jacobi() {
    let mut s = derive_stream(7, "oracle/cov");
    for _ in 0..20 {
        let z = common::normals(40 * 5, &mut s);
        // Correlated columns so the spectrum is not flat.
        let x = DenseMatrix::from_fn(40, 5, |r, c| z[r * 5 + c] + 0.7 * z[r * 5] * c as f64);
        let want = common::jacobi_eigenvalues(common::covariance(&x));
        let got = covariance_eigenvalues(&x).unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-10 * want[0].max(1.0), "{got:?} vs {want:?}");
        }
    }
}

#[test]
fn neff_matches_trace_formula() {
    let mut s = derive_stream(8, "oracle/neff");
    for trial in 0..20 {
        let (t, n) = (50 + trial * 7, 3 + trial % 6);
        let z = common::normals(t * n, &mut s);
        let x = DenseMatrix::from_fn(t, n, |r, c| z[r * n + c] * (1.0 + c as f64).powi(2) + z[r * n]);
        let got = effective_dimension(&x).unwrap().value;
        let want = common::participation_by_traces(&common::covariance(&x));
        assert!((got - want).abs() <= 1e-12 * want.max(1.0), "{got} vs {want}");
    }
}

#[test]
fn joint_readout_matches_per_target_fits() {
    let mut s = derive_stream(9, "oracle/readout");
    let states = DenseMatrix::new(300, 10, common::normals(3000, &mut s)).unwrap();
    let targets = DenseMatrix::new(300, 5, common::normals(1500, &mut s)).unwrap();
    let joint = train_readout(&states, &targets, DEFAULT_RCOND).unwrap();
    for k in 0..5 {
        let single = train_readout(&states, &DenseMatrix::column_vector(targets.column(k)), DEFAULT_RCOND).unwrap();
        for c in 0..10 {
            assert!((joint.weights[(k, c)] - single.weights[(0, c)]).abs() <= 1e-9);
        }
        assert!((joint.bias[k] - single.bias[0]).abs() <= 1e-9);
    }
}

#[test]
fn readout_matches_normal_equations() {
    let mut s = derive_stream(10, "oracle/normal-eq");
    let states = DenseMatrix::new(200, 6, common::normals(1200, &mut s)).unwrap();
    let targets = DenseMatrix::new(200, 2, common::normals(400, &mut s)).unwrap();
    let fit = train_readout(&states, &targets, DEFAULT_RCOND).unwrap();
    let a = DMatrix::from_fn(200, 7, |r, c| if c < 6 { states[(r, c)] } else { 1.0 });
    let b = DMatrix::from_row_slice(200, 2, targets.as_slice());
    let x = (a.transpose() * &a).lu().solve(&(a.transpose() * b)).unwrap();
    for k in 0..2 {
        for c in 0..6 {
            assert!((fit.weights[(k, c)] - x[(c, k)]).abs() < 1e-10);
        }
        assert!((fit.bias[k] - x[(6, k)]).abs() < 1e-10);
    }
}

#[test]
fn run_single_composes_the_pipeline() {
    // Reassemble the realization by hand from the documented stream labels.
    let config = ReservoirConfig { n_units: 5, chi_r: 1, chi_i: 1, seed: 11, ..ReservoirConfig::default() };
    let protocol = Protocol { series_len: 300, washout: 50, train_len: 150, n_delays: 10, ..Protocol::default() };
    let (mc, neff) = run_single(&config, &protocol, 2).unwrap();

    let seed = derive_stream(11, &stream_label(1, 1, 2, "reservoir")).next_u64();
    let res = build_reservoir(&ReservoirConfig { seed, ..config.clone() }).unwrap();
    let mut input_stream = derive_stream(11, &stream_label(1, 1, 2, "input"));
    let input = generate_input_series(300, -0.8, 0.8, &mut input_stream).unwrap();
    let traj = res.run(&input, 50).unwrap();
    let want_mc = memory_capacity_from_states(&traj, input.as_slice(), &protocol.mc()).unwrap();
    let eval = traj.states.row_range(150, 250);
    let want_neff = effective_dimension(&eval).unwrap();
    assert_eq!(mc, want_mc);
    assert_eq!(neff, want_neff);
}

#[test]
fn participation_ratio_edge_cases() {
    assert_eq!(participation_ratio(&[0.0, 0.0]), None);
    assert_eq!(participation_ratio(&[2.0, 2.0, 2.0, 2.0]), Some(4.0));
    assert_eq!(participation_ratio(&[5.0, 0.0, 0.0]), Some(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn squared_correlation_in_unit_interval(
        a in prop::collection::vec(-10.0f64..10.0, 3..40),
        seed in any::<u64>(),
    ) {
        let mut s = derive_stream(seed, "prop/corr");
        let b: Vec<f64> = a.iter().map(|x| x * s.uniform(-1.0, 1.0).unwrap() + s.uniform(-1.0, 1.0).unwrap()).collect();
        let r2 = squared_correlation(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&r2));
    }

    #[test]
    fn participation_ratio_bounds(ev in prop::collection::vec(0.0f64..100.0, 1..50)) {
        if let Some(pr) = participation_ratio(&ev) {
            let nonzero = ev.iter().filter(|&&v| v > 0.0).count() as f64;
            prop_assert!(pr >= 1.0 - 1e-12 && pr <= nonzero + 1e-9);
        }
    }

    #[test]
    fn small_reservoir_metrics_stay_in_range(seed in any::<u64>(), chi_r in 1usize..=10, chi_i in 1usize..=10) {
        let config = ReservoirConfig { n_units: 10, chi_r, chi_i, seed, ..ReservoirConfig::default() };
        let protocol = Protocol { series_len: 400, washout: 50, train_len: 250, n_delays: 20, ..Protocol::default() };
        let (mc, neff) = run_single(&config, &protocol, 0).unwrap();
        prop_assert!(mc.per_delay.iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!((0.0..=20.0).contains(&mc.total));
        prop_assert!(neff.value >= 1.0 - 1e-9 && neff.value <= 10.0 + 1e-9);
    }
}
