//! Pair decomposition: partitioning, coupling phases against the dense
//! oracle, and reduced-vs-full propagation across every drive kind.

mod common;

use common::{dense_hamiltonian, random_state, rng};
use ghz_chain::model::{ChainModel, ChainSpec, DriveProfile, StateVector};
use ghz_chain::propagator::{
    leakage_outside_pair, max_amplitude_deviation, propagate_full, propagate_two_level,
};
use ghz_chain::subspace::{
    check_constants_of_motion, effective_two_level, enumerate_subspaces, pair_of, PairMember,
};
use num_complex::Complex64;
use rand::Rng;

#[test]
fn pairs_partition_every_supported_size() {
    for n in 2..=14 {
        let pairs = enumerate_subspaces(n).unwrap();
        assert_eq!(pairs.len(), 1 << (n - 1));
        let mask = (1usize << n) - 1;
        let mut count = vec![0u8; 1 << n];
        for p in &pairs {
            assert!(p.representative() < p.partner());
            assert_eq!(p.representative() ^ mask, p.partner());
            count[p.representative()] += 1;
            count[p.partner()] += 1;
        }
        assert!(count.iter().all(|&c| c == 1), "N={n} not a partition");
    }
}

#[test]
fn coupling_magnitude_law_odd_sizes() {
    // For odd chains the X and Y strings land in quadrature, so the pair
    // coupling has magnitude hypot(gx, gy) exactly - for every pair.
    let mut r = rng(0xc0de_0001);
    for n in [3usize, 5, 7] {
        for _ in 0..3 {
            let gx = r.gen_range(-2.0..2.0);
            let gy = r.gen_range(-2.0..2.0);
            let spec = ChainSpec { n_qubits: n, gamma_x: gx, gamma_y: gy, gamma_z: 0.0 };
            let drive = DriveProfile::Constant { omega0: 0.0, tau_i: 0.0, tau_f: 1.0 };
            let model = ChainModel::new(spec, drive).unwrap();
            for pair in enumerate_subspaces(n).unwrap() {
                let tlp = effective_two_level(&model, pair).unwrap();
                let expected = gx.hypot(gy);
                assert!(
                    (tlp.coupling.norm() - expected).abs() <= 1e-12,
                    "N={n} pair {pair:?}: |c|={} vs {expected}",
                    tlp.coupling.norm()
                );
            }
        }
    }
}

#[test]
fn coupling_matches_dense_matrix_element_any_size() {
    // Even chains put the X and Y strings in phase, so the magnitudes do
    // not add in quadrature there; the exact matrix element is the one
    // truth either way.
    let mut r = rng(0xc0de_0002);
    for n in 2..=8 {
        let gx = r.gen_range(-2.0..2.0);
        let gy = r.gen_range(-2.0..2.0);
        let spec = ChainSpec { n_qubits: n, gamma_x: gx, gamma_y: gy, gamma_z: 0.3 };
        let drive = DriveProfile::Constant { omega0: 0.0, tau_i: 0.0, tau_f: 1.0 };
        let model = ChainModel::new(spec, drive).unwrap();
        let dense = dense_hamiltonian(&spec, 0.0);
        for pair in enumerate_subspaces(n).unwrap() {
            let tlp = effective_two_level(&model, pair).unwrap();
            let element = dense.at(pair.partner(), pair.representative());
            assert!((tlp.coupling - element).norm() <= 1e-12);
            let d_rep = dense.at(pair.representative(), pair.representative()).re;
            let d_partner = dense.at(pair.partner(), pair.partner()).re;
            assert!((tlp.diagonal_offset.0 - d_rep).abs() <= 1e-13);
            assert!((tlp.diagonal_offset.1 - d_partner).abs() <= 1e-13);
        }
    }
}

#[test]
fn two_site_chain_couplings_interfere() {
    // N=2, GHZ pair {00, 11}: <11|XX|00> = 1 and <11|YY|00> = -1, so the
    // couplings subtract and gy = gx silences the pair entirely.
    let spec = ChainSpec { n_qubits: 2, gamma_x: 0.7, gamma_y: 0.7, gamma_z: 0.0 };
    let drive = DriveProfile::Constant { omega0: 0.0, tau_i: 0.0, tau_f: 1.0 };
    let model = ChainModel::new(spec, drive).unwrap();
    let tlp = effective_two_level(&model, pair_of(0, 2).unwrap()).unwrap();
    assert!(tlp.coupling.norm() < 1e-15);
    // The other pair {01, 10} gets the sum instead.
    let tlp = effective_two_level(&model, pair_of(1, 2).unwrap()).unwrap();
    assert!((tlp.coupling - Complex64::new(1.4, 0.0)).norm() < 1e-15);
}

fn reduced_vs_full(n: usize, drive: DriveProfile, spec: ChainSpec, basis_index: usize) -> f64 {
    let model = ChainModel::new(spec, drive).unwrap();
    let pair = pair_of(basis_index, n).unwrap();
    let member = match pair.slot_of(basis_index).unwrap() {
        0 => PairMember::Representative,
        _ => PairMember::Partner,
    };
    let problem = effective_two_level(&model, pair).unwrap();
    let tol = 1e-9;
    let n_samples = 201;
    let reduced = propagate_two_level(&problem, member, tol, n_samples).unwrap();
    let initial = StateVector::basis(n, basis_index).unwrap();
    let full = propagate_full(&model, &initial, tol, n_samples).unwrap();
    max_amplitude_deviation(&reduced, &full).unwrap()
}

#[test]
fn reduced_equals_full_linear_symmetric() {
    let mut r = rng(0xc0de_0003);
    for n in 2..=6 {
        let spec = ChainSpec {
            n_qubits: n,
            gamma_x: r.gen_range(0.3..1.5),
            gamma_y: r.gen_range(-0.8..0.8),
            gamma_z: r.gen_range(-0.5..0.5),
        };
        let drive = DriveProfile::LinearSymmetric { alpha: 1.0, tau_i: -15.0, tau_f: 15.0 };
        let b = r.gen_range(0..(1usize << n));
        let dev = reduced_vs_full(n, drive, spec, b);
        assert!(dev <= 1e-8, "N={n} basis {b}: deviation {dev:e}");
    }
}

#[test]
fn reduced_equals_full_linear_asymmetric() {
    let drive = DriveProfile::LinearAsymmetric { alpha: 2.0, tau_i: 0.0, tau_f: 30.0 };
    let spec = ChainSpec { n_qubits: 4, gamma_x: 1.1, gamma_y: 0.4, gamma_z: 0.2 };
    let dev = reduced_vs_full(4, drive, spec, 0b0110);
    assert!(dev <= 1e-8, "deviation {dev:e}");
}

#[test]
fn reduced_equals_full_tangent() {
    let drive = DriveProfile::Tangent { tangent_scale: 2.5, tau_i: -8.0, tau_f: 8.0 };
    let spec = ChainSpec { n_qubits: 4, gamma_x: 0.8, gamma_y: 0.0, gamma_z: 0.3 };
    let dev = reduced_vs_full(4, drive, spec, 0b0001);
    assert!(dev <= 1e-8, "deviation {dev:e}");
}

#[test]
fn reduced_equals_full_constant() {
    let drive = DriveProfile::Constant { omega0: 0.7, tau_i: 0.0, tau_f: 6.0 };
    let spec = ChainSpec { n_qubits: 5, gamma_x: 1.0, gamma_y: 0.5, gamma_z: 0.4 };
    let dev = reduced_vs_full(5, drive, spec, 0b10110);
    assert!(dev <= 1e-8, "deviation {dev:e}");
}

#[test]
fn population_confined_to_pair() {
    // Start in a random superposition of one pair; nothing may leak out.
    let spec = ChainSpec { n_qubits: 4, gamma_x: 1.0, gamma_y: 0.6, gamma_z: 0.5 };
    let drive = DriveProfile::LinearSymmetric { alpha: 1.0, tau_i: -12.0, tau_f: 12.0 };
    let model = ChainModel::new(spec, drive).unwrap();
    let pair = pair_of(0b0101, 4).unwrap();
    let mut r = rng(0xc0de_0004);
    let mut amps = vec![Complex64::ZERO; 16];
    let raw = random_state(&mut r, 2);
    amps[pair.representative()] = raw[0];
    amps[pair.partner()] = raw[1];
    let initial = StateVector::from_amplitudes(amps).unwrap();
    let traj = propagate_full(&model, &initial, 1e-10, 101).unwrap();
    let leak = leakage_outside_pair(&traj, pair).unwrap();
    assert!(leak <= 1e-10, "leakage {leak:e}");
}

#[test]
fn constants_of_motion_full_model() {
    let spec = ChainSpec { n_qubits: 4, gamma_x: 1.0, gamma_y: 0.7, gamma_z: 0.4 };
    let drive = DriveProfile::LinearSymmetric { alpha: 1.0, tau_i: -50.0, tau_f: 50.0 };
    let model = ChainModel::new(spec, drive).unwrap();
    let report = check_constants_of_motion(&model, 16, 0xc0de_0005).unwrap();
    assert!(report.passed, "max residual {:e}", report.max_residual);
    assert!(report.max_residual <= 1e-12);
}
