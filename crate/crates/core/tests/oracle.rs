mod common;

use approx::assert_abs_diff_eq;
use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{dense_oracle, max_abs_diff, oracle_spectrum, two_excitation_products};
use jch_core::linalg::eigvals_hermitian;
use jch_core::model::{build_hamiltonian, enumerate_basis, ModelParams};
use jch_core::verify::dense_reference_hamiltonian;

#[test]
fn product_scan_counts_two_n_squared() {
    for n in [4, 5, 6] {
        assert_eq!(two_excitation_products(n).len(), 2 * n * n);
    }
}

#[test]
fn sparse_h_matches_oracle_entrywise_n4() {
    for (kappa, lambda) in [(1.0, 0.7), (0.5, 0.3), (-0.8, 1.3)] {
        let p = ModelParams::new(4, 1.1, 0.9, kappa, lambda);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap().to_dense();
        let oracle = dense_oracle(&basis, &p);
        assert!(max_abs_diff(&h, &oracle) < 1e-13);
        assert!(max_abs_diff(&dense_reference_hamiltonian(&basis, &p), &oracle) < 1e-13);
    }
}

#[test]
fn spectrum_matches_oracle_n6() {
    let p = ModelParams::resonant(6, 1.0, 0.7);
    let basis = enumerate_basis(&p).unwrap();
    let ours = eigvals_hermitian(&build_hamiltonian(&basis, &p).unwrap().to_dense()).unwrap().values;
    let theirs = oracle_spectrum(&dense_oracle(&basis, &p));
    assert_eq!(ours.len(), 72);
    for (a, b) in ours.iter().zip(&theirs) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }
}

#[test]
fn apply_matches_oracle_on_random_vectors() {
    let p = ModelParams::new(6, 1.0, 1.2, 0.9, 0.4);
    let basis = enumerate_basis(&p).unwrap();
    let h = build_hamiltonian(&basis, &p).unwrap();
    let oracle = dense_oracle(&basis, &p);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let v = DVector::from_fn(basis.len(), |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let gap = (h.apply_vector(&v).unwrap() - &oracle * &v).camax();
        assert!(gap < 1e-13, "apply gap {gap}");
    }
}

#[test]
fn odd_ring_oracle_n5() {
    let p = ModelParams::resonant(5, 0.6, 0.8);
    let basis = enumerate_basis(&p).unwrap();
    let h = build_hamiltonian(&basis, &p).unwrap().to_dense();
    assert!(max_abs_diff(&h, &dense_oracle(&basis, &p)) < 1e-13);
}
