//! Oracles shared by the integration tests, written without the library's
//! Fock machinery.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

use jch_core::model::{ModelParams, Occupation, TwoExcitationBasis};

/// One product state of the ring: photon count and atom level per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Product {
    pub photons: Vec<u8>,
    pub atoms: Vec<u8>,
}

/// Every product state with two excitations, found by scanning the full
/// (photon cap 2) × (two-level atom) tensor space site by site.
pub fn two_excitation_products(n: usize) -> Vec<Product> {
    let mut out = Vec::new();
    let local = 6usize;
    for code in 0..local.pow(n as u32) {
        let mut c = code;
        let mut photons = vec![0u8; n];
        let mut atoms = vec![0u8; n];
        for s in 0..n {
            let d = c % local;
            c /= local;
            photons[s] = (d / 2) as u8;
            atoms[s] = (d % 2) as u8;
        }
        let total: u32 = photons.iter().chain(atoms.iter()).map(|&x| x as u32).sum();
        if total == 2 {
            out.push(Product { photons, atoms });
        }
    }
    out
}

/// ⟨a|H|b⟩ from the operator algebra: a_i|n⟩ = √n|n−1⟩, a†_i|n⟩ = √(n+1)|n+1⟩,
/// σ±_i on the atom, H = ω_a Σ n + ω_b Σ σ⁺σ⁻ + λ Σ(a†σ⁻ + aσ⁺) − κ Σ(a†_i a_{i+1} + a†_{i+1} a_i).
pub fn element(a: &Product, b: &Product, p: &ModelParams) -> f64 {
    let n = p.n_sites;
    let mut h = 0.0;
    if a == b {
        h += p.omega_a * b.photons.iter().map(|&x| x as f64).sum::<f64>();
        h += p.omega_b * b.atoms.iter().map(|&x| x as f64).sum::<f64>();
    }
    for s in 0..n {
        // a†_s σ⁻_s
        if b.atoms[s] == 1 {
            let mut c = b.clone();
            c.atoms[s] = 0;
            c.photons[s] += 1;
            if &c == a {
                h += p.lambda * (c.photons[s] as f64).sqrt();
            }
        }
        // a_s σ⁺_s
        if b.atoms[s] == 0 && b.photons[s] > 0 {
            let mut c = b.clone();
            let amp = (c.photons[s] as f64).sqrt();
            c.photons[s] -= 1;
            c.atoms[s] = 1;
            if &c == a {
                h += p.lambda * amp;
            }
        }
        let t = (s + 1) % n;
        for (to, from) in [(s, t), (t, s)] {
            if b.photons[from] > 0 {
                let mut c = b.clone();
                let mut amp = (c.photons[from] as f64).sqrt();
                c.photons[from] -= 1;
                amp *= (c.photons[to] as f64 + 1.0).sqrt();
                c.photons[to] += 1;
                if &c == a {
                    h -= p.kappa * amp;
                }
            }
        }
    }
    h
}

/// Library basis position of a product state.
pub fn library_index(basis: &TwoExcitationBasis, s: &Product) -> usize {
    let occ = Occupation::from_parts(s.photons.clone(), s.atoms.iter().map(|&x| x == 1).collect());
    basis.fock().index_of(&occ).expect("product state lies in the library basis")
}

/// Dense H as Σ |a⟩⟨a|H|b⟩⟨b|, laid out in the library's basis order.
pub fn dense_oracle(basis: &TwoExcitationBasis, p: &ModelParams) -> DMatrix<Complex64> {
    let products = two_excitation_products(p.n_sites);
    assert_eq!(products.len(), basis.len());
    let idx: Vec<usize> = products.iter().map(|s| library_index(basis, s)).collect();
    let mut h = DMatrix::zeros(basis.len(), basis.len());
    for (ia, a) in products.iter().enumerate() {
        for (ib, b) in products.iter().enumerate() {
            let v = element(a, b, p);
            if v != 0.0 {
                h[(idx[ia], idx[ib])] = Complex64::new(v, 0.0);
            }
        }
    }
    h
}

/// Ascending eigenvalues straight from nalgebra.
pub fn oracle_spectrum(h: &DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = h.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// J_l of the analytic ladder at resonance-free frequencies, evaluated by
/// hand: hop amplitude from column j to j + 1.
pub fn ladder_hopping(p: &ModelParams, k: f64) -> [Complex64; 4] {
    let half = Complex64::from_polar(1.0, k / 2.0);
    [
        -p.kappa * half,
        Complex64::new(-2.0 * p.kappa * (k / 2.0).cos(), 0.0),
        -p.kappa * half.conj(),
        Complex64::new(0.0, 0.0),
    ]
}
