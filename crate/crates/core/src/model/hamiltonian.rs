//! The JCH Hamiltonian H = H_AP + H_JC + H_C on a periodic ring.

use num_complex::Complex64;

use super::basis::TwoExcitationBasis;
use super::fock::{FockBasis, Occupation};
use super::operator::{OperatorBuilder, SparseOperator};
use super::params::ModelParams;
use crate::error::Result;

/// Which parts of H to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Terms {
    /// ω_a Σ a†a + ω_b Σ |e⟩⟨e|
    pub free: bool,
    /// λ Σ (a† σ⁻ + h.c.)
    pub jaynes_cummings: bool,
    /// −κ Σ (a†_l a_{l+1} + h.c.)
    pub hopping: bool,
}

impl Terms {
    pub const ALL: Terms = Terms { free: true, jaynes_cummings: true, hopping: true };
    pub const FREE: Terms = Terms { free: true, jaynes_cummings: false, hopping: false };
    pub const HOPPING: Terms = Terms { free: false, jaynes_cummings: false, hopping: true };
}

/// Full H over the canonical two-excitation basis.
pub fn build_hamiltonian(basis: &TwoExcitationBasis, params: &ModelParams) -> Result<SparseOperator> {
    build_terms(basis.fock(), params, Terms::ALL)
}

/// Selected terms of H over any [`FockBasis`] on the same ring. Transitions
/// leaving the basis (photon cap) are dropped.
pub fn build_terms(basis: &FockBasis, params: &ModelParams, terms: Terms) -> Result<SparseOperator> {
    let n = basis.n_sites();
    let mut b = OperatorBuilder::new(basis.len());
    let push = |b: &mut OperatorBuilder, col: usize, target: Option<(Occupation, f64)>, scale: f64| {
        if let Some((occ, amp)) = target {
            if let Some(row) = basis.index_of(&occ) {
                b.add(row, col, Complex64::new(scale * amp, 0.0));
            }
        }
    };
    for (col, occ) in basis.states().iter().enumerate() {
        if terms.free {
            let e = params.omega_a * occ.photon_number() as f64 + params.omega_b * occ.atom_excitations() as f64;
            if e != 0.0 {
                b.add(col, col, Complex64::new(e, 0.0));
            }
        }
        if terms.jaynes_cummings && params.lambda != 0.0 {
            for site in 0..n {
                push(&mut b, col, occ.atom_to_photon(site), params.lambda);
                push(&mut b, col, occ.photon_to_atom(site), params.lambda);
            }
        }
        if terms.hopping && params.kappa != 0.0 {
            for site in 0..n {
                let next = (site + 1) % n;
                push(&mut b, col, occ.hop(next, site), -params.kappa);
                push(&mut b, col, occ.hop(site, next), -params.kappa);
            }
        }
    }
    Ok(b.build(true))
}

/// max |[H, N̂]_rc| = max |(N_r − N_c) H_rc| over the stored entries. On the
/// pure two-excitation basis this is identically zero; a nonzero value
/// flags an entry connecting different excitation sectors.
pub fn excitation_number_check(op: &SparseOperator, basis: &FockBasis) -> f64 {
    op.entries()
        .iter()
        .map(|&(r, c, v)| {
            let dn = basis.excitation(r) as f64 - basis.excitation(c) as f64;
            (dn * v).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::basis::{enumerate_basis, BasisState};

    #[test]
    fn free_part_is_diagonal() {
        let p = ModelParams::new(5, 1.3, 0.7, 0.0, 0.0);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        let allowed = [2.0 * 1.3, 1.3 + 0.7, 2.0 * 0.7];
        for &(r, c, v) in h.entries() {
            assert_eq!(r, c);
            assert!(allowed.iter().any(|a| (a - v.re).abs() < 1e-15));
        }
        assert_eq!(h.nnz(), basis.len());
    }

    #[test]
    fn double_photon_hopping_element() {
        let kappa = 0.37;
        let p = ModelParams::new(6, 1.0, 1.0, kappa, 0.2);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        // a†_i a_{i+1} |1,1⟩ = √2 |2,0⟩ by hand.
        for i in 0..6 {
            let two = basis.index_of(&BasisState::DoublePhoton(i)).unwrap();
            let pair = basis.index_of(&BasisState::photon_pair(i, (i + 1) % 6)).unwrap();
            let v = h.get(two, pair);
            assert!((v.re + 2f64.sqrt() * kappa).abs() < 1e-15, "{v}");
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn jaynes_cummings_on_doubly_occupied_cavity() {
        let p = ModelParams::new(4, 1.0, 1.0, 0.0, 0.5);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        let two = basis.index_of(&BasisState::DoublePhoton(2)).unwrap();
        let mixed = basis.index_of(&BasisState::PhotonAtom { photon: 2, atom: 2 }).unwrap();
        assert!((h.get(two, mixed).re - 0.5 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hermitian_real_and_number_conserving() {
        let p = ModelParams::new(6, 1.0, 1.2, 0.5, 0.3);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        assert!(h.check_hermitian());
        assert!(h.max_imaginary() < 1e-14);
        assert_eq!(excitation_number_check(&h, basis.fock()), 0.0);
        let free = build_terms(basis.fock(), &p, Terms::FREE).unwrap();
        assert_eq!(excitation_number_check(&free, basis.fock()), 0.0);
    }

    #[test]
    fn fault_injection_is_detected() {
        let p = ModelParams::new(4, 1.0, 1.0, 0.8, 0.6);
        let mixed = FockBasis::enumerate(4, &[1, 2], 2, true);
        let h = build_terms(&mixed, &p, Terms::ALL).unwrap();
        assert_eq!(excitation_number_check(&h, &mixed), 0.0);
        let one = (0..mixed.len()).find(|&i| mixed.excitation(i) == 1).unwrap();
        let two = (0..mixed.len()).find(|&i| mixed.excitation(i) == 2).unwrap();
        let bad = h.with_entry(two, one, Complex64::new(0.0, 0.0123));
        assert!((excitation_number_check(&bad, &mixed) - 0.0123).abs() < 1e-15);
    }
}
