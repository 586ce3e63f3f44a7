//! η-pairing: η_j = Σ_l (−1)^l a†_l a†_{l+j} applied to the vacuum.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{JchError, Result};
use crate::linalg::CVector;
use crate::model::{
    build_terms, FockBasis, ModelParams, Occupation, OperatorBuilder, SparseMap, SparseOperator, Terms,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCreationOperator {
    pub n_sites: usize,
    pub j: usize,
}

impl PairCreationOperator {
    pub fn new(n_sites: usize, j: usize) -> Self {
        Self { n_sites, j }
    }

    /// Matrix of η_j from `from` into `to`. Configurations that fall
    /// outside `to` are counted in the returned dropped weight.
    pub fn map(&self, from: &FockBasis, to: &FockBasis) -> (SparseMap, usize) {
        let n = self.n_sites;
        let mut acc: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        let mut dropped = 0;
        for (col, occ) in from.states().iter().enumerate() {
            for l in 0..n {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let (mid, a1) = occ.create_photon((l + self.j) % n);
                let (out, a2) = mid.create_photon(l);
                match to.index_of(&out) {
                    Some(row) => *acc.entry((row, col)).or_default() += Complex64::new(sign * a1 * a2, 0.0),
                    None => dropped += 1,
                }
            }
        }
        acc.retain(|_, v| v.norm() > 0.0);
        (SparseMap::new(to.len(), from.len(), acc), dropped)
    }
}

/// (η_j)^n|G⟩ in photon-only bases, with its energy check.
#[derive(Debug, Clone)]
pub struct EtaPairingState {
    pub j: usize,
    pub n: usize,
    pub basis: FockBasis,
    /// Normalized amplitudes over `basis`.
    pub state: CVector,
    /// ‖(η_j)^n|G⟩‖ before normalization.
    pub raw_norm: f64,
    /// ‖(H − 2nω_a)|Ψ_n⟩‖.
    pub residual: f64,
}

/// Largest supported number of pairs.
pub const MAX_PAIRS: usize = 2;

pub fn eta_pairing_state(params: &ModelParams, j: usize, n: usize, photon_cutoff: u8) -> Result<EtaPairingState> {
    params.validate()?;
    params.require_even()?;
    if params.lambda != 0.0 {
        return Err(JchError::NotAnEigenstate(
            "eta pairing states are eigenstates only with the atoms decoupled (lambda = 0)".into(),
        ));
    }
    if n == 0 || n > MAX_PAIRS {
        return Err(JchError::OutOfRange { what: "pair count n", value: n as i64, range: format!("1..={MAX_PAIRS}") });
    }
    if (photon_cutoff as usize) < 2 * n {
        return Err(JchError::Configuration(format!("photon cutoff {photon_cutoff} is below 2n = {}", 2 * n)));
    }
    let sites = params.n_sites;
    let eta = PairCreationOperator::new(sites, j);
    let mut basis = FockBasis::photons_only(sites, 0, photon_cutoff);
    let mut v = CVector::from_element(1, Complex64::new(1.0, 0.0));
    for p in 1..=n {
        let next = FockBasis::photons_only(sites, 2 * p, photon_cutoff);
        let (m, dropped) = eta.map(&basis, &next);
        debug_assert_eq!(dropped, 0);
        v = m.apply_vector(&v)?;
        basis = next;
    }
    let raw_norm = v.norm();
    if raw_norm < 1e-12 {
        return Err(JchError::VanishingState(format!("eta_{j} annihilates the vacuum on a ring of {sites} sites")));
    }
    v /= Complex64::new(raw_norm, 0.0);
    let h = build_terms(&basis, params, Terms::ALL)?;
    let hv = h.apply_vector(&v)?;
    let residual = (hv - &v * Complex64::new(2.0 * n as f64 * params.omega_a, 0.0)).norm();
    Ok(EtaPairingState { j, n, basis, state: v, raw_norm, residual })
}

/// max |η_j K_p − K_{p+2} η_j| with K = H − ω_a Σ a†a, as a map from the
/// full p-excitation sector (photons and atoms) to the (p+2) sector at
/// λ = 0. The photon cap p+2 never truncates either sector.
pub fn eta_commutator(params: &ModelParams, j: usize, excitations: usize) -> Result<f64> {
    params.validate()?;
    if params.lambda != 0.0 {
        return Err(JchError::NotAnEigenstate("the eta commutator vanishes only at lambda = 0".into()));
    }
    let n = params.n_sites;
    let cutoff = (excitations + 2) as u8;
    let lower = FockBasis::enumerate(n, &[excitations], cutoff, true);
    let upper = FockBasis::enumerate(n, &[excitations + 2], cutoff, true);
    let shifted = ModelParams { omega_a: 0.0, ..*params };
    let k_low = build_terms(&lower, &shifted, Terms::ALL)?;
    let k_up = build_terms(&upper, &shifted, Terms::ALL)?;
    let (eta, dropped) = PairCreationOperator::new(n, j).map(&lower, &upper);
    debug_assert_eq!(dropped, 0);
    let mut worst: f64 = 0.0;
    for col in 0..lower.len() {
        let mut e = CVector::zeros(lower.len());
        e[col] = Complex64::new(1.0, 0.0);
        let diff = eta.apply_vector(&k_low.apply_vector(&e)?)? - k_up.apply_vector(&eta.apply_vector(&e)?)?;
        worst = worst.max(diff.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseHubbardParams {
    pub n_sites: usize,
    pub kappa: f64,
    pub u: f64,
}

impl BoseHubbardParams {
    pub fn new(n_sites: usize, kappa: f64, u: f64) -> Self {
        Self { n_sites, kappa, u }
    }

    /// −κ Σ (a†_l a_{l+1} + h.c.) + (U/2) Σ n_l(n_l − 1) on a photon-only basis.
    pub fn hamiltonian(&self, basis: &FockBasis) -> SparseOperator {
        let n = self.n_sites;
        let mut b = OperatorBuilder::new(basis.len());
        let hop = |b: &mut OperatorBuilder, col: usize, t: Option<(Occupation, f64)>| {
            if let Some((occ, amp)) = t {
                if let Some(row) = basis.index_of(&occ) {
                    b.add(row, col, Complex64::new(-self.kappa * amp, 0.0));
                }
            }
        };
        for (col, occ) in basis.states().iter().enumerate() {
            let onsite: f64 = occ.photon_counts().iter().map(|&m| m as f64 * (m as f64 - 1.0)).sum();
            if onsite != 0.0 {
                b.add(col, col, Complex64::new(0.5 * self.u * onsite, 0.0));
            }
            for s in 0..n {
                hop(&mut b, col, occ.hop((s + 1) % n, s));
                hop(&mut b, col, occ.hop(s, (s + 1) % n));
            }
        }
        b.build(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoseHubbardEtaReport {
    /// ‖[η_j, H_BH]|G⟩‖.
    pub commutator_residual: f64,
    /// ‖η_j|G⟩‖.
    pub norm: f64,
    /// Rayleigh quotient of η_j|G⟩; 0 when η_j|G⟩ vanishes.
    pub energy: f64,
    /// ‖(H_BH − E)η_j|G⟩‖/‖η_j|G⟩‖; 0 when η_j|G⟩ vanishes.
    pub eigen_residual: f64,
}

pub fn bose_hubbard_eta_check(bh: &BoseHubbardParams, j: usize) -> Result<BoseHubbardEtaReport> {
    if !bh.n_sites.is_multiple_of(2) {
        return Err(JchError::OddRing(bh.n_sites));
    }
    let vacuum = FockBasis::photons_only(bh.n_sites, 0, 2);
    let pairs = FockBasis::photons_only(bh.n_sites, 2, 2);
    let (eta, _) = PairCreationOperator::new(bh.n_sites, j).map(&vacuum, &pairs);
    let g = CVector::from_element(1, Complex64::new(1.0, 0.0));
    let h0 = bh.hamiltonian(&vacuum);
    let h2 = bh.hamiltonian(&pairs);
    let v = eta.apply_vector(&g)?;
    let commutator = eta.apply_vector(&h0.apply_vector(&g)?)? - h2.apply_vector(&v)?;
    let norm = v.norm();
    let (energy, eigen_residual) = if norm > 1e-14 {
        let hv = h2.apply_vector(&v)?;
        let e = (v.dotc(&hv) / Complex64::new(norm * norm, 0.0)).re;
        (e, (hv - &v * Complex64::new(e, 0.0)).norm() / norm)
    } else {
        (0.0, 0.0)
    };
    Ok(BoseHubbardEtaReport { commutator_residual: commutator.norm(), norm, energy, eigen_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair_is_eigenstate() {
        let p = ModelParams::resonant(6, 0.8, 0.0);
        let s = eta_pairing_state(&p, 1, 1, 2).unwrap();
        assert!(s.residual < 1e-12);
        assert!((s.raw_norm - 6f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn two_pairs_with_cutoff_four() {
        let p = ModelParams::resonant(6, 0.8, 0.0);
        for j in 0..=2 {
            let s = eta_pairing_state(&p, j, 2, 4).unwrap();
            assert!(s.residual < 1e-11, "j={j} residual {}", s.residual);
        }
    }

    #[test]
    fn guards() {
        let p = ModelParams::resonant(6, 0.8, 0.3);
        assert!(matches!(eta_pairing_state(&p, 1, 1, 2), Err(JchError::NotAnEigenstate(_))));
        let q = ModelParams::resonant(6, 0.8, 0.0);
        assert!(eta_pairing_state(&q, 1, 2, 3).is_err());
        assert!(eta_pairing_state(&q, 1, 3, 6).is_err());
        assert!(matches!(eta_pairing_state(&q, 3, 1, 2), Err(JchError::VanishingState(_))));
    }

    #[test]
    fn commutator_vanishes_at_zero_coupling() {
        let p = ModelParams::new(6, 1.0, 1.3, 0.8, 0.0);
        for j in 0..=3 {
            for exc in 0..=2 {
                assert!(eta_commutator(&p, j, exc).unwrap() < 1e-12, "j={j} exc={exc}");
            }
        }
    }

    #[test]
    fn bose_hubbard_single_pair() {
        for u in [0.0, 3.0] {
            for j in 1..=3 {
                let r = bose_hubbard_eta_check(&BoseHubbardParams::new(6, 1.0, u), j).unwrap();
                assert!(r.commutator_residual < 1e-12, "u={u} j={j}");
                assert!(r.eigen_residual < 1e-12);
            }
        }
        // η_0 creates doublons, which pick up U: still an eigenstate, at E = U.
        let r0 = bose_hubbard_eta_check(&BoseHubbardParams::new(6, 1.0, 3.0), 0).unwrap();
        assert!((r0.energy - 3.0).abs() < 1e-12 && r0.eigen_residual < 1e-12);
        assert!(r0.commutator_residual > 1.0);
    }
}
