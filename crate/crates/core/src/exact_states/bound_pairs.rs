//! The two families of exact bound pairs at energy 2ω_a.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{JchError, Result};
use crate::linalg::CVector;
use crate::model::{ModelParams, SparseOperator, StateVector, TwoExcitationBasis};
use crate::spin_chain::{split_parity, SpinChainHamiltonian, SpinProjection, SpinSite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairFamily {
    Psi,
    Phi,
}

impl PairFamily {
    pub fn name(self) -> &'static str {
        match self {
            Self::Psi => "psi",
            Self::Phi => "phi",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundPairState {
    pub family: PairFamily,
    pub j: usize,
    /// Normalized, in the canonical two-excitation basis.
    pub state: StateVector,
    /// Ω_j for φ_j; 2 for ψ_j (squared weight per anchor site).
    pub omega_j: f64,
    pub a_j: f64,
}

impl BoundPairState {
    /// (−1)^j for φ_j, the spin-chain parity of its support. ψ_j lies
    /// outside the chain and reports 0.
    pub fn parity(&self) -> i8 {
        match self.family {
            PairFamily::Psi => 0,
            PairFamily::Phi => {
                if self.j.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

pub fn a_coefficient(j: usize) -> f64 {
    if j == 0 {
        2.0
    } else {
        1.0
    }
}

/// Ω_j = 2a_j² + 8(λ/κ)² + 2.
pub fn omega_normalization(j: usize, ratio: f64) -> f64 {
    let a = a_coefficient(j);
    2.0 * a * a + 8.0 * ratio * ratio + 2.0
}

fn staggered(l: usize) -> f64 {
    if l.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// ψ_j ∝ Σ_l (−1)^l (|1⟩_l|1⟩_{l+j} − |e⟩_l|e⟩_{l+j}), 1 ≤ j ≤ N/2.
pub fn psi_state(basis: &TwoExcitationBasis, params: &ModelParams, j: usize) -> Result<BoundPairState> {
    params.validate()?;
    params.require_even()?;
    params.require_resonant("psi_j")?;
    let n = params.n_sites;
    if j == 0 || j > n / 2 {
        return Err(JchError::OutOfRange {
            what: "psi separation j",
            value: j as i64,
            range: format!("1..={}", n / 2),
        });
    }
    let mut v = basis.zero_vector();
    for l in 0..n {
        let (a, b) = (l as i64, (l + j) as i64);
        let term = &basis.product(&[a, b], &[]) - &basis.product(&[], &[a, b]);
        v = &v + &(&term * staggered(l));
    }
    let state = v
        .normalized()
        .ok_or_else(|| JchError::VanishingState(format!("psi_{j} cancels identically on a ring of {n} sites")))?;
    Ok(BoundPairState { family: PairFamily::Psi, j, state, omega_j: 2.0, a_j: 1.0 })
}

/// φ_j ∝ Σ_l (−1)^l [a_j(|11⟩_{l,l+j} + |ee⟩_{l,l+j})
/// − 2(λ/κ)(|1⟩_l|e⟩_{l+j+1} − |e⟩_l|1⟩_{l+j+1}) + |11⟩_{l,l+j+2} + |ee⟩_{l,l+j+2}],
/// 0 ≤ j ≤ N/2 − 2. At j = 0 the first group is a_0 a†_l a†_l = 2√2 |2⟩_l.
pub fn phi_state(basis: &TwoExcitationBasis, params: &ModelParams, j: usize) -> Result<BoundPairState> {
    params.validate()?;
    params.require_even()?;
    params.require_resonant("phi_j")?;
    if params.kappa == 0.0 {
        return Err(JchError::UnsupportedRegime("phi_j needs kappa != 0 (amplitude lambda/kappa)".into()));
    }
    let n = params.n_sites;
    if j + 2 > n / 2 {
        return Err(JchError::OutOfRange {
            what: "phi separation j",
            value: j as i64,
            range: format!("0..={}", n / 2 - 2),
        });
    }
    let ratio = params.lambda / params.kappa;
    let a = a_coefficient(j);
    let pair = |l: i64, d: i64| &basis.product(&[l, l + d], &[]) + &basis.product(&[], &[l, l + d]);
    let mut v = basis.zero_vector();
    for l in 0..n {
        let li = l as i64;
        let (ji, far) = (j as i64, (j + 1) as i64);
        let singlet = &basis.product(&[li], &[li + far]) - &basis.product(&[li + far], &[li]);
        let term = &(&(&pair(li, ji) * a) - &(&singlet * (2.0 * ratio))) + &pair(li, ji + 2);
        v = &v + &(&term * staggered(l));
    }
    let state = v
        .normalized()
        .ok_or_else(|| JchError::VanishingState(format!("phi_{j} cancels identically on a ring of {n} sites")))?;
    Ok(BoundPairState { family: PairFamily::Phi, j, state, omega_j: omega_normalization(j, ratio), a_j: a })
}

/// Σ_l (−1)^l (|1⟩_l|e⟩_{l+j+1} − |e⟩_l|1⟩_{l+j+1})/√(2N), the λ/κ → ∞
/// limit of φ_j.
pub fn photon_atom_singlet(basis: &TwoExcitationBasis, j: usize) -> StateVector {
    let n = basis.n_sites();
    let mut v = basis.zero_vector();
    for l in 0..n {
        let (li, far) = (l as i64, (j + 1) as i64);
        let term = &basis.product(&[li], &[li + far]) - &basis.product(&[li + far], &[li]);
        v = &v + &(&term * staggered(l));
    }
    v.normalized().expect("separation below N/2 keeps the singlet nonzero")
}

/// ‖(H − E)|v⟩‖.
pub fn eigen_residual(h: &SparseOperator, v: &StateVector, energy: f64) -> Result<f64> {
    let hv = h.apply(v)?;
    Ok((&hv - &(v * energy)).norm())
}

/// φ_j in the spin-chain basis, in the site order of `hso`:
/// a_j(|j,+⟩ − |j,−⟩) + 2√2 i(λ/κ)|j+1,0⟩ − (|j+2,+⟩ − |j+2,−⟩), normalized.
pub fn phi_spin_vector(params: &ModelParams, j: usize, hso: &SpinChainHamiltonian) -> Result<CVector> {
    if params.kappa == 0.0 {
        return Err(JchError::UnsupportedRegime("phi_j needs kappa != 0".into()));
    }
    if j + 2 > hso.j_max {
        return Err(JchError::OutOfRange {
            what: "phi separation j",
            value: j as i64,
            range: format!("0..={}", hso.j_max - 2),
        });
    }
    let ratio = params.lambda / params.kappa;
    let mut v = CVector::zeros(hso.sites.len());
    let at = |j, s| hso.index_of(SpinSite { j, s }).expect("site on chain");
    let a = Complex64::new(a_coefficient(j), 0.0);
    v[at(j, SpinProjection::Plus)] += a;
    v[at(j, SpinProjection::Minus)] -= a;
    v[at(j + 1, SpinProjection::Zero)] += Complex64::new(0.0, 2.0 * SQRT_2 * ratio);
    v[at(j + 2, SpinProjection::Plus)] -= 1.0;
    v[at(j + 2, SpinProjection::Minus)] += 1.0;
    let norm = v.norm();
    Ok(v / Complex64::new(norm, 0.0))
}

/// Result of applying the parity half that should annihilate φ_j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphCheck {
    /// +1: H_e (even j), −1: H_o (odd j).
    pub parity: i8,
    /// ‖H_half φ_j‖.
    pub residual: f64,
    /// Weight of φ_j outside that half; zero when the support is pure.
    pub leakage: f64,
}

pub fn phi_graph_check(params: &ModelParams, j: usize, hso: &SpinChainHamiltonian) -> Result<GraphCheck> {
    let v = phi_spin_vector(params, j, hso)?;
    let (odd, even) = split_parity(hso)?;
    let half = if j.is_multiple_of(2) { even } else { odd };
    let restricted = CVector::from_iterator(half.indices.len(), half.indices.iter().map(|&i| v[i]));
    let leakage = (0..v.len()).filter(|i| hso.parity[*i] != half.parity).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
    Ok(GraphCheck { parity: half.parity, residual: (&half.matrix * restricted).norm(), leakage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, enumerate_basis};
    use crate::spin_chain::build_h_so;

    fn setup(n: usize, kappa: f64, lambda: f64) -> (TwoExcitationBasis, SparseOperator, ModelParams) {
        let p = ModelParams::resonant(n, kappa, lambda);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        (basis, h, p)
    }

    #[test]
    fn omega_at_equal_couplings() {
        assert_eq!(omega_normalization(0, 1.0), 18.0);
        assert_eq!(omega_normalization(3, 1.0), 12.0);
    }

    #[test]
    fn psi_family_is_exact() {
        for lambda in [0.0, 0.3, 0.7] {
            let (basis, h, p) = setup(8, 0.5, lambda);
            for j in 1..=4 {
                let s = psi_state(&basis, &p, j).unwrap();
                assert!((s.state.norm() - 1.0).abs() < 1e-13);
                assert!(eigen_residual(&h, &s.state, 2.0).unwrap() < 1e-12, "j={j} lambda={lambda}");
            }
        }
    }

    #[test]
    fn psi_orthonormal() {
        let (basis, _, p) = setup(8, 0.5, 0.3);
        let states: Vec<_> = (1..4).map(|j| psi_state(&basis, &p, j).unwrap().state).collect();
        for (i, a) in states.iter().enumerate() {
            for (k, b) in states.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((a.inner(b).norm() - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn antipodal_psi_vanishes_on_odd_half_ring() {
        let (basis, _, p) = setup(10, 0.5, 0.3);
        assert!(matches!(psi_state(&basis, &p, 5), Err(JchError::VanishingState(_))));
        assert!(psi_state(&basis, &p, 6).is_err());
        let odd = ModelParams::resonant(9, 0.5, 0.3);
        assert!(psi_state(&enumerate_basis(&odd).unwrap(), &odd, 2).is_err());
    }

    #[test]
    fn phi_family_is_exact() {
        let (basis, h, p) = setup(10, 1.0, 0.6);
        for j in 0..=3 {
            let s = phi_state(&basis, &p, j).unwrap();
            assert!(eigen_residual(&h, &s.state, 2.0).unwrap() < 1e-12, "j={j}");
        }
        assert!(phi_state(&basis, &p, 4).is_err());
        let detuned = ModelParams::new(10, 1.0, 1.1, 1.0, 0.6);
        assert!(matches!(phi_state(&basis, &detuned, 1), Err(JchError::UnsupportedRegime(_))));
    }

    #[test]
    fn phi_strong_coupling_is_polariton_singlet() {
        let (basis, _, p) = setup(10, 1.0, 100.0);
        for j in 0..=3 {
            let s = phi_state(&basis, &p, j).unwrap();
            let ov = s.state.inner(&photon_atom_singlet(&basis, j)).norm_sqr();
            // Singlet weight is 8(λ/κ)²/Ω_j away from the antipode; a_0 = 2
            // makes j = 0 the smallest.
            if j < 3 {
                assert!((ov - 8.0e4 / s.omega_j).abs() < 1e-12, "j={j} overlap {ov}");
            }
            if j > 0 {
                assert!(ov > 0.9999);
            }
        }
    }

    #[test]
    fn phi_spin_vector_lives_on_one_half() {
        let p = ModelParams::resonant(10, 1.0, 0.7);
        let hso = build_h_so(&p, 8).unwrap();
        for j in 0..=6 {
            let g = phi_graph_check(&p, j, &hso).unwrap();
            assert_eq!(g.parity, if j % 2 == 0 { 1 } else { -1 });
            assert!(g.residual < 1e-13 && g.leakage < 1e-15, "j={j} {g:?}");
        }
    }
}
