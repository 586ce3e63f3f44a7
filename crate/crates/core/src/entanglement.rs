//! Two-atom reduced densities, concurrence, and the polariton picture.
//!
//! Atom pair ordering is {|gg⟩, |ge⟩, |eg⟩, |ee⟩} with the first label on
//! site l, i.e. index 2·e_l + e_l′.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{JchError, Result};
use crate::linalg::{eig_hermitian, eigvals_hermitian, CMatrix};
use crate::model::{Occupation, StateVector, TwoExcitationBasis};

#[derive(Debug, Clone, PartialEq)]
pub struct TwoAtomDensity {
    pub l: usize,
    pub l_prime: usize,
    pub rho: Matrix4<Complex64>,
}

impl TwoAtomDensity {
    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (self.rho - self.rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let spec = eigvals_hermitian(&to_dense(&self.rho))?;
        Ok(spec.values[0])
    }

    pub fn correlators(&self) -> CorrelatorSet {
        let r = &self.rho;
        CorrelatorSet {
            z: r[(1, 2)],
            u_plus: r[(3, 3)].re,
            u_minus: r[(0, 0)].re,
            excited_l: (r[(2, 2)] + r[(3, 3)]).re,
            excited_l_prime: (r[(1, 1)] + r[(3, 3)]).re,
        }
    }
}

/// ⟨σ⁺_l σ⁻_l′⟩, ⟨n_l n_l′⟩ and ⟨(1−n_l)(1−n_l′)⟩, with the single-site
/// populations ⟨n_l⟩, ⟨n_l′⟩ alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelatorSet {
    #[serde(serialize_with = "serialize_complex")]
    pub z: Complex64,
    pub u_plus: f64,
    pub u_minus: f64,
    pub excited_l: f64,
    pub excited_l_prime: f64,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl CorrelatorSet {
    /// |z|² − ⟨σ⁺_lσ⁻_l⟩⟨σ⁺_l′σ⁻_l′⟩ restricted to the |ge⟩, |eg⟩ block;
    /// never positive for a valid density.
    pub fn cauchy_schwarz_gap(&self) -> f64 {
        let ge = self.excited_l_prime - self.u_plus;
        let eg = self.excited_l - self.u_plus;
        self.z.norm_sqr() - ge * eg
    }

    /// 2·max(0, |z| − √(u⁺u⁻)).
    pub fn concurrence(&self) -> f64 {
        2.0 * (self.z.norm() - (self.u_plus.max(0.0) * self.u_minus.max(0.0)).sqrt()).max(0.0)
    }
}

fn to_dense(m: &Matrix4<Complex64>) -> CMatrix {
    CMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

/// Unnormalized two-atom vectors, one per configuration of the traced-out
/// photons and atoms, so that ρ = Σ |w⟩⟨w|. Ordered by environment.
pub fn atom_pair_ensemble(
    state: &StateVector,
    basis: &TwoExcitationBasis,
    l: usize,
    l_prime: usize,
) -> Result<Vec<[Complex64; 4]>> {
    let n = basis.n_sites();
    if l == l_prime || l >= n || l_prime >= n {
        return Err(JchError::Configuration(format!(
            "atom pair ({l}, {l_prime}) must be two distinct sites below {n}"
        )));
    }
    if state.dim() != basis.len() {
        return Err(JchError::DimensionMismatch { expected: basis.len(), found: state.dim() });
    }
    let mut groups: BTreeMap<Occupation, [Complex64; 4]> = BTreeMap::new();
    for (i, occ) in basis.fock().states().iter().enumerate() {
        let amp = state.amplitudes()[i];
        if amp.norm() == 0.0 {
            continue;
        }
        let idx = 2 * occ.atom_excited(l) as usize + occ.atom_excited(l_prime) as usize;
        let mut atoms = occ.atom_flags().to_vec();
        atoms[l] = false;
        atoms[l_prime] = false;
        let env = Occupation::from_parts(occ.photon_counts().to_vec(), atoms);
        groups.entry(env).or_insert([Complex64::new(0.0, 0.0); 4])[idx] += amp;
    }
    Ok(groups.into_values().collect())
}

/// Partial trace over all photons and every atom except those on l and l′.
pub fn reduce_two_atoms(
    state: &StateVector,
    basis: &TwoExcitationBasis,
    l: usize,
    l_prime: usize,
) -> Result<TwoAtomDensity> {
    let mut rho = Matrix4::<Complex64>::zeros();
    for amps in atom_pair_ensemble(state, basis, l, l_prime)? {
        for a in 0..4 {
            for b in 0..4 {
                rho[(a, b)] += amps[a] * amps[b].conj();
            }
        }
    }
    Ok(TwoAtomDensity { l, l_prime, rho })
}

/// Wootters concurrence max(0, s₁ − s₂ − s₃ − s₄) of ρ = Σ |w⟩⟨w|. The s_i
/// are the singular values of τ = Wᵀ (σ_y⊗σ_y) W, which equal the square
/// roots of the eigenvalues of ρ ρ̃ without taking roots of tiny numbers.
pub fn wootters_from_ensemble(ensemble: &[[Complex64; 4]]) -> f64 {
    if ensemble.is_empty() {
        return 0.0;
    }
    let w = CMatrix::from_fn(4, ensemble.len(), |r, c| ensemble[c][r]);
    // σ_y⊗σ_y in this ordering is the anti-diagonal (−1, 1, 1, −1).
    let mut flip = CMatrix::zeros(4, 4);
    for (r, s) in [(0, -1.0), (1, 1.0), (2, 1.0), (3, -1.0)] {
        flip[(r, 3 - r)] = Complex64::new(s, 0.0);
    }
    let tau = w.transpose() * flip * &w;
    let mut s: Vec<f64> = tau.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s.resize(s.len().max(4), 0.0);
    (s[0] - s[1] - s[2] - s[3]).max(0.0)
}

/// Wootters concurrence of an arbitrary two-qubit density, through its
/// eigen-ensemble.
pub fn wootters_concurrence(rho: &Matrix4<Complex64>) -> Result<f64> {
    let spec = eig_hermitian(&to_dense(rho))?;
    let vecs = spec.vectors.as_ref().expect("eigenvectors requested");
    let ensemble: Vec<[Complex64; 4]> = spec
        .values
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0.0)
        .map(|(i, &p)| std::array::from_fn(|r| vecs[(r, i)] * p.sqrt()))
        .collect();
    Ok(wootters_from_ensemble(&ensemble))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrenceReport {
    /// From the correlators z, u±.
    pub formula: f64,
    /// Spin-flip construction on the full ρ.
    pub wootters: f64,
    pub correlators: CorrelatorSet,
}

pub fn concurrence(
    state: &StateVector,
    basis: &TwoExcitationBasis,
    l: usize,
    l_prime: usize,
) -> Result<ConcurrenceReport> {
    let ensemble = atom_pair_ensemble(state, basis, l, l_prime)?;
    let rho = reduce_two_atoms(state, basis, l, l_prime)?;
    let correlators = rho.correlators();
    Ok(ConcurrenceReport {
        formula: correlators.concurrence(),
        wootters: wootters_from_ensemble(&ensemble),
        correlators,
    })
}

/// Amplitudes on |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩ of sites (l, l′), where
/// |↑⟩ = (i|1⟩ + |e⟩)/√2 and |↓⟩ = (i|1⟩ − |e⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonComponents {
    /// Normalized within the captured sector, first nonzero entry real
    /// positive. All zero when `degenerate`.
    pub amplitudes: [Complex64; 4],
    /// Weight of the state on one-excitation-per-site configurations of
    /// (l, l′) with everything else empty.
    pub captured_weight: f64,
    pub degenerate: bool,
}

/// Captured weight below this counts as no support.
pub const CAPTURE_THRESHOLD: f64 = 1e-14;

pub fn polariton_components(
    state: &StateVector,
    basis: &TwoExcitationBasis,
    l: usize,
    l_prime: usize,
) -> Result<PolaritonComponents> {
    if l == l_prime || l >= basis.n_sites() || l_prime >= basis.n_sites() {
        return Err(JchError::Configuration(format!("site pair ({l}, {l_prime}) must be two distinct ring sites")));
    }
    let (li, lpi) = (l as i64, l_prime as i64);
    // Local order: photon, atom.
    let amp = |v: &StateVector| -> Complex64 {
        let i = v.amplitudes().iter().position(|z| z.norm() > 0.0).expect("product state");
        state.amplitudes()[i]
    };
    let c = [
        [amp(&basis.product(&[li, lpi], &[])), amp(&basis.product(&[li], &[lpi]))],
        [amp(&basis.product(&[lpi], &[li])), amp(&basis.product(&[], &[li, lpi]))],
    ];
    let captured_weight: f64 = c.iter().flatten().map(|z| z.norm_sqr()).sum();
    if captured_weight < CAPTURE_THRESHOLD {
        log::debug!("state has no polariton-pair support on sites ({l}, {l_prime})");
        return Ok(PolaritonComponents {
            amplitudes: [Complex64::new(0.0, 0.0); 4],
            captured_weight,
            degenerate: true,
        });
    }
    let h = FRAC_1_SQRT_2;
    // ⟨↑| and ⟨↓| on (photon, atom).
    let up = [Complex64::new(0.0, -h), Complex64::new(h, 0.0)];
    let down = [Complex64::new(0.0, -h), Complex64::new(-h, 0.0)];
    let bras = [(up, up), (up, down), (down, up), (down, down)];
    let scale = 1.0 / captured_weight.sqrt();
    let mut amplitudes = [Complex64::new(0.0, 0.0); 4];
    for (k, (a, b)) in bras.iter().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for x in 0..2 {
            for y in 0..2 {
                s += a[x] * b[y] * c[x][y];
            }
        }
        amplitudes[k] = s * scale;
    }
    if let Some(first) = amplitudes.iter().find(|z| z.norm() > 1e-12).copied() {
        let phase = first.conj() / first.norm();
        for z in &mut amplitudes {
            *z *= phase;
        }
    }
    Ok(PolaritonComponents { amplitudes, captured_weight, degenerate: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    /// Amplitudes on |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
    pub fn amplitudes(self) -> [f64; 4] {
        let h = FRAC_1_SQRT_2;
        match self {
            Self::PhiPlus => [h, 0.0, 0.0, h],
            Self::PhiMinus => [h, 0.0, 0.0, -h],
            Self::PsiPlus => [0.0, h, h, 0.0],
            Self::PsiMinus => [0.0, h, -h, 0.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PhiPlus => "phi_plus",
            Self::PhiMinus => "phi_minus",
            Self::PsiPlus => "psi_plus",
            Self::PsiMinus => "psi_minus",
        }
    }
}

/// |⟨Bell|captured⟩|² with the captured polariton sector normalized.
pub fn bell_overlap(
    state: &StateVector,
    basis: &TwoExcitationBasis,
    l: usize,
    l_prime: usize,
    which: BellState,
) -> Result<f64> {
    let p = polariton_components(state, basis, l, l_prime)?;
    if p.degenerate {
        return Err(JchError::ZeroCapturedWeight);
    }
    let bell = which.amplitudes();
    let ov: Complex64 = p.amplitudes.iter().zip(bell).map(|(z, b)| z * b).sum();
    Ok(ov.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_states::{phi_state, psi_state};
    use crate::model::{enumerate_basis, BasisState, ModelParams};

    fn basis(n: usize) -> TwoExcitationBasis {
        enumerate_basis(&ModelParams::resonant(n, 1.0, 0.7)).unwrap()
    }

    #[test]
    fn atomic_pair_is_pure_ee() {
        let b = basis(6);
        let s = b.ket(BasisState::AtomAtom(1, 4));
        let rho = reduce_two_atoms(&s, &b, 1, 4).unwrap();
        assert_eq!(rho.rho[(3, 3)], Complex64::new(1.0, 0.0));
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        assert!(reduce_two_atoms(&s, &b, 2, 2).is_err());
    }

    #[test]
    fn atomic_singlet_has_unit_concurrence() {
        let b = basis(6);
        // One photon parked on site 3, atoms 1 and 2 in (|eg⟩ − |ge⟩)/√2.
        let s1 = &(&b.product(&[3], &[1]) * FRAC_1_SQRT_2) - &(&b.product(&[3], &[2]) * FRAC_1_SQRT_2);
        let r = concurrence(&s1, &b, 1, 2).unwrap();
        assert!((r.formula - 1.0).abs() < 1e-12 && (r.wootters - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bound_pairs_carry_no_atomic_concurrence() {
        let p = ModelParams::resonant(8, 1.0, 0.7);
        let b = enumerate_basis(&p).unwrap();
        for j in 1..=3 {
            let psi = psi_state(&b, &p, j).unwrap();
            for l in 0..8 {
                let r = concurrence(&psi.state, &b, l, (l + j) % 8).unwrap();
                assert!(r.formula < 1e-12 && r.wootters < 1e-12);
            }
        }
        for j in 0..=2 {
            let phi = phi_state(&b, &p, j).unwrap();
            for l in 0..8 {
                let r = concurrence(&phi.state, &b, l, (l + j + 1) % 8).unwrap();
                assert!(r.formula < 1e-12 && r.wootters < 1e-12);
            }
        }
    }

    #[test]
    fn psi_is_phi_plus_in_polariton_basis() {
        let p = ModelParams::resonant(8, 1.0, 0.7);
        let b = enumerate_basis(&p).unwrap();
        let psi = psi_state(&b, &p, 2).unwrap();
        for l in 0..8 {
            assert!((bell_overlap(&psi.state, &b, l, (l + 2) % 8, BellState::PhiPlus).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn strong_coupling_phi_is_antisymmetric_pair() {
        let p = ModelParams::resonant(8, 1.0, 100.0);
        let b = enumerate_basis(&p).unwrap();
        let phi = phi_state(&b, &p, 1).unwrap();
        let minus = bell_overlap(&phi.state, &b, 0, 2, BellState::PsiMinus).unwrap();
        let phi_minus = bell_overlap(&phi.state, &b, 0, 2, BellState::PhiMinus).unwrap();
        assert!(minus > 0.999);
        assert!(phi_minus < 1e-12);
    }

    #[test]
    fn double_photon_has_no_polariton_support() {
        let b = basis(6);
        let s = b.ket(BasisState::DoublePhoton(0));
        let p = polariton_components(&s, &b, 0, 3).unwrap();
        assert!(p.degenerate && p.captured_weight == 0.0);
        assert!(matches!(bell_overlap(&s, &b, 0, 3, BellState::PhiPlus), Err(JchError::ZeroCapturedWeight)));
    }
}
