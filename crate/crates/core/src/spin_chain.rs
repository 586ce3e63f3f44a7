//! The k = π sector as a spin-1 chain with spin–orbit coupling.
//!
//! Energies in this module are measured from 2ω_a. Each spin site j ≥ 1
//! carries S_z ∈ {+1, 0, −1}; site 0 only has S_z = ±1. Hopping bonds are
//! iκ S_x and on-site terms 2λ S_z, with the √2-modified 0–1 bond and
//! √2 λ S_z on site 0.
//!
//! Parity Π = (−1)^{j+S_z+1} is conserved by every bond, so a truncated
//! chain splits into two halves no matter which column ends it. Each half
//! contains states of both S_z parities on every column and therefore owns
//! a share of every bond, including the terminal one.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{JchError, Result};
use crate::linalg::{max_abs, CMatrix, CVector};
use crate::model::{ModelParams, TwoExcitationBasis};
use crate::symmetry::{ladder_state, LadderSite, MomentumBlock};

/// Cross-parity entries above this make [`split_parity`] fail.
pub const PARITY_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spin1Operators {
    pub sx: Matrix3<f64>,
    pub sz: Matrix3<f64>,
}

impl Default for Spin1Operators {
    fn default() -> Self {
        let r = 1.0 / SQRT_2;
        Self {
            sx: Matrix3::new(0.0, r, 0.0, r, 0.0, r, 0.0, r, 0.0),
            sz: Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 0.0, -1.0)),
        }
    }
}

impl Spin1Operators {
    pub fn new() -> Self {
        Self::default()
    }

    /// S_x (1 − S_z²): connects S_z = ±1 to S_z = 0.
    pub fn sx_transverse(&self) -> Matrix3<f64> {
        self.sx * (Matrix3::identity() - self.sz * self.sz)
    }

    /// S_x S_z².
    pub fn sx_sz2(&self) -> Matrix3<f64> {
        self.sx * self.sz * self.sz
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinProjection {
    Plus,
    Zero,
    Minus,
}

impl SpinProjection {
    pub const ALL: [SpinProjection; 3] = [Self::Plus, Self::Zero, Self::Minus];

    pub fn sz(self) -> i8 {
        match self {
            Self::Plus => 1,
            Self::Zero => 0,
            Self::Minus => -1,
        }
    }

    /// Row of this projection in the 3×3 spin matrices.
    pub fn index(self) -> usize {
        match self {
            Self::Plus => 0,
            Self::Zero => 1,
            Self::Minus => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Plus => "+",
            Self::Zero => "0",
            Self::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinSite {
    pub j: usize,
    pub s: SpinProjection,
}

impl SpinSite {
    pub fn parity(&self) -> i8 {
        if (self.j as i64 + self.s.sz() as i64 + 1).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn spin_sites(j_max: usize) -> Vec<SpinSite> {
    let mut out = vec![SpinSite { j: 0, s: SpinProjection::Plus }, SpinSite { j: 0, s: SpinProjection::Minus }];
    for j in 1..=j_max {
        out.extend(SpinProjection::ALL.iter().map(|&s| SpinSite { j, s }));
    }
    out
}

#[derive(Debug, Clone)]
pub struct SpinChainHamiltonian {
    pub j_max: usize,
    pub sites: Vec<SpinSite>,
    pub matrix: CMatrix,
    /// Π of each site, in site order.
    pub parity: Vec<i8>,
}

impl SpinChainHamiltonian {
    pub fn index_of(&self, site: SpinSite) -> Option<usize> {
        self.sites.iter().position(|s| *s == site)
    }

    /// ‖[Π, H_SO]‖ (max entry).
    pub fn parity_commutator(&self) -> f64 {
        let n = self.sites.len();
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let p = (self.parity[r] - self.parity[c]) as f64;
                worst = worst.max((self.matrix[(r, c)] * p).norm());
            }
        }
        worst
    }
}

pub fn build_h_so(params: &ModelParams, j_max: usize) -> Result<SpinChainHamiltonian> {
    params.validate()?;
    if j_max < 2 {
        return Err(JchError::OutOfRange { what: "j_max", value: j_max as i64, range: ">= 2".into() });
    }
    let ops = Spin1Operators::new();
    let (kappa, lambda) = (params.kappa, params.lambda);
    let sites = spin_sites(j_max);
    let idx = |s: SpinSite| -> usize {
        if s.j == 0 {
            if s.s == SpinProjection::Plus {
                0
            } else {
                1
            }
        } else {
            2 + 3 * (s.j - 1) + s.s.index()
        }
    };
    let mut m = CMatrix::zeros(sites.len(), sites.len());
    for &s in &sites {
        let onsite = if s.j == 0 { SQRT_2 * lambda } else { 2.0 * lambda };
        m[(idx(s), idx(s))] = Complex64::new(onsite * s.s.sz() as f64, 0.0);
    }
    let bond_rows = |j: usize| -> Vec<SpinProjection> {
        if j == 0 {
            vec![SpinProjection::Plus, SpinProjection::Minus]
        } else {
            SpinProjection::ALL.to_vec()
        }
    };
    let transverse = ops.sx_transverse();
    for j in 0..j_max {
        for &a in &bond_rows(j) {
            for &b in &SpinProjection::ALL {
                let weight =
                    if j == 0 { SQRT_2 * transverse[(a.index(), b.index())] } else { ops.sx[(a.index(), b.index())] };
                if weight == 0.0 {
                    continue;
                }
                let v = Complex64::new(0.0, kappa * weight);
                let (r, c) = (idx(SpinSite { j, s: a }), idx(SpinSite { j: j + 1, s: b }));
                m[(r, c)] = v;
                m[(c, r)] = v.conj();
            }
        }
    }
    let parity = sites.iter().map(SpinSite::parity).collect();
    Ok(SpinChainHamiltonian { j_max, sites, matrix: m, parity })
}

/// One parity half of H_SO with the positions it occupies in the full chain.
#[derive(Debug, Clone)]
pub struct ParityBlock {
    pub parity: i8,
    pub sites: Vec<SpinSite>,
    pub indices: Vec<usize>,
    pub matrix: CMatrix,
}

impl ParityBlock {
    /// This half embedded back into the full chain space.
    pub fn embedded(&self, dim: usize) -> CMatrix {
        let mut out = CMatrix::zeros(dim, dim);
        for (a, &ra) in self.indices.iter().enumerate() {
            for (b, &rb) in self.indices.iter().enumerate() {
                out[(ra, rb)] = self.matrix[(a, b)];
            }
        }
        out
    }
}

/// (H_o, H_e): the Π = −1 and Π = +1 halves.
pub fn split_parity(hso: &SpinChainHamiltonian) -> Result<(ParityBlock, ParityBlock)> {
    let n = hso.sites.len();
    let mut cross: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            if hso.parity[r] != hso.parity[c] {
                cross = cross.max(hso.matrix[(r, c)].norm());
            }
        }
    }
    if cross > PARITY_TOLERANCE {
        return Err(JchError::DecompositionViolated { magnitude: cross });
    }
    let half = |p: i8| {
        let indices: Vec<usize> = (0..n).filter(|&i| hso.parity[i] == p).collect();
        let matrix = CMatrix::from_fn(indices.len(), indices.len(), |a, b| hso.matrix[(indices[a], indices[b])]);
        ParityBlock { parity: p, sites: indices.iter().map(|&i| hso.sites[i]).collect(), indices, matrix }
    };
    Ok((half(-1), half(1)))
}

/// ‖[H_o, H_e]‖ (max entry) with both halves embedded in the full chain.
pub fn embedded_commutator(odd: &ParityBlock, even: &ParityBlock, dim: usize) -> f64 {
    let a = odd.embedded(dim);
    let b = even.embedded(dim);
    max_abs(&(&a * &b - &b * &a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameColumn {
    Spin(SpinSite),
    /// (|j,2,π⟩ − |j,4,π⟩)/√2, decoupled from the chain.
    Psi(usize),
    /// Orthonormal completion spanning what is left of the sector.
    Boundary(usize),
}

/// Unitary change of basis of the π sector onto spin states.
#[derive(Debug, Clone)]
pub struct SpinFrame {
    pub columns: Vec<FrameColumn>,
    /// Columns in sector coordinates.
    pub unitary: CMatrix,
    /// U† (H_π − 2ω_a) U.
    pub transformed: CMatrix,
    pub omega_a: f64,
}

impl SpinFrame {
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.unitary.ncols();
        max_abs(&(self.unitary.adjoint() * &self.unitary - CMatrix::identity(n, n)))
    }

    /// Largest entry of the transformed block on any ψ_j row or column.
    pub fn psi_coupling(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, col) in self.columns.iter().enumerate() {
            if matches!(col, FrameColumn::Psi(_)) {
                worst = worst.max(
                    self.transformed
                        .row(i)
                        .iter()
                        .chain(self.transformed.column(i).iter())
                        .map(|z| z.norm())
                        .fold(0.0, f64::max),
                );
            }
        }
        worst
    }

    /// Transformed block restricted to spin columns with j ≤ j_max, in
    /// [`SpinChainHamiltonian`] site order.
    pub fn spin_submatrix(&self, j_max: usize) -> (Vec<SpinSite>, CMatrix) {
        let picked: Vec<(usize, SpinSite)> = self
            .columns
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                FrameColumn::Spin(s) if s.j <= j_max => Some((i, *s)),
                _ => None,
            })
            .collect();
        let m = CMatrix::from_fn(picked.len(), picked.len(), |a, b| self.transformed[(picked[a].0, picked[b].0)]);
        (picked.into_iter().map(|(_, s)| s).collect(), m)
    }

    /// Gap between the transformed exact block and H_SO on columns
    /// 0..=N/2−1.
    pub fn chain_residual(&self, params: &ModelParams) -> Result<f64> {
        let j_max = params.n_sites / 2 - 1;
        let (sites, sub) = self.spin_submatrix(j_max);
        let hso = build_h_so(params, j_max)?;
        debug_assert_eq!(sites, hso.sites);
        Ok(crate::linalg::max_abs_diff(&sub, &hso.matrix))
    }
}

/// Builds the spin frame of the π block. Needs an even ring and
/// ω_a = ω_b.
pub fn ladder_to_spin_basis(
    pi_block: &MomentumBlock,
    basis: &TwoExcitationBasis,
    params: &ModelParams,
) -> Result<SpinFrame> {
    params.require_even()?;
    if 2 * pi_block.m != pi_block.n_sites {
        return Err(JchError::UnsupportedRegime(format!("spin frame needs the k = π block, got m = {}", pi_block.m)));
    }
    if params.omega_a != params.omega_b {
        return Err(JchError::UnsupportedRegime(
            "the spin-1 reduction needs omega_a = omega_b; the leg potentials differ otherwise".into(),
        ));
    }
    let half = params.n_sites / 2;
    let coord = |j: usize, leg: u8| -> CVector {
        pi_block.coordinates(ladder_state(basis, PI, LadderSite::new(j, leg)).amplitudes())
    };
    let r2 = 1.0 / SQRT_2;
    let mut columns = Vec::new();
    let mut vecs: Vec<CVector> = Vec::new();
    let (c01, c02) = (coord(0, 1), coord(0, 2));
    columns.push(FrameColumn::Spin(SpinSite { j: 0, s: SpinProjection::Plus }));
    vecs.push((&c01 + &c02) * Complex64::new(r2, 0.0));
    columns.push(FrameColumn::Spin(SpinSite { j: 0, s: SpinProjection::Minus }));
    vecs.push((&c01 - &c02) * Complex64::new(r2, 0.0));
    for j in 1..half {
        let [l1, l2, l3, l4] = [coord(j, 1), coord(j, 2), coord(j, 3), coord(j, 4)];
        let h = Complex64::new(0.5, 0.0);
        let s = Complex64::new(r2, 0.0);
        columns.push(FrameColumn::Spin(SpinSite { j, s: SpinProjection::Plus }));
        vecs.push((&l1 + &l3 + &l2 + &l4) * h);
        columns.push(FrameColumn::Spin(SpinSite { j, s: SpinProjection::Zero }));
        vecs.push((&l1 - &l3) * s);
        columns.push(FrameColumn::Spin(SpinSite { j, s: SpinProjection::Minus }));
        vecs.push((&l1 + &l3 - &l2 - &l4) * h);
        columns.push(FrameColumn::Psi(j));
        vecs.push((&l2 - &l4) * s);
    }
    let dim = pi_block.dim();
    let mut extra = 0;
    for e in 0..dim {
        if vecs.len() == dim {
            break;
        }
        let mut v = CVector::zeros(dim);
        v[e] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for u in &vecs {
                let ov = u.dotc(&v);
                v -= u * ov;
            }
        }
        let n = v.norm();
        if n > 1e-8 {
            vecs.push(v / Complex64::new(n, 0.0));
            columns.push(FrameColumn::Boundary(extra));
            extra += 1;
        }
    }
    let unitary = CMatrix::from_columns(&vecs);
    let shifted = &pi_block.block - CMatrix::identity(dim, dim) * Complex64::new(2.0 * params.omega_a, 0.0);
    let transformed = unitary.adjoint() * shifted * &unitary;
    Ok(SpinFrame { columns, unitary, transformed, omega_a: params.omega_a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigvals_hermitian, multiset_equal};
    use crate::model::{build_hamiltonian, enumerate_basis};
    use crate::symmetry::{momentum_sectors, translation_operator};

    #[test]
    fn operators_match_spin_one() {
        let ops = Spin1Operators::new();
        let r = 1.0 / SQRT_2;
        assert_eq!(ops.sx[(0, 1)], r);
        assert_eq!(ops.sx[(0, 2)], 0.0);
        assert_eq!(ops.sz.diagonal(), nalgebra::Vector3::new(1.0, 0.0, -1.0));
        assert_eq!(ops.sx_transverse() + ops.sx_sz2(), ops.sx);
    }

    #[test]
    fn onsite_blocks() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        let h = build_h_so(&p, 4).unwrap();
        let at = |j, s| h.index_of(SpinSite { j, s }).unwrap();
        use SpinProjection::*;
        assert!((h.matrix[(at(1, Plus), at(1, Plus))].re - 0.6).abs() < 1e-15);
        assert_eq!(h.matrix[(at(1, Zero), at(1, Zero))].re, 0.0);
        assert!((h.matrix[(at(0, Minus), at(0, Minus))].re + SQRT_2 * 0.3).abs() < 1e-15);
        assert!((h.matrix[(at(0, Plus), at(1, Zero))] - Complex64::new(0.0, 0.8)).norm() < 1e-15);
        assert_eq!(h.matrix[(at(0, Plus), at(1, Plus))], Complex64::new(0.0, 0.0));
        assert!(build_h_so(&p, 1).is_err());
    }

    #[test]
    fn spin_orbit_structure() {
        let h = build_h_so(&ModelParams::resonant(10, 0.8, 0.3), 5).unwrap();
        for (r, a) in h.sites.iter().enumerate() {
            for (c, b) in h.sites.iter().enumerate() {
                let z = h.matrix[(r, c)];
                if a.j == b.j && a.s != b.s {
                    assert_eq!(z.norm(), 0.0);
                }
                if a.j != b.j && a.s == b.s {
                    assert_eq!(z.norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn parity_split() {
        let h = build_h_so(&ModelParams::resonant(10, 0.8, 0.3), 6).unwrap();
        assert!(h.parity_commutator() < 1e-15);
        let (odd, even) = split_parity(&h).unwrap();
        assert!(even.sites.iter().any(|s| s.j == 0));
        assert!(odd.sites.iter().all(|s| s.j != 0));
        assert!(embedded_commutator(&odd, &even, h.sites.len()) < 1e-13);
        let mut union = eigvals_hermitian(&odd.matrix).unwrap().values;
        union.extend(eigvals_hermitian(&even.matrix).unwrap().values);
        let full = eigvals_hermitian(&h.matrix).unwrap().values;
        assert!(multiset_equal(&full, &union, 1e-12).unwrap().equal);

        let mut broken = h.clone();
        broken.matrix[(0, 2)] = Complex64::new(1e-6, 0.0);
        assert!(matches!(split_parity(&broken), Err(JchError::DecompositionViolated { .. })));
    }

    fn pi_frame(n: usize) -> (SpinFrame, ModelParams) {
        let p = ModelParams::resonant(n, 0.8, 0.3);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        let blocks = momentum_sectors(&h, &translation_operator(&basis), n).unwrap();
        (ladder_to_spin_basis(&blocks[n / 2], &basis, &p).unwrap(), p)
    }

    #[test]
    fn frame_reproduces_chain() {
        for n in [8, 10, 12] {
            let (frame, p) = pi_frame(n);
            assert!(frame.unitarity_residual() < 1e-13);
            assert!(frame.psi_coupling() < 1e-12);
            assert!(frame.chain_residual(&p).unwrap() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn frame_rejects_detuning_and_other_momenta() {
        let p = ModelParams::new(8, 1.0, 1.2, 0.8, 0.3);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        let blocks = momentum_sectors(&h, &translation_operator(&basis), 8).unwrap();
        assert!(matches!(ladder_to_spin_basis(&blocks[4], &basis, &p), Err(JchError::UnsupportedRegime(_))));
        let q = ModelParams::resonant(8, 0.8, 0.3);
        assert!(ladder_to_spin_basis(&blocks[3], &basis, &q).is_err());
    }
}
