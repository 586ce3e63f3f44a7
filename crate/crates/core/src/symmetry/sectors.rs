//! Simultaneous block-diagonalization of H and the translation T.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::translation::permutation_of;
use crate::error::{JchError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::model::{BasisTag, SparseOperator, StateVector};

/// Largest ‖[H, T]‖ (max entry) accepted by [`momentum_sectors`].
pub const COMMUTATOR_TOLERANCE: f64 = 1e-12;

/// A translation orbit, identified by its lowest-index member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbit {
    pub representative: usize,
    pub length: usize,
}

/// H restricted to the T-eigenspace with eigenvalue e^{−ik}, k = 2πm/N.
#[derive(Debug, Clone)]
pub struct MomentumBlock {
    pub m: usize,
    pub n_sites: usize,
    /// Orbits compatible with this momentum, in column order.
    pub orbits: Vec<Orbit>,
    /// Orthonormal sector states as columns, in the canonical basis.
    pub sector_basis: CMatrix,
    /// B† H B.
    pub block: CMatrix,
}

impl MomentumBlock {
    pub fn k(&self) -> f64 {
        2.0 * PI * self.m as f64 / self.n_sites as f64
    }

    pub fn dim(&self) -> usize {
        self.block.nrows()
    }

    pub fn sector_state(&self, i: usize) -> StateVector {
        StateVector::new(BasisTag::TwoExcitation { n_sites: self.n_sites }, self.sector_basis.column(i).into_owned())
    }

    /// Coordinates of a canonical-basis vector in this sector, B†v.
    pub fn coordinates(&self, v: &CVector) -> CVector {
        self.sector_basis.adjoint() * v
    }
}

/// Orbits of the permutation, each represented by its smallest index.
pub fn orbits(perm: &[usize]) -> Vec<Orbit> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut length = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            length += 1;
        }
        out.push(Orbit { representative: start, length });
    }
    out
}

/// Splits H into N momentum blocks. `t` must be the ring translation and
/// commute with `h`.
pub fn momentum_sectors(h: &SparseOperator, t: &SparseOperator, n_sites: usize) -> Result<Vec<MomentumBlock>> {
    let residual = h.matmul(t)?.sub(&t.matmul(h)?)?.max_abs();
    if residual > COMMUTATOR_TOLERANCE * h.max_abs().max(1.0) {
        return Err(JchError::SymmetryViolation { residual });
    }
    let perm =
        permutation_of(t).ok_or_else(|| JchError::Configuration("translation operator is not a permutation".into()))?;
    let all_orbits = orbits(&perm);
    let dim = h.dim();

    let mut blocks = Vec::with_capacity(n_sites);
    for m in 0..n_sites {
        let k = 2.0 * PI * m as f64 / n_sites as f64;
        let compatible: Vec<Orbit> = all_orbits.iter().copied().filter(|o| (m * o.length) % n_sites == 0).collect();
        let mut basis = CMatrix::zeros(dim, compatible.len());
        for (col, orbit) in compatible.iter().enumerate() {
            let norm = 1.0 / (orbit.length as f64).sqrt();
            let mut i = orbit.representative;
            for r in 0..orbit.length {
                basis[(i, col)] = Complex64::from_polar(norm, k * r as f64);
                i = perm[i];
            }
        }
        let mut hb = CMatrix::zeros(dim, compatible.len());
        for col in 0..compatible.len() {
            let out = h.apply_vector(&basis.column(col).into_owned())?;
            hb.set_column(col, &out);
        }
        let block = basis.adjoint() * hb;
        blocks.push(MomentumBlock { m, n_sites, orbits: compatible, sector_basis: basis, block });
    }
    Ok(blocks)
}
