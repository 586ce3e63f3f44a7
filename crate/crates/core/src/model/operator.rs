//! State vectors and coordinate-form sparse operators.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JchError, Result};
use crate::linalg::{CMatrix, CVector};

/// Which basis a [`StateVector`] is expressed in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisTag {
    TwoExcitation { n_sites: usize },
    Fock { n_sites: usize, dim: usize },
    MomentumSector { n_sites: usize, m: usize },
    SpinChain { j_max: usize },
    Custom { dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: BasisTag,
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(basis: BasisTag, amplitudes: CVector) -> Self {
        Self { basis, amplitudes }
    }

    pub fn zeros(basis: BasisTag, dim: usize) -> Self {
        Self { basis, amplitudes: CVector::zeros(dim) }
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut CVector {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self { basis: self.basis.clone(), amplitudes: &self.amplitudes * z }
    }

    /// Unit-norm copy; `None` if the vector is numerically zero.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 1e-300).then(|| self.scaled(Complex64::new(1.0 / n, 0.0)))
    }
}

impl Add for &StateVector {
    type Output = StateVector;
    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector { basis: self.basis.clone(), amplitudes: &self.amplitudes + &rhs.amplitudes }
    }
}

impl Sub for &StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &StateVector) -> StateVector {
        StateVector { basis: self.basis.clone(), amplitudes: &self.amplitudes - &rhs.amplitudes }
    }
}

impl Mul<Complex64> for &StateVector {
    type Output = StateVector;
    fn mul(self, rhs: Complex64) -> StateVector {
        self.scaled(rhs)
    }
}

impl Mul<f64> for &StateVector {
    type Output = StateVector;
    fn mul(self, rhs: f64) -> StateVector {
        self.scaled(Complex64::new(rhs, 0.0))
    }
}

/// Absolute tolerance of [`SparseOperator::check_hermitian`].
pub const HERMITIAN_ENTRY_TOLERANCE: f64 = 1e-14;

/// Square operator in coordinate form. Entries are kept sorted row-major,
/// one per position.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
    hermitian: bool,
}

/// Accumulates entries; repeated positions add up.
#[derive(Debug, Default)]
pub struct OperatorBuilder {
    dim: usize,
    acc: BTreeMap<(usize, usize), Complex64>,
}

impl OperatorBuilder {
    pub fn new(dim: usize) -> Self {
        Self { dim, acc: BTreeMap::new() }
    }

    pub fn add(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.dim && col < self.dim, "entry ({row}, {col}) outside dim {}", self.dim);
        *self.acc.entry((row, col)).or_default() += value;
    }

    pub fn build(self, hermitian: bool) -> SparseOperator {
        let entries =
            self.acc.into_iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).map(|((r, c), v)| (r, c, v)).collect();
        SparseOperator { dim: self.dim, entries, hermitian }
    }
}

impl SparseOperator {
    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect();
        Self { dim, entries, hermitian: true }
    }

    /// Keeps entries with magnitude above `threshold`.
    pub fn from_dense(m: &CMatrix, threshold: f64, hermitian: bool) -> Self {
        assert!(m.is_square());
        let mut entries = Vec::new();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let v = m[(r, c)];
                if v.norm() > threshold {
                    entries.push((r, c, v));
                }
            }
        }
        Self { dim: m.nrows(), entries, hermitian }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_flagged_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (r, c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or_default()
    }

    /// Adds `value` at (row, col) in place, optionally with its mirror.
    pub fn with_entry(&self, row: usize, col: usize, value: Complex64) -> Self {
        let mut b = OperatorBuilder::new(self.dim);
        for &(r, c, v) in &self.entries {
            b.add(r, c, v);
        }
        b.add(row, col, value);
        b.build(self.hermitian)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn apply_vector(&self, v: &CVector) -> Result<CVector> {
        if v.len() != self.dim {
            return Err(JchError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let mut out = CVector::zeros(self.dim);
        for &(r, c, val) in &self.entries {
            out[r] += val * v[c];
        }
        Ok(out)
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        Ok(StateVector::new(v.basis().clone(), self.apply_vector(v.amplitudes())?))
    }

    /// Max over entries of |v − conj(v_mirror)|, a missing mirror counting
    /// as zero.
    pub fn hermiticity_residual(&self) -> f64 {
        self.entries.iter().map(|&(r, c, v)| (v - self.get(c, r).conj()).norm()).fold(0.0, f64::max)
    }

    /// The flag is honest if entries mirror to within 1e-14.
    pub fn check_hermitian(&self) -> bool {
        self.hermiticity_residual() < HERMITIAN_ENTRY_TOLERANCE
    }

    pub fn max_imaginary(&self) -> f64 {
        self.entries.iter().map(|e| e.2.im.abs()).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        let mut b = OperatorBuilder::new(self.dim);
        for &(r, c, v) in &self.entries {
            b.add(c, r, v.conj());
        }
        b.build(self.hermitian)
    }

    pub fn matmul(&self, other: &SparseOperator) -> Result<Self> {
        if other.dim != self.dim {
            return Err(JchError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
        for &(r, c, v) in &other.entries {
            rows[r].push((c, v));
        }
        let mut b = OperatorBuilder::new(self.dim);
        for &(r, k, a) in &self.entries {
            for &(c, v) in &rows[k] {
                b.add(r, c, a * v);
            }
        }
        Ok(b.build(false))
    }

    pub fn sub(&self, other: &SparseOperator) -> Result<Self> {
        if other.dim != self.dim {
            return Err(JchError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut b = OperatorBuilder::new(self.dim);
        for &(r, c, v) in &self.entries {
            b.add(r, c, v);
        }
        for &(r, c, v) in &other.entries {
            b.add(r, c, -v);
        }
        Ok(b.build(self.hermitian && other.hermitian))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson { dim: self.dim, entries: self.entries.iter().map(|&(r, c, v)| (r, c, v.re, v.im)).collect() }
    }

    pub fn from_json(json: &OperatorJson, hermitian: bool) -> Self {
        let mut b = OperatorBuilder::new(json.dim);
        for &(r, c, re, im) in &json.entries {
            b.add(r, c, Complex64::new(re, im));
        }
        b.build(hermitian)
    }
}

/// `op · v`; errors on a dimension mismatch.
pub fn apply_operator(op: &SparseOperator, v: &StateVector) -> Result<StateVector> {
    op.apply(v)
}

/// Wire form `{dim, entries: [[row, col, re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub dim: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl OperatorJson {
    pub fn from_dense(m: &CMatrix, threshold: f64) -> Self {
        SparseOperator::from_dense(m, threshold, false).to_json()
    }
}

/// Rectangular coordinate-form map between two bases.
#[derive(Debug, Clone)]
pub struct SparseMap {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseMap {
    pub fn new(rows: usize, cols: usize, acc: BTreeMap<(usize, usize), Complex64>) -> Self {
        let entries = acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn apply_vector(&self, v: &CVector) -> Result<CVector> {
        if v.len() != self.cols {
            return Err(JchError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = CVector::zeros(self.rows);
        for &(r, c, val) in &self.entries {
            out[r] += val * v[c];
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, cr};

    fn tag(dim: usize) -> BasisTag {
        BasisTag::Custom { dim }
    }

    #[test]
    fn identity_and_zero() {
        let v = StateVector::new(tag(3), CVector::from_vec(vec![c(1.0, 2.0), cr(-0.5), c(0.0, 3.0)]));
        assert_eq!(apply_operator(&SparseOperator::identity(3), &v).unwrap(), v);
        let mut b = OperatorBuilder::new(3);
        b.add(0, 1, cr(2.0));
        b.add(1, 0, cr(2.0));
        let op = b.build(true);
        let zero = StateVector::zeros(tag(3), 3);
        assert_eq!(op.apply(&zero).unwrap().norm(), 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let v = StateVector::zeros(tag(2), 2);
        assert!(matches!(
            SparseOperator::identity(3).apply(&v),
            Err(JchError::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn hermiticity_check_finds_missing_mirror() {
        let mut b = OperatorBuilder::new(2);
        b.add(0, 1, c(0.0, 1.0));
        b.add(1, 0, c(0.0, -1.0));
        let op = b.build(true);
        assert!(op.check_hermitian());
        let broken = op.with_entry(1, 1, c(0.0, 1e-3));
        assert!(!broken.check_hermitian());
        assert!((broken.hermiticity_residual() - 2e-3).abs() < 1e-15);
    }

    #[test]
    fn json_wire_format() {
        let mut b = OperatorBuilder::new(2);
        b.add(1, 0, c(0.5, -0.25));
        let op = b.build(false);
        let text = serde_json::to_string(&op.to_json()).unwrap();
        assert_eq!(text, r#"{"dim":2,"entries":[[1,0,0.5,-0.25]]}"#);
        let back: OperatorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SparseOperator::from_json(&back, false), op);
    }
}
