//! Dense Hermitian eigensolver and spectrum comparison.
//!
//! Every solve runs through [`eig_hermitian`], which symmetrizes its input,
//! sorts the spectrum ascending and fixes eigenvector phases so that the
//! largest-magnitude component of each vector is real and positive.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{JchError, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest input deviation from Hermiticity accepted by [`eig_hermitian`].
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: Option<CMatrix>,
    /// Max entrywise change made by the (A + A†)/2 symmetrization.
    pub symmetrization_adjustment: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values, vectors: None, symmetrization_adjustment: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, i: usize) -> Option<CVector> {
        self.vectors.as_ref().map(|v| v.column(i).into_owned())
    }

    /// Max over pairs of ‖A v − λ v‖.
    pub fn max_residual(&self, a: &CMatrix) -> Option<f64> {
        let vecs = self.vectors.as_ref()?;
        let mut worst = 0.0f64;
        for (i, &lam) in self.values.iter().enumerate() {
            let v = vecs.column(i);
            let r = a * v - v * Complex64::new(lam, 0.0);
            worst = worst.max(r.norm());
        }
        Some(worst)
    }

    /// Max entrywise deviation of V†V from the identity.
    pub fn orthonormality_defect(&self) -> Option<f64> {
        let vecs = self.vectors.as_ref()?;
        let gram = vecs.adjoint() * vecs;
        Some(max_abs_diff(&gram, &CMatrix::identity(gram.nrows(), gram.ncols())))
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermiticity_residual(a: &CMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

fn check_input(a: &CMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(JchError::DimensionMismatch { expected: a.nrows(), found: a.ncols() });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(JchError::NonFinite);
    }
    let scale = max_abs(a).max(1.0);
    let residual = hermiticity_residual(a);
    if residual > HERMITICITY_TOLERANCE * scale {
        return Err(JchError::NotHermitian { residual });
    }
    Ok(())
}

fn symmetrize(a: &CMatrix) -> (CMatrix, f64) {
    let sym = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let adjustment = max_abs_diff(&sym, a);
    (sym, adjustment)
}

/// Full spectrum of a Hermitian matrix, eigenvalues only.
pub fn eigvals_hermitian(a: &CMatrix) -> Result<Spectrum> {
    check_input(a)?;
    let (sym, adjustment) = symmetrize(a);
    if sym.nrows() == 0 {
        return Ok(Spectrum { values: vec![], vectors: None, symmetrization_adjustment: 0.0 });
    }
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(Spectrum { values, vectors: None, symmetrization_adjustment: adjustment })
}

/// Full spectrum with orthonormal eigenvectors.
pub fn eig_hermitian(a: &CMatrix) -> Result<Spectrum> {
    check_input(a)?;
    let (sym, adjustment) = symmetrize(a);
    let n = sym.nrows();
    if n == 0 {
        return Ok(Spectrum { values: vec![], vectors: Some(CMatrix::zeros(0, 0)), symmetrization_adjustment: 0.0 });
    }
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let mut vectors = CMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let mut col = eig.eigenvectors.column(src).into_owned();
        fix_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    Ok(Spectrum { values, vectors: Some(vectors), symmetrization_adjustment: adjustment })
}

/// Rotates `v` so that its largest-magnitude component is real positive.
/// Ties resolve to the lowest index.
pub fn fix_phase(v: &mut CVector) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mag + 1e-12 {
            best = i;
            best_mag = m;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best] / best_mag;
        let rot = phase.conj();
        v.iter_mut().for_each(|z| *z *= rot);
    }
}

/// Outcome of [`multiset_equal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultisetComparison {
    pub equal: bool,
    pub max_gap: f64,
}

/// Greedy sorted matching of two spectra. Errors on a length mismatch,
/// which is reported rather than matched.
pub fn multiset_equal(a: &[f64], b: &[f64], tol: f64) -> Result<MultisetComparison> {
    if a.len() != b.len() {
        return Err(JchError::LengthMismatch { left: a.len(), right: b.len() });
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let max_gap = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    Ok(MultisetComparison { equal: max_gap < tol, max_gap })
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_matrix(rows: &[&[f64]]) -> CMatrix {
        let n = rows.len();
        CMatrix::from_fn(n, n, |i, j| cr(rows[i][j]))
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let a = real_matrix(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        let s = eig_hermitian(&a).unwrap();
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
        assert!(s.max_residual(&a).unwrap() < 1e-12);
    }

    #[test]
    fn spin_one_matrices() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let sx = real_matrix(&[&[0.0, r, 0.0], &[r, 0.0, r], &[0.0, r, 0.0]]);
        let sz = real_matrix(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, -1.0]]);
        for m in [&sx, &sz] {
            let s = eig_hermitian(m).unwrap();
            for (got, want) in s.values.iter().zip([-1.0, 0.0, 1.0]) {
                assert!((got - want).abs() < 1e-14, "{got} vs {want}");
            }
            assert!(s.orthonormality_defect().unwrap() < 1e-12);
        }
    }

    #[test]
    fn complex_hermitian_residuals() {
        let a = CMatrix::from_fn(6, 6, |i, j| {
            let (i, j) = (i as f64, j as f64);
            if i == j {
                cr(i)
            } else {
                c((i + j).cos(), (i - j).sin())
            }
        });
        let s = eig_hermitian(&a).unwrap();
        assert!(s.max_residual(&a).unwrap() < 1e-10 * max_abs(&a));
        assert!(s.orthonormality_defect().unwrap() < 1e-12);
        for i in 0..6 {
            let v = s.vector(i).unwrap();
            let lead = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(v.iter().any(|z| (z.re - lead).abs() < 1e-12 && z.im.abs() < 1e-12));
        }
    }

    #[test]
    fn rejects_non_hermitian_and_non_finite() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = cr(1.0);
        assert!(matches!(eig_hermitian(&a), Err(JchError::NotHermitian { .. })));
        a[(1, 0)] = cr(f64::NAN);
        assert!(matches!(eig_hermitian(&a), Err(JchError::NonFinite)));
    }

    #[test]
    fn multiset_comparison() {
        let a = [1.0, 2.0, 3.0];
        let same = multiset_equal(&a, &[3.0, 1.0, 2.0], 1e-10).unwrap();
        assert!(same.equal);
        assert_eq!(same.max_gap, 0.0);

        let off = multiset_equal(&a, &[1.0, 2.0 + 1e-9, 3.0], 1e-10).unwrap();
        assert!(!off.equal);
        assert!((off.max_gap - 1e-9).abs() < 1e-15);

        assert!(matches!(multiset_equal(&a, &[1.0], 1e-10), Err(JchError::LengthMismatch { left: 3, right: 1 })));
    }
}
