use num_complex::Complex64;

use crate::model::{OperatorBuilder, SparseOperator, TwoExcitationBasis};

/// Unitary permutation T shifting every site index by +1 (mod N).
pub fn translation_operator(basis: &TwoExcitationBasis) -> SparseOperator {
    let fock = basis.fock();
    let mut b = OperatorBuilder::new(fock.len());
    for (col, occ) in fock.states().iter().enumerate() {
        let row = fock.index_of(&occ.translated()).expect("translation maps the basis onto itself");
        b.add(row, col, Complex64::new(1.0, 0.0));
    }
    b.build(false)
}

/// Column-to-row map of a permutation operator; `None` unless every column
/// holds exactly one unit entry.
pub fn permutation_of(t: &SparseOperator) -> Option<Vec<usize>> {
    let mut perm = vec![usize::MAX; t.dim()];
    for &(r, c, v) in t.entries() {
        if (v - Complex64::new(1.0, 0.0)).norm() > 1e-15 || perm[c] != usize::MAX {
            return None;
        }
        perm[c] = r;
    }
    perm.iter().all(|&r| r != usize::MAX).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, enumerate_basis, BasisState, ModelParams};

    #[test]
    fn shifts_double_photon() {
        let p = ModelParams::resonant(6, 0.7, 0.4);
        let basis = enumerate_basis(&p).unwrap();
        let t = translation_operator(&basis);
        let out = t.apply(&basis.ket(BasisState::DoublePhoton(0))).unwrap();
        assert_eq!(out, basis.ket(BasisState::DoublePhoton(1)));
    }

    #[test]
    fn order_divides_ring_length() {
        let p = ModelParams::resonant(6, 0.7, 0.4);
        let basis = enumerate_basis(&p).unwrap();
        let t = translation_operator(&basis);
        let mut power = SparseOperator::identity(t.dim());
        for _ in 0..6 {
            power = t.matmul(&power).unwrap();
        }
        let dev = power.sub(&SparseOperator::identity(t.dim())).unwrap().max_abs();
        assert!(dev < 1e-15);
        assert!(permutation_of(&t).is_some());
    }

    #[test]
    fn hamiltonian_is_translation_covariant() {
        let p = ModelParams::new(6, 1.0, 1.1, 0.7, 0.4);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_hamiltonian(&basis, &p).unwrap();
        let t = translation_operator(&basis);
        let tht = t.matmul(&h).unwrap().matmul(&t.adjoint()).unwrap();
        assert!(tht.sub(&h).unwrap().max_abs() < 1e-12);
    }
}
