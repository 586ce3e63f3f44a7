//! Two-excitation Hilbert space of the N-cavity ring and the JCH Hamiltonian.

pub mod basis;
pub mod fock;
pub mod hamiltonian;
pub mod operator;
pub mod params;

pub use basis::{enumerate_basis, BasisState, TwoExcitationBasis};
pub use fock::{FockBasis, Occupation};
pub use hamiltonian::{build_hamiltonian, build_terms, excitation_number_check, Terms};
pub use operator::{apply_operator, BasisTag, OperatorBuilder, OperatorJson, SparseMap, SparseOperator, StateVector};
pub use params::ModelParams;
