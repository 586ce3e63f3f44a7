mod bound_pairs;
mod eta;
mod mechanisms;

pub use bound_pairs::{
    a_coefficient, eigen_residual, omega_normalization, phi_graph_check, phi_spin_vector, phi_state,
    photon_atom_singlet, psi_state, BoundPairState, GraphCheck, PairFamily,
};
pub use eta::{
    bose_hubbard_eta_check, eta_commutator, eta_pairing_state, BoseHubbardEtaReport, BoseHubbardParams,
    EtaPairingState, PairCreationOperator, MAX_PAIRS,
};
pub use mechanisms::{
    interference_mechanism_report, Mechanism, MechanismReport, MIXED_FLIPPED_AMPLITUDE, MIXED_PERTURBATION,
};
