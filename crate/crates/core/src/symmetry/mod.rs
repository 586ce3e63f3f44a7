mod flux;
mod ladder;
mod paths;
mod sectors;
mod translation;

pub use flux::{column_fluxes, plaquette_flux, wrap_phase, ZERO_LINK};
pub use ladder::{
    align_ladder, build_ladder_hk, interior_columns, ladder_match_residual, ladder_state, ladder_states,
    LadderAlignment, LadderHamiltonian, LadderParams, LadderSite,
};
pub use paths::{two_path_interference, PathPhases};
pub use sectors::{momentum_sectors, orbits, MomentumBlock, Orbit, COMMUTATOR_TOLERANCE};
pub use translation::{permutation_of, translation_operator};
