//! Exact diagonalization of the Jaynes-Cummings-Hubbard ring in its
//! two-excitation subspace: momentum blocks and the flux-pierced 4-leg
//! ladder, the spin-1 chain at center momentum π, exact bound-pair
//! eigenstates and their entanglement.

pub mod cli;
pub mod config;
pub mod entanglement;
pub mod error;
pub mod exact_states;
pub mod linalg;
pub mod model;
pub mod report;
pub mod spin_chain;
pub mod symmetry;
pub mod verify;

pub use error::{JchError, Result};
