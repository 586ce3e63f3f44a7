use serde::{Deserialize, Serialize};

use crate::error::{JchError, Result};

/// Smallest ring accepted by the two-excitation basis.
pub const MIN_SITES: usize = 4;

/// Parameters of the JCH ring: N cavities, photon frequency ω_a, atomic
/// frequency ω_b, photon hopping κ and JC coupling λ. κ and λ are real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n_sites: usize,
    pub omega_a: f64,
    pub omega_b: f64,
    pub kappa: f64,
    pub lambda: f64,
}

impl ModelParams {
    pub fn new(n_sites: usize, omega_a: f64, omega_b: f64, kappa: f64, lambda: f64) -> Self {
        Self { n_sites, omega_a, omega_b, kappa, lambda }
    }

    /// Resonant ring, ω_a = ω_b = 1.
    pub fn resonant(n_sites: usize, kappa: f64, lambda: f64) -> Self {
        Self::new(n_sites, 1.0, 1.0, kappa, lambda)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < MIN_SITES {
            return Err(JchError::Configuration(format!(
                "n_sites = {} but the ring needs at least {MIN_SITES} cavities",
                self.n_sites
            )));
        }
        let fields =
            [("omega_a", self.omega_a), ("omega_b", self.omega_b), ("kappa", self.kappa), ("lambda", self.lambda)];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(JchError::Configuration(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    pub fn require_even(&self) -> Result<()> {
        if !self.n_sites.is_multiple_of(2) {
            return Err(JchError::OddRing(self.n_sites));
        }
        Ok(())
    }

    pub fn require_resonant(&self, what: &str) -> Result<()> {
        if (self.omega_a - self.omega_b).abs() > 1e-12 {
            return Err(JchError::UnsupportedRegime(format!(
                "{what} requires omega_a = omega_b (got {} and {})",
                self.omega_a, self.omega_b
            )));
        }
        Ok(())
    }

    pub fn with_kappa_lambda(self, kappa: f64, lambda: f64) -> Self {
        Self { kappa, lambda, ..self }
    }

    /// Site index reduced onto the ring.
    pub fn site(&self, i: i64) -> usize {
        i.rem_euclid(self.n_sites as i64) as usize
    }
}
