//! The three destructive-interference channels behind the bound pairs.
//! Each report is |⟨target|H|source⟩| for a specific superposition and a
//! normalized target channel.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::error::{JchError, Result};
use crate::model::{build_hamiltonian, enumerate_basis, ModelParams, StateVector, TwoExcitationBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mechanism {
    /// Photon pair hopping: a†_l a†_{l+j} − a†_{l+1} a†_{l+j+1} never
    /// reaches a†_{l+1} a†_{l+j} + a†_l a†_{l+j+1}.
    Hubbard,
    /// σ⁺_l a†_{l+j} − a†_l σ⁺_{l+j} never reaches a†_l a†_{l+j}.
    JaynesCummings,
    /// (1/λ)(σ⁺_l σ⁺_{l+j} + a†_l a†_{l+j+2}) + (1/κ) σ⁺_l a†_{l+j+1} never
    /// reaches σ⁺_l a†_{l+j} + σ⁺_l a†_{l+j+2}.
    Mixed,
}

impl Mechanism {
    pub const ALL: [Mechanism; 3] = [Self::Hubbard, Self::JaynesCummings, Self::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Self::Hubbard => "hubbard",
            Self::JaynesCummings => "jc",
            Self::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MechanismReport {
    pub mechanism: Mechanism,
    pub l: usize,
    pub j: usize,
    /// Amplitude left in the target channel (0 for exact cancellation).
    pub residual: f64,
    /// Mixed only: the same with the 1/κ weight scaled by 1.01.
    pub perturbed_residual: Option<f64>,
    /// Mixed only: the same with the 1/κ weight negated.
    pub flipped_sign_residual: Option<f64>,
}

/// Relative size of the ratio perturbation used for the Mixed check.
pub const MIXED_PERTURBATION: f64 = 0.01;

pub fn interference_mechanism_report(
    params: &ModelParams,
    mechanism: Mechanism,
    l: usize,
    j: usize,
) -> Result<MechanismReport> {
    let basis = enumerate_basis(params)?;
    let n = params.n_sites;
    let max_j = match mechanism {
        Mechanism::Hubbard => n - 2,
        Mechanism::JaynesCummings => n - 1,
        Mechanism::Mixed => n - 3,
    };
    if j == 0 || j > max_j || l >= n {
        return Err(JchError::OutOfRange {
            what: "separation j",
            value: j as i64,
            range: format!("1..={max_j} with l < {n}"),
        });
    }
    let (li, ji) = (l as i64, j as i64);
    let channel = |source: &StateVector, target: &StateVector| -> Result<f64> {
        let h = build_hamiltonian(&basis, params)?;
        let t = target.normalized().ok_or_else(|| JchError::VanishingState("empty target channel".into()))?;
        Ok(t.inner(&h.apply(source)?).norm())
    };
    let mut report =
        MechanismReport { mechanism, l, j, residual: 0.0, perturbed_residual: None, flipped_sign_residual: None };
    match mechanism {
        Mechanism::Hubbard => {
            let source = &basis.product(&[li, li + ji], &[]) - &basis.product(&[li + 1, li + ji + 1], &[]);
            let target = &basis.product(&[li + 1, li + ji], &[]) + &basis.product(&[li, li + ji + 1], &[]);
            report.residual = channel(&source, &target)?;
        }
        Mechanism::JaynesCummings => {
            let source = &basis.product(&[li + ji], &[li]) - &basis.product(&[li], &[li + ji]);
            let target = basis.product(&[li, li + ji], &[]);
            report.residual = channel(&source, &target)?;
        }
        Mechanism::Mixed => {
            if params.kappa == 0.0 || params.lambda == 0.0 {
                return Err(JchError::UnsupportedRegime("mixed mechanism needs kappa and lambda nonzero".into()));
            }
            let target = &basis.product(&[li + ji], &[li]) + &basis.product(&[li + ji + 2], &[li]);
            let with = |scale: f64| channel(&mixed_source(&basis, params, li, ji, scale), &target);
            report.residual = with(1.0)?;
            report.perturbed_residual = Some(with(1.0 + MIXED_PERTURBATION)?);
            report.flipped_sign_residual = Some(with(-1.0)?);
        }
    }
    Ok(report)
}

fn mixed_source(basis: &TwoExcitationBasis, params: &ModelParams, l: i64, j: i64, hop_scale: f64) -> StateVector {
    let pairs = &basis.product(&[], &[l, l + j]) + &basis.product(&[l, l + j + 2], &[]);
    let bridge = basis.product(&[l + j + 1], &[l]);
    &(&pairs * (1.0 / params.lambda)) + &(&bridge * (hop_scale / params.kappa))
}

/// Target amplitude for the sign-flipped Mixed weights, 2·2/√2 = 2√2
/// independent of κ and λ.
pub const MIXED_FLIPPED_AMPLITUDE: f64 = 4.0 * FRAC_1_SQRT_2;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_channels_cancel() {
        for (kappa, lambda) in [(0.5, 0.3), (1.0, 0.7), (-0.6, 1.2)] {
            let p = ModelParams::resonant(8, kappa, lambda);
            for m in Mechanism::ALL {
                for j in 1..=3 {
                    let r = interference_mechanism_report(&p, m, 2, j).unwrap();
                    assert!(r.residual < 1e-12, "{m:?} j={j} residual {}", r.residual);
                }
            }
        }
    }

    #[test]
    fn mixed_ratio_is_sharp() {
        let p = ModelParams::resonant(8, 1.0, 0.7);
        let r = interference_mechanism_report(&p, Mechanism::Mixed, 1, 2).unwrap();
        let perturbed = r.perturbed_residual.unwrap();
        assert!((perturbed - 2f64.sqrt() * MIXED_PERTURBATION).abs() < 1e-12);
        assert!((r.flipped_sign_residual.unwrap() - MIXED_FLIPPED_AMPLITUDE).abs() < 1e-12);
    }

    #[test]
    fn range_guards() {
        let p = ModelParams::resonant(8, 1.0, 0.7);
        assert!(interference_mechanism_report(&p, Mechanism::Mixed, 1, 6).is_err());
        assert!(interference_mechanism_report(&p, Mechanism::Hubbard, 1, 0).is_err());
        let q = ModelParams::resonant(8, 1.0, 0.0);
        assert!(interference_mechanism_report(&q, Mechanism::Mixed, 1, 2).is_err());
    }
}
