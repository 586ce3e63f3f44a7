//! Two routes from |ψ(l, l+j)⟩ to |ψ(l+j, l)⟩ under repeated application
//! of H, where |ψ(a, b)⟩ = (|1⟩_a|e⟩_b − |1⟩_{a+1}|e⟩_{b+1})/√2.
//!
//! Each route is followed on one tracked configuration. A step's amplitude
//! is ⟨next|H|current⟩, and the end configuration is compared with its sign
//! inside the listed target state.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::flux::wrap_phase;
use crate::error::{JchError, Result};
use crate::model::{
    build_hamiltonian, enumerate_basis, BasisState, ModelParams, SparseOperator, StateVector, TwoExcitationBasis,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPhases {
    pub phase_i: f64,
    pub phase_ii: f64,
}

impl PathPhases {
    /// phase_II − phase_I in (−π, π].
    pub fn difference(&self) -> f64 {
        wrap_phase(self.phase_ii - self.phase_i)
    }
}

struct Route {
    name: &'static str,
    /// Tracked configurations, start to end.
    steps: Vec<BasisState>,
    /// The listed intermediate states; each tracked configuration must
    /// appear in the matching one.
    listed: Vec<StateVector>,
}

/// Accumulated phases of paths I and II for pair anchor `l` and
/// separation `j`. Needs an even ring with 2 ≤ j ≤ N − 3.
pub fn two_path_interference(params: &ModelParams, l: usize, j: usize) -> Result<PathPhases> {
    params.require_even()?;
    let n = params.n_sites;
    if j < 2 || j + 3 > n {
        return Err(JchError::OutOfRange { what: "separation j", value: j as i64, range: format!("2..={}", n - 3) });
    }
    let basis = enumerate_basis(params)?;
    let h = build_hamiltonian(&basis, params)?;
    let s = |i: usize| (l + i) % n;
    let pa = |photon: usize, atom: usize| BasisState::PhotonAtom { photon, atom };
    let ket = |b: BasisState| basis.ket(b);
    let pair = |a: BasisState, b: BasisState| &(&ket(a) - &ket(b)) * FRAC_1_SQRT_2;

    let start = pair(pa(s(0), s(j)), pa(s(1), s(j + 1)));
    let target = pair(pa(s(j), s(0)), pa(s(j + 1), s(1)));
    let pp = BasisState::photon_pair;

    let route_i = Route {
        name: "I",
        steps: vec![pa(s(0), s(j)), pp(s(0), s(j)), pa(s(j), s(0))],
        listed: vec![start.clone(), pair(pp(s(0), s(j)), pp(s(1), s(j + 1))), target.clone()],
    };
    let route_ii = Route {
        name: "II",
        steps: vec![pa(s(0), s(j)), pa(s(1), s(j)), pp(s(1), s(j)), pp(s(1), s(j + 1)), pa(s(j + 1), s(1))],
        listed: vec![
            start,
            pair(pa(s(1), s(j)), pa(s(0), s(j + 1))),
            pair(pp(s(1), s(j)), pp(s(0), s(j + 1))),
            pair(pp(s(1), s(j + 1)), pp(s(0), s(j))),
            target,
        ],
    };
    Ok(PathPhases { phase_i: route_phase(&basis, &h, &route_i)?, phase_ii: route_phase(&basis, &h, &route_ii)? })
}

fn route_phase(basis: &TwoExcitationBasis, h: &SparseOperator, route: &Route) -> Result<f64> {
    let idx = |b: &BasisState| basis.index_of(b).expect("two-excitation state");
    let scale = h.max_abs().max(1.0);
    for (step, (cfg, listed)) in route.steps.iter().zip(&route.listed).enumerate() {
        if listed.amplitudes()[idx(cfg)].norm() < 1e-14 {
            return Err(JchError::PathBroken { path: route.name, step });
        }
    }
    let mut phase = route.listed[0].amplitudes()[idx(&route.steps[0])].arg();
    for step in 0..route.steps.len() - 1 {
        let amp: Complex64 = h.get(idx(&route.steps[step + 1]), idx(&route.steps[step]));
        if amp.norm() < 1e-14 * scale {
            return Err(JchError::PathBroken { path: route.name, step: step + 1 });
        }
        phase += amp.arg();
    }
    let last = route.steps.len() - 1;
    phase -= route.listed[last].amplitudes()[idx(&route.steps[last])].arg();
    Ok(wrap_phase(phase))
}
