//! wasm-bindgen entry points for the static demo in `www/`. Every export
//! returns a JSON string; the `*_json` functions carry the logic and are
//! what the native tests call.

use std::f64::consts::PI;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use jch_core::exact_states::{eigen_residual, phi_state, psi_state, BoundPairState};
use jch_core::linalg::eigvals_hermitian;
use jch_core::model::{build_hamiltonian, enumerate_basis, BasisState, ModelParams};
use jch_core::symmetry::{column_fluxes, LadderParams};
use jch_core::verify::decompose;

/// Largest ring the demo will diagonalize.
pub const MAX_SITES: usize = 16;

fn params(n_sites: usize, omega_a: f64, omega_b: f64, kappa: f64, lambda: f64) -> Result<ModelParams, String> {
    if n_sites > MAX_SITES {
        return Err(format!("n_sites = {n_sites} exceeds the demo limit of {MAX_SITES}"));
    }
    let p = ModelParams::new(n_sites, omega_a, omega_b, kappa, lambda);
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

#[derive(Debug, Serialize)]
struct FluxPoint {
    k: f64,
    /// Plaquettes between legs 1–2, 2–3 and 3–4; `null` where a hop vanishes.
    flux: [Option<f64>; 3],
}

/// Analytic plaquette fluxes on a uniform grid of `points` momenta in
/// [0, 2π).
pub fn flux_table_json(n_sites: usize, kappa: f64, lambda: f64, points: usize) -> Result<String, String> {
    let p = params(n_sites, 1.0, 1.0, kappa, lambda)?;
    let points = points.clamp(2, 720);
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let k = 2.0 * PI * i as f64 / points as f64;
        let ladder = LadderParams::new(&p, k).hamiltonian(3).map_err(|e| e.to_string())?;
        let f = column_fluxes(&ladder, 1).map_err(|e| e.to_string())?;
        rows.push(FluxPoint { k, flux: [f[0], f[1], f[2]] });
    }
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct Band {
    m: usize,
    k: f64,
    energies: Vec<f64>,
}

/// Eigenvalues of every momentum block.
pub fn band_structure_json(
    n_sites: usize,
    omega_a: f64,
    omega_b: f64,
    kappa: f64,
    lambda: f64,
) -> Result<String, String> {
    let p = params(n_sites, omega_a, omega_b, kappa, lambda)?;
    let d = decompose(&p).map_err(|e| e.to_string())?;
    let mut bands = Vec::with_capacity(d.blocks.len());
    for b in &d.blocks {
        let energies = eigvals_hermitian(&b.block).map_err(|e| e.to_string())?.values;
        bands.push(Band { m: b.m, k: b.k(), energies });
    }
    serde_json::to_string(&bands).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct Profile {
    family: &'static str,
    j: usize,
    residual: f64,
    omega_j: f64,
    /// Probability per site separation 0..=N/2, split into photon–photon,
    /// atom–atom and photon–atom pairs.
    photon_photon: Vec<f64>,
    atom_atom: Vec<f64>,
    photon_atom: Vec<f64>,
}

fn separation(a: usize, b: usize, n: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(n - d)
}

/// Relative-coordinate weights of ψ_j (`family = "psi"`) or φ_j (`"phi"`)
/// at ω_a = ω_b = 1.
pub fn bound_pair_profile_json(
    n_sites: usize,
    kappa: f64,
    lambda: f64,
    family: &str,
    j: usize,
) -> Result<String, String> {
    let p = params(n_sites, 1.0, 1.0, kappa, lambda)?;
    let basis = enumerate_basis(&p).map_err(|e| e.to_string())?;
    let state: BoundPairState = match family {
        "psi" => psi_state(&basis, &p, j),
        "phi" => phi_state(&basis, &p, j),
        other => return Err(format!("family must be `psi` or `phi`, got `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    let h = build_hamiltonian(&basis, &p).map_err(|e| e.to_string())?;
    let residual = eigen_residual(&h, &state.state, 2.0 * p.omega_a).map_err(|e| e.to_string())?;
    let half = n_sites / 2;
    let (mut pp, mut aa, mut pa) = (vec![0.0; half + 1], vec![0.0; half + 1], vec![0.0; half + 1]);
    for (i, amp) in state.state.amplitudes().iter().enumerate() {
        let w = amp.norm_sqr();
        match basis.state(i) {
            BasisState::DoublePhoton(_) => pp[0] += w,
            BasisState::PhotonPhoton(a, b) => pp[separation(a, b, n_sites)] += w,
            BasisState::AtomAtom(a, b) => aa[separation(a, b, n_sites)] += w,
            BasisState::PhotonAtom { photon, atom } => pa[separation(photon, atom, n_sites)] += w,
        }
    }
    let profile = Profile {
        family: state.family.name(),
        j,
        residual,
        omega_j: state.omega_j,
        photon_photon: pp,
        atom_atom: aa,
        photon_atom: pa,
    };
    serde_json::to_string(&profile).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn flux_table(n_sites: usize, kappa: f64, lambda: f64, points: usize) -> Result<String, JsValue> {
    flux_table_json(n_sites, kappa, lambda, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn band_structure(n_sites: usize, omega_a: f64, omega_b: f64, kappa: f64, lambda: f64) -> Result<String, JsValue> {
    band_structure_json(n_sites, omega_a, omega_b, kappa, lambda).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bound_pair_profile(n_sites: usize, kappa: f64, lambda: f64, family: &str, j: usize) -> Result<String, JsValue> {
    bound_pair_profile_json(n_sites, kappa, lambda, family, j).map_err(|e| JsValue::from_str(&e))
}
