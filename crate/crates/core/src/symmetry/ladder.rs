//! The analytic 4-leg ladder H_k and the explicit |j,l,k⟩ vectors that map
//! a momentum sector onto it.
//!
//! Legs: 1 = photon–atom |1⟩_l|e⟩_{l+j}, 2 = photon–photon, 3 = atom–photon
//! |e⟩_l|1⟩_{l+j}, 4 = atom–atom. Column 0 keeps legs 1 (on-site polariton
//! pair) and 2 (double photon) only.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use super::sectors::MomentumBlock;
use crate::error::{JchError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::model::{BasisState, ModelParams, StateVector, TwoExcitationBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderSite {
    pub column: usize,
    pub leg: u8,
}

impl LadderSite {
    pub fn new(column: usize, leg: u8) -> Self {
        Self { column, leg }
    }
}

/// Couplings of H_k. `hopping[l-1]` is ⟨j+1,l|H|j,l⟩, `rung` is
/// ⟨j,l|H|j,l+1⟩ (with leg 5 read as leg 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderParams {
    pub k: f64,
    pub hopping: [Complex64; 4],
    pub potential: [f64; 4],
    pub rung: Complex64,
}

impl LadderParams {
    pub fn new(params: &ModelParams, k: f64) -> Self {
        let kappa = params.kappa;
        let half = Complex64::from_polar(1.0, k / 2.0);
        Self {
            k,
            hopping: [
                -kappa * half,
                Complex64::new(-2.0 * kappa * (k / 2.0).cos(), 0.0),
                -kappa * half.conj(),
                Complex64::new(0.0, 0.0),
            ],
            potential: [
                params.omega_a + params.omega_b,
                2.0 * params.omega_a,
                params.omega_a + params.omega_b,
                2.0 * params.omega_b,
            ],
            rung: Complex64::new(params.lambda, 0.0),
        }
    }

    /// Same ladder with λ → λ e^{iθ} on every rung.
    pub fn with_rung_phase(mut self, theta: f64) -> Self {
        self.rung *= Complex64::from_polar(1.0, theta);
        self
    }

    pub fn hopping(&self, leg: u8) -> Complex64 {
        self.hopping[leg as usize - 1]
    }

    pub fn potential(&self, leg: u8) -> f64 {
        self.potential[leg as usize - 1]
    }

    pub fn hamiltonian(&self, j_max: usize) -> Result<LadderHamiltonian> {
        if j_max < 2 {
            return Err(JchError::OutOfRange { what: "j_max", value: j_max as i64, range: ">= 2".into() });
        }
        let sites = ladder_sites(j_max);
        let dim = sites.len();
        let idx = |s: LadderSite| site_index(s);
        let mut m = CMatrix::zeros(dim, dim);
        let mut set = |r: LadderSite, c: LadderSite, v: Complex64| {
            m[(idx(r), idx(c))] += v;
            m[(idx(c), idx(r))] += v.conj();
        };
        let (l01, l02) = (LadderSite::new(0, 1), LadderSite::new(0, 2));
        set(l01, l02, self.rung * SQRT_2);
        set(LadderSite::new(1, 1), l01, self.hopping(1));
        set(LadderSite::new(1, 3), l01, self.hopping(3));
        set(LadderSite::new(1, 2), l02, self.hopping(2) * SQRT_2);
        for j in 1..=j_max {
            for leg in 1..=4u8 {
                let next = if leg == 4 { 1 } else { leg + 1 };
                set(LadderSite::new(j, leg), LadderSite::new(j, next), self.rung);
                if j < j_max {
                    set(LadderSite::new(j + 1, leg), LadderSite::new(j, leg), self.hopping(leg));
                }
            }
        }
        for (i, s) in sites.iter().enumerate() {
            m[(i, i)] = Complex64::new(self.potential(s.leg), 0.0);
        }
        Ok(LadderHamiltonian { params: *self, j_max, sites, matrix: m })
    }
}

/// Dense H_k on columns 0..=j_max. Site order: (0,1), (0,2), then
/// (j,1..4) for each j ≥ 1.
#[derive(Debug, Clone)]
pub struct LadderHamiltonian {
    pub params: LadderParams,
    pub j_max: usize,
    pub sites: Vec<LadderSite>,
    pub matrix: CMatrix,
}

impl LadderHamiltonian {
    pub fn index_of(&self, site: LadderSite) -> Option<usize> {
        let valid = if site.column == 0 { (1..=2).contains(&site.leg) } else { (1..=4).contains(&site.leg) };
        (valid && site.column <= self.j_max).then(|| site_index(site))
    }

    /// ⟨row|H_k|col⟩.
    pub fn element(&self, row: LadderSite, col: LadderSite) -> Option<Complex64> {
        Some(self.matrix[(self.index_of(row)?, self.index_of(col)?)])
    }
}

pub fn build_ladder_hk(params: &ModelParams, k: f64, j_max: usize) -> Result<LadderHamiltonian> {
    params.validate()?;
    LadderParams::new(params, k).hamiltonian(j_max)
}

fn ladder_sites(j_max: usize) -> Vec<LadderSite> {
    let mut s = vec![LadderSite::new(0, 1), LadderSite::new(0, 2)];
    for j in 1..=j_max {
        s.extend((1..=4).map(|leg| LadderSite::new(j, leg)));
    }
    s
}

fn site_index(s: LadderSite) -> usize {
    if s.column == 0 {
        s.leg as usize - 1
    } else {
        2 + 4 * (s.column - 1) + s.leg as usize - 1
    }
}

/// The configuration on leg `leg` at column `j` for the pair anchored at
/// site `l`; the leg-2 entry at j = 0 is the normalized |2⟩_l.
fn leg_configuration(n: usize, l: usize, j: usize, leg: u8) -> BasisState {
    let far = (l + j) % n;
    match (j, leg) {
        (0, 1) => BasisState::PhotonAtom { photon: l, atom: l },
        (0, 2) => BasisState::DoublePhoton(l),
        (_, 1) => BasisState::PhotonAtom { photon: l, atom: far },
        (_, 2) => BasisState::photon_pair(l, far),
        (_, 3) => BasisState::PhotonAtom { photon: far, atom: l },
        (_, 4) => BasisState::atom_pair(l, far).expect("j ≥ 1 separates the atoms"),
        _ => unreachable!("legs are 1..=4"),
    }
}

/// |j,l,k⟩ = N^{-1/2} Σ_l e^{ik(l + j/2)} |config(l)⟩, with the column-0
/// states carrying e^{ikl}. Not normalized at j = N/2, where configurations
/// repeat around the ring.
pub fn ladder_state(basis: &TwoExcitationBasis, k: f64, site: LadderSite) -> StateVector {
    let n = basis.n_sites();
    let mut v = basis.zero_vector();
    let norm = 1.0 / (n as f64).sqrt();
    for l in 0..n {
        let phase = k * (l as f64 + site.column as f64 / 2.0);
        let i = basis.index_of(&leg_configuration(n, l, site.column, site.leg)).expect("two-excitation state");
        v.amplitudes_mut()[i] += Complex64::from_polar(norm, phase);
    }
    v
}

/// Ladder vectors for columns 0..=j_max, in ladder site order.
pub fn ladder_states(basis: &TwoExcitationBasis, k: f64, j_max: usize) -> Vec<(LadderSite, StateVector)> {
    ladder_sites(j_max).into_iter().map(|s| (s, ladder_state(basis, k, s))).collect()
}

/// How the ladder vectors sit inside one momentum sector.
#[derive(Debug, Clone)]
pub struct LadderAlignment {
    pub sites: Vec<LadderSite>,
    /// Sector coordinates B†|j,l,k⟩ as columns.
    pub coordinates: CMatrix,
    /// For each ladder vector: the sector column it occupies and the phase
    /// relating it to that sector basis vector.
    pub gauge: Vec<(usize, f64)>,
    /// ⟨j,l,k|H|j′,l′,k⟩ computed through the sector block.
    pub projected: CMatrix,
}

impl LadderAlignment {
    /// The projected block relabelled as a ladder, so that plaquette fluxes
    /// can be read off the exact sector.
    pub fn as_ladder(&self, params: &ModelParams, k: f64) -> LadderHamiltonian {
        let j_max = self.sites.iter().map(|s| s.column).max().unwrap_or(0);
        LadderHamiltonian {
            params: LadderParams::new(params, k),
            j_max,
            sites: self.sites.clone(),
            matrix: self.projected.clone(),
        }
    }
}

/// Maps ladder columns 0..=j_max into the sector. Fails if a ladder vector
/// is not a unit vector of the sector.
pub fn align_ladder(block: &MomentumBlock, basis: &TwoExcitationBasis, j_max: usize) -> Result<LadderAlignment> {
    let states = ladder_states(basis, block.k(), j_max);
    let mut coords = CMatrix::zeros(block.dim(), states.len());
    let mut gauge = Vec::with_capacity(states.len());
    for (col, (site, v)) in states.iter().enumerate() {
        let w: CVector = block.coordinates(v.amplitudes());
        let captured = w.norm();
        if (captured - 1.0).abs() > 1e-10 || (captured - v.norm()).abs() > 1e-10 {
            return Err(JchError::NotAnEigenstate(format!(
                "ladder vector (j={}, l={}) has weight {captured:.3e} in sector m={}",
                site.column, site.leg, block.m
            )));
        }
        let (arg, z) = w.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).expect("non-empty");
        gauge.push((arg, z.arg()));
        coords.set_column(col, &w);
    }
    let projected = coords.adjoint() * &block.block * &coords;
    Ok(LadderAlignment { sites: states.into_iter().map(|(s, _)| s).collect(), coordinates: coords, gauge, projected })
}

/// Largest entry gap between the analytic H_k and the projected sector
/// block, over columns 0..=interior.
pub fn ladder_match_residual(
    block: &MomentumBlock,
    basis: &TwoExcitationBasis,
    params: &ModelParams,
    interior: usize,
) -> Result<f64> {
    let j_max = interior.max(2);
    let alignment = align_ladder(block, basis, interior)?;
    let ladder = build_ladder_hk(params, block.k(), j_max)?;
    let mut worst: f64 = 0.0;
    for (a, sa) in alignment.sites.iter().enumerate() {
        for (b, sb) in alignment.sites.iter().enumerate() {
            let analytic = ladder.element(*sa, *sb).expect("interior site");
            worst = worst.max((alignment.projected[(a, b)] - analytic).norm());
        }
    }
    Ok(worst)
}

/// Deepest column that is free of the finite-ring wrap-around effects:
/// N/2 − 2 on even rings and (N−1)/2 − 1 on odd rings.
pub fn interior_columns(n_sites: usize) -> usize {
    if n_sites.is_multiple_of(2) {
        n_sites / 2 - 2
    } else {
        (n_sites - 1) / 2 - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermiticity_residual;
    use std::f64::consts::PI;

    #[test]
    fn leg_two_switches_off_at_pi() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        let lp = LadderParams::new(&p, PI);
        assert!(lp.hopping(2).norm() < 1e-15);
        assert_eq!(lp.hopping(4), Complex64::new(0.0, 0.0));
        assert!((lp.hopping(1) - lp.hopping(3).conj()).norm() < 1e-15);
    }

    #[test]
    fn zero_momentum_is_real() {
        let p = ModelParams::new(10, 1.0, 1.2, 0.8, 0.3);
        let h = build_ladder_hk(&p, 0.0, 5).unwrap();
        assert!(h.matrix.iter().all(|z| z.im.abs() < 1e-15));
        assert!(hermiticity_residual(&h.matrix) < 1e-15);
        assert_eq!(h.matrix.nrows(), 2 + 4 * 5);
        assert!((h.params.hopping(2).re + 1.6).abs() < 1e-15);
    }

    #[test]
    fn boundary_cell() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        let h = build_ladder_hk(&p, 1.0, 3).unwrap();
        let e =
            |r: (usize, u8), c: (usize, u8)| h.element(LadderSite::new(r.0, r.1), LadderSite::new(c.0, c.1)).unwrap();
        assert!((e((0, 1), (0, 2)).re - SQRT_2 * 0.3).abs() < 1e-15);
        assert!((e((1, 2), (0, 2)).re + 2.0 * SQRT_2 * 0.8 * 0.5f64.cos()).abs() < 1e-15);
        assert!((e((1, 4), (1, 1)).re - 0.3).abs() < 1e-15);
        assert_eq!(e((1, 4), (0, 1)), Complex64::new(0.0, 0.0));
        assert!(h.index_of(LadderSite::new(0, 3)).is_none());
        assert!(build_ladder_hk(&p, 1.0, 1).is_err());
    }

    #[test]
    fn ladder_vectors_are_orthonormal_in_interior() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        let basis = crate::model::enumerate_basis(&p).unwrap();
        let states = ladder_states(&basis, 2.0 * PI * 3.0 / 10.0, interior_columns(10));
        for (i, (_, a)) in states.iter().enumerate() {
            for (j, (_, b)) in states.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b) - Complex64::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn sector_blocks_match_analytic_ladder() {
        use crate::symmetry::{momentum_sectors, translation_operator};
        let p = ModelParams::new(10, 1.0, 1.15, 0.8, 0.3);
        let basis = crate::model::enumerate_basis(&p).unwrap();
        let h = crate::model::build_hamiltonian(&basis, &p).unwrap();
        let blocks = momentum_sectors(&h, &translation_operator(&basis), 10).unwrap();
        for b in &blocks {
            let r = ladder_match_residual(b, &basis, &p, interior_columns(10)).unwrap();
            assert!(r < 1e-12, "m={} residual {r:e}", b.m);
        }
    }
}
