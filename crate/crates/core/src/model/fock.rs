//! Occupation-number configurations of photons and two-level atoms on the
//! ring, and the elementary operator actions the Hamiltonians are built from.

use std::collections::HashMap;

/// Photon numbers per cavity and atomic excitation flags per cavity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation {
    photons: Vec<u8>,
    atoms: Vec<bool>,
}

impl Occupation {
    pub fn vacuum(n_sites: usize) -> Self {
        Self { photons: vec![0; n_sites], atoms: vec![false; n_sites] }
    }

    pub fn from_parts(photons: Vec<u8>, atoms: Vec<bool>) -> Self {
        assert_eq!(photons.len(), atoms.len());
        Self { photons, atoms }
    }

    pub fn n_sites(&self) -> usize {
        self.photons.len()
    }

    pub fn photons(&self, site: usize) -> u8 {
        self.photons[site]
    }

    pub fn photon_counts(&self) -> &[u8] {
        &self.photons
    }

    pub fn atom_excited(&self, site: usize) -> bool {
        self.atoms[site]
    }

    pub fn atom_flags(&self) -> &[bool] {
        &self.atoms
    }

    pub fn photon_number(&self) -> usize {
        self.photons.iter().map(|&n| n as usize).sum()
    }

    pub fn atom_excitations(&self) -> usize {
        self.atoms.iter().filter(|&&e| e).count()
    }

    /// Eigenvalue of the conserved excitation number.
    pub fn excitation(&self) -> usize {
        self.photon_number() + self.atom_excitations()
    }

    /// Image under the site shift i → i + 1 (mod N).
    pub fn translated(&self) -> Self {
        let n = self.n_sites();
        let mut photons = vec![0; n];
        let mut atoms = vec![false; n];
        for i in 0..n {
            photons[(i + 1) % n] = self.photons[i];
            atoms[(i + 1) % n] = self.atoms[i];
        }
        Self { photons, atoms }
    }

    /// a†_to a_from.
    pub fn hop(&self, from: usize, to: usize) -> Option<(Self, f64)> {
        let n_from = self.photons[from];
        if n_from == 0 {
            return None;
        }
        let mut next = self.clone();
        next.photons[from] -= 1;
        let amp_out = (n_from as f64).sqrt();
        next.photons[to] += 1;
        let amp_in = (next.photons[to] as f64).sqrt();
        Some((next, amp_out * amp_in))
    }

    /// a†_s σ⁻_s: de-excites the atom, adds a photon.
    pub fn atom_to_photon(&self, site: usize) -> Option<(Self, f64)> {
        if !self.atoms[site] {
            return None;
        }
        let mut next = self.clone();
        next.atoms[site] = false;
        next.photons[site] += 1;
        let amp = (next.photons[site] as f64).sqrt();
        Some((next, amp))
    }

    /// σ⁺_s a_s: absorbs a photon into the ground-state atom.
    pub fn photon_to_atom(&self, site: usize) -> Option<(Self, f64)> {
        if self.atoms[site] || self.photons[site] == 0 {
            return None;
        }
        let amp = (self.photons[site] as f64).sqrt();
        let mut next = self.clone();
        next.photons[site] -= 1;
        next.atoms[site] = true;
        Some((next, amp))
    }

    /// a†_s.
    pub fn create_photon(&self, site: usize) -> (Self, f64) {
        let mut next = self.clone();
        next.photons[site] += 1;
        let amp = (next.photons[site] as f64).sqrt();
        (next, amp)
    }

    /// σ⁺_s on a ground-state atom.
    pub fn create_atom(&self, site: usize) -> Option<Self> {
        if self.atoms[site] {
            return None;
        }
        let mut next = self.clone();
        next.atoms[site] = true;
        Some(next)
    }
}

/// An indexed set of occupations, with a per-site photon cap.
#[derive(Debug, Clone)]
pub struct FockBasis {
    n_sites: usize,
    cutoff: u8,
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
}

impl FockBasis {
    /// Takes `states` in the given order. Duplicates are dropped.
    pub fn from_states(n_sites: usize, cutoff: u8, states: Vec<Occupation>) -> Self {
        let mut index = HashMap::with_capacity(states.len());
        let mut kept = Vec::with_capacity(states.len());
        for s in states {
            debug_assert_eq!(s.n_sites(), n_sites);
            if !index.contains_key(&s) {
                index.insert(s.clone(), kept.len());
                kept.push(s);
            }
        }
        Self { n_sites, cutoff, states: kept, index }
    }

    /// All configurations whose total excitation lies in `excitations`,
    /// with at most `cutoff` photons per cavity. Without atoms only photon
    /// configurations (all atoms in |g⟩) are produced. Order: by excitation
    /// as listed, then lexicographic in (photons, atoms).
    pub fn enumerate(n_sites: usize, excitations: &[usize], cutoff: u8, with_atoms: bool) -> Self {
        let mut states = Vec::new();
        for &total in excitations {
            let mut sector = Vec::new();
            let atom_patterns: Vec<Vec<bool>> = if with_atoms {
                (0u64..(1u64 << n_sites))
                    .map(|mask| (0..n_sites).map(|i| mask >> i & 1 == 1).collect())
                    .filter(|a: &Vec<bool>| a.iter().filter(|&&e| e).count() <= total)
                    .collect()
            } else {
                vec![vec![false; n_sites]]
            };
            for atoms in atom_patterns {
                let n_atoms = atoms.iter().filter(|&&e| e).count();
                let mut photons = vec![0u8; n_sites];
                distribute(total - n_atoms, 0, cutoff, &mut photons, &mut |p| {
                    sector.push(Occupation::from_parts(p.to_vec(), atoms.clone()));
                });
            }
            sector.sort();
            states.extend(sector);
        }
        Self::from_states(n_sites, cutoff, states)
    }

    /// Photon-only configurations with exactly `n_photons` photons.
    pub fn photons_only(n_sites: usize, n_photons: usize, cutoff: u8) -> Self {
        Self::enumerate(n_sites, &[n_photons], cutoff, false)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn cutoff(&self) -> u8 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &Occupation {
        &self.states[i]
    }

    pub fn states(&self) -> &[Occupation] {
        &self.states
    }

    pub fn index_of(&self, occ: &Occupation) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn excitation(&self, i: usize) -> usize {
        self.states[i].excitation()
    }

    /// True if the photon cap admits `occ`.
    pub fn admits(&self, occ: &Occupation) -> bool {
        occ.photon_counts().iter().all(|&n| n <= self.cutoff)
    }
}

fn distribute(remaining: usize, site: usize, cutoff: u8, photons: &mut [u8], emit: &mut impl FnMut(&[u8])) {
    if site == photons.len() {
        if remaining == 0 {
            emit(photons);
        }
        return;
    }
    let max_here = remaining.min(cutoff as usize);
    for n in (0..=max_here).rev() {
        photons[site] = n as u8;
        distribute(remaining - n, site + 1, cutoff, photons, emit);
    }
    photons[site] = 0;
}
