use serde::{Deserialize, Serialize};

use super::fock::{FockBasis, Occupation};
use super::params::ModelParams;
use crate::error::Result;
use crate::linalg::cr;
use crate::model::operator::{BasisTag, StateVector};

/// One configuration of the two-excitation subspace, relative to the
/// vacuum |G⟩ of empty cavities and ground-state atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisState {
    /// |2⟩_i
    DoublePhoton(usize),
    /// |1⟩_i |1⟩_i′ with i < i′
    PhotonPhoton(usize, usize),
    /// |e⟩_i |e⟩_i′ with i < i′
    AtomAtom(usize, usize),
    /// |1⟩_photon |e⟩_atom; the two sites may coincide.
    PhotonAtom { photon: usize, atom: usize },
}

impl BasisState {
    /// Photon pair on two sites, folded to canonical order. Equal sites
    /// give the double-photon state.
    pub fn photon_pair(a: usize, b: usize) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Self::DoublePhoton(a),
            std::cmp::Ordering::Less => Self::PhotonPhoton(a, b),
            std::cmp::Ordering::Greater => Self::PhotonPhoton(b, a),
        }
    }

    /// Returns `None` when both atoms sit on one site.
    pub fn atom_pair(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(Self::AtomAtom(a, b)),
            std::cmp::Ordering::Greater => Some(Self::AtomAtom(b, a)),
        }
    }

    pub fn occupation(&self, n_sites: usize) -> Occupation {
        let mut photons = vec![0u8; n_sites];
        let mut atoms = vec![false; n_sites];
        match *self {
            Self::DoublePhoton(i) => photons[i] = 2,
            Self::PhotonPhoton(i, j) => {
                photons[i] += 1;
                photons[j] += 1;
            }
            Self::AtomAtom(i, j) => {
                atoms[i] = true;
                atoms[j] = true;
            }
            Self::PhotonAtom { photon, atom } => {
                photons[photon] += 1;
                atoms[atom] = true;
            }
        }
        Occupation::from_parts(photons, atoms)
    }
}

/// Canonical enumeration of the 2N² two-excitation configurations: all
/// |2⟩_i ascending, then photon pairs, atom pairs and photon–atom states in
/// row-major site order.
#[derive(Debug, Clone)]
pub struct TwoExcitationBasis {
    n_sites: usize,
    states: Vec<BasisState>,
    fock: FockBasis,
}

impl TwoExcitationBasis {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> BasisState {
        self.states[i]
    }

    pub fn fock(&self) -> &FockBasis {
        &self.fock
    }

    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        self.fock.index_of(&s.occupation(self.n_sites))
    }

    pub fn tag(&self) -> BasisTag {
        BasisTag::TwoExcitation { n_sites: self.n_sites }
    }

    pub fn site(&self, i: i64) -> usize {
        i.rem_euclid(self.n_sites as i64) as usize
    }

    pub fn zero_vector(&self) -> StateVector {
        StateVector::zeros(self.tag(), self.len())
    }

    /// Unit vector on a single configuration.
    pub fn ket(&self, s: BasisState) -> StateVector {
        let mut v = self.zero_vector();
        let i = self.index_of(&s).expect("basis state belongs to the two-excitation space");
        v.amplitudes_mut()[i] = cr(1.0);
        v
    }

    /// The (unnormalized) product Π a†_p Π σ⁺_a |G⟩ for two excitations
    /// given as photon and atom site lists; site indices wrap around the
    /// ring. Two photons on one site give √2 |2⟩. Returns the zero vector
    /// if an atom is raised twice.
    pub fn product(&self, photons: &[i64], atoms: &[i64]) -> StateVector {
        assert_eq!(photons.len() + atoms.len(), 2, "two excitations");
        let mut occ = Occupation::vacuum(self.n_sites);
        let mut amp = 1.0;
        for &p in photons {
            let (next, a) = occ.create_photon(self.site(p));
            occ = next;
            amp *= a;
        }
        let mut v = self.zero_vector();
        for &a in atoms {
            match occ.create_atom(self.site(a)) {
                Some(next) => occ = next,
                None => return v,
            }
        }
        let i = self.fock.index_of(&occ).expect("two-excitation configuration");
        v.amplitudes_mut()[i] = cr(amp);
        v
    }
}

/// Builds the canonical two-excitation basis. Errors for rings shorter
/// than four cavities.
pub fn enumerate_basis(params: &ModelParams) -> Result<TwoExcitationBasis> {
    params.validate()?;
    let n = params.n_sites;
    let mut states = Vec::with_capacity(2 * n * n);
    states.extend((0..n).map(BasisState::DoublePhoton));
    for i in 0..n {
        for j in i + 1..n {
            states.push(BasisState::PhotonPhoton(i, j));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            states.push(BasisState::AtomAtom(i, j));
        }
    }
    for photon in 0..n {
        for atom in 0..n {
            states.push(BasisState::PhotonAtom { photon, atom });
        }
    }
    let occupations = states.iter().map(|s| s.occupation(n)).collect();
    let fock = FockBasis::from_states(n, 2, occupations);
    Ok(TwoExcitationBasis { n_sites: n, states, fock })
}
