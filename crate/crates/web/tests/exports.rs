use serde_json::Value;

use jch_web::{band_structure_json, bound_pair_profile_json, flux_table_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn flux_follows_half_k() {
    let rows = parse(&flux_table_json(8, 1.0, 0.7, 16).unwrap());
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for r in rows {
        let k = r["k"].as_f64().unwrap();
        let reduced = if k > std::f64::consts::PI { k - 2.0 * std::f64::consts::PI } else { k };
        for leg in [0, 1] {
            match r["flux"][leg].as_f64() {
                Some(f) => assert!((f - reduced / 2.0).abs() < 1e-12, "k={k} f={f}"),
                None => assert!((k - std::f64::consts::PI).abs() < 1e-12),
            }
        }
        // J_4 = 0 always leaves the 3–4 plaquette undefined.
        assert!(r["flux"][2].is_null());
    }
}

#[test]
fn bands_cover_the_full_space() {
    let bands = parse(&band_structure_json(6, 1.0, 1.0, 1.0, 0.7).unwrap());
    let bands = bands.as_array().unwrap();
    assert_eq!(bands.len(), 6);
    let total: usize = bands.iter().map(|b| b["energies"].as_array().unwrap().len()).sum();
    assert_eq!(total, 72);
    assert_eq!(bands[0]["energies"].as_array().unwrap().len(), 13);
}

#[test]
fn bound_pair_profiles_are_normalized_eigenstates() {
    for (family, j) in [("psi", 2), ("phi", 1), ("phi", 0)] {
        let p = parse(&bound_pair_profile_json(8, 1.0, 0.7, family, j).unwrap());
        assert!(p["residual"].as_f64().unwrap() < 1e-12);
        let total: f64 = ["photon_photon", "atom_atom", "photon_atom"]
            .iter()
            .flat_map(|key| p[*key].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(p["photon_photon"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn rejects_bad_requests() {
    assert!(bound_pair_profile_json(8, 1.0, 0.7, "chi", 1).is_err());
    assert!(bound_pair_profile_json(7, 1.0, 0.7, "psi", 1).is_err());
    assert!(band_structure_json(40, 1.0, 1.0, 1.0, 0.7).is_err());
    assert!(flux_table_json(3, 1.0, 0.7, 8).is_err());
}
