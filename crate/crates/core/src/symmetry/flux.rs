use std::f64::consts::PI;

use num_complex::Complex64;

use super::ladder::{LadderHamiltonian, LadderSite};
use crate::error::{JchError, Result};

/// Links smaller than this are treated as absent.
pub const ZERO_LINK: f64 = 1e-14;

/// Phase of the hopping product around the plaquette between columns j,
/// j+1 and legs l, l+1 (leg 5 ≡ leg 1), traversed (j,l) → (j+1,l) →
/// (j+1,l+1) → (j,l+1) → (j,l). Each factor is the amplitude ⟨to|H|from⟩.
/// The result lies in (−π, π].
pub fn plaquette_flux(ladder: &LadderHamiltonian, column: usize, lower_leg: u8) -> Result<f64> {
    if column == 0 || column + 1 > ladder.j_max || !(1..=4).contains(&lower_leg) {
        return Err(JchError::OutOfRange {
            what: "plaquette column",
            value: column as i64,
            range: format!("1..={} with legs 1..=4", ladder.j_max.saturating_sub(1)),
        });
    }
    let upper_leg = if lower_leg == 4 { 1 } else { lower_leg + 1 };
    let corners = [
        LadderSite::new(column, lower_leg),
        LadderSite::new(column + 1, lower_leg),
        LadderSite::new(column + 1, upper_leg),
        LadderSite::new(column, upper_leg),
    ];
    let scale = ladder.matrix.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut product = Complex64::new(1.0, 0.0);
    for step in 0..4 {
        let from = corners[step];
        let to = corners[(step + 1) % 4];
        let link = ladder.element(to, from).expect("plaquette sites exist");
        if link.norm() < ZERO_LINK * scale {
            return Err(JchError::FluxUndefined { column, lower: lower_leg as usize, upper: upper_leg as usize });
        }
        product *= link;
    }
    Ok(wrap_phase(product.arg()))
}

/// Reduces an angle to (−π, π].
pub fn wrap_phase(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Plaquette fluxes of one column: legs 1–2, 2–3, 3–4 and 4–1, `None`
/// where a link vanishes.
pub fn column_fluxes(ladder: &LadderHamiltonian, column: usize) -> Result<[Option<f64>; 4]> {
    let mut out = [None; 4];
    for leg in 1..=4u8 {
        out[leg as usize - 1] = match plaquette_flux(ladder, column, leg) {
            Ok(f) => Some(f),
            Err(JchError::FluxUndefined { .. }) => None,
            Err(e) => return Err(e),
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::symmetry::ladder::{build_ladder_hk, LadderParams};

    #[test]
    fn flux_is_half_momentum() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        for m in 0..10 {
            let k = 2.0 * PI * m as f64 / 10.0;
            let h = build_ladder_hk(&p, k, 4).unwrap();
            let want = wrap_phase(k) / 2.0;
            for j in 1..4 {
                if m == 5 {
                    continue;
                }
                assert!((plaquette_flux(&h, j, 1).unwrap() - want).abs() < 1e-12, "m={m}");
                assert!((plaquette_flux(&h, j, 2).unwrap() - want).abs() < 1e-12);
                assert!(matches!(plaquette_flux(&h, j, 3), Err(JchError::FluxUndefined { .. })));
                assert!(matches!(plaquette_flux(&h, j, 4), Err(JchError::FluxUndefined { .. })));
            }
        }
    }

    #[test]
    fn leg_two_plaquettes_undefined_at_pi() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        let h = build_ladder_hk(&p, PI, 4).unwrap();
        assert_eq!(column_fluxes(&h, 2).unwrap(), [None; 4]);
    }

    #[test]
    fn rung_phase_is_gauge() {
        let p = ModelParams::resonant(10, 0.8, 0.3);
        let k = 0.9;
        let plain = build_ladder_hk(&p, k, 4).unwrap();
        let twisted = LadderParams::new(&p, k).with_rung_phase(0.77).hamiltonian(4).unwrap();
        for leg in 1..=2 {
            let a = plaquette_flux(&plain, 2, leg).unwrap();
            let b = plaquette_flux(&twisted, 2, leg).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn wraps_into_half_open_interval() {
        assert!((wrap_phase(PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }
}
