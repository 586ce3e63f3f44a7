//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Duration;

use jch_core::model::{build_hamiltonian, enumerate_basis, ModelParams};
use jch_core::symmetry::LadderParams;
use jch_core::verify::{self, Check, CriterionReport, Tolerances};
use jch_core::Result;

const TOL: Tolerances = Tolerances {
    spectral: 1e-10,
    residual: 1e-12,
    cross_parity: 1e-14,
    commutator: 1e-13,
    eta_two_pairs: 1e-11,
    bell_strong: 0.999,
    formula_match: 1e-10,
    oracle: 1e-13,
    mixed_floor_per_kappa: 1e-4,
    runtime: Duration::from_secs(10),
};

fn grid(n: usize) -> Vec<ModelParams> {
    let mut out = Vec::new();
    for kappa in [0.5, 1.0] {
        for lambda in [0.3, 0.7] {
            out.push(ModelParams::resonant(n, kappa, lambda));
        }
    }
    out
}

fn reference_point() -> ModelParams {
    ModelParams::resonant(8, 1.0, 0.7)
}

fn c1() -> Result<CriterionReport> {
    let points: Vec<ModelParams> = [6, 8, 10].into_iter().flat_map(grid).collect();
    verify::criterion_block_decomposition(&points, &TOL)
}

fn c2() -> Result<CriterionReport> {
    let p = ModelParams::resonant(10, 1.0, 0.7);
    let mut r = verify::criterion_ladder_form(&p, &TOL)?;
    let mut gap: f64 = 0.0;
    for m in 0..p.n_sites {
        let k = 2.0 * PI * m as f64 / p.n_sites as f64;
        let lp = LadderParams::new(&p, k);
        for (leg, want) in common::ladder_hopping(&p, k).iter().enumerate() {
            gap = gap.max((lp.hopping(leg as u8 + 1) - want).norm());
        }
    }
    r.checks.push(Check::at_most("N=10 analytic J_l vs hand-written closed form".to_string(), gap, TOL.residual));
    Ok(r)
}

fn c3() -> Result<CriterionReport> {
    verify::criterion_flux(&ModelParams::resonant(10, 1.0, 0.7), &reference_point(), &TOL)
}

fn c4() -> Result<CriterionReport> {
    verify::criterion_spin_chain(&ModelParams::resonant(10, 1.0, 0.7), &TOL)
}

fn c5() -> Result<CriterionReport> {
    verify::criterion_eigenstates(&grid(10), &TOL)
}

fn c6() -> Result<CriterionReport> {
    verify::criterion_eta(&ModelParams::resonant(6, 1.0, 0.7), &TOL)
}

fn c7() -> Result<CriterionReport> {
    verify::criterion_mechanisms(&reference_point(), &TOL)
}

fn c8() -> Result<CriterionReport> {
    verify::criterion_entanglement(&reference_point(), &TOL)
}

fn c9() -> Result<CriterionReport> {
    let p = ModelParams::resonant(4, 1.0, 0.7);
    let mut r = verify::criterion_oracle(&p, &TOL)?;
    let basis = enumerate_basis(&p)?;
    let sparse = build_hamiltonian(&basis, &p)?.to_dense();
    let gap = common::max_abs_diff(&sparse, &common::dense_oracle(&basis, &p));
    r.checks.push(Check::at_most("N=4 sparse H vs tensor-product oracle".to_string(), gap, TOL.oracle));
    Ok(r)
}

fn main() -> ExitCode {
    let criteria: [fn() -> Result<CriterionReport>; 9] = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    let mut failed = 0;
    for (i, run) in criteria.iter().enumerate() {
        match run() {
            Ok(r) => {
                println!("{}", r.summary_line());
                for c in r.checks.iter().filter(|c| !c.passed()) {
                    println!("    failing: {}", c.describe());
                }
                for n in &r.notes {
                    println!("    note: {n}");
                }
                if !r.passed() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("[FAIL] criterion {}: error: {e}", i + 1);
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
