//! The `jch` command line.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::config::{Format, RunConfig, OUTPUT_DIR_ENV};
use crate::error::{JchError, Result};
use crate::exact_states::Mechanism;
use crate::linalg::eigvals_hermitian;
use crate::report::{fmt_num, fmt_opt, matrix_json, ReportWriter};
use crate::spin_chain::{build_h_so, split_parity};
use crate::symmetry::two_path_interference;
use crate::verify::{self, CriterionReport};

#[derive(Debug, Parser)]
#[command(
    name = "jch",
    version,
    about = "Two-excitation Jaynes-Cummings-Hubbard ring: exact diagonalization and checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n_sites: Option<usize>,
    #[arg(long, global = true)]
    pub omega_a: Option<f64>,
    #[arg(long, global = true)]
    pub omega_b: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub spectral_tol: Option<f64>,
    #[arg(long, global = true)]
    pub residual_tol: Option<f64>,
    /// Output directory (also settable through JCH_OUTPUT_DIR).
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Output formats; repeat or comma-separate.
    #[arg(long, global = true, value_delimiter = ',')]
    pub format: Vec<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the full H, or of one momentum block.
    Spectrum {
        /// Momentum index m (k = 2πm/N) or `pi`.
        #[arg(long)]
        sector: Option<String>,
    },
    /// Momentum blocks and the block/full spectrum comparison.
    Blocks,
    /// Plaquette fluxes per momentum sector.
    Flux {
        /// Analytic ladder on a k grid (sweep.k, else `--points` uniform points).
        #[arg(long)]
        sweep_k: bool,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// H_SO, its parity halves and the π-sector check.
    SpinChain {
        /// Last chain column; defaults to N/2 − 1.
        #[arg(long)]
        j_max: Option<usize>,
    },
    /// The π-sector equivalence chain as a pass/fail report.
    VerifyPi,
    /// Residual table of ψ_j and φ_j.
    BoundPairs,
    /// η-pairing and Bose–Hubbard checks.
    EtaCheck,
    /// Interference-mechanism residuals and the two-path phase.
    Interference,
    /// Concurrence and Bell-overlap tables.
    Entanglement {
        /// Every site pair instead of the bound-pair sites.
        #[arg(long)]
        all_pairs: bool,
    },
    /// All acceptance criteria at the configured model point.
    VerifyAll,
}

/// Merged configuration: file, then environment, then flags.
pub fn resolve_config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut c = match &g.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
        if !dir.is_empty() {
            c.output.directory = dir.into();
        }
    }
    let m = &mut c.model;
    if let Some(v) = g.n_sites {
        m.n_sites = v;
    }
    if let Some(v) = g.omega_a {
        m.omega_a = v;
    }
    if let Some(v) = g.omega_b {
        m.omega_b = v;
    }
    if let Some(v) = g.kappa {
        m.kappa = v;
    }
    if let Some(v) = g.lambda {
        m.lambda = v;
    }
    if let Some(v) = g.spectral_tol {
        c.tolerances.spectral = v;
    }
    if let Some(v) = g.residual_tol {
        c.tolerances.residual = v;
    }
    if let Some(d) = &g.output_dir {
        c.output.directory = d.clone();
    }
    if !g.format.is_empty() {
        c.output.formats = g.format.clone();
    }
    c.validate()?;
    Ok(c)
}

/// Exit codes: 0 success, 1 verification failure, 2 usage or configuration.
pub fn run(cli: Cli) -> ExitCode {
    let outcome = resolve_config(&cli.global).and_then(|cfg| dispatch(&cli.command, &cfg));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}

fn is_usage_error(e: &JchError) -> bool {
    matches!(
        e,
        JchError::Configuration(_)
            | JchError::OddRing(_)
            | JchError::OutOfRange { .. }
            | JchError::UnsupportedRegime(_)
            | JchError::Io(_)
            | JchError::Json(_)
    )
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<bool> {
    let mut out = ReportWriter::new(&cfg.output.directory)?;
    let ok = match cmd {
        Command::Spectrum { sector } => spectrum(cfg, &mut out, sector.as_deref())?,
        Command::Blocks => blocks(cfg, &mut out)?,
        Command::Flux { sweep_k, points } => flux(cfg, &mut out, *sweep_k, *points)?,
        Command::SpinChain { j_max } => spin_chain(cfg, &mut out, *j_max)?,
        Command::VerifyPi => verify_pi(cfg, &mut out)?,
        Command::BoundPairs => bound_pairs(cfg, &mut out)?,
        Command::EtaCheck => eta_check(cfg, &mut out)?,
        Command::Interference => interference(cfg, &mut out)?,
        Command::Entanglement { all_pairs } => entanglement(cfg, &mut out, *all_pairs)?,
        Command::VerifyAll => verify_all(cfg, &mut out)?,
    };
    for p in out.written() {
        log::info!("wrote {}", p.display());
    }
    Ok(ok)
}

fn model_json(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg.model).expect("model serializes")
}

/// Parses `--sector`: an index 0..N−1 or `pi`.
pub fn parse_sector(arg: &str, n_sites: usize) -> Result<usize> {
    if arg.eq_ignore_ascii_case("pi") {
        if !n_sites.is_multiple_of(2) {
            return Err(JchError::Configuration(format!(
                "the k = pi sector exists only on even rings (N = {n_sites} is odd); choose an even n_sites"
            )));
        }
        return Ok(n_sites / 2);
    }
    let m: usize = arg.parse().map_err(|_| {
        JchError::Configuration(format!("--sector expects an integer 0..{n_sites} or `pi`, got `{arg}`"))
    })?;
    if m >= n_sites {
        return Err(JchError::OutOfRange { what: "sector m", value: m as i64, range: format!("0..{n_sites}") });
    }
    Ok(m)
}

fn spectrum(cfg: &RunConfig, out: &mut ReportWriter, sector: Option<&str>) -> Result<bool> {
    let p = &cfg.model;
    let (label, values) = match sector {
        Some(s) => {
            let m = parse_sector(s, p.n_sites)?;
            let d = verify::decompose(p)?;
            (format!("sector_m{m}"), eigvals_hermitian(&d.blocks[m].block)?.values)
        }
        None => {
            let basis = crate::model::enumerate_basis(p)?;
            let h = crate::model::build_hamiltonian(&basis, p)?;
            ("full".to_string(), eigvals_hermitian(&h.to_dense())?.values)
        }
    };
    if cfg.wants(Format::Csv) {
        out.eigenvalues(&format!("spectrum_{label}.csv"), &values)?;
    }
    if cfg.wants(Format::Json) {
        out.json(
            &format!("spectrum_{label}.json"),
            &json!({"model": model_json(cfg), "sector": label, "dim": values.len(), "eigenvalues": values}),
        )?;
    }
    println!(
        "{label}: {} eigenvalues in [{}, {}]",
        values.len(),
        fmt_num(values[0]),
        fmt_num(values[values.len() - 1])
    );
    Ok(true)
}

fn blocks(cfg: &RunConfig, out: &mut ReportWriter) -> Result<bool> {
    let p = &cfg.model;
    let d = verify::decompose(p)?;
    let eq = verify::block_equality(p, cfg.tolerances.spectral)?;
    let mut rows = Vec::new();
    let mut listing = Vec::new();
    for b in &d.blocks {
        let vals = eigvals_hermitian(&b.block)?.values;
        for (i, v) in vals.iter().enumerate() {
            rows.push(vec![b.m.to_string(), fmt_num(b.k()), i.to_string(), fmt_num(*v)]);
        }
        listing
            .push(json!({"m": b.m, "k": b.k(), "dim": b.dim(), "block": matrix_json(&b.block), "eigenvalues": vals}));
    }
    if cfg.wants(Format::Csv) {
        out.csv("block_spectra.csv", &["m", "k", "index", "eigenvalue"], &rows)?;
    }
    if cfg.wants(Format::Json) {
        out.json(
            "blocks.json",
            &json!({"model": model_json(cfg), "equality": {"max_gap": eq.max_gap, "equal": eq.equal, "tolerance": cfg.tolerances.spectral, "dims": eq.dims}, "blocks": listing}),
        )?;
    }
    println!(
        "{} blocks, dims {:?}; spectral gap {} -> {}",
        d.blocks.len(),
        eq.dims,
        fmt_num(eq.max_gap),
        if eq.equal { "equal" } else { "MISMATCH" }
    );
    Ok(eq.equal)
}

fn flux(cfg: &RunConfig, out: &mut ReportWriter, sweep_k: bool, points: usize) -> Result<bool> {
    let p = &cfg.model;
    if sweep_k {
        let ks: Vec<f64> = match cfg.sweep.as_ref().and_then(|s| s.k.clone()) {
            Some(ks) => ks,
            None => (0..points.max(1)).map(|i| 2.0 * PI * i as f64 / points.max(1) as f64).collect(),
        };
        let rows: Vec<Vec<String>> =
            verify::flux_sweep(p, &ks)?.into_iter().map(|(k, a, b)| vec![fmt_num(k), fmt_opt(a), fmt_opt(b)]).collect();
        out.csv("flux_sweep.csv", &["k", "flux_legs_1_2", "flux_legs_2_3"], &rows)?;
        println!("flux sweep: {} k points", rows.len());
        return Ok(true);
    }
    let table = verify::flux_table(p)?;
    let worst = table.iter().map(|r| r.max_error).fold(0.0, f64::max);
    if cfg.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = table
            .iter()
            .map(|r| {
                let ex = r.exact.unwrap_or([None, None]);
                vec![
                    r.m.to_string(),
                    fmt_num(r.k),
                    fmt_num(r.expected),
                    fmt_opt(r.analytic[0]),
                    fmt_opt(r.analytic[1]),
                    fmt_opt(ex[0]),
                    fmt_opt(ex[1]),
                    fmt_num(r.max_error),
                ]
            })
            .collect();
        out.csv(
            "flux.csv",
            &[
                "m",
                "k",
                "expected",
                "flux_legs_1_2",
                "flux_legs_2_3",
                "exact_flux_legs_1_2",
                "exact_flux_legs_2_3",
                "max_error",
            ],
            &rows,
        )?;
    }
    if cfg.wants(Format::Json) {
        out.json("flux.json", &json!({"model": model_json(cfg), "rows": table}))?;
    }
    let ok = worst <= cfg.tolerances.residual;
    println!("flux law over {} sectors: max |flux - k/2| = {}", table.len(), fmt_num(worst));
    Ok(ok)
}

fn spin_chain(cfg: &RunConfig, out: &mut ReportWriter, j_max: Option<usize>) -> Result<bool> {
    let p = &cfg.model;
    p.require_even()?;
    let j_max = j_max.unwrap_or((p.n_sites / 2).saturating_sub(1).max(2));
    let hso = build_h_so(p, j_max)?;
    let (odd, even) = split_parity(&hso)?;
    let labels = |sites: &[crate::spin_chain::SpinSite]| -> Vec<String> {
        sites.iter().map(|s| format!("{}{}", s.j, s.s.symbol())).collect()
    };
    for (name, sites, m) in
        [("h_so", &hso.sites, &hso.matrix), ("h_o", &odd.sites, &odd.matrix), ("h_e", &even.sites, &even.matrix)]
    {
        let vals = eigvals_hermitian(m)?.values;
        if cfg.wants(Format::Json) {
            out.json(
                &format!("{name}.json"),
                &json!({"energy_zero": "2 omega_a", "sites": labels(sites), "matrix": matrix_json(m)}),
            )?;
        }
        if cfg.wants(Format::Csv) {
            out.eigenvalues(&format!("{name}_spectrum.csv"), &vals)?;
        }
    }
    let report = verify::criterion_spin_chain(p, &cfg.verify_tolerances())?;
    if cfg.wants(Format::Json) {
        out.json("spin_chain_check.json", &report)?;
    }
    println!("{}", report.summary_line());
    Ok(report.passed())
}

fn print_report(r: &CriterionReport) {
    println!("{}", r.summary_line());
    for c in &r.checks {
        println!("    [{}] {}", if c.passed() { "ok" } else { "FAIL" }, c.describe());
    }
    for n in &r.notes {
        println!("    note: {n}");
    }
}

fn verify_pi(cfg: &RunConfig, out: &mut ReportWriter) -> Result<bool> {
    let p = &cfg.model;
    p.require_even()?;
    let s = verify::spin_equivalence(p)?;
    let r = verify::criterion_spin_chain(p, &cfg.verify_tolerances())?;
    out.json(
        "verify_pi.json",
        &json!({"model": model_json(cfg), "energy_zero": "2 omega_a", "measurements": s, "report": r}),
    )?;
    print_report(&r);
    Ok(r.passed())
}

fn j_allowed(cfg: &RunConfig, j: usize) -> bool {
    cfg.j_filter().is_none_or(|js| js.contains(&j))
}

fn bound_pairs(cfg: &RunConfig, out: &mut ReportWriter) -> Result<bool> {
    let mut rows = Vec::new();
    let mut listing = Vec::new();
    let mut ok = true;
    for p in cfg.coupling_points() {
        for r in verify::eigenstate_table(&p)?.into_iter().filter(|r| j_allowed(cfg, r.j)) {
            ok &= r.residual.is_none_or(|x| x <= cfg.tolerances.residual);
            ok &= r.graph_residual.is_none_or(|x| x <= cfg.tolerances.residual);
            rows.push(vec![
                fmt_num(p.kappa),
                fmt_num(p.lambda),
                r.family.name().to_string(),
                r.j.to_string(),
                fmt_num(r.omega_j),
                fmt_opt(r.residual),
                r.parity.to_string(),
                fmt_opt(r.singlet_overlap),
                fmt_opt(r.graph_residual),
            ]);
            listing.push(json!({"kappa": p.kappa, "lambda": p.lambda, "row": r}));
        }
    }
    if cfg.wants(Format::Csv) {
        out.csv(
            "bound_pairs.csv",
            &["kappa", "lambda", "family", "j", "omega_j", "residual", "parity", "singlet_overlap", "graph_residual"],
            &rows,
        )?;
    }
    if cfg.wants(Format::Json) {
        out.json("bound_pairs.json", &json!({"model": model_json(cfg), "rows": listing}))?;
    }
    println!(
        "bound pairs: {} rows, {}",
        rows.len(),
        if ok { "all within tolerance" } else { "residual above tolerance" }
    );
    Ok(ok)
}

fn eta_check(cfg: &RunConfig, out: &mut ReportWriter) -> Result<bool> {
    let p = &cfg.model;
    let e = verify::eta_checks(p)?;
    let r = verify::criterion_eta(p, &cfg.verify_tolerances())?;
    if cfg.wants(Format::Csv) {
        let rows: Vec<Vec<String>> =
            e.commutators.iter().map(|(j, x, v)| vec![j.to_string(), x.to_string(), fmt_num(*v)]).collect();
        out.csv("eta_commutators.csv", &["j", "excitations", "commutator"], &rows)?;
        let rows: Vec<Vec<String>> = e
            .bose_hubbard
            .iter()
            .map(|(u, j, c, ev)| vec![fmt_num(*u), j.to_string(), fmt_num(*c), fmt_num(*ev)])
            .collect();
        out.csv("eta_bose_hubbard.csv", &["u", "j", "commutator_residual", "eigen_residual"], &rows)?;
        let rows: Vec<Vec<String>> = e
            .pair_states
            .iter()
            .map(|(j, n, c, v)| vec![j.to_string(), n.to_string(), c.to_string(), fmt_num(*v)])
            .collect();
        out.csv("eta_states.csv", &["j", "n", "cutoff", "residual"], &rows)?;
    }
    if cfg.wants(Format::Json) {
        out.json("eta.json", &json!({"model": model_json(cfg), "lambda_used": 0.0, "checks": e, "report": r}))?;
    }
    print_report(&r);
    Ok(r.passed())
}

fn interference(cfg: &RunConfig, out: &mut ReportWriter) -> Result<bool> {
    let p = &cfg.model;
    let table = verify::mechanism_table(p)?;
    let r = verify::criterion_mechanisms(p, &cfg.verify_tolerances())?;
    let mut ok = r.passed();
    let path = if p.n_sites.is_multiple_of(2) && p.n_sites >= 6 {
        let j = (p.n_sites / 2 - 1).max(2);
        let ph = two_path_interference(p, 1, j)?;
        ok &= (crate::symmetry::wrap_phase(ph.difference() - PI)).abs() <= cfg.tolerances.residual;
        Some(json!({"l": 1, "j": j, "phase_i": ph.phase_i, "phase_ii": ph.phase_ii, "difference": ph.difference()}))
    } else {
        None
    };
    if cfg.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = table
            .iter()
            .map(|m| {
                vec![
                    m.mechanism.name().to_string(),
                    m.l.to_string(),
                    m.j.to_string(),
                    fmt_num(m.residual),
                    fmt_opt(m.perturbed_residual),
                    fmt_opt(m.flipped_sign_residual),
                ]
            })
            .collect();
        out.csv(
            "interference.csv",
            &["mechanism", "l", "j", "residual", "perturbed_residual", "flipped_sign_residual"],
            &rows,
        )?;
    }
    if cfg.wants(Format::Json) {
        out.json(
            "interference.json",
            &json!({"model": model_json(cfg), "mechanisms": table, "two_path": path, "report": r}),
        )?;
    }
    print_report(&r);
    if let Some(pth) = &path {
        println!("two-path phase difference: {}", fmt_num(pth["difference"].as_f64().unwrap_or(f64::NAN)));
    }
    let _ = Mechanism::ALL;
    Ok(ok)
}

fn entanglement(cfg: &RunConfig, out: &mut ReportWriter, all_pairs: bool) -> Result<bool> {
    let p = &cfg.model;
    let rows = verify::entanglement_table(p, all_pairs)?;
    let rows: Vec<_> = rows.into_iter().filter(|r| j_allowed(cfg, r.j)).collect();
    if cfg.wants(Format::Csv) {
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let b = r.bell.map(|b| b.map(Some)).unwrap_or([None; 4]);
                vec![
                    r.family.name().to_string(),
                    r.j.to_string(),
                    r.l.to_string(),
                    r.l_prime.to_string(),
                    fmt_num(r.concurrence),
                    fmt_num(r.wootters),
                    fmt_num(r.u_plus),
                    fmt_num(r.u_minus),
                    fmt_num(r.z_abs),
                    fmt_opt(b[0]),
                    fmt_opt(b[1]),
                    fmt_opt(b[2]),
                    fmt_opt(b[3]),
                    fmt_num(r.captured_weight),
                ]
            })
            .collect();
        out.csv(
            "entanglement.csv",
            &[
                "family",
                "j",
                "l",
                "l_prime",
                "concurrence",
                "wootters",
                "u_plus",
                "u_minus",
                "z_abs",
                "bell_phi_plus",
                "bell_phi_minus",
                "bell_psi_plus",
                "bell_psi_minus",
                "captured_weight",
            ],
            &table,
        )?;
    }
    if cfg.wants(Format::Json) {
        out.json("entanglement.json", &json!({"model": model_json(cfg), "all_pairs": all_pairs, "rows": rows}))?;
    }
    let gap = rows.iter().map(|r| (r.concurrence - r.wootters).abs()).fold(0.0, f64::max);
    println!("entanglement: {} rows, max |C(correlators) - C(Wootters)| = {}", rows.len(), fmt_num(gap));
    Ok(gap <= cfg.verify_tolerances().formula_match)
}

fn verify_all(cfg: &RunConfig, out: &mut ReportWriter) -> Result<bool> {
    let reports = verify::run_all(&cfg.model, &cfg.verify_tolerances())?;
    for r in &reports {
        print_report(r);
    }
    let ok = reports.iter().all(CriterionReport::passed);
    out.json("verify_all.json", &json!({"model": model_json(cfg), "passed": ok, "criteria": reports}))?;
    println!("{}", if ok { "all criteria passed" } else { "some criteria FAILED" });
    Ok(ok)
}
