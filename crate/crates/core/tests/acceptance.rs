//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.
//!
//!     cargo test --release --test acceptance

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use sgkink::dislocation::{
    dislocation_kink_energy, fit_G2, pair_coeffs, second_level_params, MassConvention, SecondLevelParams,
};
use sgkink::lattice::{chain_energy, default_chain_length, pn_barrier, relax, sg_kink_initial, RelaxationConfig};
use sgkink::material::{bundled_materials, derive_params};
use sgkink::semiclassic::resolvent::kink_resolvent;
use sgkink::semiclassic::{
    hermit_residual, mellin_zeta_quadrature, quantum_correction, quantum_energy_pipeline, resolvent_polynomials, zeta,
    PhaseConvention, RegularizationParams, SpectralPrefactors,
};
use sgkink::sine_gordon::classical_energy;
use sgkink::spectral::{
    eigen_spectrum, heat_trace_diff, heat_trace_from_spectra, numerical_resolvent_diag, DiscreteOperator, GridSpec,
    RESOLVENT_GRID,
};
use sgkink::units::{joule_to_ev, joule_to_mev};
use sgkink::{Material, ModelMode, ModelParams, Result};

/// name, E_d (meV), ΔE_d (meV), E_c (eV), ΔE_c (eV) as published.
const TABLE: [(&str, f64, f64, f64, f64); 7] = [
    ("Ag", 1.9229, 0.0113, 9.3934, 0.0034),
    ("Al", 2.7443, 0.0336, 7.4665, 0.0064),
    ("Au", 0.06719, 0.00033, 11.8909, 0.0024),
    ("Cu", 3.1938, 0.0283, 8.7556, 0.0053),
    ("Fe", 7.4299, 0.0996, 7.0290, 0.0066),
    ("Mg", 5.5603, 0.0449, 9.8149, 0.0061),
    ("Ni", 14.4136, 0.0786, 23.3596, 0.0076),
];

const SWEEP_T: [f64; 10] = [1e-15, 1e-14, 1e-13, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn material(mats: &[Material], name: &str) -> Material {
    mats.iter().find(|m| m.name() == name).expect("bundled material").clone()
}

fn crowdion_table() -> Result<Outcome> {
    let mats = bundled_materials();
    let mut misses = Vec::new();
    for (name, _, _, e_ref, de_ref) in TABLE {
        let p = derive_params(&material(&mats, name), ModelMode::Crowdion);
        let e = joule_to_ev(classical_energy(&p));
        let de = joule_to_ev(quantum_correction(&p));
        // one unit in the last printed place
        if (e - e_ref).abs() > 1e-4 * (1.0 + 1e-9) {
            misses.push(format!("{name} E_c {e:.4} vs {e_ref}"));
        }
        if (de - de_ref).abs() > 1e-4 * (1.0 + 1e-9) {
            misses.push(format!("{name} dE_c {de:.4} vs {de_ref}"));
        }
    }
    outcome(misses.is_empty(), if misses.is_empty() { "all 14 values".to_string() } else { misses.join("; ") })
}

fn closed_form_identity() -> Result<Outcome> {
    let mats = bundled_materials();
    let mut worst: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for mat in &mats {
        let p = derive_params(mat, ModelMode::Crowdion);
        let target = classical_energy(&p) + quantum_correction(&p);
        let mut values = Vec::new();
        for t in SWEEP_T {
            let e = quantum_energy_pipeline(&p, RegularizationParams::tied(t, &p)?)?;
            worst = worst.max((e.total - Complex64::new(target, 0.0)).norm() / target);
            values.push(e.total.re);
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        spread = spread.max((hi - lo) / target);
    }
    outcome(worst < 1e-10, format!("max rel. error {worst:.3e}, T spread {spread:.1e}"))
}

fn resolvent() -> Result<Outcome> {
    let m = 1.0;
    let mut residual: f64 = 0.0;
    for k in [0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
        let res = resolvent_polynomials(k, m)?;
        for i in 0..10 {
            let p = -m * m * (5.0 - 4.9 * i as f64 / 9.0);
            for j in 0..10 {
                let x = (-3.0 + 6.0 * j as f64 / 9.0) / m;
                residual = residual.max(hermit_residual(&res, p, x)?.abs());
            }
        }
    }
    let mut numeric: f64 = 0.0;
    for p in [-0.25, -0.5, -1.0, -2.0, -4.0] {
        for x in [-2.0, -0.5, 0.0, 1.5] {
            let exact = kink_resolvent(p, x, m);
            numeric = numeric.max((numerical_resolvent_diag(p, x, m, RESOLVENT_GRID)? - exact).abs());
        }
    }
    outcome(
        residual < 1e-10 && numeric < 1e-6,
        format!("residual {residual:.2e} over 600 points, finite difference {numeric:.2e} over 20 points"),
    )
}

fn heat_trace() -> Result<Outcome> {
    let m = 1.0;
    let times = [0.1_f64, 0.25, 1.0, 4.0, 10.0];
    let mut errors = Vec::new();
    let mut consistency: f64 = 0.0;
    for h in [0.01, 0.005] {
        let grid = GridSpec::new(30.0, h)?;
        let kink = eigen_spectrum(&DiscreteOperator::kink(grid, m))?;
        let vacuum = eigen_spectrum(&DiscreteOperator::vacuum(grid, m))?;
        let mut row = Vec::new();
        for t in times {
            let exact = libm::erf(m * t.sqrt());
            row.push((heat_trace_from_spectra(&kink, &vacuum, t)?.value - exact).abs() / exact);
        }
        let direct = heat_trace_diff(1.0, m, grid)?.value;
        consistency = consistency.max((direct - heat_trace_from_spectra(&kink, &vacuum, 1.0)?.value).abs());
        errors.push(row);
    }
    let worst = errors[0].iter().copied().fold(0.0, f64::max);
    let decreasing = errors[0].iter().zip(&errors[1]).all(|(c, f)| f < c);
    outcome(
        worst < 0.01 && decreasing && consistency < 1e-12,
        format!("max rel. error {worst:.2e} at h = 0.01, halving h reduces every error: {decreasing}"),
    )
}

fn mellin() -> Result<Outcome> {
    let mats = bundled_materials();
    let p = derive_params(&material(&mats, "Ag"), ModelMode::Crowdion);
    let pre = SpectralPrefactors::new(&p, 1e-12)?;
    let mut worst: f64 = 0.0;
    for s in [-1.0, -0.5, 0.0, 0.25] {
        let closed = zeta(Complex64::new(s, 0.0), &pre, p.m_dimless(), PhaseConvention::EUCLIDEAN)?.re;
        let quad = mellin_zeta_quadrature(s, &pre, p.m_dimless())?;
        worst = worst.max(((quad - closed) / closed).abs());
    }
    outcome(worst < 1e-6, format!("max rel. difference {worst:.2e}"))
}

fn unit_chain(m: f64) -> Result<ModelParams> {
    ModelParams::new(1.0, m * m / (2.0 * std::f64::consts::PI.powi(2)), 1.0, 1.0, ModelMode::Crowdion)
}

fn continuum_limit() -> Result<Outcome> {
    let cfg = RelaxationConfig::default();
    let p = unit_chain(0.1)?;
    let n = default_chain_length(0.1);
    let relaxed = relax(sg_kink_initial(n, ((n - 1) / 2) as f64, &p)?, &p, &cfg)?;
    let rel = (chain_energy(&relaxed.state, &p) / classical_energy(&p) - 1.0).abs();

    let mut barriers = Vec::new();
    for m in [2.0, 1.5, 1.0, 0.5, 0.25] {
        let p = unit_chain(m)?;
        barriers.push(pn_barrier(&p, &cfg, default_chain_length(m))?.epsilon2);
    }
    let monotone = barriers.windows(2).all(|w| w[1] < w[0]);
    let listed: Vec<String> = barriers.iter().map(|b| format!("{b:.2e}")).collect();
    outcome(
        rel < 0.02 && monotone,
        format!("E_chain/E_c - 1 = {rel:.2e} at m = 0.1, barriers [{}]", listed.join(", ")),
    )
}

fn calibration() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for mat in bundled_materials() {
        for mode in [ModelMode::Crowdion, ModelMode::Dislocation] {
            let p = derive_params(&mat, mode);
            let c = pair_coeffs(p.a(), p.g())?;
            worst = worst.max((c.first_derivative(p.a()) / (p.g() * p.a())).abs());
            worst = worst.max((c.second_derivative(p.a()) / p.g() - 1.0).abs());
        }
    }
    let mut fit_err: f64 = 0.0;
    for g2 in [1e-3, 0.37, 12.5, 4.2e3] {
        let samples: Vec<(f64, f64)> =
            (1..=8).map(|i| i as f64 * 0.11).map(|x| (x, 0.5 * g2 * x * x)).collect();
        fit_err = fit_err.max((fit_G2(&samples)?.g2 / g2 - 1.0).abs());
    }
    outcome(
        worst < 1e-12 && fit_err < 1e-14,
        format!("calibration {worst:.1e}, synthetic fit {fit_err:.1e}"),
    )
}

fn with_epsilon(p: &ModelParams, epsilon: f64) -> Result<ModelParams> {
    ModelParams::new(p.g(), epsilon, p.a(), p.atom_mass(), ModelMode::Dislocation)
}

/// Mean |ln(value / published)| over the table.
fn log_score(values: &[f64], published: impl Iterator<Item = f64>) -> f64 {
    values.iter().zip(published).map(|(v, r)| (v / r).ln().abs()).sum::<f64>() / values.len() as f64
}

fn dislocation_columns() -> Result<Outcome> {
    let mats = bundled_materials();
    let cfg = RelaxationConfig::default();
    let mut slps: Vec<SecondLevelParams> = Vec::new();
    let mut crowdion_eps: Vec<SecondLevelParams> = Vec::new();
    for (name, ..) in TABLE {
        let mat = material(&mats, name);
        let p = derive_params(&mat, ModelMode::Dislocation);
        slps.push(second_level_params(&p, &cfg)?);
        let eps = derive_params(&mat, ModelMode::Crowdion).epsilon();
        crowdion_eps.push(second_level_params(&with_epsilon(&p, eps)?, &cfg)?);
    }

    let mut failures = Vec::new();
    let mut e_d = Vec::new();
    let mut de_defining = Vec::new();
    let mut de_alt = Vec::new();
    for (slp, (name, e_ref, ..)) in slps.iter().zip(TABLE) {
        let (e, de) = dislocation_kink_energy(slp, MassConvention::Defining)?;
        let (_, de2) = dislocation_kink_energy(slp, MassConvention::Alternative)?;
        let ratio = joule_to_mev(e) / e_ref;
        if !(0.2..=5.0).contains(&ratio) {
            failures.push(format!("{name} E_d ratio {ratio:.2}"));
        }
        for (label, d) in [("defining", de), ("alternative", de2)] {
            if !(1e-3..=1e-1).contains(&(d / e)) {
                failures.push(format!("{name} {label} dE_d/E_d {:.2e}", d / e));
            }
        }
        e_d.push(joule_to_mev(e));
        de_defining.push(joule_to_mev(de));
        de_alt.push(joule_to_mev(de2));
    }
    let e_d_crowdion: Vec<f64> = crowdion_eps
        .iter()
        .map(|s| dislocation_kink_energy(s, MassConvention::Defining).map(|(e, _)| joule_to_mev(e)))
        .collect::<Result<_>>()?;

    let score_eps_d = log_score(&e_d, TABLE.iter().map(|r| r.1));
    let score_eps_c = log_score(&e_d_crowdion, TABLE.iter().map(|r| r.1));
    let score_m_def = log_score(&de_defining, TABLE.iter().map(|r| r.2));
    let score_m_alt = log_score(&de_alt, TABLE.iter().map(|r| r.2));
    let eps_best = if score_eps_d <= score_eps_c { "dislocation" } else { "crowdion" };
    let mass_best = if score_m_def <= score_m_alt { "defining" } else { "alternative coefficient" };
    let detail = format!(
        "best epsilon: {eps_best} (mean |ln| {score_eps_d:.3} vs {score_eps_c:.3}); \
         best M2: {mass_best} (mean |ln| {score_m_def:.3} vs {score_m_alt:.3}){}",
        if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
    );
    outcome(failures.is_empty(), detail)
}

fn correction_scale() -> Result<Outcome> {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for mat in bundled_materials() {
        let p = derive_params(&mat, ModelMode::Crowdion);
        let r = quantum_correction(&p) / classical_energy(&p);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    outcome(lo >= 1e-4 && hi <= 1e-3, format!("dE_c/E_c in [{lo:.2e}, {hi:.2e}]"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>, Option<Duration>); 9] = [
        ("crowdion table regression", crowdion_table, Some(Duration::from_secs(1))),
        ("closed-form identity over T", closed_form_identity, Some(Duration::from_secs(1))),
        ("resolvent verification", resolvent, Some(Duration::from_secs(10))),
        ("heat-trace oracle", heat_trace, Some(Duration::from_secs(60))),
        ("Mellin cross-check", mellin, Some(Duration::from_secs(5))),
        ("continuum limit and barrier", continuum_limit, Some(Duration::from_secs(120))),
        ("pair-potential calibration", calibration, None),
        ("dislocation columns", dislocation_columns, None),
        ("crowdion correction scale", correction_scale, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let pass = pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = match budget {
            Some(b) => format!("{:.2} s of {} s", elapsed.as_secs_f64(), b.as_secs()),
            None => format!("{:.2} s", elapsed.as_secs_f64()),
        };
        println!("{} {}. {name} [{timing}]: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
