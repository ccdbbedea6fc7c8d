//! Command implementations behind the `sgkink` binary. Every command returns
//! its output as a string so the same code drives the binary, the examples and
//! the tests.
//!
//! Energies are printed in eV for crowdions and meV for dislocation kinks.
//! Values carry four significant figures unless `full_precision` is set, which
//! prints shortest round-trip values.

use rayon::prelude::*;
use serde::Serialize;

use crate::dislocation::{dislocation_kink_energy, second_level_params, MassConvention, SecondLevelParams};
use crate::error::{Error, Result};
use crate::lattice::{default_chain_length, pn_barrier, relax, sg_kink_initial, RelaxationConfig};
use crate::material::{derive_params, find, Material, ModelMode, ModelParams};
use crate::semiclassic::{quantum_correction, quantum_energy_pipeline, RegularizationParams};
use crate::sine_gordon::{classical_energy, potential_u, static_solution, EllipticSolution};
use crate::spectral::{heat_trace_diff, GridSpec};
use crate::units::{joule_to_ev, joule_to_mev};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::validation("format", format!("{other:?} is not csv|json"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutputOptions {
    pub format: Format,
    pub full_precision: bool,
}

impl OutputOptions {
    /// Four significant figures.
    fn sig(&self, v: f64) -> f64 {
        if self.full_precision || v == 0.0 || !v.is_finite() {
            v
        } else {
            round_via(&format!("{v:.3e}"), v)
        }
    }
}

/// Plain decimal for moderate magnitudes, scientific otherwise.
fn num(v: f64) -> String {
    let mag = v.abs();
    if v == 0.0 || (1e-4..1e7).contains(&mag) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn round_via(text: &str, fallback: f64) -> f64 {
    text.parse().unwrap_or(fallback)
}

fn render<T: Serialize>(rows: &[T], header: &[&str], fields: impl Fn(&T) -> Vec<String>, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string_pretty(rows).expect("plain structs serialize") + "\n",
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&fields(row).join(","));
                out.push('\n');
            }
            out
        }
    }
}

fn render_one<T: Serialize>(row: &T, header: &[&str], fields: impl Fn(&T) -> Vec<String>, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string_pretty(row).expect("plain structs serialize") + "\n",
        Format::Csv => render(std::slice::from_ref(row), header, fields, fmt),
    }
}

#[derive(Debug, Clone, Serialize)]
struct MaterialRow {
    name: String,
    atomic_mass_kg: f64,
    lattice_const_m: f64,
    shear_modulus_pa: f64,
    bulk_modulus_pa: f64,
    sound_speed_m_per_s: f64,
    m_crowdion: f64,
    m_dislocation: f64,
}

pub fn cmd_materials(materials: &[Material], opts: OutputOptions) -> String {
    let rows: Vec<MaterialRow> = materials
        .iter()
        .map(|mat| {
            let c = derive_params(mat, ModelMode::Crowdion);
            let d = derive_params(mat, ModelMode::Dislocation);
            MaterialRow {
                name: mat.name().to_string(),
                atomic_mass_kg: opts.sig(mat.atomic_mass()),
                lattice_const_m: opts.sig(mat.lattice_const()),
                shear_modulus_pa: opts.sig(mat.shear_modulus()),
                bulk_modulus_pa: opts.sig(mat.bulk_modulus()),
                sound_speed_m_per_s: opts.sig(c.sound_speed()),
                m_crowdion: opts.sig(c.m_dimless()),
                m_dislocation: opts.sig(d.m_dimless()),
            }
        })
        .collect();
    render(
        &rows,
        &[
            "material",
            "atomic_mass_kg",
            "lattice_const_m",
            "shear_modulus_Pa",
            "bulk_modulus_Pa",
            "sound_speed_m_per_s",
            "m_crowdion",
            "m_dislocation",
        ],
        |r| {
            vec![
                r.name.clone(),
                num(r.atomic_mass_kg),
                num(r.lattice_const_m),
                num(r.shear_modulus_pa),
                num(r.bulk_modulus_pa),
                num(r.sound_speed_m_per_s),
                num(r.m_crowdion),
                num(r.m_dislocation),
            ]
        },
        opts.format,
    )
}

/// One line of the kink energy table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow<'a> {
    pub material: &'a str,
    #[serde(rename = "E_d_meV")]
    pub e_d_mev: f64,
    #[serde(rename = "dE_d_meV")]
    pub de_d_mev: f64,
    #[serde(rename = "E_c_eV")]
    pub e_c_ev: f64,
    #[serde(rename = "dE_c_eV")]
    pub de_c_ev: f64,
}

/// Unrounded row: crowdion columns from the closed forms, dislocation columns
/// from relaxation, the G₂ fit and the second-level closed forms.
pub fn report_row<'a>(mat: &'a Material, cfg: &RelaxationConfig, mass: MassConvention) -> Result<ReportRow<'a>> {
    let crowd = derive_params(mat, ModelMode::Crowdion);
    let slp = second_level_params(&derive_params(mat, ModelMode::Dislocation), cfg)?;
    let (e_d, de_d) = dislocation_kink_energy(&slp, mass)?;
    let row = ReportRow {
        material: mat.name(),
        e_d_mev: joule_to_mev(e_d),
        de_d_mev: joule_to_mev(de_d),
        e_c_ev: joule_to_ev(classical_energy(&crowd)),
        de_c_ev: joule_to_ev(quantum_correction(&crowd)),
    };
    let ordered = [row.e_d_mev, row.de_d_mev, row.e_c_ev, row.de_c_ev].iter().all(|v| *v >= 0.0)
        && row.de_c_ev < row.e_c_ev
        && row.de_d_mev < row.e_d_mev;
    if !ordered {
        return Err(Error::domain("report row", format!("{}: corrections exceed energies", mat.name())));
    }
    Ok(row)
}

#[derive(Debug)]
pub struct TableOutput {
    pub text: String,
    /// Materials that failed, with the reason.
    pub failures: Vec<(String, Error)>,
}

/// Rows in input order, computed in parallel. With `strict` the first failure
/// (in input order) is returned as the error.
pub fn cmd_table(
    materials: &[Material],
    cfg: &RelaxationConfig,
    mass: MassConvention,
    strict: bool,
    opts: OutputOptions,
) -> Result<TableOutput> {
    let results: Vec<Result<ReportRow>> = materials.par_iter().map(|m| report_row(m, cfg, mass)).collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (mat, res) in materials.iter().zip(results) {
        match res {
            Ok(r) => rows.push(ReportRow {
                e_d_mev: opts.sig(r.e_d_mev),
                de_d_mev: opts.sig(r.de_d_mev),
                e_c_ev: opts.sig(r.e_c_ev),
                de_c_ev: opts.sig(r.de_c_ev),
                ..r
            }),
            Err(e) if strict => return Err(e),
            Err(e) => failures.push((mat.name().to_string(), e)),
        }
    }
    let text = render(
        &rows,
        &["material", "E_d_meV", "dE_d_meV", "E_c_eV", "dE_c_eV"],
        |r| {
            vec![
                r.material.to_string(),
                num(r.e_d_mev),
                num(r.de_d_mev),
                num(r.e_c_ev),
                num(r.de_c_ev),
            ]
        },
        opts.format,
    );
    Ok(TableOutput { text, failures })
}

/// How r is tied to T in the `correction` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RTie {
    /// r² = εT/ħ.
    #[default]
    Epsilon,
    /// r² = πεT/ħ.
    Spectral,
}

#[derive(Debug, Clone, Serialize)]
struct CorrectionOut {
    material: String,
    mode: ModelMode,
    #[serde(rename = "E_c_eV")]
    e_c_ev: f64,
    #[serde(rename = "dE_eV")]
    de_ev: f64,
    #[serde(rename = "E_q_eV")]
    e_q_ev: f64,
    #[serde(rename = "E_q_imag_eV")]
    e_q_imag_ev: f64,
    #[serde(rename = "T_s")]
    t_s: f64,
    r: f64,
}

/// Closed-form ΔE next to the pipeline's E_q for one material.
pub fn cmd_correction(
    materials: &[Material],
    name: &str,
    mode: ModelMode,
    t: f64,
    untie_r: Option<f64>,
    tie: RTie,
    opts: OutputOptions,
) -> Result<String> {
    let p = derive_params(find(materials, name)?, mode);
    let mut reg = match tie {
        RTie::Epsilon => RegularizationParams::tied(t, &p)?,
        RTie::Spectral => RegularizationParams::tied_spectral(t, &p)?,
    };
    if let Some(factor) = untie_r {
        reg = reg.scaled_r(factor)?;
    }
    let eq = quantum_energy_pipeline(&p, reg)?;
    let out = CorrectionOut {
        material: find(materials, name)?.name().to_string(),
        mode,
        e_c_ev: opts.sig(joule_to_ev(eq.classical)),
        de_ev: opts.sig(joule_to_ev(quantum_correction(&p))),
        e_q_ev: opts.sig(joule_to_ev(eq.total.re)),
        e_q_imag_ev: opts.sig(joule_to_ev(eq.total.im)) + 0.0,
        t_s: opts.sig(t),
        r: opts.sig(reg.r()),
    };
    Ok(render_one(
        &out,
        &["material", "mode", "E_c_eV", "dE_eV", "E_q_eV", "E_q_imag_eV", "T_s", "r"],
        |o| {
            vec![
                o.material.clone(),
                o.mode.to_string(),
                num(o.e_c_ev),
                num(o.de_ev),
                num(o.e_q_ev),
                num(o.e_q_imag_ev),
                num(o.t_s),
                num(o.r),
            ]
        },
        opts.format,
    ))
}

#[derive(Debug, Clone, Serialize)]
struct DislocationOut {
    material: String,
    #[serde(rename = "epsilon2_J")]
    epsilon2: f64,
    #[serde(rename = "G2_N_per_m")]
    g2: f64,
    #[serde(rename = "M2_defining_kg")]
    m2_defining: f64,
    #[serde(rename = "M2_alternative_kg")]
    m2_alternative: f64,
    #[serde(rename = "E_d_meV")]
    e_d_mev: f64,
    #[serde(rename = "dE_d_meV")]
    de_d_mev: f64,
    #[serde(rename = "dE_d_alternative_meV")]
    de_d_alternative_mev: f64,
}

pub fn dislocation_summary(mat: &Material, cfg: &RelaxationConfig) -> Result<SecondLevelParams> {
    second_level_params(&derive_params(mat, ModelMode::Dislocation), cfg)
}

pub fn cmd_dislocation(materials: &[Material], name: &str, cfg: &RelaxationConfig, opts: OutputOptions) -> Result<String> {
    let mat = find(materials, name)?;
    let slp = dislocation_summary(mat, cfg)?;
    let (e_d, de_d) = dislocation_kink_energy(&slp, MassConvention::Defining)?;
    let (_, de_alternative) = dislocation_kink_energy(&slp, MassConvention::Alternative)?;
    let out = DislocationOut {
        material: mat.name().to_string(),
        epsilon2: opts.sig(slp.epsilon2),
        g2: opts.sig(slp.g2),
        m2_defining: opts.sig(slp.m2),
        m2_alternative: opts.sig(slp.m2_alternative),
        e_d_mev: opts.sig(joule_to_mev(e_d)),
        de_d_mev: opts.sig(joule_to_mev(de_d)),
        de_d_alternative_mev: opts.sig(joule_to_mev(de_alternative)),
    };
    Ok(render_one(
        &out,
        &[
            "material",
            "epsilon2_J",
            "G2_N_per_m",
            "M2_defining_kg",
            "M2_alternative_kg",
            "E_d_meV",
            "dE_d_meV",
            "dE_d_alternative_meV",
        ],
        |o| {
            vec![
                o.material.clone(),
                num(o.epsilon2),
                num(o.g2),
                num(o.m2_defining),
                num(o.m2_alternative),
                num(o.e_d_mev),
                num(o.de_d_mev),
                num(o.de_d_alternative_mev),
            ]
        },
        opts.format,
    ))
}

#[derive(Debug, Clone, Serialize)]
struct BarrierOut {
    material: String,
    mode: ModelMode,
    #[serde(rename = "epsilon2_J")]
    epsilon2_j: f64,
    #[serde(rename = "epsilon2_meV")]
    epsilon2_mev: f64,
    n: usize,
    iterations_site: usize,
    iterations_bond: usize,
    degenerate: bool,
}

pub fn cmd_pn_barrier(
    materials: &[Material],
    name: &str,
    mode: ModelMode,
    cfg: &RelaxationConfig,
    opts: OutputOptions,
) -> Result<String> {
    let mat = find(materials, name)?;
    let p = derive_params(mat, mode);
    let b = pn_barrier(&p, cfg, default_chain_length(p.m_dimless()))?;
    let out = BarrierOut {
        material: mat.name().to_string(),
        mode,
        epsilon2_j: opts.sig(b.epsilon2),
        epsilon2_mev: opts.sig(joule_to_mev(b.epsilon2)),
        n: b.n,
        iterations_site: b.iterations_site,
        iterations_bond: b.iterations_bond,
        degenerate: b.degenerate,
    };
    Ok(render_one(
        &out,
        &[
            "material",
            "mode",
            "epsilon2_J",
            "epsilon2_meV",
            "n",
            "iterations_site",
            "iterations_bond",
            "degenerate",
        ],
        |o| {
            vec![
                o.material.clone(),
                o.mode.to_string(),
                num(o.epsilon2_j),
                num(o.epsilon2_mev),
                o.n.to_string(),
                o.iterations_site.to_string(),
                o.iterations_bond.to_string(),
                o.degenerate.to_string(),
            ]
        },
        opts.format,
    ))
}

#[derive(Debug, Clone, Serialize)]
struct ProfileOut {
    material: String,
    mode: ModelMode,
    k: f64,
    m: f64,
    x_prime: Vec<f64>,
    phi: Vec<f64>,
    #[serde(rename = "U")]
    u: Vec<f64>,
}

/// Evenly sampled (x′, φ, U) of the static solution centred at x′ = 0.
/// Profile values are always printed at full precision.
#[allow(clippy::too_many_arguments)]
pub fn cmd_profile(
    materials: &[Material],
    name: &str,
    mode: ModelMode,
    k: f64,
    range: (f64, f64),
    samples: usize,
    opts: OutputOptions,
) -> Result<String> {
    let mat = find(materials, name)?;
    let p = derive_params(mat, mode);
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::validation("range", format!("[{lo}, {hi}] is not an interval")));
    }
    if samples < 2 {
        return Err(Error::validation("samples", "at least two samples are needed"));
    }
    let sol = EllipticSolution::new(k, p.m_dimless(), 0.0)?;
    let xs: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    let out = ProfileOut {
        material: mat.name().to_string(),
        mode,
        k,
        m: p.m_dimless(),
        phi: xs.iter().map(|&x| static_solution(x, &sol)).collect(),
        u: xs.iter().map(|&x| potential_u(x, &sol)).collect(),
        x_prime: xs,
    };
    Ok(match opts.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("plain structs serialize") + "\n",
        Format::Csv => {
            let mut s = format!("# material={} mode={} k={} m={}\nx_prime,phi,U\n", out.material, mode, k, out.m);
            for i in 0..samples {
                s.push_str(&format!("{},{},{}\n", num(out.x_prime[i]), num(out.phi[i]), num(out.u[i])));
            }
            s
        }
    })
}

/// Heat-trace check times.
pub const SPECTRUM_CHECK_TIMES: [f64; 5] = [0.1, 0.25, 1.0, 4.0, 10.0];

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub t: f64,
    pub trace_numeric: f64,
    pub trace_analytic: f64,
    pub rel_error: f64,
    pub truncated: bool,
}

pub fn spectrum_check_rows(m: f64, grid: GridSpec) -> Result<Vec<SpectrumRow>> {
    SPECTRUM_CHECK_TIMES
        .iter()
        .map(|&t| {
            let h = heat_trace_diff(t, m, grid)?;
            let exact = libm::erf(m * t.sqrt());
            Ok(SpectrumRow {
                t,
                trace_numeric: h.value,
                trace_analytic: exact,
                rel_error: (h.value - exact).abs() / exact,
                truncated: h.truncated,
            })
        })
        .collect()
}

pub fn cmd_spectrum_check(m: f64, grid: GridSpec, opts: OutputOptions) -> Result<String> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::validation("m", format!("{m} must be positive")));
    }
    let rows: Vec<SpectrumRow> = spectrum_check_rows(m, grid)?
        .into_iter()
        .map(|r| SpectrumRow {
            trace_numeric: opts.sig(r.trace_numeric),
            trace_analytic: opts.sig(r.trace_analytic),
            rel_error: opts.sig(r.rel_error),
            ..r
        })
        .collect();
    Ok(render(
        &rows,
        &["t", "trace_numeric", "trace_analytic", "rel_error", "truncated"],
        |r| {
            vec![
                num(r.t),
                num(r.trace_numeric),
                num(r.trace_analytic),
                num(r.rel_error),
                r.truncated.to_string(),
            ]
        },
        opts.format,
    ))
}

/// Which relaxed kink `relax-dump` writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CenterClass {
    #[default]
    Site,
    Bond,
}

#[derive(Debug, Clone, Serialize)]
struct RelaxDumpOut {
    material: String,
    mode: ModelMode,
    n: usize,
    iterations: usize,
    energy_j: f64,
    phi: Vec<f64>,
}

/// Per-site displacements of a relaxed kink at full precision.
pub fn cmd_relax_dump(
    materials: &[Material],
    name: &str,
    mode: ModelMode,
    center: CenterClass,
    cfg: &RelaxationConfig,
    opts: OutputOptions,
) -> Result<String> {
    let mat = find(materials, name)?;
    let p: ModelParams = derive_params(mat, mode);
    let n = default_chain_length(p.m_dimless());
    let mid = ((n - 1) / 2) as f64
        + match center {
            CenterClass::Site => 0.0,
            CenterClass::Bond => 0.5,
        };
    let r = relax(sg_kink_initial(n, mid, &p)?, &p, cfg)?;
    let out = RelaxDumpOut {
        material: mat.name().to_string(),
        mode,
        n,
        iterations: r.iterations,
        energy_j: crate::lattice::chain_energy(&r.state, &p),
        phi: r.state.displacements().to_vec(),
    };
    Ok(match opts.format {
        Format::Json => serde_json::to_string_pretty(&out).expect("plain structs serialize") + "\n",
        Format::Csv => {
            let mut s = format!(
                "# material={} mode={} n={} iterations={} energy_J={}\nsite,phi\n",
                out.material, mode, n, out.iterations, num(out.energy_j)
            );
            for (i, v) in out.phi.iter().enumerate() {
                s.push_str(&format!("{i},{}\n", num(*v)));
            }
            s
        }
    })
}
