//! Second-level model of a dislocation line: a row of lattice kinks that itself
//! obeys a sine-Gordon equation with amplitude ε₂, coupling G₂ and mass M₂.
//!
//! Two neighbouring kinks sit in parallel rows one lattice constant apart. Atom
//! i of a row is at a·(i + φ_i); shifting the second kink by n sites shifts its
//! profile and pads it with 0 on the left and 1 on the right. Atoms interact
//! through E(r) = C₁/r² − C₂/r.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{default_chain_length, pn_barrier, ChainState, RelaxationConfig};
use crate::material::{ModelMode, ModelParams};
use crate::quadrature::compensated_sum;
use crate::semiclassic::quantum_correction;
use crate::sine_gordon::classical_energy;

/// Kink shifts used for the G₂ fit, in lattice constants.
pub const FIT_SHIFTS: std::ops::RangeInclusive<i64> = 1..=8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairPotentialCoeffs {
    pub c1: f64,
    pub c2: f64,
}

impl PairPotentialCoeffs {
    pub fn energy(&self, r: f64) -> f64 {
        self.c1 / (r * r) - self.c2 / r
    }

    pub fn first_derivative(&self, r: f64) -> f64 {
        -2.0 * self.c1 / (r * r * r) + self.c2 / (r * r)
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        6.0 * self.c1 / (r * r * r * r) - 2.0 * self.c2 / (r * r * r)
    }

    /// Equilibrium distance 2C₁/C₂, equal to the lattice constant.
    pub fn equilibrium(&self) -> f64 {
        2.0 * self.c1 / self.c2
    }
}

/// C₁ = a⁴G/2, C₂ = a³G.
pub fn pair_coeffs(a: f64, g: f64) -> Result<PairPotentialCoeffs> {
    if !(a > 0.0 && g > 0.0 && a.is_finite() && g.is_finite()) {
        return Err(Error::domain("pair potential", format!("a = {a}, G = {g} must be positive")));
    }
    let a3 = a * a * a;
    Ok(PairPotentialCoeffs {
        c1: 0.5 * a3 * a * g,
        c2: a3 * g,
    })
}

/// Σ_{i,j} [E(r(a_i, moved_j)) − E(r(a_i, reference_j))] for two parallel
/// rows `row_spacing` apart. Pair terms are accumulated in order of
/// decreasing magnitude with compensation.
pub fn pair_sum_difference(
    row_a: &[f64],
    moved: &[f64],
    reference: &[f64],
    row_spacing: f64,
    coeffs: &PairPotentialCoeffs,
) -> Result<f64> {
    if moved.len() != reference.len() {
        return Err(Error::validation("rows", "moved and reference rows differ in length"));
    }
    let limit = 0.1 * coeffs.equilibrium();
    let d2 = row_spacing * row_spacing;
    let distance = |x: f64, y: f64| -> Result<f64> {
        let dx = y - x;
        let r = (dx * dx + d2).sqrt();
        if r < limit {
            return Err(Error::Overlap { distance: r, limit });
        }
        Ok(r)
    };
    let mut terms = Vec::with_capacity(row_a.len() * moved.len());
    for &x in row_a {
        for (&y1, &y0) in moved.iter().zip(reference) {
            let term = coeffs.energy(distance(x, y1)?) - coeffs.energy(distance(x, y0)?);
            if term != 0.0 {
                terms.push(term);
            }
        }
    }
    terms.sort_by(|p, q| q.abs().total_cmp(&p.abs()));
    Ok(compensated_sum(terms))
}

/// Profile shifted by `shift` sites, padded with the boundary values.
fn shifted_profile(phi: &[f64], shift: i64) -> Vec<f64> {
    let n = phi.len() as i64;
    (0..n)
        .map(|i| {
            let src = i - shift;
            if src < 0 {
                phi[0]
            } else if src >= n {
                phi[phi.len() - 1]
            } else {
                phi[src as usize]
            }
        })
        .collect()
}

fn positions(phi: &[f64], a: f64) -> Vec<f64> {
    phi.iter().enumerate().map(|(i, v)| a * (i as f64 + v)).collect()
}

/// Interaction energy of kink B displaced by `shift` lattice constants next to
/// kink A, minus the aligned configuration, J.
pub fn kink_interaction_energy(
    kink_a: &ChainState,
    kink_b: &ChainState,
    shift: i64,
    coeffs: &PairPotentialCoeffs,
) -> Result<f64> {
    if shift == 0 {
        return Ok(0.0);
    }
    let a = coeffs.equilibrium();
    let row_a = positions(kink_a.displacements(), a);
    let reference = positions(kink_b.displacements(), a);
    let moved = positions(&shifted_profile(kink_b.displacements(), shift), a);
    pair_sum_difference(&row_a, &moved, &reference, a, coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicFit {
    /// N/m.
    pub g2: f64,
    /// ‖E − (G₂/2)ΔX²‖₂, J.
    pub residual: f64,
}

/// Least-squares G₂ of the model (G₂/2)ΔX² from (ΔX in m, E in J) samples.
#[allow(non_snake_case)]
pub fn fit_G2(samples: &[(f64, f64)]) -> Result<HarmonicFit> {
    if samples.len() < 3 {
        return Err(Error::DegenerateFit(format!("{} samples, at least 3 are needed", samples.len())));
    }
    let mut xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateFit("repeated ΔX values".into()));
    }
    let x4 = compensated_sum(samples.iter().map(|(x, _)| x.powi(4)));
    if x4 == 0.0 {
        return Err(Error::DegenerateFit("every ΔX is zero".into()));
    }
    let ex2 = compensated_sum(samples.iter().map(|(x, e)| e * x * x));
    let g2 = 2.0 * ex2 / x4;
    let residual = compensated_sum(samples.iter().map(|(x, e)| (e - 0.5 * g2 * x * x).powi(2))).sqrt();
    Ok(HarmonicFit { g2, residual })
}

/// M₂ = E₀/c², kg.
pub fn effective_mass(p: &ModelParams) -> f64 {
    let c = p.sound_speed();
    classical_energy(p) / (c * c)
}

/// The alternative coefficient (6/π)·M·√(2ε/(a²G)), kg.
pub fn effective_mass_alternative(p: &ModelParams) -> f64 {
    6.0 / std::f64::consts::PI * p.atom_mass() * (2.0 * p.epsilon() / p.stiffness()).sqrt()
}

/// Which M₂ enters the second-level model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MassConvention {
    Defining,
    Alternative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondLevelParams {
    /// ε₂, J.
    pub epsilon2: f64,
    /// Mean of the two parity fits, N/m.
    pub g2: f64,
    pub g2_site: HarmonicFit,
    pub g2_bond: HarmonicFit,
    /// E₀/c², kg.
    pub m2: f64,
    pub m2_alternative: f64,
    /// m.
    pub a2: f64,
}

impl SecondLevelParams {
    pub fn model_params(&self, mass: MassConvention) -> Result<ModelParams> {
        let m2 = match mass {
            MassConvention::Defining => self.m2,
            MassConvention::Alternative => self.m2_alternative,
        };
        ModelParams::new(self.g2, self.epsilon2, self.a2, m2, ModelMode::Dislocation)
    }
}

pub fn second_level_params(p: &ModelParams, cfg: &RelaxationConfig) -> Result<SecondLevelParams> {
    if p.mode() != ModelMode::Dislocation {
        return Err(Error::domain("model mode", "second-level parameters need dislocation mode"));
    }
    let barrier = pn_barrier(p, cfg, default_chain_length(p.m_dimless()))?;
    let coeffs = pair_coeffs(p.a(), p.g())?;
    let fit = |kink: &ChainState| -> Result<HarmonicFit> {
        let samples = FIT_SHIFTS
            .map(|n| Ok((n as f64 * p.a(), kink_interaction_energy(kink, kink, n, &coeffs)?)))
            .collect::<Result<Vec<_>>>()?;
        fit_G2(&samples)
    };
    let (g2_site, g2_bond) = rayon::join(|| fit(&barrier.site_state), || fit(&barrier.bond_state));
    let (g2_site, g2_bond) = (g2_site?, g2_bond?);
    let g2 = 0.5 * (g2_site.g2 + g2_bond.g2);
    if !(g2 > 0.0) {
        return Err(Error::DegenerateFit(format!("fitted G₂ = {g2} is not positive")));
    }
    Ok(SecondLevelParams {
        epsilon2: barrier.epsilon2,
        g2,
        g2_site,
        g2_bond,
        m2: effective_mass(p),
        m2_alternative: effective_mass_alternative(p),
        a2: p.a(),
    })
}

/// (E_d, ΔE_d) in J: the classical kink energy and one-loop correction of the
/// second-level chain.
pub fn dislocation_kink_energy(slp: &SecondLevelParams, mass: MassConvention) -> Result<(f64, f64)> {
    let q = slp.model_params(mass)?;
    Ok((classical_energy(&q), quantum_correction(&q)))
}

/// Well-separated kink-antikink pair, twice the single kink.
pub fn kink_antikink_pair_energy(slp: &SecondLevelParams, mass: MassConvention) -> Result<(f64, f64)> {
    let (e, de) = dislocation_kink_energy(slp, mass)?;
    Ok((2.0 * e, 2.0 * de))
}
