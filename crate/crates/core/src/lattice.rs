//! Discrete Frenkel-Kontorova chain in lattice units, φ_i = u_i/a.
//!
//! Relaxation is the explicit damped scheme
//! φ_i ← φ_i + [φ_{i+1} − 2φ_i + φ_{i−1} − (m²/2π)·sin 2πφ_i]·dt,
//! which is gradient descent on [`chain_energy`]. The two end atoms never move.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::material::ModelParams;
use crate::quadrature::compensated_sum;
use crate::sine_gordon::{static_solution, EllipticSolution};

pub const MIN_ATOMS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainState {
    phi: Vec<f64>,
}

impl ChainState {
    /// The first and last entries are the fixed boundary values.
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if phi.len() < MIN_ATOMS {
            return Err(Error::validation(
                "n_atoms",
                format!("{} atoms, at least {MIN_ATOMS} are needed", phi.len()),
            ));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("displacements", "must be finite"));
        }
        Ok(ChainState { phi })
    }

    pub fn displacements(&self) -> &[f64] {
        &self.phi
    }

    pub fn n_atoms(&self) -> usize {
        self.phi.len()
    }

    pub fn boundary(&self) -> (f64, f64) {
        (self.phi[0], self.phi[self.phi.len() - 1])
    }

    /// Fractional site index where φ crosses 1/2, by linear interpolation.
    pub fn kink_center(&self) -> Option<f64> {
        self.phi.windows(2).enumerate().find_map(|(i, w)| {
            if w[0] <= 0.5 && w[1] > 0.5 {
                Some(i as f64 + (0.5 - w[0]) / (w[1] - w[0]))
            } else {
                None
            }
        })
    }

    /// Monotone non-decreasing within `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.phi.windows(2).all(|w| w[1] >= w[0] - slack)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelaxationConfig {
    dt: f64,
    tol: f64,
    max_iter: usize,
}

impl RelaxationConfig {
    pub fn new(dt: f64, tol: f64, max_iter: usize) -> Result<Self> {
        if !(dt > 0.0 && dt <= 0.4) {
            return Err(Error::validation("dt", format!("{dt} is outside (0, 0.4]")));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::validation("tol", format!("{tol} must be positive")));
        }
        Ok(RelaxationConfig { dt, tol, max_iter })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for RelaxationConfig {
    fn default() -> Self {
        RelaxationConfig {
            dt: 0.2,
            tol: 1e-12,
            max_iter: 10_000_000,
        }
    }
}

/// Σ (a²G/2)(φ_{i+1} − φ_i)² + Σ ε·sin²(πφ_i), J.
pub fn chain_energy(s: &ChainState, p: &ModelParams) -> f64 {
    let half_k = 0.5 * p.stiffness();
    let strain = s.phi.windows(2).map(|w| half_k * (w[1] - w[0]) * (w[1] - w[0]));
    let substrate = s.phi.iter().map(|v| {
        let sn = (PI * v).sin();
        p.epsilon() * sn * sn
    });
    compensated_sum(strain.chain(substrate))
}

/// Continuum kink sampled at the sites, with boundaries forced to 0 and 1.
pub fn sg_kink_initial(n: usize, center: f64, p: &ModelParams) -> Result<ChainState> {
    if n < MIN_ATOMS {
        return Err(Error::validation("n_atoms", format!("{n} atoms, at least {MIN_ATOMS} are needed")));
    }
    if !(center > 0.0 && center < (n - 1) as f64) {
        return Err(Error::validation("center", format!("{center} is not inside (0, {})", n - 1)));
    }
    let sol = EllipticSolution::kink(p.m_dimless(), center)?;
    let mut phi: Vec<f64> = (0..n).map(|i| static_solution(i as f64, &sol)).collect();
    phi[0] = 0.0;
    phi[n - 1] = 1.0;
    ChainState::new(phi)
}

/// Default chain length max(201, ⌈80/m⌉).
pub fn default_chain_length(m_dimless: f64) -> usize {
    201.max((80.0 / m_dimless).ceil() as usize)
}

/// One explicit step in place; returns the largest displacement change.
pub fn relax_step(s: &mut ChainState, p: &ModelParams, dt: f64, scratch: &mut Vec<f64>) -> f64 {
    let coupling = p.m_dimless() * p.m_dimless() / (2.0 * PI);
    scratch.clear();
    scratch.extend_from_slice(&s.phi);
    let old = &scratch[..];
    let mut max_change: f64 = 0.0;
    for i in 1..old.len() - 1 {
        let force = old[i + 1] - 2.0 * old[i] + old[i - 1] - coupling * (2.0 * PI * old[i]).sin();
        let change = force * dt;
        s.phi[i] = old[i] + change;
        max_change = max_change.max(change.abs());
    }
    max_change
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relaxed {
    pub state: ChainState,
    pub iterations: usize,
    /// Largest displacement change of the final step.
    pub residual: f64,
}

pub fn relax(mut s: ChainState, p: &ModelParams, cfg: &RelaxationConfig) -> Result<Relaxed> {
    let mut scratch = Vec::with_capacity(s.n_atoms());
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iter {
        residual = relax_step(&mut s, p, cfg.dt, &mut scratch);
        if !residual.is_finite() {
            return Err(Error::Instability(format!("relaxation diverged at iteration {iteration}")));
        }
        if residual < cfg.tol {
            return Ok(Relaxed {
                state: s,
                iterations: iteration,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iter,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PnBarrier {
    /// |E_bond − E_site|, J.
    pub epsilon2: f64,
    pub n: usize,
    pub energy_site: f64,
    pub energy_bond: f64,
    pub iterations_site: usize,
    pub iterations_bond: usize,
    /// Both relaxed kinks ended in the same center class.
    pub degenerate: bool,
    #[serde(skip)]
    pub site_state: ChainState,
    #[serde(skip)]
    pub bond_state: ChainState,
}

fn center_class(s: &ChainState) -> Option<bool> {
    let c = s.kink_center()?;
    let frac = c - c.floor();
    Some((0.25..0.75).contains(&frac))
}

/// ε₂ from the site-centred and bond-centred relaxed kinks.
pub fn pn_barrier(p: &ModelParams, cfg: &RelaxationConfig, n: usize) -> Result<PnBarrier> {
    let m = p.m_dimless();
    if !(m > 0.0) {
        return Err(Error::domain("wavenumber", "a flat substrate has no kink"));
    }
    let needed = (80.0 / m).ceil() as usize;
    if n < needed.max(MIN_ATOMS) {
        return Err(Error::validation("n_atoms", format!("{n} is shorter than 80/m = {needed}")));
    }
    let mid = ((n - 1) / 2) as f64;
    let (site, bond) = rayon::join(
        || relax(sg_kink_initial(n, mid, p)?, p, cfg),
        || relax(sg_kink_initial(n, mid + 0.5, p)?, p, cfg),
    );
    let (site, bond) = (site?, bond?);
    let energy_site = chain_energy(&site.state, p);
    let energy_bond = chain_energy(&bond.state, p);
    Ok(PnBarrier {
        epsilon2: (energy_bond - energy_site).abs(),
        n,
        energy_site,
        energy_bond,
        iterations_site: site.iterations,
        iterations_bond: bond.iterations,
        degenerate: center_class(&site.state) == center_class(&bond.state),
        site_state: site.state,
        bond_state: bond.state,
    })
}
