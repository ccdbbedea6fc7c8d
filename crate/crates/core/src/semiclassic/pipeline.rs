//! Renormalized one-loop kink energy
//! E_q = E_c − (ħ/2iT)(ζ′(0) + 2 ln r·ζ(0)).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::resolvent::subtracted_resolvent_trace;
use super::zeta::{gamma_time, zeta, zeta_prime_zero, PhaseConvention, SpectralPrefactors};
use crate::error::{Error, Result};
use crate::material::ModelParams;
use crate::quadrature::integrate;
use crate::sine_gordon::classical_energy;
use crate::units::HBAR;

/// Time scale T and spectral rescaling r.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularizationParams {
    t: f64,
    r: f64,
    tied: bool,
}

impl RegularizationParams {
    /// r² = εT/ħ, which removes T from the result.
    pub fn tied(t: f64, p: &ModelParams) -> Result<Self> {
        check_time(t)?;
        Self::build(t, (p.epsilon() * t / HBAR).sqrt(), true)
    }

    /// r² = πεT/ħ, the rescaling under which the logarithms cancel exactly
    /// against ln(m²|A|).
    pub fn tied_spectral(t: f64, p: &ModelParams) -> Result<Self> {
        check_time(t)?;
        Self::build(t, (PI * p.epsilon() * t / HBAR).sqrt(), true)
    }

    pub fn free(t: f64, r: f64) -> Result<Self> {
        check_time(t)?;
        Self::build(t, r, false)
    }

    fn build(t: f64, r: f64, tied: bool) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::domain("rescaling r", format!("{r} must be positive")));
        }
        Ok(RegularizationParams { t, r, tied })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn is_tied(&self) -> bool {
        self.tied
    }

    pub fn hbar(&self) -> f64 {
        HBAR
    }

    /// Same T, r multiplied by `factor`.
    pub fn scaled_r(&self, factor: f64) -> Result<Self> {
        Self::build(self.t, self.r * factor, false)
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("time scale T", format!("{t} must be positive")))
    }
}

/// Background the fluctuation operator is expanded around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Background {
    Kink,
    Vacuum,
}

impl Background {
    /// ∫(G − G_vacuum)dx at spectral parameter p < 0.
    pub fn subtracted_trace(self, p: f64, m: f64) -> f64 {
        match self {
            Background::Kink => subtracted_resolvent_trace(p, m),
            Background::Vacuum => 0.0,
        }
    }

    /// Residue of the subtracted trace at p = 0: the number of zero modes.
    fn zero_mode_weight(self) -> f64 {
        match self {
            Background::Kink => 1.0,
            Background::Vacuum => 0.0,
        }
    }

    /// Subtracted heat trace h(t), the inverse Laplace transform of
    /// [`Background::subtracted_trace`]: the pole at p = 0 plus the
    /// discontinuity across the cut p ≥ m²,
    /// h(t) = 1 − (2m/π)∫₀^∞ e^{−(m²+q²)t}/(m²+q²) dq.
    pub fn heat_trace(self, t: f64, m: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::domain("heat-kernel time", format!("t = {t} must be positive")));
        }
        if self == Background::Vacuum {
            return Ok(0.0);
        }
        let m2 = m * m;
        let q_max = (45.0 / t).sqrt();
        let cut = integrate(
            |q: f64| (-(m2 + q * q) * t).exp() / (m2 + q * q),
            0.0,
            q_max,
            1e-18,
            1e-14,
        )?;
        Ok(1.0 - 2.0 * m / PI * cut)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumEnergy {
    /// E_c, J.
    pub classical: f64,
    /// −(ħ/2iT)(ζ′(0) + 2 ln r·ζ(0)), J.
    pub correction: Complex64,
    /// E_c plus the correction, J.
    pub total: Complex64,
    pub zeta0: Complex64,
    pub zeta_prime0: Complex64,
}

/// Immutable pipeline over one parameter set.
#[derive(Debug, Clone, Copy)]
pub struct QuantumPipeline {
    params: ModelParams,
    reg: RegularizationParams,
    prefactors: SpectralPrefactors,
    background: Background,
    phases: PhaseConvention,
}

impl QuantumPipeline {
    pub fn new(p: &ModelParams, reg: RegularizationParams) -> Result<Self> {
        Ok(QuantumPipeline {
            params: *p,
            reg,
            prefactors: SpectralPrefactors::new(p, reg.t())?,
            background: Background::Kink,
            phases: PhaseConvention::ANCHORED,
        })
    }

    pub fn with_background(mut self, background: Background) -> Self {
        self.background = background;
        self
    }

    pub fn with_phases(mut self, phases: PhaseConvention) -> Self {
        self.phases = phases;
        self
    }

    pub fn prefactors(&self) -> &SpectralPrefactors {
        &self.prefactors
    }

    pub fn regularization(&self) -> &RegularizationParams {
        &self.reg
    }

    /// Euclidean factorized heat trace γ(y) = h(|A|y)·γ_D2(y).
    pub fn heat_trace(&self, y: f64) -> Result<f64> {
        let m = self.params.m_dimless();
        let spatial = self.background.heat_trace(self.prefactors.a_mag() * y, m)?;
        Ok(spatial * gamma_time(y, self.prefactors.b_mag())?)
    }

    pub fn zeta(&self, s: Complex64) -> Result<Complex64> {
        let z = zeta(s, &self.prefactors, self.params.m_dimless(), self.phases)?;
        Ok(z * self.background.zero_mode_weight())
    }

    pub fn energy(&self) -> Result<QuantumEnergy> {
        let m = self.params.m_dimless();
        let weight = self.background.zero_mode_weight();
        let zeta0 = self.zeta(Complex64::new(0.0, 0.0))?;
        let zeta_prime0 = zeta_prime_zero(&self.prefactors, m, self.phases) * weight;
        let bracket = zeta_prime0 + 2.0 * self.reg.r().ln() * zeta0;
        // −ħ/(2iT) = iħ/(2T)
        let correction = Complex64::new(0.0, HBAR / (2.0 * self.reg.t())) * bracket;
        let classical = classical_energy(&self.params);
        Ok(QuantumEnergy {
            classical,
            correction,
            total: classical + correction,
            zeta0,
            zeta_prime0,
        })
    }
}

/// ΔE = ħ√(2ε/(a²M)), J.
pub fn quantum_correction(p: &ModelParams) -> f64 {
    HBAR * (2.0 * p.epsilon() / (p.a() * p.a() * p.atom_mass())).sqrt()
}

/// Kink background with the anchored branch.
pub fn quantum_energy_pipeline(p: &ModelParams, reg: RegularizationParams) -> Result<QuantumEnergy> {
    QuantumPipeline::new(p, reg)?.energy()
}
