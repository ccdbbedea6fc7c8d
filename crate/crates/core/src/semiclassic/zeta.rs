//! Heat-trace factors and the zeta function of the kink fluctuation operator.
//!
//! The propagator factorizes into a spatial part with subtracted trace
//! γ₁ = erf(m√(A y)) and a temporal part γ_D2 = (1/2π)√(π/(B y)). Both A and B
//! carry a factor i in Minkowski time; here they are stored as magnitudes plus
//! quarter-turn phases, and the branch of every logarithm is chosen explicitly
//! through a [`PhaseConvention`].

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::material::ModelParams;
use crate::quadrature::integrate;
use crate::units::HBAR;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPrefactors {
    a_mag: f64,
    b_mag: f64,
    a_quarter_turns: u8,
    b_quarter_turns: u8,
}

impl SpectralPrefactors {
    /// A = i·a²GT/(2πħ), B = i·a²M/(2πħT).
    pub fn new(p: &ModelParams, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::domain("time scale T", format!("{t} must be positive")));
        }
        let a2 = p.a() * p.a();
        Self::from_magnitudes(
            a2 * p.g() * t / (2.0 * PI * HBAR),
            a2 * p.atom_mass() / (2.0 * PI * HBAR * t),
        )
    }

    pub fn from_magnitudes(a_mag: f64, b_mag: f64) -> Result<Self> {
        if !(a_mag.is_finite() && a_mag > 0.0 && b_mag.is_finite() && b_mag > 0.0) {
            return Err(Error::domain(
                "spectral prefactors",
                format!("|A| = {a_mag}, |B| = {b_mag} must be positive"),
            ));
        }
        Ok(SpectralPrefactors {
            a_mag,
            b_mag,
            a_quarter_turns: 1,
            b_quarter_turns: 1,
        })
    }

    pub fn a_mag(&self) -> f64 {
        self.a_mag
    }

    pub fn b_mag(&self) -> f64 {
        self.b_mag
    }

    /// Phases of A and B in quarter turns (both i).
    pub fn quarter_turns(&self) -> (u8, u8) {
        (self.a_quarter_turns, self.b_quarter_turns)
    }

    /// √(|A|/|B|), equal to T·c/a for physical inputs.
    pub fn sqrt_ratio(&self) -> f64 {
        (self.a_mag / self.b_mag).sqrt()
    }
}

/// Subtracted heat trace of −∂² + m²(1 − 2sech²(mx)) against −∂² + m²:
/// erf(m√t), bound state included.
pub fn gamma_kink(t: f64, m: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("heat-kernel time", format!("t = {t} must be positive")));
    }
    Ok(libm::erf(m * t.sqrt()))
}

/// (1/2π)·√(π/(B y)).
pub fn gamma_time(y: f64, b_mag: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::domain("heat-kernel time", format!("y = {y} must be positive")));
    }
    if !(b_mag > 0.0) {
        return Err(Error::domain("prefactor B", format!("{b_mag} must be positive")));
    }
    Ok((PI / (b_mag * y)).sqrt() / (2.0 * PI))
}

/// Branch choices in the closed-form zeta function, in quarter turns:
/// the argument of −A used inside ln(−A), and the phase of √(−A/B).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseConvention {
    pub neg_a_log_quarter_turns: i8,
    pub sqrt_ratio_quarter_turns: i8,
}

impl PhaseConvention {
    /// Real (imaginary-time) continuation; ζ is real.
    pub const EUCLIDEAN: Self = Self::new(0, 0);
    /// ln(−A) = ln|A| + 3πi/2 and √(−A/B) = i.
    pub const AS_PRINTED: Self = Self::new(3, 1);
    /// Branch that makes E_q real with a positive correction.
    pub const ANCHORED: Self = Self::new(0, 3);

    pub const fn new(neg_a_log_quarter_turns: i8, sqrt_ratio_quarter_turns: i8) -> Self {
        PhaseConvention {
            neg_a_log_quarter_turns,
            sqrt_ratio_quarter_turns,
        }
    }

    fn log_arg(&self) -> f64 {
        self.neg_a_log_quarter_turns as f64 * FRAC_PI_2
    }

    fn ratio_phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.sqrt_ratio_quarter_turns as f64 * FRAC_PI_2)
    }
}

/// ζ(s) = m^{1−2s}(−A)^{−s}√(−A/B) / (π(1−2s)) for Re s < 1/2.
pub fn zeta(s: Complex64, pre: &SpectralPrefactors, m: f64, phases: PhaseConvention) -> Result<Complex64> {
    if !(s.re < 0.5) {
        return Err(Error::domain(
            "zeta argument",
            format!("Re s = {} must be below 1/2", s.re),
        ));
    }
    let ln_neg_a = Complex64::new(pre.a_mag.ln(), phases.log_arg());
    let power = ((1.0 - 2.0 * s) * m.ln() - s * ln_neg_a).exp();
    Ok(power * pre.sqrt_ratio() * phases.ratio_phase() / (PI * (1.0 - 2.0 * s)))
}

/// ζ′(0) = (m/π)√(−A/B)·(2 − 2 ln m − ln(−A)).
pub fn zeta_prime_zero(pre: &SpectralPrefactors, m: f64, phases: PhaseConvention) -> Complex64 {
    let zeta0 = m / PI * pre.sqrt_ratio() * phases.ratio_phase();
    let ln_neg_a = Complex64::new(pre.a_mag.ln(), phases.log_arg());
    zeta0 * (2.0 - 2.0 * m.ln() - ln_neg_a)
}

const SERIES_SPLIT: f64 = 0.25;
const TAIL_CUT: f64 = 40.0;

/// Euclidean ζ(s) from the Mellin transform (1/Γ(s))∫y^{s−1}γ(y)dy of the
/// factorized heat trace, continued to Re s ≤ 0.
///
/// Below y₀ = 1/(4m²|A|) the erf factor is integrated term by term; above it the
/// asymptotic γ ~ 1/(2√(πBy)) is integrated exactly and the erfc remainder by
/// adaptive quadrature.
pub fn mellin_zeta_quadrature(s: f64, pre: &SpectralPrefactors, m: f64) -> Result<f64> {
    if !(s < 0.5) {
        return Err(Error::domain("zeta argument", format!("s = {s} must be below 1/2")));
    }
    let (a, b) = (pre.a_mag, pre.b_mag);
    let beta = m * m * a;
    let lead = m * a.sqrt() / (PI * b.sqrt());
    // c_k of γ(y) = Σ c_k y^k near y = 0
    let coeff = |k: usize| {
        let mut term = lead / (2 * k + 1) as f64;
        for j in 1..=k {
            term *= -beta / j as f64;
        }
        term
    };

    if s <= 0.0 && s.fract() == 0.0 {
        // 1/Γ(s) has a simple zero at s = −n and only the pole of term n survives
        let n = (-s) as usize;
        let factorial: f64 = (1..=n).map(|j| j as f64).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(coeff(n) * sign * factorial);
    }

    let y0 = SERIES_SPLIT / beta;
    let mut small = 0.0;
    for k in 0..60 {
        let term = coeff(k) * y0.powf(s + k as f64) / (s + k as f64);
        small += term;
        if term.abs() < 1e-18 * small.abs() {
            break;
        }
    }

    let norm = 1.0 / (2.0 * (PI * b).sqrt());
    let asymptotic = norm * y0.powf(s - 0.5) / (0.5 - s);
    let remainder = integrate(
        |v: f64| v.powf(s - 1.5) * libm::erfc(v.sqrt()),
        SERIES_SPLIT,
        TAIL_CUT,
        1e-16,
        1e-13,
    )?;
    let remainder = norm * beta.powf(0.5 - s) * remainder;

    Ok((small + asymptotic - remainder) / libm::tgamma(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{bundled_materials, derive_params, find, ModelMode};

    fn ag() -> ModelParams {
        derive_params(find(&bundled_materials(), "Ag").unwrap(), ModelMode::Crowdion)
    }

    #[test]
    fn prefactor_product_is_time_independent() {
        let p = ag();
        let first = SpectralPrefactors::new(&p, 1e-15).unwrap();
        let a2 = p.a() * p.a();
        let expected = a2 * a2 * p.g() * p.atom_mass() / (2.0 * PI * HBAR).powi(2);
        for t in [1e-15, 1e-12, 1e-9, 1e-6] {
            let pre = SpectralPrefactors::new(&p, t).unwrap();
            let prod = pre.a_mag() * pre.b_mag();
            assert!((prod - expected).abs() < 1e-12 * expected);
            let ratio = pre.a_mag() / pre.b_mag();
            assert!((ratio - p.g() * t * t / p.atom_mass()).abs() < 1e-12 * ratio);
            assert!((pre.sqrt_ratio() - t * p.sound_speed() / p.a()).abs() < 1e-12 * pre.sqrt_ratio());
        }
        assert_eq!(first.quarter_turns(), (1, 1));
        assert!(SpectralPrefactors::new(&p, 0.0).is_err());
    }

    #[test]
    fn gamma_kink_limits() {
        assert!((gamma_kink(1.0, 1.0).unwrap() - 0.842_700_792_949_715).abs() < 1e-15);
        assert!((gamma_kink(1e4, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let t: f64 = 1e-14;
        let short = 2.0 * 1.3 * t.sqrt() / PI.sqrt();
        assert!((gamma_kink(t, 1.3).unwrap() - short).abs() < 1e-10 * short);
        assert!(gamma_kink(0.0, 1.0).is_err());
    }

    #[test]
    fn gamma_time_values() {
        let inv = 1.0 / (2.0 * PI);
        assert!((gamma_time(1.0, PI).unwrap() - inv).abs() < 1e-16);
        assert!((gamma_time(PI, 1.0).unwrap() - inv).abs() < 1e-16);
        let g1 = gamma_time(0.7, 2.0).unwrap();
        assert!((gamma_time(2.8, 2.0).unwrap() - g1 / 2.0).abs() < 1e-16);
        assert!(gamma_time(-1.0, 1.0).is_err());
    }

    #[test]
    fn zeta_at_zero_and_pole() {
        let pre = SpectralPrefactors::from_magnitudes(3.0, 0.5).unwrap();
        let m = 1.7;
        let z0 = zeta(Complex64::new(0.0, 0.0), &pre, m, PhaseConvention::EUCLIDEAN).unwrap();
        assert!((z0.re - m / PI * 6f64.sqrt()).abs() < 1e-14 && z0.im == 0.0);
        let near = zeta(Complex64::new(0.5 - 1e-9, 0.0), &pre, m, PhaseConvention::EUCLIDEAN).unwrap();
        assert!(near.norm() > 1e7);
        assert!(zeta(Complex64::new(0.5, 0.0), &pre, m, PhaseConvention::EUCLIDEAN).is_err());
        // the phases only rotate ζ(0)
        let rotated = zeta(Complex64::new(0.0, 0.0), &pre, m, PhaseConvention::ANCHORED).unwrap();
        assert!((rotated - Complex64::new(0.0, -z0.re)).norm() < 1e-14);
    }

    #[test]
    fn zeta_prime_closed_form_cases() {
        let pre = SpectralPrefactors::from_magnitudes(1.0, 4.0).unwrap();
        let d = zeta_prime_zero(&pre, 1.0, PhaseConvention::EUCLIDEAN);
        assert!((d.re - 2.0 / PI * 0.5).abs() < 1e-15);
        let d = zeta_prime_zero(&pre, std::f64::consts::E, PhaseConvention::EUCLIDEAN);
        assert!(d.norm() < 1e-15);
    }

    #[test]
    fn zeta_prime_matches_numerical_derivative() {
        let pre = SpectralPrefactors::from_magnitudes(2.5, 0.3).unwrap();
        for phases in [PhaseConvention::EUCLIDEAN, PhaseConvention::AS_PRINTED, PhaseConvention::ANCHORED] {
            let h = 1e-6;
            let f = |s: f64| zeta(Complex64::new(s, 0.0), &pre, 0.8, phases).unwrap();
            let numeric = (f(h) - f(-h)) / (2.0 * h);
            let exact = zeta_prime_zero(&pre, 0.8, phases);
            assert!((numeric - exact).norm() < 1e-8 * exact.norm(), "{phases:?}");
        }
    }

    #[test]
    fn mellin_quadrature_reproduces_closed_form() {
        for (a, b, m) in [(1.0, 1.0, 1.0), (3.0, 0.2, 0.7), (1e4, 2e-3, 0.55)] {
            let pre = SpectralPrefactors::from_magnitudes(a, b).unwrap();
            for s in [-1.0, -0.5, 0.0, 0.25, -2.0, 0.4] {
                let q = mellin_zeta_quadrature(s, &pre, m).unwrap();
                let c = zeta(Complex64::new(s, 0.0), &pre, m, PhaseConvention::EUCLIDEAN).unwrap().re;
                assert!((q - c).abs() < 1e-9 * c.abs(), "a={a} s={s}: {q} vs {c}");
            }
        }
    }

    /// Direct Mellin integral, convergent for 0 < s < 1/2, as an independent
    /// check of the continuation.
    #[test]
    fn mellin_direct_integral_in_strip() {
        let pre = SpectralPrefactors::from_magnitudes(1.0, 1.0).unwrap();
        let m = 1.0;
        let s = 0.3;
        // y = e^u removes the endpoint singularity at y = 0
        let f = |u: f64| {
            let y = u.exp();
            y.powf(s) * gamma_kink(y, m).unwrap() * gamma_time(y, 1.0).unwrap()
        };
        let direct = integrate(f, -120.0, 250.0, 1e-13, 1e-12).unwrap() / libm::tgamma(s);
        let closed = zeta(Complex64::new(s, 0.0), &pre, m, PhaseConvention::EUCLIDEAN).unwrap().re;
        assert!((direct - closed).abs() < 1e-8 * closed, "{direct} vs {closed}");
    }
}
