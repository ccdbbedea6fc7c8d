//! Static sine-Gordon solutions φ(x′) = (1/π)·arcsin(k·sn(m(x′−x₀); k)) + 1/2
//! in lattice units (x′ = x/a, φ = u/a), the fluctuation potential around
//! them, and the classical kink energy.
//!
//! The profile satisfies φ″ = (m²/2π)·sin(2πφ). For k < 1 it oscillates about
//! 1/2 with period 4K(k)/m; for k = 1 it is the kink running from 0 to 1.

use std::f64::consts::PI;

use serde::Serialize;

use crate::elliptic::{complete_k, jacobi};
use crate::error::{Error, Result};
use crate::material::ModelParams;

/// Largest |m·(x′−x₀)| passed to the special functions.
pub const ARGUMENT_CLAMP: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticSolution {
    k: f64,
    m: f64,
    center: f64,
}

impl EllipticSolution {
    pub fn new(k: f64, m: f64, center: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::domain("elliptic modulus", format!("k = {k} is not in [0, 1]")));
        }
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::domain("wavenumber", format!("m = {m} must be positive")));
        }
        if !center.is_finite() {
            return Err(Error::domain("center", "must be finite"));
        }
        Ok(EllipticSolution { k, m, center })
    }

    /// The k = 1 kink centred at `center`.
    pub fn kink(m: f64, center: f64) -> Result<Self> {
        Self::new(1.0, m, center)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Spatial period in x′, infinite for the kink.
    pub fn period(&self) -> f64 {
        4.0 * complete_k(self.k).expect("modulus validated") / self.m
    }

    fn scaled(&self, x_prime: f64) -> f64 {
        (self.m * (x_prime - self.center)).clamp(-ARGUMENT_CLAMP, ARGUMENT_CLAMP)
    }
}

/// φ(x′) in units of the lattice constant.
pub fn static_solution(x_prime: f64, sol: &EllipticSolution) -> f64 {
    let y = sol.scaled(x_prime);
    if sol.k == 1.0 {
        // arcsin(tanh y) written as the Gudermannian 2·atan(eʸ) − π/2
        return 2.0 / PI * y.exp().atan();
    }
    let sn = jacobi(y, sol.k).expect("modulus validated").sn;
    (sol.k * sn).asin() / PI + 0.5
}

/// dφ/dx′ = (k·m/π)·cn(m x̃; k).
pub fn static_slope(x_prime: f64, sol: &EllipticSolution) -> f64 {
    let y = sol.scaled(x_prime);
    let cn = if sol.k == 1.0 {
        1.0 / y.cosh()
    } else {
        jacobi(y, sol.k).expect("modulus validated").cn
    };
    sol.k * sol.m / PI * cn
}

/// Fluctuation potential U = m²·cos(2πφ) = m²(2k² − 1 − 2k²·cn²(m x̃; k)).
pub fn potential_u(x_prime: f64, sol: &EllipticSolution) -> f64 {
    let y = sol.scaled(x_prime);
    let (k, m) = (sol.k, sol.m);
    if k == 1.0 {
        let sech = 1.0 / y.cosh();
        return m * m * (1.0 - 2.0 * sech * sech);
    }
    let cn = jacobi(y, k).expect("modulus validated").cn;
    m * m * (2.0 * k * k - 1.0 - 2.0 * k * k * cn * cn)
}

/// Energy per unit x′ of a static profile, J: (a²G/2)·φ′² + ε·sin²(πφ).
pub fn energy_density(x_prime: f64, sol: &EllipticSolution, p: &ModelParams) -> f64 {
    let slope = static_slope(x_prime, sol);
    let s = (PI * static_solution(x_prime, sol)).sin();
    0.5 * p.stiffness() * slope * slope + p.epsilon() * s * s
}

/// Classical kink energy E_c = (1/π)·√(8ε·a²G), J.
pub fn classical_energy(p: &ModelParams) -> f64 {
    (8.0 * p.epsilon() * p.stiffness()).sqrt() / PI
}
