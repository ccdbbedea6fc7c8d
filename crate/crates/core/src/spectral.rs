//! Finite-difference checks of the analytic spectral results: eigenvalues of
//! −∂² + U on a Dirichlet grid, subtracted heat traces and diagonal resolvents.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::compensated_sum;

/// Kink fluctuation potential m²(1 − 2sech²(mx)).
pub fn kink_potential(x: f64, m: f64) -> f64 {
    let sech = 1.0 / (m * x).cosh();
    m * m * (1.0 - 2.0 * sech * sech)
}

/// Grid half-width and step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(half_width: f64, step: f64) -> Result<Self> {
        if !(half_width > 0.0 && step > 0.0 && half_width.is_finite()) {
            return Err(Error::validation("grid", format!("L = {half_width}, h = {step} must be positive")));
        }
        if 2.0 * half_width / step < 4.0 {
            return Err(Error::validation("grid", "fewer than three interior points"));
        }
        Ok(GridSpec { half_width, step })
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            half_width: 30.0,
            step: 0.01,
        }
    }
}

/// Central-difference −∂² + U on the interior points of [−L, L].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    grid_step: f64,
    domain_half_width: f64,
    potential: Vec<f64>,
}

impl DiscreteOperator {
    pub fn new(grid: GridSpec, potential: impl Fn(f64) -> f64) -> Self {
        let h = grid.step;
        let n = (2.0 * grid.half_width / h).round() as usize - 1;
        let potential = (1..=n).map(|i| potential(-grid.half_width + i as f64 * h)).collect();
        DiscreteOperator {
            grid_step: h,
            domain_half_width: grid.half_width,
            potential,
        }
    }

    pub fn kink(grid: GridSpec, m: f64) -> Self {
        Self::new(grid, |x| kink_potential(x, m))
    }

    pub fn vacuum(grid: GridSpec, m: f64) -> Self {
        Self::new(grid, |_| m * m)
    }

    pub fn n_points(&self) -> usize {
        self.potential.len()
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn domain_half_width(&self) -> f64 {
        self.domain_half_width
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    /// Diagonal and the (constant) off-diagonal of the symmetric matrix.
    pub fn tridiagonal(&self) -> (Vec<f64>, f64) {
        let inv_h2 = 1.0 / (self.grid_step * self.grid_step);
        (self.potential.iter().map(|u| 2.0 * inv_h2 + u).collect(), -inv_h2)
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts, ascending. `off[i]` couples rows i and i+1.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::validation("tridiagonal", "off-diagonal must have n − 1 entries"));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.iter().copied().chain(std::iter::once(0.0)).collect();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Instability(format!("QL iteration stalled at row {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

pub fn eigen_spectrum(op: &DiscreteOperator) -> Result<Vec<f64>> {
    let (diag, off) = op.tridiagonal();
    tridiagonal_eigenvalues(&diag, &vec![off; diag.len().saturating_sub(1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatTrace {
    pub value: f64,
    /// e^{−λ_max t} exceeds 1e-14: the grid does not resolve this t.
    pub truncated: bool,
}

/// Σ_j [e^{−λ_j t} − e^{−λ⁰_j t}] over index-matched spectra.
pub fn heat_trace_from_spectra(kink: &[f64], vacuum: &[f64], t: f64) -> Result<HeatTrace> {
    if !(t > 0.0) {
        return Err(Error::domain("heat-kernel time", format!("t = {t} must be positive")));
    }
    if kink.len() != vacuum.len() {
        return Err(Error::validation("spectra", "kink and vacuum spectra differ in length"));
    }
    let value = compensated_sum(kink.iter().zip(vacuum).map(|(l, l0)| (-l * t).exp() - (-l0 * t).exp()));
    let top = kink.last().copied().unwrap_or(f64::INFINITY).min(vacuum.last().copied().unwrap_or(f64::INFINITY));
    Ok(HeatTrace {
        value,
        truncated: (-top * t).exp() > 1e-14,
    })
}

/// Kink-minus-vacuum heat trace on one grid.
pub fn heat_trace_diff(t: f64, m: f64, grid: GridSpec) -> Result<HeatTrace> {
    let (kink, vacuum) = rayon::join(
        || eigen_spectrum(&DiscreteOperator::kink(grid, m)),
        || eigen_spectrum(&DiscreteOperator::vacuum(grid, m)),
    );
    heat_trace_from_spectra(&kink?, &vacuum?, t)
}

/// Default grid for the resolvent: L = 30, h = 5e-4.
pub const RESOLVENT_GRID: GridSpec = GridSpec {
    half_width: 30.0,
    step: 5e-4,
};

/// Diagonal of (−∂² + U − p)⁻¹ at x for the kink potential, on a grid
/// centred at x with Dirichlet ends at x ± L.
///
/// The decaying solutions from both ends enter through the ratios
/// ψ_{j±1}/ψ_j, built as continued fractions; joining them at x gives
/// G = h/(d₀ − ρ₋ − ρ₊) with d_j = 2 + h²(U_j − p).
pub fn numerical_resolvent_diag(p: f64, x: f64, m: f64, grid: GridSpec) -> Result<f64> {
    if !(p < 0.0) {
        return Err(Error::domain("spectral parameter", format!("p = {p} must be negative")));
    }
    let h = grid.step;
    let n = (grid.half_width / h).round() as i64;
    let d = |j: i64| 2.0 + h * h * (kink_potential(x + j as f64 * h, m) - p);
    let ratio = |dir: i64| -> Result<f64> {
        let mut rho = 0.0;
        for j in (1..n).rev() {
            let pivot = d(dir * j) - rho;
            if !(pivot > 0.0 && pivot.is_finite()) {
                return Err(Error::Instability(format!("non-positive pivot {pivot} at offset {}", dir * j)));
            }
            rho = 1.0 / pivot;
        }
        Ok(rho)
    };
    let pivot = d(0) - ratio(-1)? - ratio(1)?;
    if !(pivot > 0.0 && pivot.is_finite()) {
        return Err(Error::Instability(format!("non-positive central pivot {pivot}")));
    }
    Ok(h / pivot)
}
