//! Diagonal resolvent G(p, x) = ĝ(p, x, x) of −∂² + U(x) − p for the elliptic
//! background, written as G = P/(2√Q) with P linear in z = cn²(mx; k) and Q
//! cubic in p.

use crate::elliptic::jacobi;
use crate::error::{Error, Result};

/// Roots of Q closer than this multiple of m² make the residual meaningless.
pub const ROOT_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventDiagonal {
    k: f64,
    m: f64,
}

pub fn resolvent_polynomials(k: f64, m: f64) -> Result<ResolventDiagonal> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::domain("elliptic modulus", format!("k = {k} is not in [0, 1]")));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::domain("wavenumber", format!("m = {m} must be positive")));
    }
    Ok(ResolventDiagonal { k, m })
}

impl ResolventDiagonal {
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// P(p, z) = p − m²k²z.
    pub fn p_poly(&self, p: f64, z: f64) -> f64 {
        p - self.m * self.m * self.k * self.k * z
    }

    /// ∂P/∂z.
    pub fn p_poly_dz(&self) -> f64 {
        -self.m * self.m * self.k * self.k
    }

    /// Q(p) = −p(p − m²k²)(p − m²(k² − 1)).
    pub fn q_poly(&self, p: f64) -> f64 {
        let [_, r1, r2] = self.q_roots();
        -p * (p - r1) * (p - r2)
    }

    /// Coefficients (q₃, q₂, q₁, q₀) of Q in powers of p.
    pub fn q_coefficients(&self) -> [f64; 4] {
        let (m2, k2) = (self.m * self.m, self.k * self.k);
        [-1.0, m2 * (2.0 * k2 - 1.0), m2 * m2 * k2 * (1.0 - k2), 0.0]
    }

    pub fn q_roots(&self) -> [f64; 3] {
        let (m2, k2) = (self.m * self.m, self.k * self.k);
        [0.0, m2 * k2, m2 * (k2 - 1.0)]
    }

    fn check_spectral(&self, p: f64) -> Result<()> {
        let radius = ROOT_EXCLUSION * self.m * self.m;
        for root in self.q_roots() {
            if (p - root).abs() <= radius {
                return Err(Error::Singular { p, root, radius });
            }
        }
        Ok(())
    }

    /// z = cn²(mx; k) at coordinate `x`.
    pub fn z_at(&self, x: f64) -> f64 {
        let cn = jacobi(self.m * x, self.k).expect("modulus validated").cn;
        cn * cn
    }

    /// (dz/dx)² as a cubic in z.
    fn z_slope_sq(&self, z: f64) -> f64 {
        let (m2, k2) = (self.m * self.m, self.k * self.k);
        4.0 * m2 * (-k2 * z * z * z + (2.0 * k2 - 1.0) * z * z + (1.0 - k2) * z)
    }

    /// d²z/dx² as a quadratic in z.
    fn z_curvature(&self, z: f64) -> f64 {
        let (m2, k2) = (self.m * self.m, self.k * self.k);
        2.0 * m2 * (-3.0 * k2 * z * z + (4.0 * k2 - 2.0) * z + 1.0 - k2)
    }

    /// The background potential in terms of z: U = m²(2k² − 1 − 2k²z).
    pub fn potential_z(&self, z: f64) -> f64 {
        let (m2, k2) = (self.m * self.m, self.k * self.k);
        m2 * (2.0 * k2 - 1.0 - 2.0 * k2 * z)
    }

    /// G(p, x) for p < 0 with Q(p) > 0.
    ///
    /// Q carries the factor p², so √Q is taken on the branch √Q = p·√(Q/p²),
    /// negative for p < 0; this makes G the positive resolvent below the
    /// spectrum and reproduces the k = 1 closed form [`kink_resolvent`].
    pub fn value(&self, p: f64, x: f64) -> Result<f64> {
        self.check_spectral(p)?;
        let q = self.q_poly(p);
        if !(p < 0.0 && q > 0.0) {
            return Err(Error::domain(
                "spectral parameter",
                format!("p = {p}, Q(p) = {q}: the diagonal resolvent needs p < 0 and Q > 0"),
            ));
        }
        Ok(self.p_poly(p, self.z_at(x)) / (-2.0 * q.sqrt()))
    }
}

/// Left side of 2GG″ − (G′)² − 4(U − p)G² + 1 = 0 for explicit values.
pub fn hermit_lhs(g: f64, g1: f64, g2: f64, u: f64, p: f64) -> f64 {
    2.0 * g * g2 - g1 * g1 - 4.0 * (u - p) * g * g + 1.0
}

/// Residual of the Hermit-type equation for G = P/(2√Q), with the x-derivatives
/// taken through the substitution z = cn²(mx; k).
///
/// Every term is proportional to 1/Q, so the residual is real on both sides of
/// the roots of Q.
pub fn hermit_residual(res: &ResolventDiagonal, p: f64, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("coordinate", "x must be finite"));
    }
    res.check_spectral(p)?;
    let z = res.z_at(x);
    let big_p = res.p_poly(p, z);
    let p_z = res.p_poly_dz();
    let u = res.potential_z(z);
    let numerator = 2.0 * big_p * p_z * res.z_curvature(z)
        - p_z * p_z * res.z_slope_sq(z)
        - 4.0 * (u - p) * big_p * big_p;
    Ok(numerator / (4.0 * res.q_poly(p)) + 1.0)
}

/// Closed form of the k = 1 diagonal:
/// 1/(2√(m² − p)) − m²·sech²(mx)/(2p√(m² − p)).
pub fn kink_resolvent(p: f64, x: f64, m: f64) -> f64 {
    let root = (m * m - p).sqrt();
    let sech = 1.0 / (m * x).cosh();
    0.5 / root - m * m * sech * sech / (2.0 * p * root)
}

/// Diagonal resolvent for the constant potential U ≡ m².
pub fn vacuum_resolvent(p: f64, m: f64) -> f64 {
    0.5 / (m * m - p).sqrt()
}

/// ∫(G_kink − G_vacuum)dx = −m/(p√(m² − p)).
pub fn subtracted_resolvent_trace(p: f64, m: f64) -> f64 {
    -m / (p * (m * m - p).sqrt())
}
