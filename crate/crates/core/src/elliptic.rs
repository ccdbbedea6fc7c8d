//! Jacobi elliptic functions sn, cn, dn and the complete elliptic integral K,
//! computed with the arithmetic-geometric mean (descending Landen
//! transformation). The modulus is `k`, not the parameter `k²`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Stopping tolerance on the AGM defect c_n.
const AGM_TOL: f64 = 1e-15;
const AGM_MAX_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn check_modulus(k: f64) -> Result<()> {
    if (0.0..=1.0).contains(&k) {
        Ok(())
    } else {
        Err(Error::domain("elliptic modulus", format!("k = {k} is not in [0, 1]")))
    }
}

/// sn, cn and dn of `u` for modulus `k ∈ [0, 1]`.
pub fn jacobi(u: f64, k: f64) -> Result<JacobiTriple> {
    check_modulus(k)?;
    if k == 0.0 {
        return Ok(JacobiTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        });
    }
    if k == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    let mut a = [0.0; AGM_MAX_STEPS + 1];
    let mut c = [0.0; AGM_MAX_STEPS + 1];
    a[0] = 1.0;
    c[0] = k;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut n = 0;
    while c[n].abs() > AGM_TOL {
        if n == AGM_MAX_STEPS {
            return Err(Error::Instability(format!("AGM did not converge for k = {k}")));
        }
        let (an, bn) = (a[n], b);
        a[n + 1] = 0.5 * (an + bn);
        c[n + 1] = 0.5 * (an - bn);
        b = (an * bn).sqrt();
        n += 1;
    }

    let mut phi = (1u64 << n) as f64 * a[n] * u;
    let mut prev = phi;
    for j in (1..=n).rev() {
        prev = phi;
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = if n == 0 { 1.0 } else { cn / (prev - phi).cos() };
    Ok(JacobiTriple { sn, cn, dn })
}

/// Arithmetic-geometric mean of two non-negative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_STEPS {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind K(k). Infinite at k = 1.
pub fn complete_k(k: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(FRAC_PI_2 / agm(1.0, ((1.0 - k) * (1.0 + k)).sqrt()))
}
