//! Physical constants (CODATA 2018) and unit conversions.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Elementary charge, used as J per eV.
pub const EV: f64 = 1.602_176_634e-19;

pub fn joule_to_ev(e: f64) -> f64 {
    e / EV
}

pub fn joule_to_mev(e: f64) -> f64 {
    e / EV * 1e3
}
