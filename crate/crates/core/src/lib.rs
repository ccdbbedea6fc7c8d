//! Classical and one-loop semiclassical energies of sine-Gordon kinks whose
//! constants come from measured crystal data.
//!
//! The crate follows one pipeline end to end:
//!
//! - [`material`]: measured constants and the derived Frenkel-Kontorova /
//!   sine-Gordon parameters, for crowdions and for dislocations.
//! - [`elliptic`] and [`sine_gordon`]: Jacobi elliptic functions, the static
//!   elliptic solutions, the fluctuation potential and the classical kink energy.
//! - [`semiclassic`]: diagonal resolvent polynomials, heat-trace factors, the
//!   zeta function of the fluctuation operator and the renormalized quantum
//!   energy.
//! - [`lattice`]: the discrete chain, damped relaxation and the
//!   Peierls-Nabarro barrier.
//! - [`dislocation`]: the second-level model of a dislocation line built from
//!   relaxed lattice kinks.
//! - [`spectral`]: finite-difference spectra, heat traces and resolvent
//!   diagonals used to check the analytic results.
//! - [`report`]: tabulation and the command surface used by the `sgkink` binary.

pub mod dislocation;
pub mod elliptic;
pub mod error;
pub mod lattice;
pub mod material;
pub mod quadrature;
pub mod report;
pub mod semiclassic;
pub mod sine_gordon;
pub mod spectral;
pub mod units;

pub use error::{Error, Result};
pub use material::{Material, ModelMode, ModelParams};
