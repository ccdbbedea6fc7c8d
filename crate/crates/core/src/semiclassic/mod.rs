//! One-loop machinery: the diagonal resolvent of the fluctuation operator,
//! the factorized heat trace, its zeta function and the renormalized quantum
//! energy of the kink.

pub mod pipeline;
pub mod resolvent;
pub mod zeta;

pub use pipeline::{
    quantum_correction, quantum_energy_pipeline, Background, QuantumEnergy, QuantumPipeline, RegularizationParams,
};
pub use resolvent::{hermit_residual, resolvent_polynomials, ResolventDiagonal};
pub use zeta::{
    gamma_kink, gamma_time, mellin_zeta_quadrature, zeta, zeta_prime_zero, PhaseConvention, SpectralPrefactors,
};
