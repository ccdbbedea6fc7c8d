//! One-loop kink energy through the zeta-function pipeline: prefactors A and
//! B, ζ(0) and ζ′(0) under the available branch choices, the effect of the
//! rescaling factor r, and a Mellin-quadrature cross-check of ζ(s).

use num_complex::Complex64;
use sgkink::material::{bundled_materials, derive_params, find};
use sgkink::semiclassic::{
    mellin_zeta_quadrature, quantum_correction, zeta, PhaseConvention, QuantumPipeline, RegularizationParams,
};
use sgkink::units::joule_to_ev;
use sgkink::ModelMode;

fn main() -> sgkink::Result<()> {
    let mats = bundled_materials();
    let p = derive_params(find(&mats, "Ag")?, ModelMode::Crowdion);
    println!("Ag crowdion: closed-form dE = {:.6} eV", joule_to_ev(quantum_correction(&p)));

    println!("\n      T (s)   dE tied r (eV)   dE spectral r (eV)");
    for t in [1e-15, 1e-12, 1e-9, 1e-6] {
        let tied = QuantumPipeline::new(&p, RegularizationParams::tied(t, &p)?)?.energy()?;
        let spectral = QuantumPipeline::new(&p, RegularizationParams::tied_spectral(t, &p)?)?.energy()?;
        println!(
            "{t:>11.0e}   {:>14.6}   {:>18.6}",
            joule_to_ev(tied.correction.re),
            joule_to_ev(spectral.correction.re)
        );
    }

    let reg = RegularizationParams::tied(1e-12, &p)?;
    println!("\nbranch       correction (eV)");
    for (label, phases) in [
        ("anchored", PhaseConvention::ANCHORED),
        ("as printed", PhaseConvention::AS_PRINTED),
        ("euclidean", PhaseConvention::EUCLIDEAN),
    ] {
        let e = QuantumPipeline::new(&p, reg)?.with_phases(phases).energy()?;
        let c = e.correction / sgkink::units::EV;
        println!("{label:<12} {:+.6} {:+.6}i", c.re, c.im);
    }

    let pipe = QuantumPipeline::new(&p, reg)?;
    let pre = *pipe.prefactors();
    println!("\n|A| = {:.4e}, |B| = {:.4e}", pre.a_mag(), pre.b_mag());
    println!("\n    s      closed form       Mellin quadrature");
    for s in [-1.0, -0.5, 0.0, 0.25] {
        let closed = zeta(Complex64::new(s, 0.0), &pre, p.m_dimless(), PhaseConvention::EUCLIDEAN)?.re;
        let quad = mellin_zeta_quadrature(s, &pre, p.m_dimless())?;
        println!("{s:>5.2}   {closed:>16.9e}   {quad:>16.9e}");
    }
    Ok(())
}
