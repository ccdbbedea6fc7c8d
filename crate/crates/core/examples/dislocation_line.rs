//! Second-level dislocation model for one material: relaxed kinks, the
//! kink-kink interaction samples behind the G₂ fit, and the resulting kink
//! energies under both M₂ conventions.
//!
//!     cargo run --example dislocation_line -- Fe

use sgkink::dislocation::{
    dislocation_kink_energy, kink_interaction_energy, pair_coeffs, second_level_params, MassConvention, FIT_SHIFTS,
};
use sgkink::lattice::{default_chain_length, pn_barrier, RelaxationConfig};
use sgkink::material::{bundled_materials, derive_params, find};
use sgkink::units::joule_to_mev;
use sgkink::ModelMode;

fn main() -> sgkink::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "Ag".into());
    let mats = bundled_materials();
    let p = derive_params(find(&mats, &name)?, ModelMode::Dislocation);
    let cfg = RelaxationConfig::default();

    let barrier = pn_barrier(&p, &cfg, default_chain_length(p.m_dimless()))?;
    println!("{name}: m = {:.4}, chain of {} atoms", p.m_dimless(), barrier.n);
    println!("E_site = {:.6e} J, E_bond = {:.6e} J", barrier.energy_site, barrier.energy_bond);

    let coeffs = pair_coeffs(p.a(), p.g())?;
    println!("\n shift   E_site_pair (J)   E_bond_pair (J)");
    for n in FIT_SHIFTS {
        let es = kink_interaction_energy(&barrier.site_state, &barrier.site_state, n, &coeffs)?;
        let eb = kink_interaction_energy(&barrier.bond_state, &barrier.bond_state, n, &coeffs)?;
        println!("{n:>6}   {es:>15.6e}   {eb:>15.6e}");
    }

    let slp = second_level_params(&p, &cfg)?;
    println!("\nepsilon2 = {:.4e} J", slp.epsilon2);
    println!("G2 = {:.4e} N/m (site {:.4e}, bond {:.4e})", slp.g2, slp.g2_site.g2, slp.g2_bond.g2);
    println!("M2 = {:.4e} kg, alternative coefficient {:.4e} kg", slp.m2, slp.m2_alternative);
    for mass in [MassConvention::Defining, MassConvention::Alternative] {
        let (e, de) = dislocation_kink_energy(&slp, mass)?;
        println!(
            "{mass:?}: E_d = {:.4} meV, dE_d = {:.4} meV, ratio {:.3e}",
            joule_to_mev(e),
            joule_to_mev(de),
            de / e
        );
    }
    Ok(())
}
