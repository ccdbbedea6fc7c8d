//! Static sine-Gordon solutions: the kink (k = 1) and a periodic solution,
//! with the fluctuation potential and a check that the energy density
//! integrates to the closed-form kink energy.

use sgkink::elliptic::complete_k;
use sgkink::material::{bundled_materials, derive_params, find};
use sgkink::quadrature::integrate;
use sgkink::sine_gordon::{classical_energy, energy_density, potential_u, static_solution, EllipticSolution};
use sgkink::ModelMode;

fn main() -> sgkink::Result<()> {
    let mats = bundled_materials();
    let p = derive_params(find(&mats, "Cu")?, ModelMode::Crowdion);
    let m = p.m_dimless();

    let kink = EllipticSolution::kink(m, 0.0)?;
    let wave = EllipticSolution::new(0.5, m, 0.0)?;
    println!("Cu crowdion, m = {m:.5}");
    println!("periodic solution k = 0.5: period {:.5} = 4K/m with K = {:.6}", wave.period(), complete_k(0.5)?);

    println!("\n   x'      phi_kink   U_kink     phi_k0.5");
    for i in -8..=8 {
        let x = 0.5 * i as f64;
        println!(
            "{x:>6.2}  {:>9.6}  {:>9.5}  {:>9.6}",
            static_solution(x, &kink),
            potential_u(x, &kink),
            static_solution(x, &wave)
        );
    }

    let e = classical_energy(&p);
    let span = 40.0 / m;
    let q = integrate(|x| energy_density(x, &kink, &p), -span, span, 1e-12 * e, 1e-12)?;
    println!("\nE_c closed form {e:.10e} J, integrated density {q:.10e} J");
    Ok(())
}
