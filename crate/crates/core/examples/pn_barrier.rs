//! Peierls-Nabarro barrier of the discrete chain as the kink widens, and the
//! relaxed-chain energy approaching the continuum kink energy.

use std::f64::consts::PI;

use sgkink::lattice::{chain_energy, default_chain_length, pn_barrier, relax, sg_kink_initial, RelaxationConfig};
use sgkink::sine_gordon::classical_energy;
use sgkink::{ModelMode, ModelParams};

fn main() -> sgkink::Result<()> {
    let cfg = RelaxationConfig::default();
    println!("    m      n    eps2 / E_c     E_chain / E_c");
    for m in [2.0, 1.5, 1.0, 0.5, 0.25, 0.1] {
        // a = G = M = 1 with ε chosen to give this m
        let p = ModelParams::new(1.0, m * m / (2.0 * PI * PI), 1.0, 1.0, ModelMode::Crowdion)?;
        let n = default_chain_length(m);
        let b = pn_barrier(&p, &cfg, n)?;
        let relaxed = relax(sg_kink_initial(n, ((n - 1) / 2) as f64, &p)?, &p, &cfg)?;
        let ec = classical_energy(&p);
        println!(
            "{m:>5.2}  {n:>5}  {:>12.4e}  {:>15.6}",
            b.epsilon2 / ec,
            chain_energy(&relaxed.state, &p) / ec
        );
    }
    Ok(())
}
