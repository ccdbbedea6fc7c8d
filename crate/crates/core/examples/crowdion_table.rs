//! Classical crowdion energy and its one-loop correction for every material in
//! a database.
//!
//!     cargo run --example crowdion_table
//!     cargo run --example crowdion_table -- path/to/materials.db

use sgkink::material::{bundled_materials, derive_params, load_materials};
use sgkink::semiclassic::quantum_correction;
use sgkink::sine_gordon::classical_energy;
use sgkink::units::joule_to_ev;
use sgkink::ModelMode;

fn main() -> sgkink::Result<()> {
    let materials = match std::env::args().nth(1) {
        Some(path) => load_materials(path)?,
        None => bundled_materials(),
    };

    println!("{:<4} {:>8} {:>10} {:>10} {:>10}", "", "m", "E_c (eV)", "dE_c (eV)", "ratio");
    for mat in &materials {
        let p = derive_params(mat, ModelMode::Crowdion);
        let e = classical_energy(&p);
        let de = quantum_correction(&p);
        println!(
            "{:<4} {:>8.4} {:>10.4} {:>10.6} {:>10.2e}",
            mat.name(),
            p.m_dimless(),
            joule_to_ev(e),
            joule_to_ev(de),
            de / e
        );
    }
    Ok(())
}
