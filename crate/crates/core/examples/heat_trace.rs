//! Kink-minus-vacuum heat trace from finite-difference spectra compared with
//! erf(m√t), on two grids.

use sgkink::spectral::{eigen_spectrum, heat_trace_from_spectra, DiscreteOperator, GridSpec};

fn main() -> sgkink::Result<()> {
    let m = 1.0;
    for h in [0.02, 0.01] {
        let grid = GridSpec::new(30.0, h)?;
        let kink = eigen_spectrum(&DiscreteOperator::kink(grid, m))?;
        let vacuum = eigen_spectrum(&DiscreteOperator::vacuum(grid, m))?;
        let bound = kink.iter().filter(|&&l| l < m * m).count() - vacuum.iter().filter(|&&l| l < m * m).count();
        println!("h = {h}: {} points, lowest eigenvalue {:.3e}, extra states below m²: {bound}", kink.len(), kink[0]);
        println!("    t      numeric      erf(m√t)    rel. error");
        for t in [0.1, 0.25, 1.0, 4.0, 10.0] {
            let trace = heat_trace_from_spectra(&kink, &vacuum, t)?;
            let exact = libm::erf(m * f64::sqrt(t));
            println!(
                "{t:>6.2}   {:>10.7}   {exact:>10.7}   {:.2e}",
                trace.value,
                (trace.value - exact).abs() / exact
            );
        }
        println!();
    }
    Ok(())
}
