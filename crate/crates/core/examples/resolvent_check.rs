//! Diagonal resolvent of the fluctuation operator: residual of the nonlinear
//! equation it satisfies for several elliptic moduli, and the k = 1 closed
//! form against a finite-difference construction.

use sgkink::semiclassic::resolvent::{hermit_residual, kink_resolvent, resolvent_polynomials};
use sgkink::spectral::{numerical_resolvent_diag, RESOLVENT_GRID};

fn main() -> sgkink::Result<()> {
    let m = 1.0;
    println!("   k    max |residual| over p in (-5m², -0.1m²), x in (-3/m, 3/m)");
    for k in [0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
        let res = resolvent_polynomials(k, m)?;
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let p = m * m * (-5.0 + 4.9 * i as f64 / 9.0);
            for j in 0..10 {
                let x = (-3.0 + 6.0 * j as f64 / 9.0) / m;
                worst = worst.max(hermit_residual(&res, p, x)?.abs());
            }
        }
        println!("{k:>5.2}   {worst:.3e}");
    }

    println!("\n    p      x      closed form      finite difference   rel. error");
    for (p, x) in [(-1.0, 0.0), (-0.5, 1.0), (-4.0, 0.3), (-2.0, -2.0)] {
        let exact = kink_resolvent(p, x, m);
        let numeric = numerical_resolvent_diag(p, x, m, RESOLVENT_GRID)?;
        println!(
            "{p:>5.1}  {x:>5.1}   {exact:>14.10}   {numeric:>16.10}   {:.2e}",
            (numeric - exact).abs() / exact
        );
    }
    Ok(())
}
