use num_complex::Complex64;
use proptest::prelude::*;

use sgkink::dislocation::{fit_G2, pair_coeffs};
use sgkink::elliptic::jacobi;
use sgkink::material::{bundled_materials, derive_params};
use sgkink::semiclassic::resolvent::ROOT_EXCLUSION;
use sgkink::semiclassic::{
    hermit_residual, quantum_energy_pipeline, resolvent_polynomials, QuantumPipeline,
    RegularizationParams,
};
use sgkink::sine_gordon::{static_solution, EllipticSolution};
use sgkink::units::HBAR;
use sgkink::{ModelMode, ModelParams};

fn params(m: f64) -> ModelParams {
    ModelParams::new(1.0, m * m / (2.0 * std::f64::consts::PI.powi(2)), 1.0, 1.0, ModelMode::Crowdion).unwrap()
}

proptest! {
    #[test]
    fn jacobi_identities(u in -10.0f64..10.0, k in 0.0f64..=1.0) {
        let j = jacobi(u, k).unwrap();
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
        prop_assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kink_is_monotone_and_antisymmetric(m in 0.05f64..5.0, x in 0.0f64..50.0) {
        let sol = EllipticSolution::kink(m, 0.0).unwrap();
        let (lo, hi) = (static_solution(-x, &sol), static_solution(x, &sol));
        prop_assert!((lo + hi - 1.0).abs() < 1e-12);
        prop_assert!(static_solution(x + 0.1, &sol) >= hi);
    }

    #[test]
    fn resolvent_equation_holds(k in 0.0f64..=1.0, m in 0.2f64..3.0, pf in 0.1f64..5.0, xf in -3.0f64..3.0) {
        let res = resolvent_polynomials(k, m).unwrap();
        let p = -pf * m * m;
        prop_assume!(res.q_roots().iter().all(|r| (p - r).abs() > ROOT_EXCLUSION * m * m));
        prop_assert!(hermit_residual(&res, p, xf / m).unwrap().abs() < 1e-9);
    }

    #[test]
    fn tied_energy_independent_of_t(m in 0.3f64..2.5, logt in -15.0f64..-6.0) {
        let p = params(m);
        let t = 10f64.powf(logt);
        let a = quantum_energy_pipeline(&p, RegularizationParams::tied(t, &p).unwrap()).unwrap();
        let b = quantum_energy_pipeline(&p, RegularizationParams::tied(1e-12, &p).unwrap()).unwrap();
        prop_assert!((a.total - b.total).norm() < 1e-12 * b.total.norm());
        prop_assert!(a.total.im.abs() < 1e-12 * a.total.re);
    }

    #[test]
    fn rescaling_law(m in 0.3f64..2.5, r in 0.01f64..100.0) {
        let p = params(m);
        let t = 1e-12;
        let base = QuantumPipeline::new(&p, RegularizationParams::free(t, 1.0).unwrap()).unwrap().energy().unwrap();
        let moved = QuantumPipeline::new(&p, RegularizationParams::free(t, r).unwrap()).unwrap().energy().unwrap();
        let expected = Complex64::new(0.0, HBAR / t) * r.ln() * base.zeta0;
        prop_assert!((moved.total - base.total - expected).norm() <= 1e-9 * expected.norm().max(1e-300) + 1e-12 * base.total.norm());
    }

    #[test]
    fn harmonic_fit_is_exact(g in 1e-6f64..1e6, step in 0.01f64..3.0) {
        let samples: Vec<(f64, f64)> = (1..=8).map(|i| i as f64 * step).map(|x| (x, 0.5 * g * x * x)).collect();
        prop_assert!((fit_G2(&samples).unwrap().g2 / g - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pair_calibration(a in 1e-11f64..1e-8, g in 1e-3f64..1e3) {
        let c = pair_coeffs(a, g).unwrap();
        prop_assert!((c.first_derivative(a) / (g * a)).abs() < 1e-12);
        prop_assert!((c.second_derivative(a) / g - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bundled_wavenumbers_are_moderate() {
    for mat in bundled_materials() {
        for mode in [ModelMode::Crowdion, ModelMode::Dislocation] {
            let m = derive_params(&mat, mode).m_dimless();
            assert!(m.is_finite() && m > 0.0 && m < 10.0, "{} {m}", mat.name());
        }
    }
}
