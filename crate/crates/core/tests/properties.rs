use num_complex::Complex64;
use proptest::prelude::*;
use vxs_core::analytic::{AnalyticFunction, KernelParams};
use vxs_core::carleson::{
    box_condition_sup, default_theta_grid, square_mass, Atom, CarlesonSquare, DiscreteMeasure,
};
use vxs_core::equivalence::{condition_v, condition_vi, RadialEquivParams};
use vxs_core::exponent::VariableExponent;
use vxs_core::numerics::BergmanWeight;
use vxs_core::spaces::Norms;
use vxs_core::verify::cosine_exponent;

fn kernel(re: f64, im: f64) -> AnalyticFunction {
    AnalyticFunction::kernel(KernelParams::new(Complex64::new(re, im), 2.0, 2.0).unwrap()).unwrap()
}

fn measure(atoms: &[(f64, f64, f64)]) -> DiscreteMeasure {
    DiscreteMeasure::new(
        atoms
            .iter()
            .map(|&(r, t, w)| Atom {
                at: Complex64::from_polar(r, t),
                weight: w,
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn normalized_modular_is_one(re in -0.6f64..0.6, im in -0.6f64..0.6, amp in 0.0f64..0.8, weighted in any::<bool>()) {
        let f = kernel(re, im);
        let p = cosine_exponent(amp).unwrap();
        let w = if weighted { BergmanWeight::new(1.0).unwrap() } else { BergmanWeight::area() };
        let norms = Norms::default();
        let n = norms.luxemburg_norm(&f, p.p(), w).unwrap();
        let m = norms.bergman_modular(&f.scale(Complex64::new(1.0 / n, 0.0)), p.p(), w).unwrap();
        prop_assert!((m.value - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn modular_is_monotone_and_dominates_p_minus(re in -0.6f64..0.6, l1 in 0.2f64..2.0, dl in 0.01f64..2.0) {
        let f = kernel(re, 0.1);
        let p = VariableExponent::log_decay(2.0, 1.0, 0.5).unwrap();
        let area = BergmanWeight::area();
        let norms = Norms::default();
        let m1 = norms.bergman_modular(&f.scale(Complex64::new(1.0 / l1, 0.0)), &p, area).unwrap().value;
        let m2 = norms.bergman_modular(&f.scale(Complex64::new(1.0 / (l1 + dl), 0.0)), &p, area).unwrap().value;
        prop_assert!(m1 >= m2);
        let low = norms.luxemburg_norm(&f, &VariableExponent::constant(p.p_minus()).unwrap(), area).unwrap();
        prop_assert!(low <= norms.luxemburg_norm(&f, &p, area).unwrap() * (1.0 + 1e-6));
    }

    #[test]
    fn second_means_increase(coeffs in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..6)) {
        let f = AnalyticFunction::polynomial(coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect());
        let two = VariableExponent::constant(2.0).unwrap();
        let norms = Norms::default();
        let mut prev = 0.0;
        for r in [0.0, 0.3, 0.6, 0.9, 0.99] {
            let m = norms.integral_mean(&f, &two, r).unwrap();
            prop_assert!(m >= prev * (1.0 - 1e-12));
            prev = m;
        }
    }

    #[test]
    fn constant_exponent_reduction(k in 0u32..5, q in 0.5f64..5.0) {
        let f = AnalyticFunction::monomial(Complex64::new(1.0, 0.0), k);
        let p = VariableExponent::constant(q).unwrap();
        let n = Norms::default().luxemburg_norm(&f, &p, BergmanWeight::area()).unwrap();
        let exact = (1.0 / (k as f64 * q / 2.0 + 1.0)).powf(1.0 / q);
        prop_assert!((n - exact).abs() <= 1e-8 * exact);
    }

    #[test]
    fn nested_squares(
        atoms in proptest::collection::vec((0.0f64..0.9999, 0.0f64..6.283, 0.01f64..1.0), 1..60),
        theta in -4.0f64..4.0, h in 0.01f64..1.0, s in 0.05f64..1.0, shift in -1.0f64..1.0,
    ) {
        let mu = measure(&atoms);
        let outer = CarlesonSquare::new(theta, h).unwrap();
        let inner = CarlesonSquare::new(theta + shift * 0.5 * (h - s * h), s * h).unwrap();
        prop_assert!(outer.contains_square(&inner));
        prop_assert!(square_mass(&mu, &inner) <= square_mass(&mu, &outer));
    }

    #[test]
    fn box_condition_monotone_in_a(
        atoms in proptest::collection::vec((0.0f64..0.9999, 0.0f64..6.283, 0.01f64..1.0), 1..40),
        a in 1.0f64..3.0, da in 0.0f64..2.0,
    ) {
        let mu = measure(&atoms);
        let hs: Vec<f64> = (0..12).map(|k| 0.5f64.powi(k)).collect();
        let t = default_theta_grid();
        let lo = box_condition_sup(&mu, a, &hs, &t).unwrap().row("sup").unwrap().value;
        let hi = box_condition_sup(&mu, a + da, &hs, &t).unwrap().row("sup").unwrap().value;
        prop_assert!(hi >= lo);
    }

    #[test]
    fn radial_condition_bounds(q in 1.0f64..4.0, cst in 0.0f64..2.0, r0 in 0.3f64..0.9) {
        // (1−r)^{q−p(r)} ≤ e^c for the log-decay exponent.
        let p = VariableExponent::log_decay(q, cst, r0).unwrap();
        let params = RadialEquivParams::new(q).unwrap();
        let v = condition_v(&p, &params).unwrap();
        let vi = condition_vi(&p, &params).unwrap();
        prop_assert!(v.sup_value <= (2.0 * cst / q).exp() * (1.0 + 1e-9));
        prop_assert!(vi.sup_value <= 2.0 * v.sup_value * (1.0 + 1e-9));
        prop_assert!(v.bounded() && vi.bounded());
    }
}
