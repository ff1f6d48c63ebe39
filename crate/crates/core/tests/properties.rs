use fivevertex::asymptotics::{classify, phi, Regime, ScaledGeometry};
use fivevertex::equilibrium::MeasureClosure;
use fivevertex::exact::{parse_rational, p_polynomial, p_value, tau_hankel, tau_loggas, FiniteModel, DEFAULT_WORK_BUDGET};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn small_model() -> impl Strategy<Value = FiniteModel> {
    (1u64..=3, 0u64..=4, 0u64..=4).prop_map(|(n, dm, dl)| FiniteModel::new(n, n + dm, n + 2 + dl).unwrap())
}

fn point() -> impl Strategy<Value = BigRational> {
    (1i64..=7, 1i64..=7).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn geometry() -> impl Strategy<Value = ScaledGeometry> {
    (1.05f64..4.0, 1.05f64..4.0).prop_map(|(l, m)| ScaledGeometry::new(l, m).unwrap())
}

fn log_x() -> impl Strategy<Value = f64> {
    (-6.0f64..6.0).prop_map(f64::exp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_rational_round_trips(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = BigRational::new(BigInt::from(p), BigInt::from(q));
        prop_assert_eq!(parse_rational(&format!("{p}/{q}")).unwrap(), r.clone());
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn decimals_parse_exactly(whole in 0i64..1000, frac in 0u32..1000) {
        let text = format!("{whole}.{frac:03}");
        let expected = BigRational::new(BigInt::from(whole * 1000 + i64::from(frac)), BigInt::from(1000));
        prop_assert_eq!(parse_rational(&text).unwrap(), expected);
    }

    #[test]
    fn tau_representations_agree(model in small_model(), x in point()) {
        prop_assert_eq!(tau_hankel(&model, &x).unwrap(), tau_loggas(&model, &x, DEFAULT_WORK_BUDGET).unwrap());
    }

    #[test]
    fn polynomial_matches_pointwise_values(model in small_model(), x in point()) {
        let p = p_polynomial(&model).unwrap();
        prop_assert_eq!(p.coeff(0), BigRational::one());
        prop_assert_eq!(p.eval(&x.recip()), p_value(&model, &x).unwrap());
    }

    #[test]
    fn phi_is_symmetric_in_the_aspect_ratios(l in 1.05f64..4.0, m in 1.05f64..4.0, x in log_x()) {
        let a = phi(&ScaledGeometry::new(l, m).unwrap(), x).unwrap();
        let b = phi(&ScaledGeometry::new(m, l).unwrap(), x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn density_is_a_constrained_probability_measure(g in geometry(), x in log_x()) {
        let c = MeasureClosure::new(&g, x).unwrap();
        let s = c.support;
        prop_assert!(0.0 <= s.a && s.a <= s.b && s.b <= s.gamma());
        for i in 0..=200 {
            let r = c.density.eval(s.gamma() * i as f64 / 200.0).unwrap();
            prop_assert!((-1e-10..=1.0 + 1e-10).contains(&r), "rho = {}", r);
        }
        prop_assert!((c.density.mass(1e-12).unwrap() - 1.0).abs() < 1e-7);
        prop_assert!(c.first_moment > 0.0 && c.first_moment < s.gamma());
    }

    #[test]
    fn resolvent_is_real_symmetric_and_decays(g in geometry(), x in log_x(), re in -3.0f64..7.0, im in 0.1f64..3.0) {
        let c = MeasureClosure::new(&g, x).unwrap();
        let z = Complex64::new(re, im);
        let w = c.resolvent.eval(z).unwrap();
        let w_bar = c.resolvent.eval(z.conj()).unwrap();
        prop_assert!((w.conj() - w_bar).norm() < 1e-12);
        // Im W < 0 in the upper half plane for a positive measure.
        prop_assert!(w.im < 0.0);
        let far = Complex64::new(1e8, 0.0);
        prop_assert!((far * c.resolvent.eval(far).unwrap() - 1.0).norm() < 1e-6);
    }

    #[test]
    fn regimes_are_ordered_along_x(g in geometry(), lo in -6.0f64..6.0, step in 0.01f64..3.0) {
        let rank = |r: Regime| match r { Regime::III => 0, Regime::II => 1, Regime::I => 2 };
        let a = classify(&g, lo.exp()).unwrap().regime;
        let b = classify(&g, (lo + step).exp()).unwrap().regime;
        prop_assert!(rank(a) <= rank(b));
    }
}
