use lemstar_core::criterion::{
    cert_sums, certify, oracle, squared_series, CertReport, CoeffFamily,
};
use lemstar_core::families::{self, hadamard, unit_coefficients};
use lemstar_core::identities::{chu_vandermonde, oracle as id_oracle};
use lemstar_core::specfun::{pfq_real, pochhammer, pochhammer_abs_log};
use lemstar_core::thresholds::{solve_threshold, ThresholdQuery};
use lemstar_core::verifier::{verify_membership, SamplingGrid};
use lemstar_core::Complex;
use proptest::prelude::*;

fn geometric(beta: f64) -> CoeffFamily {
    CoeffFamily::new("GEOM", move |n| Complex::new(beta.powi(n as i32 - 1), 0.0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_recurrence(re in -5.0..5.0f64, im in 0.1..3.0f64, n in 0usize..30) {
        let a = Complex::new(re, im);
        let lhs = pochhammer(a, n + 1).unwrap();
        let rhs = pochhammer(a, n).unwrap() * (a + n as f64);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn abs_log_is_log_modulus(re in -5.0..5.0f64, im in 0.1..3.0f64, n in 0usize..25) {
        let a = Complex::new(re, im);
        let direct = pochhammer(a, n).unwrap().norm().ln();
        prop_assert!((pochhammer_abs_log(a, n).unwrap() - direct).abs() <= 1e-11 * direct.abs().max(1.0));
    }

    #[test]
    fn confluent_with_equal_parameters_is_exp(a in 0.2..6.0f64, x in -8.0..8.0f64) {
        let v = pfq_real(&[a], &[a], x, 1e-15).unwrap();
        prop_assert!((v - x.exp()).abs() <= 1e-12 * x.exp().max(1.0));
    }

    #[test]
    fn kummer_special_case(x in 0.01..10.0f64) {
        // ₁F₁(1; 2; x) = (eˣ − 1)/x.
        let v = pfq_real(&[1.0], &[2.0], x, 1e-15).unwrap();
        prop_assert!((v - x.exp_m1() / x).abs() <= 1e-12 * v);
    }

    #[test]
    fn chu_vandermonde_random(n in 0usize..20, ar in -4.0..4.0f64, ai in -1.0..1.0f64, br in 0.5..5.0f64, bi in -1.0..1.0f64) {
        let (alpha, beta) = (Complex::new(ar, ai), Complex::new(br, bi));
        let closed = chu_vandermonde(n, alpha, beta).unwrap();
        let sum = id_oracle::chu_vandermonde_sum(n, alpha, beta);
        let scale = id_oracle::chu_vandermonde_scale(n, alpha, beta);
        prop_assert!((closed - sum).norm() <= 1e-12 * scale);
    }

    #[test]
    fn s2_is_affine_in_c(b in 2.0..8.0f64, c1 in 0.01..1.0f64, c2 in 0.01..1.0f64) {
        let sums = cert_sums(&families::f2(b).unwrap(), 1e-14).unwrap();
        let lhs = sums.s2(c1) - sums.s2(c2);
        prop_assert!((lhs + (c1 - c2) * sums.s1).abs() <= 1e-12);
    }

    #[test]
    fn geometric_squared_series(beta in 0.0..0.5f64) {
        let v = squared_series(&geometric(beta), 1.0, 1e-14).unwrap();
        let exact = 1.0 / ((1.0 - beta) * (1.0 - beta));
        prop_assert!((v - exact).abs() <= 1e-12);
        prop_assert!((v - 1.0 - oracle::double_sum(&geometric(beta), 1.0, 200)).abs() <= 1e-10);
    }

    #[test]
    fn hadamard_unit_is_neutral(b in 0.5..9.0f64, n in 1usize..60) {
        let f = families::f2(b).unwrap();
        prop_assert_eq!(hadamard(&f, &unit_coefficients()).coeff(n), f.coeff(n));
    }

    #[test]
    fn report_json_roundtrip(b in 2.0..9.0f64, c in 0.05..1.0f64) {
        let report = certify(&families::f2(b).unwrap(), c, 1e-12).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: CertReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn quadratic_roots_and_bracket_refinement(root in -3.0..3.0f64, slope in 0.2..5.0f64) {
        let q = ThresholdQuery::new(move |x| Ok(slope * (x - root) * (1.0 + 0.1 * x * x)), [-4.0, 4.0]);
        let r = solve_threshold(&q).unwrap();
        prop_assert!((r.root - root).abs() <= 1e-8);
        let narrow = solve_threshold(&q.clone().with_bracket([r.root - 0.1, r.root + 0.1])).unwrap();
        prop_assert!((narrow.root - r.root).abs() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampled_max_grows_with_radius(kappa in 0.8..4.0f64) {
        let f = families::f3(Complex::new(kappa, 0.0), Complex::new(1.0, 0.0), families::BesselVariant::Real).unwrap();
        let grid = SamplingGrid { radii: vec![0.5, 0.9, 0.99, 0.999], points_per_circle: 256, truncation_n: 120 };
        let report = verify_membership(&f, 1.0, &grid).unwrap();
        for pair in report.per_radius.windows(2) {
            prop_assert!(pair[1].max_lemniscate_value >= pair[0].max_lemniscate_value);
        }
    }
}
