//! Closed-form certificate sums of each family against the O(N²) double sums.

use lemstar_core::criterion::{abs_sums, certify, oracle, weight_ratio, CoeffFamily};
use lemstar_core::families::{self, BesselVariant};
use lemstar_core::specfun::pfq_real;
use lemstar_core::verifier::{verify_membership, SamplingGrid};
use lemstar_core::Complex;

const N: usize = 200;

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn with_forms() -> Vec<CoeffFamily> {
    let mut out = vec![families::f1(), families::f5(), families::f6()];
    for b in [3.0, 3.5, 5.0] {
        out.push(families::f2(b).unwrap());
    }
    for (k, eta) in [
        (0.8, re(1.0)),
        (1.0, re(-1.0)),
        (2.0, Complex::new(0.0, 1.0)),
    ] {
        out.push(families::f3(re(k), eta, BesselVariant::Real).unwrap());
    }
    for nu in [-0.5, 0.0, 1.5] {
        out.push(families::cpb(nu).unwrap());
    }
    for (ks, eta) in [
        (0.6, re(1.0)),
        (1.5, Complex::new(0.0, -1.0)),
        (3.0, re(2.0)),
    ] {
        out.push(families::struve(ks, eta).unwrap());
    }
    out
}

#[test]
fn closed_forms_match_double_sums() {
    for f in with_forms() {
        // At c = 0 the registered S2 is W − 1.
        let forms = f.closed_forms(0.0, 1e-15).expect("registered").unwrap();
        let s1 = oracle::double_sum(&f, 1.0, N);
        let w1 = oracle::double_sum(&f, weight_ratio(), N);
        assert!(
            (forms.s1 - s1).abs() <= 1e-9,
            "{} {:?}: S1 {} vs {}",
            f.name(),
            f.params(),
            forms.s1,
            s1
        );
        assert!(
            (forms.s2 - w1).abs() <= 1e-9,
            "{} {:?}: W − 1 {} vs {}",
            f.name(),
            f.params(),
            forms.s2,
            w1
        );
    }
}

#[test]
fn closed_form_s2_matches_weighted_double_sum() {
    for f in with_forms() {
        for c in [0.3, 1.0] {
            let forms = f.closed_forms(c, 1e-15).unwrap().unwrap();
            let direct = oracle::weighted_double_sum(&f, c, N);
            assert!(
                (forms.s2 - direct).abs() <= 1e-9,
                "{}: {} vs {}",
                f.name(),
                forms.s2,
                direct
            );
        }
    }
}

#[test]
fn f1_s1_analytic() {
    let e = std::f64::consts::E;
    let analytic = 4.0 * (56.0 - 45.0 * e + 9.0 * e * e);
    assert!((oracle::double_sum(&families::f1(), 1.0, N) - analytic).abs() <= 1e-9);
}

#[test]
fn bessel_imaginary_eta_at_hundred_terms() {
    let f = families::f3(re(2.0), Complex::new(0.0, 1.0), BesselVariant::Real).unwrap();
    let forms = f.closed_forms(1.0, 1e-15).unwrap().unwrap();
    assert!((forms.s1 - oracle::double_sum(&f, 1.0, 100)).abs() <= 1e-10);
}

#[test]
fn bessel_squared_form_agrees() {
    for k in [0.7, 1.0, 2.5] {
        let f = families::f3(re(k), re(1.0), BesselVariant::Real).unwrap();
        let forms = f.closed_forms(1.0, 1e-15).unwrap().unwrap();
        let squared = families::f3_squared_s1(k, 1.0, 1e-15).unwrap();
        assert!((forms.s1 - squared).abs() < 1e-12, "κ = {k}");
    }
}

#[test]
fn bessel_closed_form_below_exponential_bound() {
    for i in 0..=40 {
        let k = 0.7 + 0.1 * i as f64;
        let f = families::f3(re(k), re(1.0), BesselVariant::Real).unwrap();
        let s1 = f.closed_forms(1.0, 1e-15).unwrap().unwrap().s1;
        assert!(
            s1 <= families::complex_bessel_s1_bound(re(k), re(1.0)),
            "κ = {k}"
        );
    }
}

#[test]
fn cpb_single_sum_is_0f3() {
    for nu in [-0.9, 0.0, 2.0] {
        let f = families::cpb(nu).unwrap();
        let sums = abs_sums(&f, &[1.0], 1e-15).unwrap();
        let want = pfq_real(
            &[],
            &[nu + 1.0, (nu + 2.0) / 2.0, (nu + 3.0) / 2.0],
            1.0 / 64.0,
            1e-15,
        )
        .unwrap();
        assert!((sums.sums[0] - want).abs() < 1e-13, "ν = {nu}");
    }
}

#[test]
fn f6_values_by_independent_sum() {
    // Σ yⁿ/(n!(2n+1)(n+1)!) summed directly.
    let d = |x: f64| {
        let mut sum = 0.0;
        let mut fact = 1.0;
        for n in 0..40 {
            if n > 0 {
                fact *= n as f64;
            }
            sum += x.powi(n) / (fact * (2 * n + 1) as f64 * fact * (n + 1) as f64);
        }
        sum
    };
    let (d1, dy) = (d(1.0), d(weight_ratio()));
    let forms = families::f6().closed_forms(1.0, 1e-15).unwrap().unwrap();
    assert!((forms.s1 - (d1 * d1 - 1.0)).abs() < 1e-13);
    assert!((forms.s2 - (dy * dy - 1.0 - forms.s1)).abs() < 1e-13);
}

#[test]
fn bessel_below_threshold_not_certified() {
    let f = families::f3(re(0.5), re(1.0), BesselVariant::Real).unwrap();
    assert!(!certify(&f, 1.0, 1e-12).unwrap().certified);
}

/// The stated S2 condition gives W − 1 < c(1 + S1), which for S1 near 1 is
/// weaker than what the inequality chain needs. This cross-product case
/// passes the certificate while the sampled |w² − 1| exceeds c.
#[test]
fn certificate_can_exceed_sampled_bound_when_s1_is_near_one() {
    let f = families::cpb(-0.93).unwrap();
    let report = certify(&f, 0.97, 1e-12).unwrap();
    assert!(report.certified);
    assert!(report.s1 > 0.97);
    let v = verify_membership(&f, 0.97, &SamplingGrid::default()).unwrap();
    assert!(!v.passes);
    assert!(v.max_lemniscate_value > 0.97 && v.max_lemniscate_value < 1.0);
    // At c = 1 the same function passes both checks.
    assert!(certify(&f, 1.0, 1e-12).unwrap().certified);
    assert!(
        verify_membership(&f, 1.0, &SamplingGrid::default())
            .unwrap()
            .passes
    );
}
