//! Coefficient families built from special functions, each with the
//! hypergeometric closed forms of its certificate sums.
//!
//! | id | f(z) | a_n |
//! |----|------|-----|
//! | `F1_EXP` | −3(2 − 2eᶻ + 2z + z²)/z² | 1/(4)_{n−1} |
//! | `F2_CONF_HYP` | z·₀F₁(;b;z) | 1/((n−1)!(b)_{n−1}) |
//! | `F3_GEN_BESSEL` | z·U(z) | (−η)^{n−1}/(4^{n−1}(n−1)!(κ)_{n−1}) |
//! | `CPB_CROSS_BESSEL` | normalized J_{ν+1}I_ν + J_νI_{ν+1} | (−1)^{n−1}/((n−1)!(ν+1)_{n−1}((ν+2)/2)_{n−1}((ν+3)/2)_{n−1}64^{n−1}) |
//! | `W_GEN_STRUVE` | normalized generalized Struve | (−η)^{n−1}/((3/2)_{n−1}(κ_s)_{n−1}4^{n−1}) |
//! | `F5_ERF` | √(πz)/2·erf(√z) | (−1)^{n−1}/((n−1)!(2n−1)) |
//! | `F6_ERF_HADAMARD` | F5 ∗ (eᶻ − 1) | (−1)^{n−1}/((n−1)!(2n−1)n!) |

use std::f64::consts::{E, LN_2};

use serde::{Deserialize, Serialize};

use crate::criterion::{weight_ratio, ClosedForms, CoeffFamily};
use crate::error::{Error, Result};
use crate::specfun::{is_nonpositive_integer, pfq_real, pochhammer_abs_log};
use crate::Complex;

fn real(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// a_n = Π_{k=1}^{n−1} step(k), so a_1 = 1.
fn ratio_product(n: usize, step: impl Fn(f64) -> Complex) -> Complex {
    let mut acc = real(1.0);
    for k in 1..n {
        acc *= step(k as f64);
    }
    acc
}

/// Sign (−1)^{n−1}.
fn alternating(n: usize) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

fn ln_factorial(m: usize) -> f64 {
    pochhammer_abs_log(real(1.0), m).expect("(1)_m has no zero factor")
}

fn check_pole(value: Complex, context: &'static str) -> Result<()> {
    if is_nonpositive_integer(value) {
        Err(Error::Pole { context, value })
    } else {
        Ok(())
    }
}

/// F1: a_n = 1/(4)_{n−1}.
pub fn coeff_f1(n: usize) -> f64 {
    ratio_product(n, |k| real(1.0 / (3.0 + k))).re
}

/// F2: a_n = 1/((n−1)!(b)_{n−1}).
pub fn coeff_f2(b: f64, n: usize) -> Result<f64> {
    check_pole(real(b), "F2 parameter b")?;
    Ok(ratio_product(n, |k| real(1.0 / (k * (b + k - 1.0)))).re)
}

/// F3: a_n = (−η)^{n−1}/(4^{n−1}(n−1)!(κ)_{n−1}).
pub fn coeff_f3(kappa: Complex, eta: Complex, n: usize) -> Result<Complex> {
    check_pole(kappa, "F3 parameter kappa")?;
    Ok(ratio_product(n, |k| -eta / (4.0 * k * (kappa + (k - 1.0)))))
}

/// CPB: a_n = (−1)^{n−1}/((n−1)!(ν+1)_{n−1}((ν+2)/2)_{n−1}((ν+3)/2)_{n−1}·64^{n−1}).
pub fn coeff_cpb(nu: f64, n: usize) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(Error::Domain(format!(
            "cross-product family needs ν > −1, got {nu}"
        )));
    }
    let (p, q, r) = (nu + 1.0, (nu + 2.0) / 2.0, (nu + 3.0) / 2.0);
    Ok(ratio_product(n, |k| {
        let j = k - 1.0;
        real(-1.0 / (64.0 * k * (p + j) * (q + j) * (r + j)))
    })
    .re)
}

/// Generalized Struve: a_n = (−η)^{n−1}/((3/2)_{n−1}(κ_s)_{n−1}4^{n−1}).
pub fn coeff_struve(kappa_s: f64, eta: Complex, n: usize) -> Result<Complex> {
    if !(kappa_s > 0.0) {
        return Err(Error::Domain(format!(
            "Struve family needs κ_s > 0, got {kappa_s}"
        )));
    }
    Ok(ratio_product(n, |k| {
        let j = k - 1.0;
        -eta / (4.0 * (1.5 + j) * (kappa_s + j))
    }))
}

/// κ_s = ν + (b+2)/2.
pub fn struve_kappa_s(nu: f64, b: f64) -> f64 {
    nu + (b + 2.0) / 2.0
}

/// F5: a_n = (−1)^{n−1}/((n−1)!(2n−1)).
pub fn coeff_f5(n: usize) -> f64 {
    let nf = n as f64;
    alternating(n) * (-ln_factorial(n - 1)).exp() / (2.0 * nf - 1.0)
}

/// Coefficientwise product of two families.
pub fn hadamard(f: &CoeffFamily, g: &CoeffFamily) -> CoeffFamily {
    let (ff, gg) = (f.clone(), g.clone());
    let name = format!("{}*{}", f.name(), g.name());
    let mut h = CoeffFamily::new(name, move |n| ff.coeff(n) * gg.coeff(n)).expect("1·1 = 1");
    for (k, v) in f.params() {
        h = h.with_param(&format!("{}.{k}", f.name()), v.clone());
    }
    for (k, v) in g.params() {
        h = h.with_param(&format!("{}.{k}", g.name()), v.clone());
    }
    h
}

/// eᶻ − 1, with b_n = 1/n!.
pub fn exp_minus_one() -> CoeffFamily {
    CoeffFamily::new("EXP_MINUS_ONE", |n| {
        real(ratio_product(n, |k| real(1.0 / (k + 1.0))).re)
    })
    .expect("b_1 = 1")
}

/// All coefficients equal to one: z/(1 − z), the unit for the Hadamard product.
pub fn unit_coefficients() -> CoeffFamily {
    CoeffFamily::new("ONES", |_| real(1.0)).expect("b_1 = 1")
}

/// Comparison bound for generalized Bessel functions:
/// (e^{|η/κ|} − 1)/(2 − e^{|η/(2κ)|}).
pub fn zayed_bound(kappa: Complex, eta: Complex) -> Result<f64> {
    let ratio = (eta / kappa).norm();
    let den = 2.0 - (ratio / 2.0).exp();
    if !(den > 0.0) {
        return Err(Error::Domain(format!(
            "e^(|η/(2κ)|) must be below 2, |η/κ| = {ratio}"
        )));
    }
    Ok((ratio.exp() - 1.0) / den)
}

/// e^{∛21·|η|/(2^{5/3}|κ|)} − c·e^{|η|/(2|κ|)}; the certificate needs this below 1.
pub fn complex_bessel_exp_condition(kappa: Complex, eta: Complex, c: f64) -> Result<f64> {
    let (k, e) = (kappa.norm(), eta.norm());
    if !(k > e / (2.0 * LN_2)) {
        return Err(Error::Domain(format!(
            "need |κ| > |η|/(2 ln 2); |κ| = {k}, |η| = {e}"
        )));
    }
    let lead = 21f64.cbrt() * e / (2f64.powf(5.0 / 3.0) * k);
    Ok(lead.exp() - c * (e / (2.0 * k)).exp())
}

/// Upper bound e^{|η|/(2|κ|)} − 1 on S1 for complex κ.
pub fn complex_bessel_s1_bound(kappa: Complex, eta: Complex) -> f64 {
    (eta.norm() / (2.0 * kappa.norm())).exp() - 1.0
}

/// h(a): the exponential condition at κ = 3/2 + ia, |η| = 1, c = 1.
pub fn h_of_a(a: f64) -> f64 {
    complex_bessel_exp_condition(Complex::new(1.5, a), real(1.0), 1.0).expect("|κ| ≥ 3/2")
}

/// k(a): the comparison bound at κ = 3/2 + ia, |η| = 1.
pub fn k_of_a(a: f64) -> f64 {
    zayed_bound(Complex::new(1.5, a), real(1.0)).expect("|κ| ≥ 3/2")
}

/// S1 and S2(c) from the single-series value D(x) at x = 1 and x = (21/4)^{1/3}.
fn squared_forms(d: impl Fn(f64) -> Result<f64>, c: f64) -> Result<ClosedForms> {
    let d1 = d(1.0)?;
    let dy = d(weight_ratio())?;
    let s1 = d1 * d1 - 1.0;
    Ok(ClosedForms {
        s1,
        s2: dy * dy - 1.0 - c * s1,
    })
}

/// Which certificate variant governs a generalized Bessel family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BesselVariant {
    /// Real κ > 0: closed forms through the Cauchy-weight identity.
    Real,
    /// Complex κ with |κ| > |η|/(2 ln 2): exponential bounds.
    Complex,
}

/// A family identifier with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id")]
pub enum FamilySpec {
    #[serde(rename = "F1_EXP")]
    F1Exp,
    #[serde(rename = "F2_CONF_HYP")]
    F2ConfHyp { b: f64 },
    #[serde(rename = "F3_GEN_BESSEL")]
    F3GenBessel {
        kappa: Complex,
        eta: Complex,
        variant: BesselVariant,
    },
    #[serde(rename = "CPB_CROSS_BESSEL")]
    CpbCrossBessel { nu: f64 },
    #[serde(rename = "W_GEN_STRUVE")]
    WGenStruve { kappa_s: f64, eta: Complex },
    #[serde(rename = "F5_ERF")]
    F5Erf,
    #[serde(rename = "F6_ERF_HADAMARD")]
    F6ErfHadamard,
}

impl FamilySpec {
    pub fn id(&self) -> &'static str {
        match self {
            FamilySpec::F1Exp => "F1_EXP",
            FamilySpec::F2ConfHyp { .. } => "F2_CONF_HYP",
            FamilySpec::F3GenBessel { .. } => "F3_GEN_BESSEL",
            FamilySpec::CpbCrossBessel { .. } => "CPB_CROSS_BESSEL",
            FamilySpec::WGenStruve { .. } => "W_GEN_STRUVE",
            FamilySpec::F5Erf => "F5_ERF",
            FamilySpec::F6ErfHadamard => "F6_ERF_HADAMARD",
        }
    }

    /// Real generalized Bessel family.
    pub fn bessel(kappa: f64, eta: f64) -> Self {
        FamilySpec::F3GenBessel {
            kappa: real(kappa),
            eta: real(eta),
            variant: BesselVariant::Real,
        }
    }

    /// Struve family from (ν, b, η) through κ_s = ν + (b+2)/2.
    pub fn struve(nu: f64, b: f64, eta: f64) -> Self {
        FamilySpec::WGenStruve {
            kappa_s: struve_kappa_s(nu, b),
            eta: real(eta),
        }
    }

    /// Validates the parameter domain and builds the coefficient family.
    pub fn build(&self) -> Result<CoeffFamily> {
        match *self {
            FamilySpec::F1Exp => Ok(f1()),
            FamilySpec::F2ConfHyp { b } => f2(b),
            FamilySpec::F3GenBessel {
                kappa,
                eta,
                variant,
            } => f3(kappa, eta, variant),
            FamilySpec::CpbCrossBessel { nu } => cpb(nu),
            FamilySpec::WGenStruve { kappa_s, eta } => struve(kappa_s, eta),
            FamilySpec::F5Erf => Ok(f5()),
            FamilySpec::F6ErfHadamard => Ok(f6()),
        }
    }
}

pub fn f1() -> CoeffFamily {
    CoeffFamily::new("F1_EXP", |n| real(coeff_f1(n)))
        .expect("a_1 = 1")
        .with_abs_coeff(|n| (-pochhammer_abs_log(real(4.0), n - 1).expect("no zero factor")).exp())
        .with_closed_forms(|c, _tol| {
            let s1 = 4.0 * (56.0 - 45.0 * E + 9.0 * E * E);
            let r42 = 42f64.cbrt();
            let s2 = (-196.0 * (3.0 * E - 8.0) * (3.0 * E - 7.0) * c
                - 16.0
                    * (21f64.cbrt() / 2f64.powf(2.0 / 3.0)).exp()
                    * (8.0 + 4.0 * r42 + r42 * r42)
                + 64.0 * r42.exp()
                + 106.0 * r42
                + 32.0 * r42 * r42
                + 351.0)
                / 49.0;
            Ok(ClosedForms { s1, s2 })
        })
}

pub fn f2(b: f64) -> Result<CoeffFamily> {
    check_pole(real(b), "F2 parameter b")?;
    let mut fam = CoeffFamily::new("F2_CONF_HYP", move |n| {
        real(coeff_f2(b, n).expect("validated b"))
    })?
    .with_param("b", b)
    .with_abs_coeff(move |n| {
        let m = n - 1;
        (-ln_factorial(m) - pochhammer_abs_log(real(b), m).expect("validated b")).exp()
    });
    if b > 0.0 && !is_nonpositive_integer(real(2.0 * b - 1.0)) {
        fam = fam.with_closed_forms(move |c, tol| {
            let g = |x: f64| pfq_real(&[b - 0.5], &[b, 2.0 * b - 1.0], x, tol);
            let at4 = g(4.0)?;
            let at_w = g(2.0 * 42f64.cbrt())?;
            Ok(ClosedForms {
                s1: at4 - 1.0,
                s2: at_w - c * at4 + c - 1.0,
            })
        });
    }
    Ok(fam)
}

/// δ(b) = ₁F₂(b − 1/2; b, 2b − 1; 4) − 1, the closed-form S1 of F2.
pub fn f2_delta(b: f64, tol: f64) -> Result<f64> {
    check_pole(real(b), "F2 parameter b")?;
    check_pole(real(2.0 * b - 1.0), "F2 parameter 2b − 1")?;
    Ok(pfq_real(&[b - 0.5], &[b, 2.0 * b - 1.0], 4.0, tol)? - 1.0)
}

pub fn f3(kappa: Complex, eta: Complex, variant: BesselVariant) -> Result<CoeffFamily> {
    check_pole(kappa, "F3 parameter kappa")?;
    match variant {
        BesselVariant::Real => {
            if kappa.im != 0.0 || !(kappa.re > 0.0) {
                return Err(Error::Domain(format!(
                    "real Bessel variant needs real κ > 0, got {kappa}"
                )));
            }
        }
        BesselVariant::Complex => {
            if !(kappa.norm() > eta.norm() / (2.0 * LN_2)) {
                return Err(Error::Domain(format!(
                    "complex Bessel variant needs |κ| > |η|/(2 ln 2); |κ| = {}, |η| = {}",
                    kappa.norm(),
                    eta.norm()
                )));
            }
        }
    }
    let eta_abs = eta.norm();
    let mut fam = CoeffFamily::new("F3_GEN_BESSEL", move |n| {
        coeff_f3(kappa, eta, n).expect("validated κ")
    })?
    .with_param("kappa", kappa)
    .with_param("eta", eta)
    .with_param(
        "variant",
        if variant == BesselVariant::Real {
            "real"
        } else {
            "complex"
        },
    )
    .with_abs_coeff(move |n| {
        let m = n - 1;
        if m > 0 && eta_abs == 0.0 {
            return 0.0;
        }
        let log = m as f64 * (eta_abs / 4.0).ln()
            - ln_factorial(m)
            - pochhammer_abs_log(kappa, m).expect("validated κ");
        log.exp()
    });
    let k = kappa.re;
    if variant == BesselVariant::Real && !is_nonpositive_integer(real(2.0 * k - 1.0)) {
        fam = fam.with_closed_forms(move |c, tol| {
            let g = |x: f64| pfq_real(&[k - 0.5], &[k, 2.0 * k - 1.0], x, tol);
            let s1 = g(eta_abs)? - 1.0;
            let w1 = g(weight_ratio() * eta_abs)? - 1.0;
            Ok(ClosedForms {
                s1,
                s2: w1 - c * s1,
            })
        });
    }
    Ok(fam)
}

/// S1 through the squared-₀F₁ route, (₀F₁(;κ;|η|/4))² − 1.
pub fn f3_squared_s1(kappa: f64, eta_abs: f64, tol: f64) -> Result<f64> {
    let v = pfq_real(&[], &[kappa], eta_abs / 4.0, tol)?;
    Ok(v * v - 1.0)
}

pub fn cpb(nu: f64) -> Result<CoeffFamily> {
    if !(nu > -1.0) {
        return Err(Error::Domain(format!(
            "cross-product family needs ν > −1, got {nu}"
        )));
    }
    let (p, q, r) = (nu + 1.0, (nu + 2.0) / 2.0, (nu + 3.0) / 2.0);
    Ok(CoeffFamily::new("CPB_CROSS_BESSEL", move |n| {
        real(coeff_cpb(nu, n).expect("validated ν"))
    })?
    .with_param("nu", nu)
    .with_abs_coeff(move |n| {
        let m = n - 1;
        let log = -(m as f64) * 64f64.ln()
            - ln_factorial(m)
            - [p, q, r]
                .iter()
                .map(|&a| pochhammer_abs_log(real(a), m).expect("positive parameters"))
                .sum::<f64>();
        log.exp()
    })
    .with_closed_forms(move |c, tol| {
        squared_forms(|x| pfq_real(&[], &[p, q, r], x / 64.0, tol), c)
    }))
}

pub fn struve(kappa_s: f64, eta: Complex) -> Result<CoeffFamily> {
    if !(kappa_s > 0.0) {
        return Err(Error::Domain(format!(
            "Struve family needs κ_s > 0, got {kappa_s}"
        )));
    }
    let eta_abs = eta.norm();
    Ok(CoeffFamily::new("W_GEN_STRUVE", move |n| {
        coeff_struve(kappa_s, eta, n).expect("validated κ_s")
    })?
    .with_param("kappa_s", kappa_s)
    .with_param("eta", eta)
    .with_abs_coeff(move |n| {
        let m = n - 1;
        if m > 0 && eta_abs == 0.0 {
            return 0.0;
        }
        let log = m as f64 * (eta_abs / 4.0).ln()
            - pochhammer_abs_log(real(1.5), m).expect("positive")
            - pochhammer_abs_log(real(kappa_s), m).expect("positive");
        log.exp()
    })
    .with_closed_forms(move |c, tol| {
        squared_forms(
            |x| pfq_real(&[1.0], &[1.5, kappa_s], eta_abs * x / 4.0, tol),
            c,
        )
    }))
}

pub fn f5() -> CoeffFamily {
    CoeffFamily::new("F5_ERF", |n| real(coeff_f5(n)))
        .expect("a_1 = 1")
        .with_closed_forms(|c, tol| squared_forms(|x| pfq_real(&[0.5], &[1.5], x, tol), c))
}

pub fn f6() -> CoeffFamily {
    let h = hadamard(&f5(), &exp_minus_one());
    CoeffFamily::new("F6_ERF_HADAMARD", move |n| h.coeff(n))
        .expect("a_1 = 1")
        .with_closed_forms(|c, tol| squared_forms(|x| pfq_real(&[0.5], &[1.5, 2.0], x, tol), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn f1_coefficients() {
        assert_eq!(coeff_f1(1), 1.0);
        assert_eq!(coeff_f1(2), 0.25);
        assert_relative_eq!(coeff_f1(3), 1.0 / 20.0, max_relative = 1e-15);
    }

    #[test]
    fn f2_coefficients() {
        assert_eq!(coeff_f2(3.0, 1).unwrap(), 1.0);
        assert_relative_eq!(coeff_f2(4.0, 3).unwrap(), 1.0 / 40.0, max_relative = 1e-15);
        assert!(coeff_f2(-1.0, 2).is_err());
        assert!(matches!(f2(0.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn f3_coefficients() {
        let one = real(1.0);
        assert_eq!(coeff_f3(one, one, 2).unwrap(), real(-0.25));
        assert_eq!(coeff_f3(real(2.0), Complex::new(0.0, 1.0), 1).unwrap(), one);
        assert!(f3(real(-0.5), one, BesselVariant::Real).is_err());
        assert!(f3(Complex::new(1.0, 1.0), one, BesselVariant::Real).is_err());
        assert!(f3(real(0.5), one, BesselVariant::Complex).is_err());
        assert!(f3(Complex::new(1.5, 1.0), one, BesselVariant::Complex).is_ok());
    }

    #[test]
    fn cpb_coefficients() {
        assert_eq!(coeff_cpb(0.0, 1).unwrap(), 1.0);
        assert_relative_eq!(
            coeff_cpb(0.0, 2).unwrap(),
            -1.0 / 96.0,
            max_relative = 1e-15
        );
        assert!(cpb(-1.0).is_err());
    }

    #[test]
    fn struve_coefficients() {
        assert_eq!(coeff_struve(1.5, real(1.0), 1).unwrap(), real(1.0));
        assert_relative_eq!(
            coeff_struve(1.5, real(1.0), 2).unwrap().re,
            -1.0 / 9.0,
            max_relative = 1e-15
        );
        assert!(struve(0.0, real(1.0)).is_err());
        assert_eq!(struve_kappa_s(-1.04226, 1.0), -1.04226 + 1.5);
    }

    #[test]
    fn erf_coefficients() {
        assert_eq!(coeff_f5(1), 1.0);
        assert_relative_eq!(coeff_f5(2), -1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(coeff_f5(3), 1.0 / 10.0, max_relative = 1e-15);
        assert_relative_eq!(coeff_f5(4), -1.0 / 42.0, max_relative = 1e-15);
        let g = f6();
        assert_relative_eq!(g.coeff(2).re, -1.0 / 6.0, max_relative = 1e-15);
        for n in 1..12 {
            let nf = n as f64;
            let fact = |m: usize| (1..=m).fold(1.0, |a, j| a * j as f64);
            let want = alternating(n) / (fact(n - 1) * (2.0 * nf - 1.0) * fact(n));
            assert_relative_eq!(g.coeff(n).re, want, max_relative = 1e-14);
        }
    }

    #[test]
    fn hadamard_with_unit_is_identity_map() {
        let f = f2(2.5).unwrap();
        let h = hadamard(&f, &unit_coefficients());
        for n in 1..30 {
            assert_eq!(h.coeff(n), f.coeff(n));
        }
    }

    #[test]
    fn abs_coeff_matches_modulus() {
        let fams = [
            f1(),
            f2(3.3).unwrap(),
            f2(-1.5).unwrap(),
            f3(real(0.8), real(-1.0), BesselVariant::Real).unwrap(),
            f3(
                Complex::new(1.5, -2.0),
                Complex::new(0.3, 1.0),
                BesselVariant::Complex,
            )
            .unwrap(),
            cpb(-0.9).unwrap(),
            struve(0.6, Complex::new(0.0, 1.0)).unwrap(),
        ];
        for f in &fams {
            for n in 1..60 {
                let (a, b) = (f.coeff(n).norm(), f.abs_coeff(n));
                if a > 1e-290 {
                    assert!(rel(b, a) < 1e-12, "{} n = {n}: {a} vs {b}", f.name());
                }
            }
        }
    }

    #[test]
    fn zayed_values() {
        assert!((zayed_bound(real(1.5), real(1.0)).unwrap() - 1.56809).abs() < 1e-5);
        assert!(zayed_bound(real(1e6), real(1.0)).unwrap() < 1e-5);
        assert!(zayed_bound(real(0.5), real(1.0)).is_err());
    }

    #[test]
    fn exp_condition_values() {
        assert!((h_of_a(0.0) - 0.389244).abs() < 1e-6);
        let tiny = complex_bessel_exp_condition(real(1e8), real(1.0), 1.0).unwrap();
        assert!(tiny.abs() < 1e-8);
        assert!(complex_bessel_exp_condition(real(0.7), real(1.0), 1.0).is_err());
    }

    #[test]
    fn h_and_k_are_even_and_peak_at_zero() {
        let (h0, k0) = (h_of_a(0.0), k_of_a(0.0));
        for i in 1..=100 {
            let a = 5.0 * i as f64 / 100.0;
            assert_eq!(h_of_a(a), h_of_a(-a));
            assert_eq!(k_of_a(a), k_of_a(-a));
            assert!(h_of_a(a) < h0 && k_of_a(a) < k0);
        }
    }

    #[test]
    fn spec_roundtrip_through_json() {
        let specs = [
            FamilySpec::F1Exp,
            FamilySpec::F2ConfHyp { b: 3.5 },
            FamilySpec::F3GenBessel {
                kappa: Complex::new(1.5, 0.5),
                eta: real(1.0),
                variant: BesselVariant::Complex,
            },
            FamilySpec::struve(-0.5, 1.0, -1.0),
            FamilySpec::F6ErfHadamard,
        ];
        for s in specs {
            let json = serde_json::to_string(&s).unwrap();
            assert!(json.contains(s.id()));
            let back: FamilySpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, s);
        }
    }
}
