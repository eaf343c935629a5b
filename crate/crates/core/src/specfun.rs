//! Pochhammer symbols and generalized hypergeometric series.
//!
//! `eval_pfq` sums
//!
//! ```text
//! pFq(a_1..a_p; b_1..b_q; z) = Σ_{n≥0} (a_1)_n⋯(a_p)_n / ((b_1)_n⋯(b_q)_n) · zⁿ/n!
//! ```
//!
//! by forward term recurrence. Summation stops at the first index N with a
//! term ratio r = |t_{N+1}/t_N| < 1 and a geometric tail estimate
//! |t_N|·r/(1−r) below the requested tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Default absolute tolerance for series evaluation.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 1_000_000;

/// Band around the nonpositive integers treated as a pole.
pub const POLE_TOL: f64 = 1e-12;

/// True if `z` lies within [`POLE_TOL`] of {0, −1, −2, …}.
pub fn is_nonpositive_integer(z: Complex) -> bool {
    z.im.abs() <= POLE_TOL && z.re <= POLE_TOL && (z.re - z.re.round()).abs() <= POLE_TOL
}

/// Rising factorial (a)_n = a(a+1)⋯(a+n−1), with (a)_0 = 1.
pub fn pochhammer(a: Complex, n: usize) -> Result<Complex> {
    let mut acc = Complex::new(1.0, 0.0);
    for j in 0..n {
        acc *= a + j as f64;
        if !(acc.re.is_finite() && acc.im.is_finite()) {
            return Err(Error::Overflow("pochhammer"));
        }
    }
    Ok(acc)
}

/// Real-argument convenience wrapper around [`pochhammer`].
pub fn pochhammer_real(a: f64, n: usize) -> Result<f64> {
    pochhammer(Complex::new(a, 0.0), n).map(|z| z.re)
}

/// ln|(a)_n|, summed factor by factor so it never overflows.
pub fn pochhammer_abs_log(a: Complex, n: usize) -> Result<f64> {
    let mut acc = 0.0;
    for j in 0..n {
        let modsq = (a + j as f64).norm_sqr();
        if modsq == 0.0 {
            return Err(Error::ZeroFactor { index: j });
        }
        acc += 0.5 * modsq.ln();
    }
    Ok(acc)
}

/// A generalized hypergeometric series pFq(num; den; argument).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperSeries {
    pub num_params: Vec<Complex>,
    pub den_params: Vec<Complex>,
    pub argument: Complex,
}

impl HyperSeries {
    pub fn new(num_params: Vec<Complex>, den_params: Vec<Complex>, argument: Complex) -> Self {
        Self {
            num_params,
            den_params,
            argument,
        }
    }

    /// Builds a series with all-real parameters and a real argument.
    pub fn real(num: &[f64], den: &[f64], argument: f64) -> Self {
        let lift = |v: &[f64]| v.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::new(lift(num), lift(den), Complex::new(argument, 0.0))
    }

    pub fn p(&self) -> usize {
        self.num_params.len()
    }

    pub fn q(&self) -> usize {
        self.den_params.len()
    }

    /// Ratio t_{n+1}/t_n of consecutive terms.
    fn term_ratio(&self, n: usize) -> Complex {
        let nf = n as f64;
        let mut ratio = self.argument / (nf + 1.0);
        for a in &self.num_params {
            ratio *= a + nf;
        }
        for b in &self.den_params {
            ratio /= b + nf;
        }
        ratio
    }

    /// First index past which no parameter can flip the term ratio upward.
    fn settle_index(&self) -> usize {
        self.num_params
            .iter()
            .chain(&self.den_params)
            .map(|c| (-c.re).ceil().max(0.0) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, tol: f64) -> Result<SeriesValue> {
        eval_pfq(self, tol)
    }
}

/// A truncated series value together with its truncation data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

impl SeriesValue {
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// Evaluates pFq by forward recurrence with a geometric tail bound.
pub fn eval_pfq(s: &HyperSeries, tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if let Some(&b) = s.den_params.iter().find(|b| is_nonpositive_integer(**b)) {
        return Err(Error::Pole {
            context: "pFq denominator",
            value: b,
        });
    }
    if s.argument == Complex::new(0.0, 0.0) {
        return Ok(SeriesValue {
            value: Complex::new(1.0, 0.0),
            terms_used: 1,
            tail_bound: 0.0,
            converged: true,
        });
    }
    if s.p() > s.q() + 1 {
        return Err(Error::DivergentSeries {
            p: s.p(),
            q_plus_one: s.q() + 1,
        });
    }
    if s.p() == s.q() + 1 && s.argument.norm() >= 1.0 {
        return Err(Error::OutsideDisk {
            modulus: s.argument.norm(),
        });
    }

    let settle = s.settle_index();
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = Complex::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        sum += term;
        let next = term * s.term_ratio(n);
        if next == Complex::new(0.0, 0.0) {
            // terminating numerator parameter
            return Ok(SeriesValue {
                value: sum,
                terms_used: n + 1,
                tail_bound: 0.0,
                converged: true,
            });
        }
        let t = term.norm();
        let r = next.norm() / t;
        if n >= settle && r < 1.0 {
            let tail = t * r / (1.0 - r);
            if tail < tol {
                return Ok(SeriesValue {
                    value: sum,
                    terms_used: n + 1,
                    tail_bound: tail,
                    converged: true,
                });
            }
        }
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(Error::Overflow("pFq term"));
        }
        term = next;
    }
    Err(Error::NonConvergence { terms: MAX_TERMS })
}

/// Real part of pFq for real parameters; convenience for the family code.
pub fn pfq_real(num: &[f64], den: &[f64], x: f64, tol: f64) -> Result<f64> {
    eval_pfq(&HyperSeries::real(num, den, x), tol).map(|v| v.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(Complex::new(3.7, -2.0), 0).unwrap(), c(1.0));
        assert_eq!(pochhammer(c(4.0), 2).unwrap(), c(20.0));
        assert_relative_eq!(
            pochhammer(c(1.5), 3).unwrap().re,
            1.5 * 2.5 * 3.5,
            max_relative = 1e-15
        );
        assert_relative_eq!(pochhammer(c(1.5), 3).unwrap().re, 13.125);
    }

    #[test]
    fn pochhammer_overflow_signals_range_error() {
        assert_eq!(pochhammer(c(1.0), 400), Err(Error::Overflow("pochhammer")));
    }

    #[test]
    fn abs_log_examples() {
        assert_relative_eq!(
            pochhammer_abs_log(c(1.0), 5).unwrap(),
            120f64.ln(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            pochhammer_abs_log(c(4.0), 2).unwrap(),
            20f64.ln(),
            max_relative = 1e-15
        );
        let expected = 0.5 * 6.25f64.ln() + 0.5 * 10.25f64.ln();
        assert_relative_eq!(
            pochhammer_abs_log(Complex::new(1.5, 2.0), 2).unwrap(),
            expected,
            max_relative = 1e-15
        );
        assert_eq!(pochhammer_abs_log(c(2.0), 0).unwrap(), 0.0);
        assert_eq!(
            pochhammer_abs_log(c(-2.0), 4),
            Err(Error::ZeroFactor { index: 2 })
        );
    }

    #[test]
    fn sinc_from_0f1() {
        let x = PI / 2.0;
        let v = eval_pfq(&HyperSeries::real(&[], &[1.5], -x * x / 4.0), DEFAULT_TOL).unwrap();
        assert!((v.value.re - 2.0 / PI).abs() < 1e-12);
        assert!(v.converged && v.tail_bound < DEFAULT_TOL);
    }

    #[test]
    fn zero_argument_is_one() {
        let s = HyperSeries::real(&[2.0, 3.0, 4.0, 5.0], &[0.5], 0.0);
        let v = eval_pfq(&s, 1e-12).unwrap();
        assert_eq!(v.value, c(1.0));
        assert_eq!(v.terms_used, 1);
    }

    #[test]
    fn one_f_two_reference_value() {
        // partial-sum oracle with 200 terms
        let mut term = 1.0f64;
        let mut sum = 0.0;
        for n in 0..200 {
            sum += term;
            let nf = n as f64;
            term *= (0.5 + nf) / ((1.5 + nf) * (2.0 + nf) * (nf + 1.0));
        }
        let v = pfq_real(&[0.5], &[1.5, 2.0], 1.0, 1e-15).unwrap();
        assert!((v - sum).abs() < 1e-14);
        assert!((v * v - 1.0 - 0.402721).abs() < 1e-6);
    }

    #[test]
    fn error_paths() {
        let div = HyperSeries::real(&[1.0, 1.0, 1.0], &[1.0], 0.1);
        assert!(matches!(
            eval_pfq(&div, 1e-12),
            Err(Error::DivergentSeries { .. })
        ));
        let pole = HyperSeries::real(&[1.0], &[-2.0 + 1e-14], 0.1);
        assert!(matches!(eval_pfq(&pole, 1e-12), Err(Error::Pole { .. })));
        let disk = HyperSeries::real(&[1.0, 1.0], &[2.0], 1.0);
        assert!(matches!(
            eval_pfq(&disk, 1e-12),
            Err(Error::OutsideDisk { .. })
        ));
        let ok = HyperSeries::real(&[1.0], &[1.5], 0.3);
        assert!(matches!(eval_pfq(&ok, 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn geometric_series_inside_disk() {
        // 1F0(1;;z) = 1/(1-z)
        let v = eval_pfq(&HyperSeries::real(&[1.0], &[], 0.5), 1e-13).unwrap();
        assert!((v.value.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn terminating_series_is_exact() {
        // 2F1(-3, 2; 5; 1) via Chu–Vandermonde: (3)_3/(5)_3 = 60/210
        let s = HyperSeries::real(&[-3.0, 2.0], &[5.0], 0.9);
        let v = eval_pfq(&s, 1e-12).unwrap();
        assert_eq!(v.tail_bound, 0.0);
        assert_eq!(v.terms_used, 4);
    }

    #[test]
    fn late_denominator_dip_is_summed_through() {
        // b = -5.5 makes the ratio spike at n = 5; compare with a direct 400-term sum.
        let mut term = 1.0f64;
        let mut sum = 0.0;
        for n in 0..400 {
            sum += term;
            let nf = n as f64;
            term *= 0.01 / ((-5.5 + nf) * (nf + 1.0));
        }
        let v = pfq_real(&[], &[-5.5], 0.01, 1e-15).unwrap();
        assert!((v - sum).abs() <= 1e-15 * sum.abs().max(1.0));
    }

    #[test]
    fn pole_band_detection() {
        assert!(is_nonpositive_integer(c(0.0)));
        assert!(is_nonpositive_integer(c(-3.0 + 5e-13)));
        assert!(!is_nonpositive_integer(c(-3.0 + 1e-9)));
        assert!(!is_nonpositive_integer(c(1.0)));
        assert!(!is_nonpositive_integer(Complex::new(-1.0, 1e-6)));
    }
}
