//! Coefficient certificate for membership in S*(q_c).
//!
//! For f(z) = z + Σ_{n≥2} a_n zⁿ with a_1 = 1, write d_n = |a_{n+1}| and
//! D(x) = Σ_{n≥0} d_n xⁿ. The two certificate sums are
//!
//! ```text
//! S1    = Σ_{n≥1} Σ_{k=0}^{n} d_k d_{n−k}                 = D(1)² − 1
//! S2(c) = Σ_{n≥1} ((21/4)^{n/3} − c) Σ_{k=0}^{n} d_k d_{n−k} = (W − 1) − c·S1
//! ```
//!
//! with W = D(y)², y = (21/4)^{1/3}; the weight splits as y^k·y^{n−k}, so the
//! weighted double sum is the square of a single series at argument y. A
//! family is certified for c when S1 < 1 and S2(c) < c, both checked with
//! the truncation tail added.
//!
//! The O(N²) double sums are kept in [`oracle`] for cross-checking only.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::WEIGHT_BASE;
use crate::specfun::{SeriesValue, DEFAULT_TOL};
use crate::Complex;

/// Term cap for the certificate series; beyond it the family is reported as divergent.
pub const MAX_CERT_TERMS: usize = 100_000;

/// Consecutive exactly-zero terms after which the remaining tail is taken as zero.
const ZERO_RUN: usize = 16;

/// y = (21/4)^{1/3}, the argument that folds the weight into the series.
pub fn weight_ratio() -> f64 {
    WEIGHT_BASE.powf(1.0 / 3.0)
}

/// A named family parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Real(f64),
    Complex { re: f64, im: f64 },
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<Complex> for ParamValue {
    fn from(z: Complex) -> Self {
        if z.im == 0.0 {
            ParamValue::Real(z.re)
        } else {
            ParamValue::Complex { re: z.re, im: z.im }
        }
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_owned())
    }
}

/// Closed-form values of S1 and S2(c) registered by a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    pub s1: f64,
    pub s2: f64,
}

type CoeffFn = Arc<dyn Fn(usize) -> Complex + Send + Sync>;
type AbsFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;
type ClosedFormFn = Arc<dyn Fn(f64, f64) -> Result<ClosedForms> + Send + Sync>;

/// The coefficient sequence {a_n}_{n≥1} of a normalized analytic function.
#[derive(Clone)]
pub struct CoeffFamily {
    name: String,
    params: BTreeMap<String, ParamValue>,
    coeff: CoeffFn,
    abs_coeff: Option<AbsFn>,
    closed_forms: Option<ClosedFormFn>,
}

impl fmt::Debug for CoeffFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoeffFamily")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl CoeffFamily {
    /// Wraps a coefficient function; fails unless a_1 = 1 exactly.
    pub fn new<F>(name: impl Into<String>, coeff: F) -> Result<Self>
    where
        F: Fn(usize) -> Complex + Send + Sync + 'static,
    {
        let a1 = coeff(1);
        if a1 != Complex::new(1.0, 0.0) {
            return Err(Error::InvalidArgument(format!(
                "a_1 must equal 1, got {a1}"
            )));
        }
        Ok(Self {
            name: name.into(),
            params: BTreeMap::new(),
            coeff: Arc::new(coeff),
            abs_coeff: None,
            closed_forms: None,
        })
    }

    /// The identity function f(z) = z.
    pub fn identity() -> Self {
        Self::new("IDENTITY", |n| {
            if n == 1 {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .expect("a_1 = 1")
    }

    pub fn with_param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn with_abs_coeff<F>(mut self, abs: F) -> Self
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        self.abs_coeff = Some(Arc::new(abs));
        self
    }

    /// Registers closed forms `(c, tol) -> (S1, S2(c))` used as cross-checks.
    pub fn with_closed_forms<F>(mut self, forms: F) -> Self
    where
        F: Fn(f64, f64) -> Result<ClosedForms> + Send + Sync + 'static,
    {
        self.closed_forms = Some(Arc::new(forms));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, ParamValue> {
        &self.params
    }

    /// a_n for n ≥ 1.
    pub fn coeff(&self, n: usize) -> Complex {
        (self.coeff)(n)
    }

    /// |a_n|, from the registered closed form when present.
    pub fn abs_coeff(&self, n: usize) -> f64 {
        match &self.abs_coeff {
            Some(abs) => abs(n),
            None => self.coeff(n).norm(),
        }
    }

    pub fn has_closed_forms(&self) -> bool {
        self.closed_forms.is_some()
    }

    pub fn closed_forms(&self, c: f64, tol: f64) -> Option<Result<ClosedForms>> {
        self.closed_forms.as_ref().map(|f| f(c, tol))
    }
}

/// Single sums D(x) = Σ d_n xⁿ at several arguments, truncated at one shared index.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsSums {
    pub xs: Vec<f64>,
    pub sums: Vec<f64>,
    /// Geometric tail bound on each single sum.
    pub tails: Vec<f64>,
    pub terms_used: usize,
    pub converged: bool,
}

impl AbsSums {
    /// Bound on |D² − D_N²| for the i-th argument.
    pub fn squared_tail(&self, i: usize) -> f64 {
        let t = self.tails[i];
        t * (2.0 * self.sums[i] + t)
    }
}

/// Sums D(x) for every x in `xs` until every squared tail is below `tol`.
pub fn abs_sums(f: &CoeffFamily, xs: &[f64], tol: f64) -> Result<AbsSums> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if let Some(x) = xs.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "series argument must be finite and ≥ 0, got {x}"
        )));
    }
    let k = xs.len();
    let mut sums = vec![0.0; k];
    let mut tails = vec![f64::INFINITY; k];
    let mut powers = vec![1.0; k];
    // (index, value) of the last nonzero term and the last per-step ratio
    let mut last: Vec<Option<(usize, f64)>> = vec![None; k];
    let mut prev_ratio = vec![f64::INFINITY; k];
    let mut zero_run = 0;

    for n in 0..MAX_CERT_TERMS {
        let d = f.abs_coeff(n + 1);
        if !d.is_finite() {
            return Err(Error::Overflow("coefficient modulus"));
        }
        zero_run = if d == 0.0 { zero_run + 1 } else { 0 };
        let mut done = true;
        for i in 0..k {
            let u = d * powers[i];
            sums[i] += u;
            if xs[i] == 0.0 || zero_run >= ZERO_RUN {
                tails[i] = 0.0;
                continue;
            }
            if u == 0.0 {
                done = false;
                continue;
            }
            let ratio = last[i].map(|(m, um)| (u / um).powf(1.0 / (n - m) as f64));
            last[i] = Some((n, u));
            match ratio {
                Some(r) if r < 1.0 && r <= prev_ratio[i] => {
                    prev_ratio[i] = r;
                    let t = u * r / (1.0 - r);
                    tails[i] = t;
                    if t * (2.0 * sums[i] + t) >= tol {
                        done = false;
                    }
                }
                Some(r) => {
                    prev_ratio[i] = r;
                    tails[i] = f64::INFINITY;
                    done = false;
                }
                None => {
                    tails[i] = f64::INFINITY;
                    done = false;
                }
            }
        }
        if done {
            return Ok(AbsSums {
                xs: xs.to_vec(),
                sums,
                tails,
                terms_used: n + 1,
                converged: true,
            });
        }
        for (p, x) in powers.iter_mut().zip(xs) {
            *p *= x;
        }
    }
    Ok(AbsSums {
        xs: xs.to_vec(),
        sums,
        tails: vec![f64::INFINITY; k],
        terms_used: MAX_CERT_TERMS,
        converged: false,
    })
}

/// (Σ_{n≥0} |a_{n+1}| xⁿ)².
pub fn squared_series(f: &CoeffFamily, x: f64, tol: f64) -> Result<f64> {
    let sums = abs_sums(f, &[x], tol)?;
    if !sums.converged {
        return Err(Error::NonConvergence {
            terms: sums.terms_used,
        });
    }
    Ok(sums.sums[0] * sums.sums[0])
}

/// S1 and W = D(y)² from one shared truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertSums {
    pub s1: f64,
    pub s1_tail: f64,
    /// Σ_{n≥0} (21/4)^{n/3} Σ_k d_k d_{n−k}, including the n = 0 term.
    pub w: f64,
    pub w_tail: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl CertSums {
    pub fn s2(&self, c: f64) -> f64 {
        (self.w - 1.0) - c * self.s1
    }

    pub fn s2_tail(&self, c: f64) -> f64 {
        self.w_tail + c * self.s1_tail
    }
}

pub fn cert_sums(f: &CoeffFamily, tol: f64) -> Result<CertSums> {
    let sums = abs_sums(f, &[1.0, weight_ratio()], tol)?;
    let (d1, dy) = (sums.sums[0], sums.sums[1]);
    Ok(CertSums {
        s1: d1 * d1 - 1.0,
        s1_tail: sums.squared_tail(0),
        w: dy * dy,
        w_tail: sums.squared_tail(1),
        terms_used: sums.terms_used,
        converged: sums.converged,
    })
}

fn as_series(value: f64, tail: f64, terms: usize, converged: bool) -> SeriesValue {
    SeriesValue {
        value: Complex::new(value, 0.0),
        terms_used: terms,
        tail_bound: tail,
        converged,
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "c must lie in (0, 1], got {c}"
        )))
    }
}

/// S1 = Σ_{n≥1} Σ_k |a_{k+1}||a_{n−k+1}|. A non-converged value carries an infinite tail.
pub fn s1(f: &CoeffFamily, tol: f64) -> Result<SeriesValue> {
    let s = cert_sums(f, tol)?;
    Ok(as_series(s.s1, s.s1_tail, s.terms_used, s.converged))
}

/// S2(c) = Σ_{n≥1} ((21/4)^{n/3} − c) Σ_k |a_{k+1}||a_{n−k+1}|.
pub fn s2(f: &CoeffFamily, c: f64, tol: f64) -> Result<SeriesValue> {
    check_c(c)?;
    let s = cert_sums(f, tol)?;
    Ok(as_series(s.s2(c), s.s2_tail(c), s.terms_used, s.converged))
}

/// Verdict of the coefficient certificate for one (family, c).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub family: String,
    pub params: BTreeMap<String, ParamValue>,
    pub s1: f64,
    pub s2: f64,
    pub c: f64,
    pub s1_ok: bool,
    pub s2_ok: bool,
    pub certified: bool,
    pub truncation_n: usize,
    pub tail_bound: f64,
    pub closed_form_s1: Option<f64>,
    pub closed_form_s2: Option<f64>,
}

/// Decides S1 + tail < 1 and S2(c) + tail < c.
pub fn certify(f: &CoeffFamily, c: f64, tol: f64) -> Result<CertReport> {
    check_c(c)?;
    let s = cert_sums(f, tol)?;
    let tail = if s.converged {
        s.s1_tail.max(s.s2_tail(c))
    } else {
        f64::INFINITY
    };
    let s1_ok = s.s1 + tail < 1.0;
    let s2_ok = s.s2(c) + tail < c;
    let (closed_form_s1, closed_form_s2) = match f.closed_forms(c, tol.min(DEFAULT_TOL)) {
        Some(Ok(cf)) => (Some(cf.s1), Some(cf.s2)),
        _ => (None, None),
    };
    Ok(CertReport {
        family: f.name().to_owned(),
        params: f.params().clone(),
        s1: s.s1,
        s2: s.s2(c),
        c,
        s1_ok,
        s2_ok,
        certified: s1_ok && s2_ok,
        truncation_n: s.terms_used,
        tail_bound: tail,
        closed_form_s1,
        closed_form_s2,
    })
}

/// Smallest c with S2(c) < c, i.e. c₀ = (W − 1)/(S1 + 1); `None` when c₀ > 1.
pub fn min_c(f: &CoeffFamily, tol: f64) -> Result<Option<f64>> {
    let s = cert_sums(f, tol)?;
    if !s.converged || s.s1 + s.s1_tail >= 1.0 {
        return Err(Error::HypothesisViolated { s1: s.s1 });
    }
    let c0 = (s.w - 1.0) / (s.s1 + 1.0);
    Ok((c0 <= 1.0).then_some(c0.max(0.0)))
}

/// Direct O(N²) double sums, kept as an independent reference.
pub mod oracle {
    use super::CoeffFamily;
    use crate::identities::weight;

    fn moduli(f: &CoeffFamily, n_max: usize) -> Vec<f64> {
        (1..=n_max + 1).map(|n| f.coeff(n).norm()).collect()
    }

    /// Σ_{n=1}^{N} xⁿ Σ_{k=0}^{n} |a_{k+1}||a_{n−k+1}|.
    pub fn double_sum(f: &CoeffFamily, x: f64, n_max: usize) -> f64 {
        let d = moduli(f, n_max);
        (1..=n_max)
            .map(|n| x.powi(n as i32) * (0..=n).map(|k| d[k] * d[n - k]).sum::<f64>())
            .sum()
    }

    /// Σ_{n=1}^{N} ((21/4)^{n/3} − c) Σ_{k=0}^{n} |a_{k+1}||a_{n−k+1}|.
    pub fn weighted_double_sum(f: &CoeffFamily, c: f64, n_max: usize) -> f64 {
        let d = moduli(f, n_max);
        (1..=n_max)
            .map(|n| (weight(n as f64) - c) * (0..=n).map(|k| d[k] * d[n - k]).sum::<f64>())
            .sum()
    }
}
