//! Coefficient inequalities and Pochhammer identities behind the certificate.
//!
//! Each identity is paired with a direct-product oracle in [`oracle`], which
//! never calls into [`crate::specfun`], so a closed form is always compared
//! against an independent evaluation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{is_nonpositive_integer, pochhammer, pochhammer_real};
use crate::Complex;

/// Base of the coefficient weight (21/4)^{n/3}.
pub const WEIGHT_BASE: f64 = 21.0 / 4.0;

/// Absolute tolerance used to decide equality in the growth inequality.
pub const EQUALITY_TOL: f64 = 1e-12;

/// The weight (21/4)^{n/3}.
pub fn weight(n: f64) -> f64 {
    WEIGHT_BASE.powf(n / 3.0)
}

/// Weight and quadratic maximum compared by the growth inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub n: u64,
    /// (21/4)^{n/3}
    pub weight: f64,
    /// n²/4 + n, the maximum of Ψ_n over k.
    pub quad_max: f64,
    pub equality: bool,
}

impl WeightProfile {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let nf = n as f64;
        let weight = weight(nf);
        let quad_max = nf * nf / 4.0 + nf;
        let equality = (weight - quad_max).abs() <= EQUALITY_TOL;
        Ok(Self {
            n,
            weight,
            quad_max,
            equality,
        })
    }

    pub fn margin(&self) -> f64 {
        self.weight - self.quad_max
    }

    pub fn holds(&self) -> bool {
        self.margin() >= -EQUALITY_TOL
    }
}

/// Ψ_n(k) = n(k+1) − k².
pub fn psi(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside [0, {n}]")));
    }
    let (n, k) = (n as f64, k as f64);
    Ok(n * (k + 1.0) - k * k)
}

/// Checks n²/4 + n ≤ (21/4)^{n/3}; returns the verdict and the margin.
pub fn growth_bound_holds(n: u64) -> Result<(bool, f64)> {
    let p = WeightProfile::new(n)?;
    Ok((p.holds(), p.margin()))
}

/// H(x) = (21/4)^{(x+1)/3} − (21/4)^{x/3} − x/2 − 5/4 on [3, ∞).
pub fn h_gap(x: f64) -> Result<f64> {
    if !(x >= 3.0) {
        return Err(Error::InvalidArgument(format!(
            "h_gap needs x ≥ 3, got {x}"
        )));
    }
    Ok(weight(x + 1.0) - weight(x) - x / 2.0 - 1.25)
}

fn check_cauchy_poles(b: f64) -> Result<()> {
    for v in [b, 2.0 * b - 1.0] {
        if is_nonpositive_integer(Complex::new(v, 0.0)) {
            return Err(Error::Pole {
                context: "Cauchy weight closed form",
                value: Complex::new(v, 0.0),
            });
        }
    }
    Ok(())
}

/// Closed form 4ⁿ(b−1/2)_n / (n!(b)_n(2b−1)_n) of
/// Σ_{k=0}^{n} 1/(k!(b)_k (n−k)!(b)_{n−k}).
pub fn cauchy_weight_closed_form(b: f64, n: usize) -> Result<f64> {
    check_cauchy_poles(b)?;
    let num = pochhammer_real(b - 0.5, n)?;
    let den = pochhammer_real(b, n)? * pochhammer_real(2.0 * b - 1.0, n)?;
    let mut scale = 1.0;
    for j in 1..=n {
        scale *= 4.0 / j as f64;
    }
    Ok(scale * num / den)
}

/// Chu–Vandermonde closed form (β−α)_n/(β)_n of the terminating ₂F₁(−n, α; β; 1).
pub fn chu_vandermonde(n: usize, alpha: Complex, beta: Complex) -> Result<Complex> {
    let den = pochhammer(beta, n)?;
    if den.norm() == 0.0 || (0..n).any(|k| is_nonpositive_integer(beta + k as f64)) {
        return Err(Error::Pole {
            context: "Chu–Vandermonde denominator",
            value: beta,
        });
    }
    Ok(pochhammer(beta - alpha, n)? / den)
}

/// Both sides of Σ_k |1/(k!(b)_k)|·|1/((n−k)!(b)_{n−k})| ≤ 2ⁿ/(n!|b|ⁿ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusBound {
    pub lhs: f64,
    pub rhs: f64,
}

impl ModulusBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + EQUALITY_TOL
    }
}

pub fn modulus_bound(b: Complex, n: usize) -> Result<ModulusBound> {
    if b.re < -0.5 {
        return Err(Error::InvalidArgument(format!(
            "modulus bound needs Re(b) ≥ −1/2, got {b}"
        )));
    }
    if (0..n.max(1)).any(|k| is_nonpositive_integer(b + k as f64)) {
        return Err(Error::Pole {
            context: "modulus bound",
            value: b,
        });
    }
    // inv[k] = |1/(k!(b)_k)|
    let mut inv = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    inv.push(acc);
    for k in 0..n {
        acc /= (k as f64 + 1.0) * (b + k as f64).norm();
        inv.push(acc);
    }
    let lhs = (0..=n).map(|k| inv[k] * inv[n - k]).sum();
    let mut rhs = 1.0;
    for j in 1..=n {
        rhs *= 2.0 / (j as f64 * b.norm());
    }
    Ok(ModulusBound { lhs, rhs })
}

pub fn modulus_bound_holds(b: Complex, n: usize) -> Result<bool> {
    modulus_bound(b, n).map(|m| m.holds())
}

/// Direct-product oracles, independent of the closed forms above.
pub mod oracle {
    use crate::Complex;

    fn rising(a: f64, n: usize) -> f64 {
        (0..n).fold(1.0, |acc, j| acc * (a + j as f64))
    }

    fn rising_c(a: Complex, n: usize) -> Complex {
        (0..n).fold(Complex::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
    }

    fn factorial(n: usize) -> f64 {
        (1..=n).fold(1.0, |acc, j| acc * j as f64)
    }

    /// Σ_{k=0}^{n} 1/(k!(b)_k (n−k)!(b)_{n−k}) by direct products.
    pub fn cauchy_weight_sum(b: f64, n: usize) -> f64 {
        (0..=n)
            .map(|k| 1.0 / (factorial(k) * rising(b, k) * factorial(n - k) * rising(b, n - k)))
            .sum()
    }

    fn chu_vandermonde_terms(
        n: usize,
        alpha: Complex,
        beta: Complex,
    ) -> impl Iterator<Item = Complex> {
        (0..=n).map(move |k| {
            rising_c(Complex::new(-(n as f64), 0.0), k) * rising_c(alpha, k)
                / (rising_c(beta, k) * factorial(k))
        })
    }

    /// Σ_{k=0}^{n} (−n)_k(α)_k / ((β)_k k!) by direct products.
    pub fn chu_vandermonde_sum(n: usize, alpha: Complex, beta: Complex) -> Complex {
        chu_vandermonde_terms(n, alpha, beta).sum()
    }

    /// Σ |terms| of the same sum, the scale against which rounding is measured.
    pub fn chu_vandermonde_scale(n: usize, alpha: Complex, beta: Complex) -> f64 {
        chu_vandermonde_terms(n, alpha, beta)
            .map(|t| t.norm())
            .sum()
    }
}

/// Outcome of one identity or inequality sweep, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub cases: usize,
    pub passed: bool,
    pub worst: f64,
    pub detail: String,
}

/// Growth inequality for n ∈ [1, n_max] with equality exactly at n = 3.
pub fn sweep_growth(n_max: u64) -> LemmaCheck {
    let mut passed = true;
    let mut worst = f64::INFINITY;
    let mut equalities = Vec::new();
    for n in 1..=n_max {
        let p = WeightProfile::new(n).expect("n ≥ 1");
        passed &= p.holds();
        if p.equality {
            equalities.push(n);
        }
        if n != 3 {
            worst = worst.min(p.margin());
        }
    }
    let eq_ok = if n_max >= 3 {
        equalities == [3]
    } else {
        equalities.is_empty()
    };
    LemmaCheck {
        lemma: "basic1".into(),
        cases: n_max as usize,
        passed: passed && eq_ok,
        worst,
        detail: format!("equality at n = {equalities:?}; smallest margin off n = 3 is {worst:.6e}"),
    }
}

/// Ψ_n(k) ≤ (21/4)^{n/3} for n ∈ [2, n_max], k ∈ [0, n], and Ψ_n(k) > 0 on k ≥ 1.
pub fn sweep_psi(n_max: u64) -> LemmaCheck {
    let mut passed = true;
    let mut worst = f64::INFINITY;
    let mut cases = 0;
    for n in 2..=n_max {
        let w = weight(n as f64);
        for k in 0..=n {
            let v = psi(n, k).expect("k in range");
            cases += 1;
            worst = worst.min(w - v);
            passed &= v <= w + EQUALITY_TOL;
            if k >= 1 {
                passed &= v > 0.0;
            }
        }
    }
    LemmaCheck {
        lemma: "basic2".into(),
        cases,
        passed,
        worst,
        detail: format!("smallest weight − Ψ gap {worst:.6e}"),
    }
}

/// H(3) > 0 and H increasing on a grid over [3, x_max].
pub fn sweep_h_gap(x_max: f64) -> LemmaCheck {
    let h3 = h_gap(3.0).expect("x = 3");
    let steps = 1000;
    let mut prev = h3;
    let mut increasing = true;
    for i in 1..=steps {
        let x = 3.0 + (x_max - 3.0) * i as f64 / steps as f64;
        let v = h_gap(x).expect("x ≥ 3");
        increasing &= v > prev || !v.is_finite();
        prev = v;
    }
    LemmaCheck {
        lemma: "hgap".into(),
        cases: steps + 1,
        passed: h3 > 0.0 && increasing,
        worst: h3,
        detail: format!("H(3) = {h3:.6}; increasing on grid: {increasing}"),
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Closed form vs brute-force k-sum for b in `bs`, n ≤ n_max.
pub fn sweep_cauchy_weight(bs: &[f64], n_max: usize) -> LemmaCheck {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut failures = 0;
    for &b in bs {
        for n in 0..=n_max {
            cases += 1;
            match cauchy_weight_closed_form(b, n) {
                Ok(v) => worst = worst.max(rel_err(v, oracle::cauchy_weight_sum(b, n))),
                Err(_) => failures += 1,
            }
        }
    }
    LemmaCheck {
        lemma: "identity1".into(),
        cases,
        passed: failures == 0 && worst <= 1e-11,
        worst,
        detail: format!("max relative error {worst:.3e}; evaluation failures {failures}"),
    }
}

/// Chu–Vandermonde closed form vs terminating sum over deterministic pseudo-random (α, β).
pub fn sweep_chu_vandermonde(cases: usize, n_max: usize, seed: u64) -> LemmaCheck {
    let mut state = seed;
    let mut next = move || {
        // splitmix64
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < cases {
        let n = (next() * (n_max as f64 + 1.0)) as usize;
        let alpha = Complex::new(-6.0 + 12.0 * next(), -2.0 + 4.0 * next());
        let beta = Complex::new(0.5 + 6.0 * next(), -2.0 + 4.0 * next());
        let closed = match chu_vandermonde(n, alpha, beta) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let sum = oracle::chu_vandermonde_sum(n, alpha, beta);
        // Cancellation in the sum is measured against the sum of term moduli.
        let scale = oracle::chu_vandermonde_scale(n, alpha, beta);
        worst = worst.max((closed - sum).norm() / scale.max(f64::MIN_POSITIVE));
        done += 1;
    }
    LemmaCheck {
        lemma: "chu_vandermonde".into(),
        cases,
        passed: worst <= 1e-10,
        worst,
        detail: format!("max error relative to Σ|terms| {worst:.3e}"),
    }
}

/// Modulus bound on a grid of b with Re(b) ≥ −1/2, including the boundary line.
pub fn sweep_modulus_bound(n_max: usize) -> LemmaCheck {
    let mut cases = 0;
    let mut passed = true;
    let mut worst = f64::INFINITY;
    for re in [-0.5, -0.25, 0.3, 0.5, 1.0, 1.5, 3.0] {
        for im in [-2.0, -0.7, 0.0, 0.4, 1.0, 2.5] {
            let b = Complex::new(re, im);
            if is_nonpositive_integer(b) {
                continue;
            }
            for n in 1..=n_max {
                let m = modulus_bound(b, n).expect("valid b");
                cases += 1;
                passed &= m.holds();
                worst = worst.min((m.rhs - m.lhs) / m.rhs);
            }
        }
    }
    LemmaCheck {
        lemma: "identity2".into(),
        cases,
        passed,
        worst,
        detail: format!("smallest relative slack {worst:.3e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn psi_examples() {
        assert_eq!(psi(3, 1).unwrap(), 5.0);
        assert_eq!(psi(4, 2).unwrap(), 8.0);
        assert_eq!(psi(10, 10).unwrap(), 10.0);
        assert!(psi(3, 4).is_err());
    }

    #[test]
    fn psi_peaks_at_half_n() {
        for n in [4u64, 10, 36] {
            let max = (0..=n).map(|k| psi(n, k).unwrap()).fold(f64::MIN, f64::max);
            let nf = n as f64;
            assert_eq!(max, nf * nf / 4.0 + nf);
        }
    }

    #[test]
    fn growth_examples() {
        let (ok, m) = growth_bound_holds(1).unwrap();
        assert!(ok);
        assert!((m - 0.48801).abs() < 1e-5);
        let (ok, m) = growth_bound_holds(2).unwrap();
        assert!(ok);
        assert!((m - 0.02069).abs() < 1e-5);
        let p = WeightProfile::new(3).unwrap();
        assert!(p.equality && p.margin().abs() <= EQUALITY_TOL);
        assert!(WeightProfile::new(0).is_err());
    }

    #[test]
    fn weights_quoted_for_small_n() {
        assert!((weight(1.0) - 1.73801).abs() < 5e-6);
        assert!((weight(2.0) - 3.02069).abs() < 5e-6);
        assert_eq!(weight(3.0), 5.25);
    }

    #[test]
    fn h_gap_values() {
        let h3 = h_gap(3.0).unwrap();
        // (21/4)^{4/3} − 21/4 − 11/4, evaluated independently.
        let direct = 5.25f64.powf(4.0 / 3.0) - 5.25 - 2.75;
        assert!((h3 - direct).abs() < 1e-14);
        assert!((h3 - 1.124570).abs() < 1e-6);
        assert!(h_gap(4.0).unwrap() > h3);
        assert!(h_gap(10.0).unwrap() > h3);
        assert!(h_gap(2.9).is_err());
    }

    #[test]
    fn h_gap_derivative_positive_at_three() {
        // H'(x) = B·C·(21/4)^{x/3} − 1/2, full precision constants
        let b = WEIGHT_BASE.ln() / 3.0;
        let c = WEIGHT_BASE.powf(1.0 / 3.0) - 1.0;
        assert!(b * c * weight(3.0) - 0.5 > 1.5);
    }

    #[test]
    fn cauchy_weight_examples() {
        assert_eq!(cauchy_weight_closed_form(1.0, 1).unwrap(), 2.0);
        assert_eq!(cauchy_weight_closed_form(0.7, 0).unwrap(), 1.0);
        let v = cauchy_weight_closed_form(2.5, 4).unwrap();
        assert_relative_eq!(v, oracle::cauchy_weight_sum(2.5, 4), max_relative = 1e-12);
        assert!(matches!(
            cauchy_weight_closed_form(-2.0, 3),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            cauchy_weight_closed_form(0.5, 3),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn chu_vandermonde_examples() {
        let one = Complex::new(1.0, 0.0);
        assert_eq!(
            chu_vandermonde(0, Complex::new(2.3, 1.0), Complex::new(0.4, 0.0)).unwrap(),
            one
        );
        let v = chu_vandermonde(2, one, Complex::new(3.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 0.5, max_relative = 1e-15);
        let sum = oracle::chu_vandermonde_sum(2, one, Complex::new(3.0, 0.0));
        assert_relative_eq!(sum.re, 0.5, max_relative = 1e-15);
        let (a, b) = (Complex::new(-4.5, 0.0), Complex::new(2.2, 0.0));
        let v = chu_vandermonde(5, a, b).unwrap();
        let s = oracle::chu_vandermonde_sum(5, a, b);
        assert!((v - s).norm() / s.norm() < 1e-12);
        assert!(chu_vandermonde(3, one, Complex::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn modulus_bound_examples() {
        let m = modulus_bound(Complex::new(1.0, 0.0), 1).unwrap();
        assert_eq!((m.lhs, m.rhs), (2.0, 2.0));
        assert!(m.holds());
        assert!(modulus_bound_holds(Complex::new(1.5, 1.0), 6).unwrap());
        assert!(modulus_bound_holds(Complex::new(0.5, 0.0), 10).unwrap());
        assert!(modulus_bound(Complex::new(-0.6, 1.0), 3).is_err());
    }

    #[test]
    fn sweeps_pass() {
        assert!(sweep_growth(200).passed);
        assert!(sweep_psi(60).passed);
        assert!(sweep_h_gap(40.0).passed);
        assert!(sweep_cauchy_weight(&[0.6, 1.0, 1.5, 2.75885, 5.0], 30).passed);
        assert!(sweep_chu_vandermonde(50, 25, 7).passed);
        assert!(sweep_modulus_bound(30).passed);
    }
}
