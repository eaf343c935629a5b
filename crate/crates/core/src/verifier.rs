//! Empirical subordination check on circles near the unit circle.
//!
//! With w = zf′(z)/f(z), membership in S*(q_c) needs |w² − 1| < c and
//! Re w > 0 on the disk. The grid samples θ_j = 2πj/M on each radius, so a
//! report is a piece of evidence, never a proof.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{CoeffFamily, ParamValue};
use crate::error::{Error, Result};
use crate::Complex;

/// |f(z)/z| at or below this counts as a zero of f.
pub const ZERO_TOL: f64 = 1e-9;

/// Consecutive zero coefficients after which the rest are treated as zero.
const ZERO_RUN: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    pub radii: Vec<f64>,
    pub points_per_circle: usize,
    pub truncation_n: usize,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        Self {
            radii: vec![0.5, 0.9, 0.99, 0.999],
            points_per_circle: 2048,
            truncation_n: 120,
        }
    }
}

impl SamplingGrid {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidArgument(format!(
                "radii must lie in (0, 1), got {:?}",
                self.radii
            )));
        }
        if self.points_per_circle < 64 {
            return Err(Error::InvalidArgument(format!(
                "need at least 64 points per circle, got {}",
                self.points_per_circle
            )));
        }
        if self.truncation_n < 2 {
            return Err(Error::InvalidArgument(
                "truncation degree must be at least 2".into(),
            ));
        }
        Ok(())
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.points_per_circle as f64
    }
}

/// Partial sums of f and f′ with remainder bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedEval {
    pub f: Complex,
    pub fprime: Complex,
    /// f(z)/z, computed directly to avoid dividing by a small z.
    pub f_over_z: Complex,
    /// Bound on Σ_{n>N}|a_n||z|ⁿ plus a rounding allowance.
    pub remainder_f: f64,
    /// Bound on Σ_{n>N} n|a_n||z|^{n−1} plus a rounding allowance.
    pub remainder_fprime: f64,
}

/// The first N coefficients of a family with a geometric majorant for the rest.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
    abs: Vec<f64>,
    /// (index, |a_index|, ratio) of the geometric majorant |a_n| ≤ |a_k|ρ^{n−k}; None if the tail is zero.
    majorant: Option<(usize, f64, f64)>,
}

impl TruncatedSeries {
    pub fn new(f: &CoeffFamily, n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidArgument(format!(
                "n_max must be at least 2, got {n_max}"
            )));
        }
        let coeffs: Vec<Complex> = (1..=n_max).map(|n| f.coeff(n)).collect();
        let abs: Vec<f64> = coeffs.iter().map(|a| a.norm()).collect();
        let nonzero: Vec<usize> = (0..n_max).filter(|&i| abs[i] != 0.0).collect();
        let trailing_zeros = n_max - 1 - nonzero.last().copied().unwrap_or(0);
        let majorant = match nonzero.as_slice() {
            _ if trailing_zeros >= ZERO_RUN => None,
            [.., m, k] => {
                let rho = (abs[*k] / abs[*m]).powf(1.0 / (k - m) as f64);
                Some((*k + 1, abs[*k], rho))
            }
            _ => Some((1, 1.0, 1.0)),
        };
        Ok(Self {
            coeffs,
            abs,
            majorant,
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, z: Complex) -> TruncatedEval {
        // Horner for q(z) = Σ a_n z^{n−1} and q′.
        let mut q = Complex::new(0.0, 0.0);
        let mut dq = Complex::new(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            dq = dq * z + q;
            q = q * z + a;
        }
        let r = z.norm();
        let n = self.degree();
        let mut abs_sum = 0.0;
        let mut abs_dsum = 0.0;
        let mut rp = r;
        for (i, &a) in self.abs.iter().enumerate() {
            abs_sum += a * rp;
            abs_dsum += (i + 1) as f64 * a * rp / r.max(f64::MIN_POSITIVE);
            rp *= r;
        }
        let rounding = 4.0 * n as f64 * f64::EPSILON;
        let (tail_f, tail_fp) = match self.majorant {
            None => (0.0, 0.0),
            Some((k, ak, rho)) => {
                let q = rho * r;
                let qp = q * (n + 1) as f64 / n as f64;
                if qp < 1.0 {
                    // First omitted term bounded through |a_{N+1}| ≤ |a_k|ρ^{N+1−k}.
                    let first = ak * rho.powi((n + 1 - k) as i32) * r.powi(n as i32 + 1);
                    (
                        first / (1.0 - q),
                        (n + 1) as f64 * first / r.max(f64::MIN_POSITIVE) / (1.0 - qp),
                    )
                } else {
                    (f64::INFINITY, f64::INFINITY)
                }
            }
        };
        TruncatedEval {
            f: z * q,
            fprime: q + z * dq,
            f_over_z: q,
            remainder_f: tail_f + rounding * (abs_sum + r),
            remainder_fprime: tail_fp + rounding * (abs_dsum + 1.0),
        }
    }
}

/// Partial sums of f and f′ through degree n_max at z.
pub fn eval_truncated(f: &CoeffFamily, z: Complex, n_max: usize) -> Result<TruncatedEval> {
    if !(z.norm() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    Ok(TruncatedSeries::new(f, n_max)?.eval(z))
}

/// One grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub radius: f64,
    pub theta: f64,
    pub z: Complex,
    /// w = zf′(z)/f(z).
    pub w: Complex,
    pub lemniscate_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSummary {
    pub radius: f64,
    pub max_lemniscate_value: f64,
    pub min_re_ratio: f64,
    pub worst_z: Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: String,
    pub params: std::collections::BTreeMap<String, ParamValue>,
    pub c: f64,
    pub grid: SamplingGrid,
    pub max_lemniscate_value: f64,
    pub min_re_ratio: f64,
    pub worst_z: Complex,
    pub passes: bool,
    pub per_radius: Vec<RadiusSummary>,
    /// Largest remainder bound of f′ over the grid.
    pub max_remainder: f64,
}

impl VerifyReport {
    pub fn passes_for(&self, c: f64) -> bool {
        self.max_lemniscate_value < c && self.min_re_ratio > 0.0
    }
}

/// Evaluates w on every grid point, in grid order.
pub fn sample_grid(f: &CoeffFamily, grid: &SamplingGrid) -> Result<(Vec<Sample>, f64)> {
    grid.validate()?;
    let series = TruncatedSeries::new(f, grid.truncation_n)?;
    let m = grid.points_per_circle;
    let points: Vec<(f64, usize)> = grid
        .radii
        .iter()
        .flat_map(|&r| (0..m).map(move |j| (r, j)))
        .collect();
    let evaluated: Vec<Result<(Sample, f64)>> = points
        .par_iter()
        .map(|&(r, j)| {
            let theta = grid.theta(j);
            let z = Complex::from_polar(r, theta);
            let e = series.eval(z);
            if e.f_over_z.norm() <= ZERO_TOL {
                return Err(Error::ZeroOfF { z });
            }
            let w = e.fprime / e.f_over_z;
            let sample = Sample {
                radius: r,
                theta,
                z,
                w,
                lemniscate_value: (w * w - 1.0).norm(),
            };
            Ok((sample, e.remainder_fprime))
        })
        .collect();
    let mut samples = Vec::with_capacity(evaluated.len());
    let mut max_remainder: f64 = 0.0;
    // Sequential pass keeps the first error and all reductions in grid order.
    for item in evaluated {
        let (s, rem) = item?;
        max_remainder = max_remainder.max(rem);
        samples.push(s);
    }
    Ok((samples, max_remainder))
}

fn summarize(radius: f64, samples: &[Sample]) -> RadiusSummary {
    let mut summary = RadiusSummary {
        radius,
        max_lemniscate_value: f64::NEG_INFINITY,
        min_re_ratio: f64::INFINITY,
        worst_z: samples[0].z,
    };
    for s in samples {
        if s.lemniscate_value > summary.max_lemniscate_value {
            summary.max_lemniscate_value = s.lemniscate_value;
            summary.worst_z = s.z;
        }
        summary.min_re_ratio = summary.min_re_ratio.min(s.w.re);
    }
    summary
}

/// Samples w = zf′/f on the grid and checks |w² − 1| < c and Re w > 0.
pub fn verify_membership(f: &CoeffFamily, c: f64, grid: &SamplingGrid) -> Result<VerifyReport> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "c must lie in (0, 1], got {c}"
        )));
    }
    let (samples, max_remainder) = sample_grid(f, grid)?;
    let per_radius: Vec<RadiusSummary> = samples
        .chunks(grid.points_per_circle)
        .zip(&grid.radii)
        .map(|(chunk, &r)| summarize(r, chunk))
        .collect();
    let all = summarize(f64::NAN, &samples);
    let mut report = VerifyReport {
        family: f.name().to_owned(),
        params: f.params().clone(),
        c,
        grid: grid.clone(),
        max_lemniscate_value: all.max_lemniscate_value,
        min_re_ratio: all.min_re_ratio,
        worst_z: all.worst_z,
        passes: false,
        per_radius,
        max_remainder,
    };
    report.passes = report.passes_for(c);
    Ok(report)
}

/// CSV with columns theta, r, lemniscate, re_w, im_w.
pub fn samples_csv(samples: &[Sample]) -> String {
    let mut out = String::from("theta,r,lemniscate,re_w,im_w\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.theta, s.radius, s.lemniscate_value, s.w.re, s.w.im
        );
    }
    out
}

/// Boundary of {w : |w² − 1| < c, Re w > 0}, the image of √(1 + c e^{it}).
pub fn lemniscate_boundary(c: f64, points: usize) -> Vec<Complex> {
    (0..=points)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / points as f64;
            (Complex::new(1.0, 0.0) + Complex::from_polar(c, t)).sqrt()
        })
        .collect()
}

/// Minimal SVG plot: scatter points and polyline curves in data coordinates.
pub struct SvgPlot {
    width: f64,
    height: f64,
    bounds: [f64; 4],
    body: String,
}

impl SvgPlot {
    /// `bounds` is [x_min, x_max, y_min, y_max].
    pub fn new(bounds: [f64; 4]) -> Self {
        Self {
            width: 600.0,
            height: 600.0,
            bounds,
            body: String::new(),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let [x0, x1, y0, y1] = self.bounds;
        (
            (x - x0) / (x1 - x0) * self.width,
            self.height - (y - y0) / (y1 - y0) * self.height,
        )
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], color: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (u, v) = self.map(x, y);
                format!("{u:.3},{v:.3}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }

    pub fn points(&mut self, pts: &[(f64, f64)], color: &str) {
        for &(x, y) in pts {
            let (u, v) = self.map(x, y);
            let _ = writeln!(
                self.body,
                r#"<circle cx="{u:.3}" cy="{v:.3}" r="1" fill="{color}"/>"#
            );
        }
    }

    pub fn label(&mut self, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="8" y="18" font-family="monospace" font-size="13">{text}</text>"#
        );
    }

    pub fn render(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height,
        )
    }
}

/// Image points of w on the outermost circle against the lemniscate boundary for c.
pub fn image_svg(samples: &[Sample], c: f64) -> String {
    let boundary = lemniscate_boundary(c, 720);
    let outer = samples
        .iter()
        .map(|s| s.radius)
        .fold(f64::NEG_INFINITY, f64::max);
    let image: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.radius == outer)
        .map(|s| (s.w.re, s.w.im))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.5f64, -0.8f64, 0.8f64);
    for &(x, y) in &image {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0) * 1.05;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let mut plot = SvgPlot::new([
        cx - span / 2.0,
        cx + span / 2.0,
        cy - span / 2.0,
        cy + span / 2.0,
    ]);
    plot.polyline(
        &boundary.iter().map(|w| (w.re, w.im)).collect::<Vec<_>>(),
        "#c0392b",
    );
    plot.points(&image, "#1f4e79");
    plot.label(&format!("zf'/f on |z| = {outer}, boundary |w^2 - 1| = {c}"));
    plot.render()
}
