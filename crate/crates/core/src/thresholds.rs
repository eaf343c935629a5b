//! Bracketed root finding over one family parameter, the ν₁ table for the
//! generalized Struve family, and the regression manifest of published constants.

use std::f64::consts::E;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{cert_sums, weight_ratio, CoeffFamily};
use crate::error::{Error, Result};
use crate::families::{
    self, complex_bessel_exp_condition, f2_delta, h_of_a, k_of_a, struve_kappa_s, zayed_bound,
    BesselVariant,
};
use crate::identities::h_gap;
use crate::specfun::pfq_real;
use crate::Complex;

/// Default tolerance on the solved parameter.
pub const DEFAULT_THRESHOLD_TOL: f64 = 1e-8;

/// Tolerance at which published constants (5 to 6 digits) are compared.
pub const PUBLISHED_TOL: f64 = 1e-4;

/// Intervals in the sign-change pre-scan.
pub const PRESCAN_POINTS: usize = 32;

/// Bumped whenever a bracket or a constant definition changes.
pub const MANIFEST_VERSION: u32 = 1;

const MAX_ITERATIONS: usize = 400;

/// Tolerance for the certificate series evaluated inside a solve.
const SERIES_TOL: f64 = 1e-15;

type ParamFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;
type Template = Arc<dyn Fn(f64) -> Result<CoeffFamily> + Send + Sync>;
type FamilyFn = Arc<dyn Fn(&CoeffFamily) -> Result<f64> + Send + Sync>;

/// Which boundary a family threshold solves for.
#[derive(Clone)]
pub enum Condition {
    /// S1 = 1.
    S1Unit,
    /// S2(c) = c.
    S2AtC(f64),
    /// max(S1 − 1, S2(c) − c) = 0: the edge of the full certificate.
    Certificate(f64),
    /// A custom expression of the family, solved for zero.
    Custom(FamilyFn),
}

/// A scalar function of one parameter on a bracket.
#[derive(Clone)]
pub struct ThresholdQuery {
    pub function: ParamFn,
    pub bracket: [f64; 2],
    pub tol: f64,
}

impl ThresholdQuery {
    pub fn new<F>(function: F, bracket: [f64; 2]) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            function: Arc::new(function),
            bracket,
            tol: DEFAULT_THRESHOLD_TOL,
        }
    }

    /// Boundary of `condition` for the family produced by `template` from the free parameter.
    pub fn family<T>(template: T, condition: Condition, bracket: [f64; 2]) -> Self
    where
        T: Fn(f64) -> Result<CoeffFamily> + Send + Sync + 'static,
    {
        let template: Template = Arc::new(template);
        Self::new(
            move |p| {
                let f = template(p)?;
                match &condition {
                    Condition::Custom(g) => g(&f),
                    cond => {
                        let sums = cert_sums(&f, SERIES_TOL)?;
                        if !sums.converged {
                            return Err(Error::NonConvergence {
                                terms: sums.terms_used,
                            });
                        }
                        Ok(match *cond {
                            Condition::S1Unit => sums.s1 - 1.0,
                            Condition::S2AtC(c) => sums.s2(c) - c,
                            Condition::Certificate(c) => (sums.s1 - 1.0).max(sums.s2(c) - c),
                            Condition::Custom(_) => unreachable!(),
                        })
                    }
                }
            },
            bracket,
        )
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_bracket(mut self, bracket: [f64; 2]) -> Self {
        self.bracket = bracket;
        self
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let v = (self.function)(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x, value: v })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub root: f64,
    pub residual: f64,
    pub iterations: usize,
    pub bracket_final: [f64; 2],
    /// Sign changes seen by the pre-scan; the first one is refined.
    pub sign_changes: usize,
}

/// Pre-scan at [`PRESCAN_POINTS`] intervals, then bisection with secant steps
/// kept inside the bracket.
pub fn solve_threshold(q: &ThresholdQuery) -> Result<ThresholdResult> {
    let [lo, hi] = q.bracket;
    if !(q.tol > 0.0) || !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "need tol > 0 and lo < hi, got tol = {}, bracket = [{lo}, {hi}]",
            q.tol
        )));
    }
    let grid: Vec<f64> = (0..=PRESCAN_POINTS)
        .map(|i| {
            if i == PRESCAN_POINTS {
                hi
            } else {
                lo + (hi - lo) * i as f64 / PRESCAN_POINTS as f64
            }
        })
        .collect();
    let values = grid
        .iter()
        .map(|&x| q.eval(x))
        .collect::<Result<Vec<_>>>()?;

    let mut first = None;
    let mut sign_changes = 0;
    for i in 0..PRESCAN_POINTS {
        if values[i] == 0.0 {
            return Ok(ThresholdResult {
                root: grid[i],
                residual: 0.0,
                iterations: 0,
                bracket_final: [grid[i], grid[i]],
                sign_changes: sign_changes + 1,
            });
        }
        if (values[i] < 0.0) != (values[i + 1] < 0.0) {
            sign_changes += 1;
            first.get_or_insert(i);
        }
    }
    let Some(i) = first else {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: values[0],
            f_hi: values[PRESCAN_POINTS],
        });
    };

    let (mut a, mut b) = (grid[i], grid[i + 1]);
    let (mut fa, mut fb) = (values[i], values[i + 1]);
    let mut iterations = 0;
    let mut use_secant = true;
    while iterations < MAX_ITERATIONS {
        let width = b - a;
        let best = if fa.abs() <= fb.abs() { fa } else { fb };
        let resolved = width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
        if (width <= q.tol && best.abs() <= q.tol) || resolved {
            break;
        }
        iterations += 1;
        let mid = 0.5 * (a + b);
        let mut x = mid;
        if use_secant {
            let s = b - fb * (b - a) / (fb - fa);
            // Only accept secant points well inside the bracket.
            if s.is_finite() && s > a + 0.01 * width && s < b - 0.01 * width {
                x = s;
            }
        }
        use_secant = !use_secant;
        let fx = q.eval(x)?;
        if fx == 0.0 {
            a = x;
            b = x;
            fa = 0.0;
            fb = 0.0;
            break;
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    let (root, residual) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    Ok(ThresholdResult {
        root,
        residual,
        iterations,
        bracket_final: [a, b],
        sign_changes,
    })
}

/// c values of the published ν₁ table.
pub fn default_table_c() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

/// One row of the ν₁ table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub c: f64,
    pub nu1: Option<f64>,
    pub error: Option<String>,
}

/// [₁F₂(1; 3/2, κ_s; y|η|/4)]² − 1 − c[₁F₂(1; 3/2, κ_s; |η|/4)]², the Struve S2 boundary.
pub fn struve_s2_boundary(kappa_s: f64, eta_abs: f64, c: f64) -> Result<f64> {
    let g = |x: f64| pfq_real(&[1.0], &[1.5, kappa_s], x, SERIES_TOL);
    let lhs = g(weight_ratio() * eta_abs / 4.0)?;
    let rhs = g(eta_abs / 4.0)?;
    Ok(lhs * lhs - 1.0 - c * rhs * rhs)
}

fn nu1_query(c: f64, b: f64, eta_abs: f64) -> ThresholdQuery {
    // κ_s > 0 means ν > −(b+2)/2.
    let nu_min = -(b + 2.0) / 2.0;
    ThresholdQuery::new(
        move |nu| struve_s2_boundary(struve_kappa_s(nu, b), eta_abs, c),
        [nu_min + 0.05, nu_min + 13.5],
    )
}

/// ν₁(c) for the generalized Struve family; row failures are reported, not fatal.
pub fn table_nu1(c_values: &[f64], b: f64, eta_abs: f64) -> Vec<TableRow> {
    c_values
        .par_iter()
        .map(|&c| {
            if !(c > 0.0 && c <= 1.0) {
                return TableRow {
                    c,
                    nu1: None,
                    error: Some(format!("c = {c} outside (0, 1]")),
                };
            }
            match solve_threshold(&nu1_query(c, b, eta_abs)) {
                Ok(r) => TableRow {
                    c,
                    nu1: Some(r.root),
                    error: None,
                },
                Err(e) => TableRow {
                    c,
                    nu1: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// CSV with columns c, nu1; rows without a root leave nu1 empty.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("c,nu1\n");
    for row in rows {
        match row.nu1 {
            Some(nu) => out.push_str(&format!("{},{:.16e}\n", row.c, nu)),
            None => out.push_str(&format!("{},\n", row.c)),
        }
    }
    out
}

/// Published values of the ν₁ table, in row order of [`default_table_c`].
pub const TABLE_NU1_PUBLISHED: [(f64, f64); 10] = [
    (0.1, 4.25508),
    (0.2, 1.34049),
    (0.3, 0.36084),
    (0.4, -0.133344),
    (0.5, -0.432457),
    (0.6, -0.633535),
    (0.7, -0.778294),
    (0.8, -0.887662),
    (0.9, -0.973308),
    (1.0, -1.04226),
];

/// One regression entry: a published constant next to its recomputation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub name: String,
    pub description: String,
    pub published: f64,
    pub reproduced: Option<f64>,
    pub abs_err: Option<f64>,
    pub tol: f64,
    pub passed: bool,
    pub bracket: Option<[f64; 2]>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsManifest {
    pub version: u32,
    pub entries: Vec<ConstantEntry>,
}

impl ConstantsManifest {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ConstantEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

enum Recipe {
    Value(fn() -> Result<f64>),
    Root(fn() -> ThresholdQuery),
}

struct ConstantDef {
    name: &'static str,
    description: &'static str,
    published: f64,
    tol: f64,
    recipe: Recipe,
}

fn f3_real(kappa: f64) -> Result<CoeffFamily> {
    families::f3(
        Complex::new(kappa, 0.0),
        Complex::new(1.0, 0.0),
        BesselVariant::Real,
    )
}

fn cpb_sums(nu: f64) -> Result<(f64, f64)> {
    let (p, q, r) = (nu + 1.0, (nu + 2.0) / 2.0, (nu + 3.0) / 2.0);
    let g = |x: f64| pfq_real(&[], &[p, q, r], x / 64.0, SERIES_TOL);
    let (d1, dy) = (g(1.0)?, g(weight_ratio())?);
    Ok((d1 * d1, dy * dy))
}

fn struve_s1(nu: f64) -> Result<f64> {
    let d = pfq_real(&[1.0], &[1.5, struve_kappa_s(nu, 1.0)], 0.25, SERIES_TOL)?;
    Ok(d * d - 1.0)
}

fn cert_value(f: CoeffFamily, pick: fn(&crate::criterion::CertSums) -> f64) -> Result<f64> {
    let sums = cert_sums(&f, SERIES_TOL)?;
    Ok(pick(&sums))
}

fn min_c_value(f: CoeffFamily) -> Result<f64> {
    let sums = cert_sums(&f, SERIES_TOL)?;
    Ok((sums.w - 1.0) / (sums.s1 + 1.0))
}

fn definitions() -> Vec<ConstantDef> {
    use Recipe::{Root, Value};
    let entry = |name, description, published, recipe| ConstantDef {
        name,
        description,
        published,
        tol: PUBLISHED_TOL,
        recipe,
    };
    vec![
        entry(
            "f1_s1",
            "S1 of the exponential family, 4(56 − 45e + 9e²)",
            0.71529,
            Value(|| Ok(4.0 * (56.0 - 45.0 * E + 9.0 * E * E))),
        ),
        entry(
            "f1_s1_series",
            "S1 of the exponential family from the coefficient series",
            0.71529,
            Value(|| cert_value(families::f1(), |s| s.s1)),
        ),
        entry(
            "f1_c0",
            "smallest c certified for the exponential family, root of Φ(c) = c",
            0.990879,
            Root(|| {
                ThresholdQuery::new(
                    |c| {
                        let sums = cert_sums(&families::f1(), SERIES_TOL)?;
                        Ok(sums.s2(c) - c)
                    },
                    [0.5, 1.0],
                )
            }),
        ),
        entry(
            "f2_delta_root",
            "δ(b) = 1 for the confluent hypergeometric family",
            2.75885,
            Root(|| ThresholdQuery::new(|b| Ok(f2_delta(b, SERIES_TOL)? - 1.0), [2.0, 4.0])),
        ),
        entry(
            "f2_lemniscate_b",
            "certificate boundary at c = 1 for the confluent hypergeometric family",
            3.11423,
            Root(|| ThresholdQuery::family(families::f2, Condition::Certificate(1.0), [2.5, 4.0])),
        ),
        entry(
            "kappa0_gen_bessel",
            "certificate boundary at c = 1, |η| = 1, real κ",
            0.694651,
            Root(|| ThresholdQuery::family(f3_real, Condition::Certificate(1.0), [0.55, 1.5])),
        ),
        entry(
            "nu0_classical_bessel",
            "the same boundary in ν = κ − 1 for the classical Bessel functions",
            -0.305349,
            Root(|| {
                ThresholdQuery::family(
                    |nu| f3_real(nu + 1.0),
                    Condition::Certificate(1.0),
                    [-0.45, 0.5],
                )
            }),
        ),
        entry(
            "kappa_complex_bessel",
            "κ where the exponential condition for complex κ reaches 1, |η| = 1, c = 1",
            0.840149,
            Root(|| {
                ThresholdQuery::new(
                    |k| {
                        Ok(complex_bessel_exp_condition(
                            Complex::new(k, 0.0),
                            Complex::new(1.0, 0.0),
                            1.0,
                        )? - 1.0)
                    },
                    [0.75, 2.0],
                )
            }),
        ),
        entry(
            "zayed_k0",
            "comparison bound at |η/κ| = 2/3",
            1.56809,
            Value(|| Ok(k_of_a(0.0))),
        ),
        entry(
            "zayed_threshold",
            "κ where the comparison bound reaches 1, |η| = 1",
            1.6459,
            Root(|| {
                ThresholdQuery::new(
                    |k| Ok(zayed_bound(Complex::new(k, 0.0), Complex::new(1.0, 0.0))? - 1.0),
                    [1.0, 3.0],
                )
            }),
        ),
        entry(
            "h0",
            "h(0), maximum of the exponential condition over κ = 3/2 + ia",
            0.389244,
            Value(|| Ok(h_of_a(0.0))),
        ),
        entry(
            "k_root",
            "a > 0 where k(a) = 1",
            1.15045,
            Root(|| ThresholdQuery::new(|a| Ok(k_of_a(a) - 1.0), [0.5, 2.0])),
        ),
        entry(
            "nu1_cpb",
            "cross-product boundary W − 1 = D(1)², i.e. S2(1) = 1",
            -0.933296,
            Root(|| {
                ThresholdQuery::new(
                    |nu| {
                        let (s, w) = cpb_sums(nu)?;
                        Ok(w - 1.0 - s)
                    },
                    [-0.99, 0.0],
                )
            }),
        ),
        entry(
            "nu2_cpb",
            "cross-product boundary D(1)² = 2, i.e. S1 = 1",
            -0.931564,
            Root(|| ThresholdQuery::new(|nu| Ok(cpb_sums(nu)?.0 - 2.0), [-0.99, 0.0])),
        ),
        entry(
            "nu0_cpb",
            "cross-product certificate boundary at c = 1, the larger of the two roots",
            -0.931564,
            Root(|| {
                ThresholdQuery::family(families::cpb, Condition::Certificate(1.0), [-0.99, 0.0])
            }),
        ),
        entry(
            "struve_rhs_nu",
            "Struve boundary of S1 = 1 with b = 1, |η| = 1",
            -1.06868,
            Root(|| ThresholdQuery::new(|nu| Ok(struve_s1(nu)? - 1.0), [-1.45, 0.0])),
        ),
        entry(
            "struve_nu_c1",
            "Struve boundary of S2(1) = 1 with b = 1, |η| = 1",
            -1.04226,
            Root(|| nu1_query(1.0, 1.0, 1.0)),
        ),
        entry(
            "struve_prior_kappa",
            "(9 + √7)/24 from the earlier starlikeness condition",
            0.48524,
            Value(|| Ok((9.0 + 7f64.sqrt()) / 24.0)),
        ),
        entry(
            "f5_s1",
            "S1 of the error-function family",
            1.13935,
            Value(|| cert_value(families::f5(), |s| s.s1)),
        ),
        entry(
            "f6_s1",
            "S1 of the Hadamard error-function family",
            0.402721,
            Value(|| cert_value(families::f6(), |s| s.s1)),
        ),
        entry(
            "f6_s2_c1",
            "S2(1) = W − 1 − S1 of the Hadamard error-function family",
            0.407896,
            Value(|| cert_value(families::f6(), |s| s.s2(1.0))),
        ),
        entry(
            "f6_c0",
            "smallest certified c of the Hadamard error-function family",
            0.577889,
            Value(|| min_c_value(families::f6())),
        ),
        ConstantDef {
            name: "h_gap_3",
            description: "H(3) = (21/4)^{4/3} − 21/4 − 11/4, quoted to two digits",
            published: 1.08,
            tol: 0.01,
            recipe: Value(|| h_gap(3.0)),
        },
    ]
}

fn evaluate(def: &ConstantDef) -> ConstantEntry {
    let (value, bracket) = match &def.recipe {
        Recipe::Value(g) => (g(), None),
        Recipe::Root(q) => {
            let q = q();
            (solve_threshold(&q).map(|r| r.root), Some(q.bracket))
        }
    };
    let (reproduced, abs_err, error) = match value {
        Ok(v) => (Some(v), Some((v - def.published).abs()), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    ConstantEntry {
        name: def.name.to_owned(),
        description: def.description.to_owned(),
        published: def.published,
        reproduced,
        abs_err,
        tol: def.tol,
        passed: abs_err.is_some_and(|e| e <= def.tol),
        bracket,
        error,
    }
}

/// Recomputes every published constant; entries are sorted by name.
pub fn published_constants() -> ConstantsManifest {
    let mut entries: Vec<ConstantEntry> = definitions().par_iter().map(evaluate).collect();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    ConstantsManifest {
        version: MANIFEST_VERSION,
        entries,
    }
}

/// Names accepted by [`named_threshold`].
pub fn threshold_names() -> Vec<&'static str> {
    let mut names: Vec<_> = definitions()
        .into_iter()
        .filter(|d| matches!(d.recipe, Recipe::Root(_)))
        .map(|d| d.name)
        .collect();
    names.sort_unstable();
    names
}

/// The manifest query registered under `name`.
pub fn named_threshold(name: &str) -> Option<ThresholdQuery> {
    definitions().into_iter().find_map(|d| match d.recipe {
        Recipe::Root(q) if d.name == name => Some(q()),
        _ => None,
    })
}
