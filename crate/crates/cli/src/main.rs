//! `lemstar`: certificates, thresholds and sampling checks for lemniscate starlikeness.
//!
//! Exit codes: 0 certified or passed, 1 definite negative, 2 operational error.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lemstar_core::criterion::certify;
use lemstar_core::families::{BesselVariant, FamilySpec};
use lemstar_core::identities::{self, LemmaCheck};
use lemstar_core::thresholds::{
    self, default_table_c, named_threshold, solve_threshold, Condition, ThresholdQuery,
};
use lemstar_core::verifier::{self, SamplingGrid, SvgPlot};
use lemstar_core::{Complex, Error};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "lemstar",
    version,
    about = "Lemniscate-starlikeness certificates via coefficient sums"
)]
struct Cli {
    /// Flat key = value file with the same names as the flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the coefficient certificate for one family.
    Certify(CertifyArgs),
    /// Sample zf'/f near the unit circle and test the membership inequality.
    Verify(VerifyArgs),
    /// Solve a named or custom parameter threshold.
    Threshold(ThresholdArgs),
    /// Reproduce the nu1 table for the generalized Struve family.
    Table(TableArgs),
    /// Run identity and inequality sweeps.
    Identity(IdentityArgs),
    /// Recompute every published constant.
    Constants(ConstantsArgs),
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum VariantArg {
    Real,
    Complex,
}

#[derive(Args, Clone, Debug, Serialize)]
struct FamilyArgs {
    /// f1, f2, f3, cpb, struve, f5, f6 (or the full ids such as F3_GEN_BESSEL).
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    kappa_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    eta_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    kappa_s: Option<f64>,
    /// Certificate variant for the generalized Bessel family.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
}

fn need(v: Option<f64>, flag: &str, family: &str) -> Result<f64> {
    v.ok_or_else(|| anyhow!("family {family} needs --{flag}"))
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let raw = self.family.as_deref().context("--family is required")?;
        let eta = Complex::new(self.eta.unwrap_or(1.0), self.eta_im);
        let spec = match raw.to_ascii_lowercase().as_str() {
            "f1" | "f1_exp" => FamilySpec::F1Exp,
            "f2" | "f2_conf_hyp" => FamilySpec::F2ConfHyp {
                b: need(self.b, "b", raw)?,
            },
            "f3" | "f3_gen_bessel" => {
                let kappa = Complex::new(need(self.kappa, "kappa", raw)?, self.kappa_im);
                let variant = match self.variant {
                    Some(VariantArg::Complex) => BesselVariant::Complex,
                    Some(VariantArg::Real) => BesselVariant::Real,
                    None if kappa.im != 0.0 => bail!("complex kappa needs an explicit --variant"),
                    None => BesselVariant::Real,
                };
                FamilySpec::F3GenBessel {
                    kappa,
                    eta,
                    variant,
                }
            }
            "cpb" | "cpb_cross_bessel" => FamilySpec::CpbCrossBessel {
                nu: need(self.nu, "nu", raw)?,
            },
            "struve" | "w_gen_struve" => {
                let kappa_s = match (self.kappa_s, self.nu) {
                    (Some(k), None) => k,
                    (None, Some(nu)) => {
                        lemstar_core::families::struve_kappa_s(nu, self.b.unwrap_or(1.0))
                    }
                    (Some(_), Some(_)) => bail!("give either --kappa-s or --nu, not both"),
                    (None, None) => bail!("family {raw} needs --kappa-s or --nu"),
                };
                FamilySpec::WGenStruve { kappa_s, eta }
            }
            "f5" | "f5_erf" => FamilySpec::F5Erf,
            "f6" | "f6_erf_hadamard" => FamilySpec::F6ErfHadamard,
            other => bail!("unknown family {other:?}"),
        };
        Ok(spec)
    }

    fn with_free(&self, free: FreeParam, value: f64) -> Self {
        let mut out = self.clone();
        match free {
            FreeParam::B => out.b = Some(value),
            FreeParam::Kappa => out.kappa = Some(value),
            FreeParam::Eta => out.eta = Some(value),
            FreeParam::Nu => out.nu = Some(value),
            FreeParam::KappaS => out.kappa_s = Some(value),
        }
        out
    }
}

#[derive(Args, Debug, Serialize)]
struct CertifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Report path; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Comma-separated radii in (0, 1).
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 0.9, 0.99, 0.999])]
    radii: Vec<f64>,
    #[arg(long, default_value_t = 2048)]
    points: usize,
    #[arg(long, default_value_t = 120)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the per-sample CSV and an SVG of the image next to --out.
    #[arg(long)]
    plot_data: bool,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
enum FreeParam {
    B,
    Kappa,
    Eta,
    Nu,
    KappaS,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum ConditionArg {
    /// S1 = 1.
    S1,
    /// S2(c) = c.
    S2,
    /// Edge of the full certificate, max(S1 − 1, S2(c) − c) = 0.
    Certificate,
}

#[derive(Args, Debug, Serialize)]
struct ThresholdArgs {
    /// A threshold from the constants manifest.
    #[arg(long, conflicts_with = "free")]
    name: Option<String>,
    /// List the named thresholds and exit.
    #[arg(long)]
    list: bool,
    /// Family parameter to solve for in a custom query.
    #[arg(long, value_enum, requires_all = ["lo", "hi"])]
    free: Option<FreeParam>,
    #[arg(long, value_enum, default_value_t = ConditionArg::Certificate)]
    condition: ConditionArg,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, allow_negative_numbers = true)]
    lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    hi: Option<f64>,
    #[arg(long, default_value_t = thresholds::DEFAULT_THRESHOLD_TOL)]
    tol: f64,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct TableArgs {
    /// Comma-separated c values; the published ten by default.
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG of nu1 against c next to --out.
    #[arg(long)]
    plot_data: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
enum Lemma {
    Basic1,
    Basic2,
    Hgap,
    Identity1,
    ChuVandermonde,
    Identity2,
    All,
}

#[derive(Args, Debug, Serialize)]
struct IdentityArgs {
    #[arg(long, value_enum, default_value_t = Lemma::All)]
    lemma: Lemma,
    /// Sweep bound; each lemma has its own default.
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, default_value_t = 50)]
    cases: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct ConstantsArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunManifest<'a, T: Serialize> {
    command: &'a str,
    inputs: &'a T,
    outputs: Vec<String>,
    library_version: &'static str,
    wall_time_ms: u128,
}

struct Outcome {
    code: u8,
    outputs: Vec<PathBuf>,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes to `path`, or stdout when absent.
fn emit(path: Option<&Path>, text: &str, outputs: &mut Vec<PathBuf>) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            outputs.push(p.to_owned());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}{suffix}"))
}

fn plot_base(out: Option<&Path>) -> Result<&Path> {
    out.context("--plot-data needs --out to place the artifacts")
}

fn run_certify(a: &CertifyArgs) -> Result<Outcome> {
    let f = a.family.spec()?.build()?;
    let report = certify(&f, a.c, a.tol)?;
    eprintln!(
        "{}: S1 = {:.6} ({}), S2 = {:.6} ({}) at c = {}; {}",
        report.family,
        report.s1,
        if report.s1_ok { "< 1" } else { "not < 1" },
        report.s2,
        if report.s2_ok { "< c" } else { "not < c" },
        report.c,
        if report.certified {
            "certified"
        } else {
            "not certified"
        }
    );
    let mut outputs = Vec::new();
    emit(a.out.as_deref(), &json(&report)?, &mut outputs)?;
    Ok(Outcome {
        code: if report.certified { 0 } else { 1 },
        outputs,
    })
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome> {
    let f = a.family.spec()?.build()?;
    let grid = SamplingGrid {
        radii: a.radii.clone(),
        points_per_circle: a.points,
        truncation_n: a.n_max,
    };
    let report = verifier::verify_membership(&f, a.c, &grid)?;
    eprintln!(
        "{}: max |w^2 - 1| = {:.6}, min Re w = {:.6} at c = {}; {}",
        report.family,
        report.max_lemniscate_value,
        report.min_re_ratio,
        report.c,
        if report.passes { "passes" } else { "fails" }
    );
    let mut outputs = Vec::new();
    emit(a.out.as_deref(), &json(&report)?, &mut outputs)?;
    if a.plot_data {
        let base = plot_base(a.out.as_deref())?;
        let (samples, _) = verifier::sample_grid(&f, &grid)?;
        emit(
            Some(&sibling(base, ".samples.csv")),
            &verifier::samples_csv(&samples),
            &mut outputs,
        )?;
        emit(
            Some(&sibling(base, ".svg")),
            &verifier::image_svg(&samples, a.c),
            &mut outputs,
        )?;
    }
    Ok(Outcome {
        code: if report.passes { 0 } else { 1 },
        outputs,
    })
}

fn run_threshold(a: &ThresholdArgs) -> Result<Outcome> {
    let mut outputs = Vec::new();
    if a.list {
        let text: String = thresholds::threshold_names()
            .iter()
            .map(|n| format!("{n}\n"))
            .collect();
        emit(a.out.as_deref(), &text, &mut outputs)?;
        return Ok(Outcome { code: 0, outputs });
    }
    let query = match (&a.name, a.free) {
        (Some(name), None) => named_threshold(name).with_context(|| {
            format!("unknown threshold {name:?}; see `lemstar threshold --list`")
        })?,
        (None, Some(free)) => {
            let (lo, hi) = (
                a.lo.context("--lo is required")?,
                a.hi.context("--hi is required")?,
            );
            let family = a.family.clone();
            family.with_free(free, lo).spec()?;
            let condition = match a.condition {
                ConditionArg::S1 => Condition::S1Unit,
                ConditionArg::S2 => Condition::S2AtC(a.c),
                ConditionArg::Certificate => Condition::Certificate(a.c),
            };
            ThresholdQuery::family(
                move |p| {
                    family
                        .with_free(free, p)
                        .spec()
                        .map_err(|e| Error::InvalidArgument(e.to_string()))?
                        .build()
                },
                condition,
                [lo, hi],
            )
        }
        _ => bail!("give --name, --free with a family, or --list"),
    };
    let query = query.with_tol(a.tol);
    match solve_threshold(&query) {
        Ok(result) => {
            eprintln!(
                "root = {} (residual {:.3e}, {} iterations)",
                result.root, result.residual, result.iterations
            );
            emit(a.out.as_deref(), &json(&result)?, &mut outputs)?;
            Ok(Outcome { code: 0, outputs })
        }
        Err(e @ Error::NoSignChange { .. }) => {
            eprintln!("{e}");
            Ok(Outcome { code: 1, outputs })
        }
        Err(e) => Err(e.into()),
    }
}

fn run_table(a: &TableArgs) -> Result<Outcome> {
    let cs = a.c.clone().unwrap_or_else(default_table_c);
    let rows = thresholds::table_nu1(&cs, a.b, a.eta);
    let mut failed = false;
    for row in rows.iter().filter(|r| r.nu1.is_none()) {
        failed = true;
        eprintln!(
            "c = {}: {}",
            row.c,
            row.error.as_deref().unwrap_or("no root")
        );
    }
    let csv = thresholds::table_csv(&rows);
    let mut outputs = Vec::new();
    emit(a.out.as_deref(), &csv, &mut outputs)?;
    if a.plot_data {
        let base = plot_base(a.out.as_deref())?;
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter_map(|r| r.nu1.map(|nu| (r.c, nu)))
            .collect();
        let (ymin, ymax) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.1), hi.max(p.1))
            });
        let pad = 0.05 * (ymax - ymin).max(1e-3);
        let mut plot = SvgPlot::new([0.0, 1.05, ymin - pad, ymax + pad]);
        plot.polyline(&pts, "#1f4e79");
        plot.points(&pts, "#c0392b");
        plot.label("nu1 against c");
        emit(Some(&sibling(base, ".svg")), &plot.render(), &mut outputs)?;
    }
    Ok(Outcome {
        code: if failed { 1 } else { 0 },
        outputs,
    })
}

const CAUCHY_BS: [f64; 5] = [0.6, 1.0, 1.5, 2.75885, 5.0];

fn run_identity(a: &IdentityArgs) -> Result<Outcome> {
    let all = a.lemma == Lemma::All;
    let pick = |l: Lemma| all || a.lemma == l;
    let mut checks: Vec<LemmaCheck> = Vec::new();
    if pick(Lemma::Basic1) {
        checks.push(identities::sweep_growth(a.n_max.unwrap_or(10_000)));
    }
    if pick(Lemma::Basic2) {
        checks.push(identities::sweep_psi(a.n_max.unwrap_or(500)));
    }
    if pick(Lemma::Hgap) {
        checks.push(identities::sweep_h_gap(a.n_max.unwrap_or(100) as f64));
    }
    if pick(Lemma::Identity1) {
        checks.push(identities::sweep_cauchy_weight(
            &CAUCHY_BS,
            a.n_max.unwrap_or(30) as usize,
        ));
    }
    if pick(Lemma::ChuVandermonde) {
        checks.push(identities::sweep_chu_vandermonde(
            a.cases,
            a.n_max.unwrap_or(25) as usize,
            a.seed,
        ));
    }
    if pick(Lemma::Identity2) {
        checks.push(identities::sweep_modulus_bound(
            a.n_max.unwrap_or(60) as usize
        ));
    }
    for c in &checks {
        eprintln!(
            "{}: {} ({} cases) {}",
            c.lemma,
            if c.passed { "pass" } else { "FAIL" },
            c.cases,
            c.detail
        );
    }
    let mut outputs = Vec::new();
    emit(a.out.as_deref(), &json(&checks)?, &mut outputs)?;
    Ok(Outcome {
        code: if checks.iter().all(|c| c.passed) {
            0
        } else {
            1
        },
        outputs,
    })
}

fn run_constants(a: &ConstantsArgs) -> Result<Outcome> {
    let manifest = thresholds::published_constants();
    for e in manifest.entries.iter().filter(|e| !e.passed) {
        match (e.reproduced, &e.error) {
            (Some(v), _) => eprintln!(
                "{}: published {} vs {} (tol {})",
                e.name, e.published, v, e.tol
            ),
            (None, err) => eprintln!("{}: {}", e.name, err.as_deref().unwrap_or("no value")),
        }
    }
    let mut outputs = Vec::new();
    emit(a.out.as_deref(), &json(&manifest)?, &mut outputs)?;
    Ok(Outcome {
        code: if manifest.all_passed() { 0 } else { 1 },
        outputs,
    })
}

fn finish<T: Serialize>(
    command: &str,
    inputs: &T,
    out: Option<&Path>,
    outcome: &Outcome,
    start: Instant,
) -> Result<()> {
    let manifest = RunManifest {
        command,
        inputs,
        outputs: outcome
            .outputs
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        library_version: env!("CARGO_PKG_VERSION"),
        wall_time_ms: start.elapsed().as_millis(),
    };
    let text = json(&manifest)?;
    match out {
        Some(p) => {
            let path = sibling(p, ".manifest.json");
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        None => eprint!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    macro_rules! dispatch {
        ($name:literal, $args:expr, $f:ident) => {{
            let outcome = $f($args)?;
            finish($name, $args, $args.out.as_deref(), &outcome, start)?;
            outcome.code
        }};
    }
    Ok(match &cli.command {
        Command::Certify(a) => dispatch!("certify", a, run_certify),
        Command::Verify(a) => dispatch!("verify", a, run_verify),
        Command::Threshold(a) => dispatch!("threshold", a, run_threshold),
        Command::Table(a) => dispatch!("table", a, run_table),
        Command::Identity(a) => dispatch!("identity", a, run_identity),
        Command::Constants(a) => dispatch!("constants", a, run_constants),
    })
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
