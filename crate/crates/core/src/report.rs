//! Batch verification: a JSON run configuration, bundled fixture signals,
//! the suite runner, and CSV/SVG emission.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approximation::{extremal_function, fmt_float, planted_decay, sharpness_probe, BestApproxProfile};
use crate::error::{Error, Result};
use crate::inverse::{sharpness_ratio_scan, verify_inverse, InverseForm};
use crate::jackson::{
    sharp_constant_lp, verify_corollary2, verify_corollary3, verify_corollary45, verify_theorem1, JacksonCertificate,
    WeightFunction, STRICT_MARGIN,
};
use crate::orlicz::OrliczFamily;
use crate::signal::{parse_signal, ApPolynomial, Spectrum};
use crate::smoothness::{ModulusProfile, PhiFunction};

pub const SCHEMA_VERSION: u32 = 1;
/// Overrides the configured output directory.
pub const OUTPUT_DIR_ENV: &str = "APJ_OUTPUT_DIR";
pub const DEFAULT_OUTPUT_DIR: &str = "apjackson-report";
pub const CSV_HEADER: &str = "suite,theorem,signal,family,phi,n,lhs,rhs,margin,pass";

/// Selectable verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Integral form with the configured weight.
    Theorem1,
    /// Constant form `((v(τ) − v(0))/I) ω_φ(f, τ/λ_n)`.
    Theorem1Constant,
    /// Both forms with the LP-optimal grid weight.
    Theorem1Lp,
    Corollary2,
    Corollary3,
    Corollary4,
    Corollary5,
    /// Every `α`-form inverse bound.
    Inverse,
    /// The general inverse bound with the configured `φ`.
    InversePhi,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Theorem1,
        Check::Theorem1Constant,
        Check::Theorem1Lp,
        Check::Corollary2,
        Check::Corollary3,
        Check::Corollary4,
        Check::Corollary5,
        Check::Inverse,
        Check::InversePhi,
    ];
}

/// Either a signal text file (relative to the config file) or a named
/// fixture (`extremal`, `probe`, `planted`, `random` with optional seed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SignalSource {
    pub fn file(path: impl Into<PathBuf>) -> Self {
        SignalSource { path: Some(path.into()), fixture: None, seed: None }
    }

    pub fn fixture(name: &str, seed: Option<u64>) -> Self {
        SignalSource { path: None, fixture: Some(name.into()), seed }
    }

    fn validate(&self) -> Result<()> {
        match (&self.path, &self.fixture) {
            (Some(_), None) if self.seed.is_none() => Ok(()),
            (None, Some(_)) => Ok(()),
            _ => Err(Error::Config("each signal needs exactly one of 'path' or 'fixture' (seed only with fixture)".into())),
        }
    }
}

fn default_family() -> OrliczFamily {
    OrliczFamily::linear()
}
fn default_phi() -> String {
    "sine_power:2".into()
}
fn default_alpha() -> f64 {
    2.0
}
fn default_steklov() -> u32 {
    1
}
fn default_weight() -> String {
    "one_minus_cos".into()
}
fn default_tau() -> f64 {
    PI
}
fn default_cor3_tau() -> f64 {
    0.75 * PI
}
fn default_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}
fn default_tolerance() -> f64 {
    1e-9
}
fn default_lp_grid() -> usize {
    64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub signals: Vec<SignalSource>,
    #[serde(default = "default_family")]
    pub family: OrliczFamily,
    #[serde(default = "default_phi")]
    pub phi: String,
    /// Order of the classical modulus for corollary 2/3 and the inverse checks.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Order of the Steklov modulus for corollaries 4/5.
    #[serde(default = "default_steklov")]
    pub steklov_m: u32,
    /// `one_minus_cos`, `identity`, `power:m` or `grid:<file>`.
    #[serde(default = "default_weight")]
    pub weight: String,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_cor3_tau")]
    pub corollary3_tau: f64,
    #[serde(default)]
    pub gap_c: Option<f64>,
    #[serde(default = "default_checks")]
    pub theorems: Vec<Check>,
    /// Indices to check; each fixture has its own default, files use `1..=K`.
    #[serde(default)]
    pub n: Option<Vec<usize>>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_lp_grid")]
    pub lp_grid: usize,
    #[serde(default)]
    pub k_window: Option<usize>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Seed for `random` fixtures without their own.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub plots: bool,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    /// A config with every default and no signals.
    pub fn new() -> Self {
        serde_json::from_str(&format!("{{\"schema_version\": {SCHEMA_VERSION}}}")).expect("defaults parse")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates a config file; relative paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return fail(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if !(self.tolerance > 0.0) {
            return fail("tolerance must be positive".into());
        }
        if !(self.alpha > 0.0) {
            return fail("alpha must be positive".into());
        }
        if self.steklov_m == 0 {
            return fail("steklov_m must be at least 1".into());
        }
        if !(self.tau > 0.0) || !(self.corollary3_tau > 0.0) {
            return fail("tau values must be positive".into());
        }
        if self.lp_grid < 8 {
            return fail("lp_grid must be at least 8".into());
        }
        if self.n.as_ref().is_some_and(|ns| ns.contains(&0)) {
            return fail("n values start at 1".into());
        }
        for src in &self.signals {
            src.validate()?;
        }
        if self.gap_c.is_some_and(|c| !(c > 0.0)) {
            return fail("gap_c must be positive".into());
        }
        PhiFunction::parse(&self.phi).map_err(|e| Error::Config(e.to_string()))?;
        if !self.weight.starts_with("grid:") {
            WeightFunction::parse(&self.weight, self.tau).map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    /// `$APJ_OUTPUT_DIR`, else the configured directory, else the default.
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => self.output_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR)),
        }
    }

    fn weight_function(&self) -> Result<WeightFunction> {
        match self.weight.strip_prefix("grid:") {
            Some(file) => WeightFunction::from_grid_text(&fs::read_to_string(self.base_dir.join(file))?),
            None => WeightFunction::parse(&self.weight, self.tau),
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::new()
    }
}

/// Names accepted by [`fixture`]; `random` takes a seed.
pub const FIXTURES: [&str; 4] = ["extremal", "probe", "planted", "random"];
/// Seeds of the bundled random fixtures.
pub const BUNDLED_SEEDS: [u64; 3] = [1, 2, 3];

/// Eight random harmonics on `λ_k = k^{1.1}`, coefficients uniform in the unit square.
pub fn random_signal(seed: u64) -> ApPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(i64, Complex64)> =
        (-8..=8i64).map(|k| (k, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect();
    ApPolynomial::from_pairs(Spectrum::powers(8, 1.1), pairs).expect("indices within the spectrum")
}

/// A named fixture and its default `n` list (`None`: every index).
pub fn fixture(name: &str, seed: u64) -> Result<(ApPolynomial, Option<Vec<usize>>)> {
    match name {
        "extremal" => Ok((
            extremal_function(3, Complex64::new(0.5, 0.25), Complex64::new(0.8, -0.1), Complex64::new(-0.3, 0.6), Spectrum::integers(6))?,
            Some(vec![3]),
        )),
        "probe" => Ok((sharpness_probe(2, Spectrum::integers(8))?, None)),
        "planted" => Ok((planted_decay(Spectrum::integers(16), 0.8)?, None)),
        "random" => Ok((random_signal(seed), None)),
        _ => Err(Error::Config(format!("unknown fixture '{name}' (known: {})", FIXTURES.join(", ")))),
    }
}

/// The bundled fixture set: extremal, probe, planted and three random seeds.
pub fn bundled_sources() -> Vec<SignalSource> {
    let mut out: Vec<SignalSource> = ["extremal", "probe", "planted"].iter().map(|f| SignalSource::fixture(f, None)).collect();
    out.extend(BUNDLED_SEEDS.iter().map(|&s| SignalSource::fixture("random", Some(s))));
    out
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateRow {
    pub suite: String,
    pub theorem: String,
    pub signal: String,
    pub family: String,
    pub phi: String,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IngestError {
    pub signal: String,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum PlotKind {
    /// `E_{λ_n}` against `n`.
    Decay,
    /// `ω_φ(f, δ)` against `δ`.
    Modulus,
    /// Inverse-sharpness ratios against `n`.
    Sharpness,
}

impl PlotKind {
    pub fn file_stem(self) -> &'static str {
        match self {
            PlotKind::Decay => "decay",
            PlotKind::Modulus => "modulus",
            PlotKind::Sharpness => "sharpness",
        }
    }

    fn axes(self) -> (&'static str, &'static str, &'static str) {
        match self {
            PlotKind::Decay => ("Best approximation", "n", "E"),
            PlotKind::Modulus => ("Modulus of smoothness", "delta", "omega"),
            PlotKind::Sharpness => ("Inverse sharpness ratio", "n", "ratio"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub warnings: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<CertificateRow>,
    pub errors: Vec<IngestError>,
    /// Checks skipped because a precondition did not hold.
    pub skipped: Vec<String>,
    pub series: Vec<(PlotKind, Series)>,
    pub summary: Summary,
    pub environment: String,
    pub seed: u64,
}

impl VerificationReport {
    /// `0` when every row passes and every signal was read, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed == 0 && self.errors.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.suite,
                r.theorem,
                csv_field(&r.signal),
                csv_field(&r.family),
                csv_field(&r.phi),
                r.n,
                fmt_float(r.lhs),
                fmt_float(r.rhs),
                fmt_float(r.margin),
                r.pass
            );
        }
        out
    }

    pub fn series_of(&self, kind: PlotKind) -> Vec<Series> {
        self.series.iter().filter(|(k, _)| *k == kind).map(|(_, s)| s.clone()).collect()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct Ingested {
    name: String,
    f: ApPolynomial,
    ns: Vec<usize>,
}

fn ingest(cfg: &RunConfig, index: usize, src: &SignalSource) -> std::result::Result<Ingested, IngestError> {
    let (name, loaded) = match (&src.path, &src.fixture) {
        (Some(path), _) => {
            let full = cfg.base_dir.join(path);
            let loaded = fs::read_to_string(&full).map_err(Error::from).and_then(|t| parse_signal(&t)).map(|f| (f, None));
            (path.display().to_string(), loaded)
        }
        (None, Some(fx)) => {
            let seed = src.seed.unwrap_or(cfg.seed.wrapping_add(index as u64));
            let name = if fx == "random" { format!("random:{seed}") } else { fx.clone() };
            (name, fixture(fx, seed))
        }
        (None, None) => unreachable!("validated"),
    };
    let (f, default_ns) = loaded.map_err(|e| IngestError { signal: name.clone(), message: e.to_string() })?;
    let k = f.degree();
    let ns: Vec<usize> = match (&cfg.n, default_ns) {
        (Some(ns), _) => ns.iter().copied().filter(|&n| n <= k).collect(),
        (None, Some(ns)) => ns,
        (None, None) => (1..=k).collect(),
    };
    Ok(Ingested { name, f, ns })
}

enum ItemOutcome {
    Row(CertificateRow),
    Skipped(String),
}

fn jackson_row(cfg: &RunConfig, signal: &str, c: &JacksonCertificate, theorem: &str) -> CertificateRow {
    let pass = if c.strict { c.margin > STRICT_MARGIN } else { c.margin >= -cfg.tolerance };
    CertificateRow {
        suite: "jackson".into(),
        theorem: theorem.into(),
        signal: signal.into(),
        family: c.family.clone(),
        phi: c.phi.clone(),
        n: c.n,
        lhs: c.lhs,
        rhs: c.rhs,
        margin: c.margin,
        pass,
    }
}

fn run_item(cfg: &RunConfig, sig: &Ingested, n: usize, checks: &BTreeSet<Check>, phi: &PhiFunction, weight: &WeightFunction) -> Vec<ItemOutcome> {
    let mut out = Vec::new();
    let fam = &cfg.family;
    let f = &sig.f;
    let mut push = |res: Result<Vec<CertificateRow>>, what: &str| match res {
        Ok(rows) => out.extend(rows.into_iter().map(ItemOutcome::Row)),
        Err(e) => out.push(ItemOutcome::Skipped(format!("{what} on {} at n = {n}: {e}", sig.name))),
    };
    let rows = |certs: Vec<JacksonCertificate>, names: &[(&str, Check)]| -> Vec<CertificateRow> {
        certs
            .iter()
            .zip(names)
            .filter(|(_, (_, chk))| checks.contains(chk))
            .map(|(c, (name, _))| jackson_row(cfg, &sig.name, c, name))
            .collect()
    };
    if checks.contains(&Check::Theorem1) || checks.contains(&Check::Theorem1Constant) {
        let res = verify_theorem1(f, n, phi, weight, fam, cfg.k_window)
            .map(|c| rows(c, &[("theorem1", Check::Theorem1), ("theorem1_constant", Check::Theorem1Constant)]));
        push(res, "theorem1");
    }
    if checks.contains(&Check::Theorem1Lp) {
        let res = sharp_constant_lp(n, phi, cfg.tau, f.spectrum(), cfg.lp_grid, cfg.k_window)
            .and_then(|sc| verify_theorem1(f, n, phi, &sc.weight, fam, cfg.k_window))
            .map(|c| rows(c, &[("theorem1_lp", Check::Theorem1Lp), ("theorem1_lp_constant", Check::Theorem1Lp)]));
        push(res, "theorem1_lp");
    }
    if checks.contains(&Check::Corollary2) {
        let res = verify_corollary2(f, n, cfg.alpha, fam)
            .map(|c| rows(c, &[("corollary2", Check::Corollary2), ("corollary2_integer", Check::Corollary2)]));
        push(res, "corollary2");
    }
    if checks.contains(&Check::Corollary3) {
        let res = verify_corollary3(f, n, cfg.alpha, cfg.corollary3_tau, fam).map(|c| rows(vec![c], &[("corollary3", Check::Corollary3)]));
        push(res, "corollary3");
    }
    if checks.contains(&Check::Corollary4) || checks.contains(&Check::Corollary5) {
        let res = verify_corollary45(f, n, cfg.steklov_m, fam)
            .map(|c| rows(c, &[("corollary4", Check::Corollary4), ("corollary5", Check::Corollary5)]));
        push(res, "corollary4/5");
    }
    let inverse_rows = |form: InverseForm, rename: Option<&str>| -> Result<Vec<CertificateRow>> {
        let cert = verify_inverse(f, n, &form, fam, cfg.gap_c)?;
        Ok(cert
            .bounds
            .iter()
            .map(|b| CertificateRow {
                suite: "inverse".into(),
                theorem: rename.unwrap_or(&b.name).to_string(),
                signal: sig.name.clone(),
                family: cert.family.clone(),
                phi: cert.phi.clone(),
                n,
                lhs: cert.lhs,
                rhs: b.rhs,
                margin: b.margin,
                pass: b.margin >= -cfg.tolerance,
            })
            .collect())
    };
    if checks.contains(&Check::Inverse) {
        push(inverse_rows(InverseForm::Alpha(cfg.alpha), None), "inverse");
    }
    if checks.contains(&Check::InversePhi) {
        push(inverse_rows(InverseForm::Phi(phi.clone()), Some("theorem2_phi")), "inverse_phi");
    }
    out
}

fn plot_series(cfg: &RunConfig, signals: &[Ingested], phi: &PhiFunction) -> Result<Vec<(PlotKind, Series)>> {
    let mut out = Vec::new();
    for s in signals {
        let prof = BestApproxProfile::compute(&s.f, &cfg.family, s.name.clone())?;
        let points = prof.values.iter().map(|&(n, _, e)| (n as f64, e)).collect();
        out.push((PlotKind::Decay, Series { label: s.name.clone(), points }));
    }
    for s in signals {
        if s.f.degree() == 0 {
            continue;
        }
        let dmax = phi.sup_argument() / s.f.spectrum().lambda(1);
        let prof = ModulusProfile::sample(&s.f, phi, &cfg.family, dmax, 64)?;
        let points = prof.deltas().iter().copied().zip(prof.lower().iter().copied()).collect();
        out.push((PlotKind::Modulus, Series { label: s.name.clone(), points }));
    }
    let ns = [1usize, 2, 5, 10, 20, 50, 100, 200, 500, 1000];
    let scan = sharpness_ratio_scan(1, cfg.alpha, &Spectrum::integers(1000), &cfg.family, &ns)?;
    out.push((
        PlotKind::Sharpness,
        Series { label: format!("alpha = {}", cfg.alpha), points: scan.into_iter().map(|(n, r)| (n as f64, r)).collect() },
    ));
    Ok(out)
}

/// Runs the selected checks over every signal. Unreadable signals become
/// error records and the rest of the suite still runs; rows are sorted by
/// (suite, signal, n, theorem).
pub fn run_suite(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let phi = PhiFunction::parse(&cfg.phi)?;
    let weight = cfg.weight_function().map_err(|e| Error::Config(format!("weight: {e}")))?;
    let checks: BTreeSet<Check> = cfg.theorems.iter().copied().collect();

    let mut signals = Vec::new();
    let mut errors = Vec::new();
    for (i, src) in cfg.signals.iter().enumerate() {
        match ingest(cfg, i, src) {
            Ok(s) => signals.push(s),
            Err(e) => errors.push(e),
        }
    }
    let items: Vec<(usize, usize)> = signals.iter().enumerate().flat_map(|(i, s)| s.ns.iter().map(move |&n| (i, n))).collect();
    let outcomes: Vec<ItemOutcome> =
        items.par_iter().flat_map_iter(|&(i, n)| run_item(cfg, &signals[i], n, &checks, &phi, &weight)).collect();

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            ItemOutcome::Row(r) => rows.push(r),
            ItemOutcome::Skipped(s) => skipped.push(s),
        }
    }
    rows.sort_by(|a, b| (&a.suite, &a.signal, a.n, &a.theorem).cmp(&(&b.suite, &b.signal, b.n, &b.theorem)));
    skipped.sort();
    let series = if cfg.plots { plot_series(cfg, &signals, &phi)? } else { Vec::new() };
    let passed = rows.iter().filter(|r| r.pass).count();
    let summary = Summary { total: rows.len(), passed, failed: rows.len() - passed, warnings: errors.len() + skipped.len() };
    Ok(VerificationReport {
        rows,
        errors,
        skipped,
        series,
        summary,
        environment: format!("apjackson {} {}/{}", env!("CARGO_PKG_VERSION"), std::env::consts::OS, std::env::consts::ARCH),
        seed: cfg.seed,
    })
}

pub fn emit_csv(report: &VerificationReport, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, report.to_csv())?;
    Ok(())
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

fn nice_range(lo: f64, hi: f64) -> (f64, f64) {
    if !(lo.is_finite() && hi.is_finite()) {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 * hi.abs().max(1.0) {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// A line chart with linear axes. Empty input gives bare axes on `[0, 1]²`.
pub fn svg_line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (70.0, 160.0, 40.0, 50.0);
    let pts = series.iter().flat_map(|s| s.points.iter()).filter(|p| p.0.is_finite() && p.1.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (x0, x1) = if x0.is_finite() { nice_range(x0, x1) } else { (0.0, 1.0) };
    let (y0, y1) = if y0.is_finite() { nice_range(y0.min(0.0), y1) } else { (0.0, 1.0) };
    let pw = w - left - right;
    let ph = h - top - bottom;
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="15">{}</text>"#, left + pw / 2.0, xml_escape(title));
    let _ = writeln!(s, r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(s, r##"<line x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}" stroke="#ddd"/>"##, sx(fx), top, top + ph);
        let _ = writeln!(s, r##"<line x1="{0:.1}" y1="{1:.1}" x2="{2:.1}" y2="{1:.1}" stroke="#ddd"/>"##, left, sy(fy), left + pw);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, sx(fx), top + ph + 16.0, tick(fx));
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, left - 6.0, sy(fy) + 4.0, tick(fy));
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, left + pw / 2.0, h - 10.0, xml_escape(x_label));
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0:.1}" text-anchor="middle" transform="rotate(-90 18 {0:.1})">{1}</text>"#,
        top + ph / 2.0,
        xml_escape(y_label)
    );
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = ser
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        if !path.is_empty() {
            let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
        }
        let ly = top + 14.0 + 18.0 * i as f64;
        let _ = writeln!(s, r#"<line x1="{0:.1}" y1="{1:.1}" x2="{2:.1}" y2="{1:.1}" stroke="{color}" stroke-width="2"/>"#, w - right + 10.0, ly, w - right + 30.0);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}">{}</text>"#, w - right + 36.0, ly + 4.0, xml_escape(&ser.label));
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        format!("{v:.3}")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Writes `plots/<kind>.svg` for one series kind.
pub fn emit_plots(report: &VerificationReport, kind: PlotKind, dir: &Path) -> Result<PathBuf> {
    let plots = dir.join("plots");
    fs::create_dir_all(&plots)?;
    let (title, xl, yl) = kind.axes();
    let path = plots.join(format!("{}.svg", kind.file_stem()));
    fs::write(&path, svg_line_chart(title, xl, yl, &report.series_of(kind)))?;
    Ok(path)
}

/// `report.csv` plus one SVG per plotted kind.
pub fn write_outputs(report: &VerificationReport, dir: &Path) -> Result<Vec<PathBuf>> {
    let csv = dir.join("report.csv");
    emit_csv(report, &csv)?;
    let mut written = vec![csv];
    let kinds: BTreeSet<PlotKind> = report.series.iter().map(|(k, _)| *k).collect();
    for kind in kinds {
        written.push(emit_plots(report, kind, dir)?);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> RunConfig {
        RunConfig::from_json(json).unwrap()
    }

    #[test]
    fn config_defaults_and_validation() {
        let c = RunConfig::new();
        assert_eq!(c.theorems.len(), 9);
        assert_eq!(c.family, OrliczFamily::linear());
        let round = RunConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(round, c);
        for bad in [
            r#"{"schema_version": 2}"#,
            r#"{"schema_version": 1, "tolerance": 0}"#,
            r#"{"schema_version": 1, "phi": "cosine"}"#,
            r#"{"schema_version": 1, "unknown": 3}"#,
            r#"{"schema_version": 1, "theorems": ["theorem9"]}"#,
            r#"{"schema_version": 1, "signals": [{"fixture": "probe", "path": "x"}]}"#,
            r#"{"schema_version": 1, "n": [0]}"#,
        ] {
            assert!(matches!(RunConfig::from_json(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn theorem1_on_extremal_fixture() {
        let c = cfg(r#"{"schema_version": 1, "signals": [{"fixture": "extremal"}], "theorems": ["theorem1"]}"#);
        let r = run_suite(&c).unwrap();
        assert_eq!(r.rows.len(), 1);
        let row = &r.rows[0];
        assert!(row.pass && row.theorem == "theorem1" && row.n == 3);
        assert!(row.margin.abs() <= 1e-6, "{row:?}");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn empty_and_corrupt_inputs() {
        let r = run_suite(&RunConfig::new()).unwrap();
        assert!(r.rows.is_empty() && r.exit_code() == 0);
        assert_eq!(r.to_csv(), format!("{CSV_HEADER}\n"));

        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.txt"), "1 0.5 0 0\n").unwrap();
        fs::write(dir.path().join("ok.txt"), "1 0.5 0 0.25 0\n2 0 1 0 0\n").unwrap();
        let path = dir.path().join("run.json");
        fs::write(
            &path,
            r#"{"schema_version": 1, "signals": [{"path": "bad.txt"}, {"path": "ok.txt"}, {"path": "missing.txt"}], "theorems": ["corollary2"]}"#,
        )
        .unwrap();
        let r = run_suite(&RunConfig::load(&path).unwrap()).unwrap();
        assert_eq!(r.errors.len(), 2);
        assert_eq!(r.summary.warnings, 2);
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|row| row.signal == "ok.txt" && row.pass));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn csv_is_deterministic_and_sorted() {
        let json = r#"{"schema_version": 1, "signals": [{"fixture": "random"}, {"fixture": "probe"}],
            "theorems": ["corollary2", "inverse"], "n": [1, 2], "seed": 11}"#;
        let a = run_suite(&cfg(json)).unwrap();
        let b = run_suite(&cfg(json)).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let keys: Vec<(String, String, usize)> = a.rows.iter().map(|r| (r.suite.clone(), r.signal.clone(), r.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(a.rows.iter().any(|r| r.signal == "random:11"));
        assert!(a.rows.iter().all(|r| r.pass));
        let line = a.to_csv().lines().nth(1).unwrap().to_string();
        assert_eq!(line.split(',').count(), 10);
        assert!(!a.to_csv().contains('\r'));
    }

    #[test]
    fn precondition_failures_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("const.txt"), "0 1 0 0 0\n1 0 0 0 0\n").unwrap();
        let path = dir.path().join("run.json");
        fs::write(&path, r#"{"schema_version": 1, "signals": [{"path": "const.txt"}], "theorems": ["corollary2"]}"#).unwrap();
        let r = run_suite(&RunConfig::load(&path).unwrap()).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.skipped.len(), 1);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn plots_written() {
        let c = cfg(r#"{"schema_version": 1, "signals": [{"fixture": "probe"}], "theorems": [], "plots": true}"#);
        let r = run_suite(&c).unwrap();
        let decay = r.series_of(PlotKind::Decay);
        assert_eq!(decay[0].points.iter().map(|p| p.1).collect::<Vec<_>>(), vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let ratios: Vec<f64> = r.series_of(PlotKind::Sharpness)[0].points.iter().map(|p| p.1).collect();
        assert!(ratios.windows(2).all(|w| w[1] > w[0]));
        let dir = tempfile::tempdir().unwrap();
        let files = write_outputs(&r, dir.path()).unwrap();
        assert_eq!(files.len(), 4);
        let svg = fs::read_to_string(dir.path().join("plots/decay.svg")).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("polyline"));
        let empty = svg_line_chart("t", "x", "y", &[]);
        assert!(empty.contains("<rect") && !empty.contains("polyline"));
    }

    #[test]
    fn fixtures_resolve() {
        for name in FIXTURES {
            assert!(fixture(name, 5).is_ok());
        }
        assert!(fixture("nope", 0).is_err());
        assert_eq!(bundled_sources().len(), 6);
        assert_eq!(random_signal(4), random_signal(4));
    }
}
