//! Direct (Jackson-type) estimates `E_{λ_n}(f) <= K · ω_φ(f, τ/λ_n)` and their
//! integral forms, the sharp constant as a linear program over nondecreasing
//! weights, and checkers that evaluate both sides on a concrete signal.

use std::f64::consts::{PI, SQRT_2};

use crate::approximation::best_approximation;
use crate::error::{Error, Result};
use crate::orlicz::{orlicz_norm, OrliczFamily};
use crate::quadrature::adaptive_simpson;
use crate::simplex::{self, LpError};
use crate::smoothness::{modulus, ModulusProfile, ModulusRequest, PhiFunction};
use crate::signal::{ApPolynomial, Spectrum};

/// Absolute tolerance of the Stieltjes quadratures.
pub const INTEGRAL_TOL: f64 = 1e-10;
/// Sampling intervals of the modulus profiles behind the integral forms.
pub const PROFILE_INTERVALS: usize = 512;
/// `pass` threshold for non-strict inequalities.
pub const MARGIN_TOL: f64 = 1e-9;
/// Margin required to certify a strict inequality.
pub const STRICT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum WeightKind {
    OneMinusCos,
    Identity,
    /// `v(u) = u^{m+1}`.
    Power(u32),
    /// Jumps `increments[j]` at `points[j]`.
    Grid { points: Vec<f64>, increments: Vec<f64> },
}

/// A nondecreasing weight `v` on `[0, τ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    tau: f64,
    kind: WeightKind,
}

impl WeightFunction {
    /// `v(u) = 1 − cos u`; nondecreasing only up to `π`.
    pub fn one_minus_cos(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau <= PI + 1e-15) {
            return Err(Error::invalid(format!("one_minus_cos needs 0 < tau <= pi, got {tau}")));
        }
        Ok(WeightFunction { tau, kind: WeightKind::OneMinusCos })
    }

    pub fn identity(tau: f64) -> Result<Self> {
        Self::check_tau(tau)?;
        Ok(WeightFunction { tau, kind: WeightKind::Identity })
    }

    /// `v(u) = u^{m+1}`.
    pub fn power(m: u32, tau: f64) -> Result<Self> {
        Self::check_tau(tau)?;
        Ok(WeightFunction { tau, kind: WeightKind::Power(m) })
    }

    /// Step weight with jump `increments[j]` at `points[j]`; the points must
    /// increase strictly from `0` and the last one is `τ`.
    pub fn grid(points: Vec<f64>, increments: Vec<f64>) -> Result<Self> {
        if points.len() != increments.len() || points.len() < 2 {
            return Err(Error::invalid("grid weight needs matching points and increments (at least two)"));
        }
        if points[0] != 0.0 || points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("grid points must start at 0 and increase strictly"));
        }
        if increments.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::invalid("grid increments must be finite and nonnegative"));
        }
        if !(increments.iter().sum::<f64>() > 0.0) {
            return Err(Error::invalid("grid weight must not be constant"));
        }
        let tau = *points.last().expect("nonempty");
        Ok(WeightFunction { tau, kind: WeightKind::Grid { points, increments } })
    }

    /// Jumps at `t_j = jτ/J`, `j = 1..=J`, with `increments[j-1]` at `t_j`.
    pub fn uniform_grid(tau: f64, increments: &[f64]) -> Result<Self> {
        Self::check_tau(tau)?;
        let j = increments.len();
        let mut points = vec![0.0];
        points.extend((1..=j).map(|i| if i == j { tau } else { tau * i as f64 / j as f64 }));
        let mut incs = vec![0.0];
        incs.extend_from_slice(increments);
        Self::grid(points, incs)
    }

    /// Reads `t w` pairs, one per line, `#` comments allowed.
    pub fn from_grid_text(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut increments = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse { line: i + 1, message: format!("bad number '{s}'") });
            if fields.len() != 2 {
                return Err(Error::Parse { line: i + 1, message: "expected 't w'".into() });
            }
            points.push(parse(fields[0])?);
            increments.push(parse(fields[1])?);
        }
        if points.first() != Some(&0.0) {
            points.insert(0, 0.0);
            increments.insert(0, 0.0);
        }
        Self::grid(points, increments)
    }

    /// Parses `one_minus_cos`, `identity` or `power:m`; `τ` comes separately.
    pub fn parse(spec: &str, tau: f64) -> Result<Self> {
        match spec.trim() {
            "one_minus_cos" => Self::one_minus_cos(tau),
            "identity" => Self::identity(tau),
            s => match s.strip_prefix("power:") {
                Some(m) => Self::power(m.parse().map_err(|_| Error::invalid(format!("bad power weight '{s}'")))?, tau),
                None => Err(Error::invalid(format!("unknown weight '{s}'"))),
            },
        }
    }

    fn check_tau(tau: f64) -> Result<()> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::invalid(format!("tau must be positive, got {tau}")));
        }
        Ok(())
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn label(&self) -> String {
        match &self.kind {
            WeightKind::OneMinusCos => "one_minus_cos".into(),
            WeightKind::Identity => "identity".into(),
            WeightKind::Power(m) => format!("power:{m}"),
            WeightKind::Grid { points, .. } => format!("grid:{}", points.len()),
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, self.tau);
        match &self.kind {
            WeightKind::OneMinusCos => 1.0 - u.cos(),
            WeightKind::Identity => u,
            WeightKind::Power(m) => u.powi(*m as i32 + 1),
            WeightKind::Grid { points, increments } => {
                points.iter().zip(increments).take_while(|(p, _)| **p <= u).map(|(_, w)| w).sum()
            }
        }
    }

    /// `v'(u)` for the absolutely continuous presets.
    pub fn density(&self, u: f64) -> Option<f64> {
        match &self.kind {
            WeightKind::OneMinusCos => Some(u.sin()),
            WeightKind::Identity => Some(1.0),
            WeightKind::Power(m) => Some((*m as f64 + 1.0) * u.powi(*m as i32)),
            WeightKind::Grid { .. } => None,
        }
    }

    /// `v(τ) − v(0)`.
    pub fn total_variation(&self) -> f64 {
        match &self.kind {
            WeightKind::Grid { increments, .. } => increments.iter().sum(),
            _ => self.value(self.tau) - self.value(0.0),
        }
    }

    /// `(t_j, w_j)` for grid weights.
    pub fn jumps(&self) -> Option<Vec<(f64, f64)>> {
        match &self.kind {
            WeightKind::Grid { points, increments } => Some(points.iter().copied().zip(increments.iter().copied()).collect()),
            _ => None,
        }
    }

    /// `∫_0^τ g(u) dv(u)`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64, oscillation: f64) -> f64 {
        match &self.kind {
            WeightKind::Grid { points, increments } => points.iter().zip(increments).map(|(&t, &w)| g(t) * w).sum(),
            _ => {
                let panels = ((oscillation * self.tau / (PI / 4.0)).ceil() as usize).max(4);
                adaptive_simpson(|u| g(u) * self.density(u).expect("continuous weight"), 0.0, self.tau, INTEGRAL_TOL, panels)
            }
        }
    }
}

/// `I_{n,φ}(τ, v)` with the index attaining the infimum.
#[derive(Debug, Clone, PartialEq)]
pub struct JacksonIntegral {
    pub value: f64,
    pub argmin: usize,
    /// `(k, ∫_0^τ φ(λ_k t/λ_n) dv(t))` over the window.
    pub per_index: Vec<(usize, f64)>,
}

fn window(n: usize, spectrum: &Spectrum, k_window: Option<usize>) -> Result<(usize, usize)> {
    let kk = spectrum.len();
    if n == 0 || n > kk {
        return Err(Error::OutOfRange { index: n, max: kk });
    }
    let hi = match k_window {
        Some(0) => return Err(Error::invalid("k_window must be at least 1")),
        Some(w) => (n + w).min(kk),
        None => kk,
    };
    Ok((n, hi))
}

/// `I_{n,φ}(τ, v) = min_{n <= k <= n + k_window} ∫_0^τ φ(λ_k t/λ_n) dv(t)`.
/// `None` uses every index of the spectrum from `n` on.
pub fn jackson_integral(
    n: usize,
    phi: &PhiFunction,
    v: &WeightFunction,
    spectrum: &Spectrum,
    k_window: Option<usize>,
) -> Result<JacksonIntegral> {
    let (lo, hi) = window(n, spectrum, k_window)?;
    let ln = spectrum.lambda(n as i64);
    let per_index: Vec<(usize, f64)> = (lo..=hi)
        .map(|k| {
            let theta = spectrum.lambda(k as i64) / ln;
            (k, v.integrate(|t| phi.value(theta * t), theta))
        })
        .collect();
    // ties within quadrature noise go to the smallest k
    let mut best = per_index[0];
    for &(k, val) in &per_index[1..] {
        if val < best.1 - 1e-12 * best.1.abs().max(1.0) {
            best = (k, val);
        }
    }
    Ok(JacksonIntegral { value: best.1, argmin: best.0, per_index })
}

/// `F_α(x) = (1/x) ∫_0^x |sin t|^α dt`.
pub fn sine_power_mean(alpha: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid("sine_power_mean needs x > 0"));
    }
    let panels = ((x / (PI / 4.0)).ceil() as usize).max(4);
    Ok(adaptive_simpson(|t: f64| t.sin().abs().powf(alpha), 0.0, x, INTEGRAL_TOL * x.min(1.0), panels) / x)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `K(m) = ∫_0^π u^{2m} sin u du / (2m)!`.
pub fn km_constant(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("K(m) needs m >= 1"));
    }
    let scale = PI.powi(2 * m as i32);
    let integral = adaptive_simpson(|u: f64| u.powi(2 * m as i32) * u.sin(), 0.0, PI, 1e-14 * scale, 8);
    Ok(integral / factorial(2 * m))
}

/// The closed-form alternating sum sometimes quoted for `K(m)`:
/// `Σ_{j=0}^m (−1)^j π^{2m−2j}/(2m−2j)! + (−1)^m π^{2m}/(2m)!`.
/// It disagrees with the integral definition (for `m = 1` it gives `−1`), so it
/// is only exposed for comparison.
pub fn km_displayed_sum(m: u32) -> f64 {
    let mm = 2 * m;
    let sum: f64 = (0..=m)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * PI.powi((mm - 2 * j) as i32) / factorial(mm - 2 * j)
        })
        .sum();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    sum + sign * PI.powi(mm as i32) / factorial(mm)
}

/// Result of [`sharp_constant_lp`].
#[derive(Debug, Clone)]
pub struct SharpConstant {
    /// LP optimum `min Σ w_j` subject to `Σ_j φ(λ_k t_j/λ_n) w_j >= 1`.
    pub value: f64,
    pub weight: WeightFunction,
    /// Window `[n, k_max]` used as the constraint set.
    pub window: (usize, usize),
    /// `(label, (v(τ) − v(0)) / I_{n,φ}(τ, v))` for the applicable presets.
    pub preset_ratios: Vec<(String, f64)>,
}

/// Preset weights that are nondecreasing on `[0, τ]`.
pub fn preset_weights(tau: f64) -> Result<Vec<WeightFunction>> {
    let mut out = Vec::new();
    if tau <= PI {
        out.push(WeightFunction::one_minus_cos(tau)?);
    }
    out.push(WeightFunction::identity(tau)?);
    out.push(WeightFunction::power(1, tau)?);
    out.push(WeightFunction::power(2, tau)?);
    Ok(out)
}

/// `K_{n,φ}(τ) = inf_v (v(τ) − v(0)) / I_{n,φ}(τ, v)` over step weights on the
/// uniform grid `t_j = jτ/G`, `j = 1..=G`.
///
/// Solved through its dual `max Σ_k y_k` subject to
/// `Σ_k φ(λ_k t_j/λ_n) y_k <= 1`, whose slack basis is feasible; the weights
/// are the optimal multipliers of the grid rows.
pub fn sharp_constant_lp(
    n: usize,
    phi: &PhiFunction,
    tau: f64,
    spectrum: &Spectrum,
    grid_points: usize,
    k_window: Option<usize>,
) -> Result<SharpConstant> {
    if grid_points < 8 {
        return Err(Error::invalid("sharp_constant_lp needs at least 8 grid points"));
    }
    if !(tau > 0.0) {
        return Err(Error::invalid("tau must be positive"));
    }
    let (lo, hi) = window(n, spectrum, k_window)?;
    let ln = spectrum.lambda(n as i64);
    let ks: Vec<usize> = (lo..=hi).collect();
    let ts: Vec<f64> = (1..=grid_points).map(|j| tau * j as f64 / grid_points as f64).collect();
    let rows: Vec<Vec<f64>> = ts
        .iter()
        .map(|&t| ks.iter().map(|&k| phi.value(spectrum.lambda(k as i64) * t / ln)).collect())
        .collect();
    for (c, &k) in ks.iter().enumerate() {
        if rows.iter().all(|r| r[c] <= 0.0) {
            return Err(Error::DegeneratePhi { k });
        }
    }
    let sol = match simplex::maximize(&vec![1.0; ks.len()], &rows, &vec![1.0; ts.len()]) {
        Ok(s) => s,
        Err(LpError::Unbounded { column }) => return Err(Error::DegeneratePhi { k: ks[column.min(ks.len() - 1)] }),
        Err(LpError::Malformed(m)) => return Err(Error::invalid(m)),
    };
    let weight = WeightFunction::uniform_grid(tau, &sol.duals)?;
    let mut preset_ratios = Vec::new();
    for v in preset_weights(tau)? {
        let i = jackson_integral(n, phi, &v, spectrum, k_window)?;
        if i.value > 0.0 {
            preset_ratios.push((v.label(), v.total_variation() / i.value));
        }
    }
    Ok(SharpConstant { value: sol.objective, weight, window: (lo, hi), preset_ratios })
}

/// One checked inequality `lhs <= rhs` (or `lhs < rhs` when `strict`).
#[derive(Debug, Clone, PartialEq)]
pub struct JacksonCertificate {
    pub theorem: String,
    pub n: usize,
    pub phi: String,
    pub family: String,
    /// `E_{λ_n}(f)_M`.
    pub lhs: f64,
    /// Right-hand side evaluated on the attained (lower) modulus samples.
    pub rhs: f64,
    /// Certified lower bound of the right-hand side.
    pub rhs_lower: f64,
    /// Certified upper bound of the right-hand side.
    pub rhs_upper: f64,
    pub constant: f64,
    pub margin: f64,
    pub strict: bool,
    pub pass: bool,
}

impl JacksonCertificate {
    #[allow(clippy::too_many_arguments)]
    fn new(theorem: &str, n: usize, phi: &PhiFunction, family: &OrliczFamily, lhs: f64, rhs: (f64, f64, f64), constant: f64, strict: bool) -> Self {
        let margin = rhs.0 - lhs;
        let pass = if strict { margin > STRICT_MARGIN } else { margin >= -MARGIN_TOL };
        JacksonCertificate {
            theorem: theorem.into(),
            n,
            phi: phi.label(),
            family: family.label(),
            lhs,
            rhs: rhs.0,
            rhs_lower: rhs.1,
            rhs_upper: rhs.2,
            constant,
            margin,
            strict,
            pass,
        }
    }

    /// `|lhs − rhs|`, for the cases where the inequality is an equality.
    pub fn equality_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

fn check_index(f: &ApPolynomial, n: usize) -> Result<()> {
    if n == 0 || n > f.degree() {
        return Err(Error::OutOfRange { index: n, max: f.degree() });
    }
    Ok(())
}

/// `(1/I) ∫_0^τ ω_φ(f, u/λ_n) dv(u)` as (estimate, certified lower, certified upper).
fn weighted_modulus_integral(
    f: &ApPolynomial,
    n: usize,
    phi: &PhiFunction,
    v: &WeightFunction,
    family: &OrliczFamily,
) -> Result<(f64, f64, f64)> {
    let ln = f.spectrum().lambda(n as i64);
    let tau = v.tau();
    match v.jumps() {
        None => {
            let prof = ModulusProfile::sample(f, phi, family, tau / ln, PROFILE_INTERVALS)?;
            let est = prof.integrate(|d| v.density(d * ln).expect("continuous weight") * ln);
            let (lo, hi) = prof.stieltjes_bracket(|d| v.value(d * ln));
            Ok((est, lo, hi))
        }
        Some(jumps) => {
            let mut est = 0.0;
            let mut hi = 0.0;
            for (t, w) in jumps {
                if w == 0.0 || t == 0.0 {
                    continue;
                }
                let m = modulus(&ModulusRequest::new(f, phi, t / ln, family))?;
                est += w * m.lower;
                hi += w * m.upper;
            }
            Ok((est, est, hi))
        }
    }
}

/// The two direct estimates for a given weight `v`:
/// `E_{λ_n} <= (1/I) ∫_0^τ ω_φ(f, u/λ_n) dv(u)` and
/// `E_{λ_n} <= ((v(τ) − v(0))/I) ω_φ(f, τ/λ_n)`, with `I = I_{n,φ}(τ, v)`.
pub fn verify_theorem1(
    f: &ApPolynomial,
    n: usize,
    phi: &PhiFunction,
    v: &WeightFunction,
    family: &OrliczFamily,
    k_window: Option<usize>,
) -> Result<Vec<JacksonCertificate>> {
    check_index(f, n)?;
    let lhs = best_approximation(f, n, family)?;
    let i = jackson_integral(n, phi, v, f.spectrum(), k_window)?;
    if !(i.value > 0.0) {
        return Err(Error::DegeneratePhi { k: i.argmin });
    }
    let (est, lo, hi) = weighted_modulus_integral(f, n, phi, v, family)?;
    let integral = JacksonCertificate::new("theorem1_integral", n, phi, family, lhs, (est / i.value, lo / i.value, hi / i.value), 1.0 / i.value, false);
    let k = v.total_variation() / i.value;
    let ln = f.spectrum().lambda(n as i64);
    let m = modulus(&ModulusRequest::new(f, phi, v.tau() / ln, family))?;
    let constant = JacksonCertificate::new("theorem1_constant", n, phi, family, lhs, (k * m.lower, k * m.lower, k * m.upper), k, false);
    Ok(vec![integral, constant])
}

/// `E_{λ_n} < 4/(3·2^{α/2}) ω_α(f, π/λ_n)`, and for integer `α = m` also
/// `E_{λ_n} < (4 − 2√2)/2^{m/2} ω_m(f, π/λ_n)`.
pub fn verify_corollary2(f: &ApPolynomial, n: usize, alpha: f64, family: &OrliczFamily) -> Result<Vec<JacksonCertificate>> {
    check_index(f, n)?;
    if orlicz_norm(&f.without_constant(), family)? == 0.0 {
        return Err(Error::PreconditionViolated("the signal is constant, so both sides vanish".into()));
    }
    let phi = PhiFunction::sine_power(alpha)?;
    let lhs = best_approximation(f, n, family)?;
    let ln = f.spectrum().lambda(n as i64);
    let m = modulus(&ModulusRequest::new(f, &phi, PI / ln, family))?;
    let mut out = Vec::new();
    let c = corollary2_constant(alpha);
    out.push(JacksonCertificate::new("corollary2", n, &phi, family, lhs, (c * m.lower, c * m.lower, c * m.upper), c, true));
    if let Some(c) = corollary2_integer_constant(alpha) {
        out.push(JacksonCertificate::new("corollary2_integer", n, &phi, family, lhs, (c * m.lower, c * m.lower, c * m.upper), c, true));
    }
    Ok(out)
}

/// `4/(3·2^{α/2})`.
pub fn corollary2_constant(alpha: f64) -> f64 {
    4.0 / (3.0 * 2f64.powf(alpha / 2.0))
}

/// `(4 − 2√2)/2^{m/2}` when `α = m` is a positive integer.
pub fn corollary2_integer_constant(alpha: f64) -> Option<f64> {
    (alpha >= 1.0 && alpha.fract() == 0.0).then(|| (4.0 - 2.0 * SQRT_2) / 2f64.powf(alpha / 2.0))
}

/// `2^α ∫_0^τ sin^α(t/2) dt`.
pub fn corollary3_denominator(alpha: f64, tau: f64) -> f64 {
    2f64.powf(alpha) * adaptive_simpson(|t: f64| (0.5 * t).sin().powf(alpha), 0.0, tau, 1e-13, 8)
}

/// `E_{λ_n} <= (1/(2^α ∫_0^τ sin^α(t/2) dt)) ∫_0^τ ω_α(f, t/λ_n) dt` for
/// `0 < τ <= 3π/4`, `α >= 1`.
pub fn verify_corollary3(f: &ApPolynomial, n: usize, alpha: f64, tau: f64, family: &OrliczFamily) -> Result<JacksonCertificate> {
    check_index(f, n)?;
    if !(tau > 0.0 && tau <= 0.75 * PI + 1e-15) {
        return Err(Error::invalid(format!("tau must lie in (0, 3π/4], got {tau}")));
    }
    if !(alpha >= 1.0) {
        return Err(Error::invalid(format!("alpha must be at least 1, got {alpha}")));
    }
    let phi = PhiFunction::sine_power(alpha)?;
    let lhs = best_approximation(f, n, family)?;
    let ln = f.spectrum().lambda(n as i64);
    let c = 1.0 / corollary3_denominator(alpha, tau);
    let prof = ModulusProfile::sample(f, &phi, family, tau / ln, PROFILE_INTERVALS)?;
    let est = prof.integrate(|_| ln);
    let (lo, hi) = prof.stieltjes_bracket(|d| d * ln);
    Ok(JacksonCertificate::new("corollary3", n, &phi, family, lhs, (c * est, c * lo, c * hi), c, false))
}

/// `π^{2m} / ((2m)! K(m))`.
pub fn corollary4_constant(m: u32) -> Result<f64> {
    Ok(PI.powi(2 * m as i32) / (factorial(2 * m) * km_constant(m)?))
}

/// `π^{m−1} (2λ_n/(π² − 4))^m λ_n`.
pub fn corollary5_constant(m: u32, lambda_n: f64) -> f64 {
    PI.powi(m as i32 - 1) * (2.0 * lambda_n / (PI * PI - 4.0)).powi(m as i32) * lambda_n
}

/// Steklov-modulus estimates
/// `E_{λ_n} <= π^{2m}/((2m)! K(m)) ∫_0^π ω̃_m(f, u/λ_n) sin u du` and
/// `E_{λ_n} <= π^{m−1} (2λ_n/(π²−4))^m λ_n ∫_0^{π/λ_n} ω̃_m(f, t) t^m dt`.
pub fn verify_corollary45(f: &ApPolynomial, n: usize, m: u32, family: &OrliczFamily) -> Result<Vec<JacksonCertificate>> {
    check_index(f, n)?;
    let phi = PhiFunction::sinc_power(m)?;
    let lhs = best_approximation(f, n, family)?;
    let ln = f.spectrum().lambda(n as i64);
    let prof = ModulusProfile::sample(f, &phi, family, PI / ln, PROFILE_INTERVALS)?;

    let c4 = corollary4_constant(m)?;
    let est = prof.integrate(|d| (d * ln).sin() * ln);
    let (lo, hi) = prof.stieltjes_bracket(|d| 1.0 - (d * ln).cos());
    let cor4 = JacksonCertificate::new("corollary4", n, &phi, family, lhs, (c4 * est, c4 * lo, c4 * hi), c4, false);

    let c5 = corollary5_constant(m, ln);
    let mp1 = m as i32 + 1;
    let est = prof.integrate(|d| d.powi(m as i32));
    let (lo, hi) = prof.stieltjes_bracket(|d| d.powi(mp1) / mp1 as f64);
    let cor5 = JacksonCertificate::new("corollary5", n, &phi, family, lhs, (c5 * est, c5 * lo, c5 * hi), c5, false);
    Ok(vec![cor4, cor5])
}
