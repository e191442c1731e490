//! Generalized moduli of smoothness
//! `ω_φ(f, δ) = sup_{|h| <= δ} ‖{φ(λ_k h) |A_k|}‖_M`.
//!
//! The supremum is sampled, so every estimate carries a certified lower bound
//! (an attained value) and an upper bound (lower bound plus a continuity gap
//! over the sampling radius).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::optimize::golden_max;
use crate::orlicz::{sequence_norm, OrliczFamily};
use crate::signal::{sinc, ApPolynomial, ThetaCollection};

pub const DEFAULT_H_GRID: usize = 512;
pub const REFINE_ITERATIONS: usize = 40;
const SUP_SEARCH_POINTS: usize = 10 * DEFAULT_H_GRID;

/// First positive root of `tan t = t`: where `sinc` attains its minimum.
fn sinc_argmin() -> f64 {
    let mut t: f64 = 4.493;
    for _ in 0..50 {
        let g = t.tan() - t;
        let dg = 1.0 / (t.cos() * t.cos()) - 1.0;
        t -= g / dg;
    }
    t
}

/// A user-supplied `φ`. `sup_value`/`sup_argument` are estimated on
/// `[0, search_max]` unless declared.
#[derive(Clone)]
pub struct CustomPhi {
    name: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    sup_value: f64,
    sup_argument: f64,
    lipschitz: f64,
}

impl CustomPhi {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static, search_max: f64) -> Result<Self> {
        if !(search_max > 0.0) {
            return Err(Error::invalid("custom phi search range must be positive"));
        }
        let eval: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(eval);
        let step = search_max / SUP_SEARCH_POINTS as f64;
        let samples: Vec<f64> = (0..=SUP_SEARCH_POINTS).map(|i| eval(i as f64 * step)).collect();
        if samples[0].abs() > 1e-12 {
            return Err(Error::invalid("custom phi must vanish at 0"));
        }
        if samples.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::invalid("custom phi must be finite and nonnegative"));
        }
        if samples.windows(2).skip(1).any(|w| w[0] == 0.0 && w[1] == 0.0) {
            return Err(Error::invalid("custom phi vanishes on an interval"));
        }
        let (imax, vmax) = samples.iter().enumerate().fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let lipschitz = samples.windows(2).map(|w| (w[1] - w[0]).abs() / step).fold(0.0, f64::max);
        Ok(CustomPhi { name: name.into(), eval, sup_value: vmax, sup_argument: imax as f64 * step, lipschitz })
    }

    /// Overrides the grid-estimated maximum and its location.
    pub fn with_sup(mut self, value: f64, argument: f64) -> Self {
        self.sup_value = value;
        self.sup_argument = argument;
        self
    }

    /// Overrides the grid-estimated Lipschitz constant.
    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz = l;
        self
    }
}

impl fmt::Debug for CustomPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPhi")
            .field("name", &self.name)
            .field("sup_value", &self.sup_value)
            .field("sup_argument", &self.sup_argument)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum PhiFunction {
    /// `φ_α(t) = 2^α |sin(t/2)|^α`.
    SinePower { alpha: f64 },
    /// `φ̃_m(t) = (1 - sinc t)^m`.
    SincPower { m: u32 },
    /// `φ_Θ(t) = |Σ_j θ_j e^{-ijt}|`.
    FromTheta(ThetaCollection),
    Custom(CustomPhi),
}

impl PhiFunction {
    pub fn sine_power(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("sine_power needs alpha > 0, got {alpha}")));
        }
        Ok(PhiFunction::SinePower { alpha })
    }

    pub fn sinc_power(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("sinc_power needs m >= 1"));
        }
        Ok(PhiFunction::SincPower { m })
    }

    /// Parses `sine_power:2.0`, `sinc_power:3` or `theta:[1,-2,1]`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, arg) = text.split_once(':').ok_or_else(|| Error::invalid(format!("phi spec '{text}' lacks ':'")))?;
        let bad = || Error::invalid(format!("cannot parse phi spec '{text}'"));
        match kind.trim() {
            "sine_power" => Self::sine_power(arg.trim().parse().map_err(|_| bad())?),
            "sinc_power" => Self::sinc_power(arg.trim().parse().map_err(|_| bad())?),
            "theta" => {
                let thetas: Vec<f64> = serde_json::from_str(arg.trim()).map_err(|_| bad())?;
                Ok(PhiFunction::FromTheta(ThetaCollection::from_real(&thetas)?))
            }
            _ => Err(bad()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            PhiFunction::SinePower { alpha } => format!("sine_power:{alpha}"),
            PhiFunction::SincPower { m } => format!("sinc_power:{m}"),
            PhiFunction::FromTheta(t) => {
                let parts: Vec<String> = t
                    .thetas()
                    .iter()
                    .map(|c| if c.im == 0.0 { format!("{}", c.re) } else { format!("{}{:+}i", c.re, c.im) })
                    .collect();
                format!("theta:[{}]", parts.join(","))
            }
            PhiFunction::Custom(c) => format!("custom:{}", c.name),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            PhiFunction::SinePower { alpha } => {
                let s = 2.0 * (0.5 * t).sin().abs();
                if *alpha == 1.0 {
                    s
                } else if *alpha == 2.0 {
                    s * s
                } else {
                    s.powf(*alpha)
                }
            }
            PhiFunction::SincPower { m } => (1.0 - sinc(t)).powi(*m as i32),
            PhiFunction::FromTheta(theta) => theta.symbol(t).norm(),
            PhiFunction::Custom(c) => (c.eval)(t.abs()),
        }
    }

    /// `(K(φ), τ_φ)`: the maximum of `φ` and its smallest maximizer.
    pub fn sup(&self) -> (f64, f64) {
        match self {
            PhiFunction::SinePower { alpha } => (2f64.powf(*alpha), PI),
            PhiFunction::SincPower { m } => {
                let t = sinc_argmin();
                ((1.0 - sinc(t)).powi(*m as i32), t)
            }
            PhiFunction::FromTheta(_) => {
                // 2π-periodic: grid over one period, then golden refinement
                let step = 2.0 * PI / SUP_SEARCH_POINTS as f64;
                let (i, v) = (0..=SUP_SEARCH_POINTS)
                    .map(|i| (i, self.value(i as f64 * step)))
                    .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 + 1e-13 { x } else { acc });
                let lo = (i as f64 - 1.0).max(0.0) * step;
                let hi = (i as f64 + 1.0) * step;
                let (t, w) = golden_max(|t| self.value(t), lo, hi, 1e-14, 200);
                if w > v {
                    (w, t)
                } else {
                    (v, i as f64 * step)
                }
            }
            PhiFunction::Custom(c) => (c.sup_value, c.sup_argument),
        }
    }

    pub fn sup_value(&self) -> f64 {
        self.sup().0
    }

    pub fn sup_argument(&self) -> f64 {
        self.sup().1
    }

    /// `c(d) >= |φ(t + d) − φ(t)|` for all `t` and `d >= 0`. Certified for the
    /// presets; a grid estimate for custom `φ`.
    pub fn continuity_bound(&self, d: f64) -> f64 {
        let d = d.abs();
        let raw = match self {
            PhiFunction::SinePower { alpha } => {
                if *alpha >= 1.0 {
                    2f64.powf(alpha - 1.0) * alpha * d
                } else {
                    d.powf(*alpha)
                }
            }
            // |sinc'| <= 0.4362 and 1 - sinc <= 1.2173
            PhiFunction::SincPower { m } => {
                let m = *m as f64;
                m * 1.2173f64.powf(m - 1.0) * 0.44 * d
            }
            PhiFunction::FromTheta(theta) => {
                let l: f64 = theta.thetas().iter().enumerate().map(|(j, c)| j as f64 * c.norm()).sum();
                l * d
            }
            PhiFunction::Custom(c) => c.lipschitz * d,
        };
        let cap = match self {
            PhiFunction::FromTheta(theta) => theta.thetas().iter().map(|c| c.norm()).sum(),
            _ => self.sup_value(),
        };
        raw.min(cap)
    }

    /// Checks the inverse-theorem hypothesis on a grid: `φ` nondecreasing on
    /// `[0, τ_φ]` and `φ(τ_φ) = max φ`.
    pub fn check_monotone_to_sup(&self) -> Result<()> {
        let (k, tau) = self.sup();
        const N: usize = 10_000;
        let mut prev = self.value(0.0);
        for i in 1..=N {
            let cur = self.value(tau * i as f64 / N as f64);
            if cur < prev - 1e-12 {
                return Err(Error::InvalidPhi(format!(
                    "{} decreases near t = {:.6} on [0, {tau:.6}]",
                    self.label(),
                    tau * i as f64 / N as f64
                )));
            }
            prev = cur;
        }
        if self.value(tau) < k - 1e-12 {
            return Err(Error::InvalidPhi(format!("{} does not attain its maximum at tau", self.label())));
        }
        Ok(())
    }
}

/// `φ(t)`.
pub fn phi_value(phi: &PhiFunction, t: f64) -> f64 {
    phi.value(t)
}

/// `‖Δ_h^φ f‖_M`: the norm of `{φ(λ_k h) |A_k|}`.
pub fn phi_difference_norm(f: &ApPolynomial, phi: &PhiFunction, h: f64, family: &OrliczFamily) -> Result<f64> {
    let mags: Vec<(i64, f64)> = f
        .terms()
        .filter(|t| t.2.norm() > 0.0)
        .map(|(k, l, a)| (k, phi.value(l * h) * a.norm()))
        .collect();
    sequence_norm(&mags, family)
}

/// A two-sided estimate of the supremum defining the modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusEstimate {
    /// An attained value of `‖Δ_h^φ f‖`, so never above the true modulus.
    pub lower: f64,
    /// Certified bound from branch and bound over `[0, δ]`.
    pub upper: f64,
    /// Step `h` where `lower` was attained.
    pub argmax: f64,
}

#[derive(Debug, Clone)]
pub struct ModulusRequest<'a> {
    pub f: &'a ApPolynomial,
    pub phi: &'a PhiFunction,
    pub delta: f64,
    pub family: &'a OrliczFamily,
    pub h_grid_points: usize,
}

impl<'a> ModulusRequest<'a> {
    pub fn new(f: &'a ApPolynomial, phi: &'a PhiFunction, delta: f64, family: &'a OrliczFamily) -> Self {
        ModulusRequest { f, phi, delta, family, h_grid_points: DEFAULT_H_GRID }
    }
}

/// Bound on `N(h') − N(h)` for `|h' − h| <= radius`, by the triangle inequality
/// and monotonicity of the norm.
fn continuity_gap(f: &ApPolynomial, phi: &PhiFunction, family: &OrliczFamily, radius: f64) -> Result<f64> {
    let mags: Vec<(i64, f64)> = f
        .terms()
        .filter(|t| t.2.norm() > 0.0 && t.0 != 0)
        .map(|(k, l, a)| (k, phi.continuity_bound(l.abs() * radius) * a.norm()))
        .collect();
    sequence_norm(&mags, family)
}

fn sample_norms(f: &ApPolynomial, phi: &PhiFunction, family: &OrliczFamily, hs: &[f64]) -> Result<Vec<f64>> {
    hs.par_iter().map(|&h| phi_difference_norm(f, phi, h, family)).collect()
}

/// `ω_φ(f, δ)_M`: uniform grid of `h_grid_points` steps on `[0, δ]`, then
/// golden-section refinement around the best cell.
pub fn modulus(req: &ModulusRequest<'_>) -> Result<ModulusEstimate> {
    if !(req.delta >= 0.0) || !req.delta.is_finite() {
        return Err(Error::invalid(format!("delta must be a finite nonnegative number, got {}", req.delta)));
    }
    if req.h_grid_points < 64 {
        return Err(Error::invalid(format!("h_grid_points must be at least 64, got {}", req.h_grid_points)));
    }
    if req.delta == 0.0 {
        return Ok(ModulusEstimate { lower: 0.0, upper: 0.0, argmax: 0.0 });
    }
    let g = req.h_grid_points;
    let step = req.delta / g as f64;
    let hs: Vec<f64> = (0..=g).map(|j| if j == g { req.delta } else { j as f64 * step }).collect();
    let values = sample_norms(req.f, req.phi, req.family, &hs)?;
    let (jbest, mut best) = values.iter().copied().enumerate().fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let mut argmax = hs[jbest];

    let lo = hs[jbest.saturating_sub(1)];
    let hi = hs[(jbest + 1).min(g)];
    let mut failure = None;
    let (h_ref, v_ref) = golden_max(
        |h| match phi_difference_norm(req.f, req.phi, h, req.family) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NEG_INFINITY
            }
        },
        lo,
        hi,
        0.0,
        REFINE_ITERATIONS,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    if v_ref > best {
        best = v_ref;
        argmax = h_ref;
    }
    let (upper, refined, refined_arg) = certify_upper(req, &hs, &values, best)?;
    if refined > best {
        best = refined;
        argmax = refined_arg;
    }
    Ok(ModulusEstimate { lower: best, upper: upper.max(best), argmax })
}

const UPPER_REL_TOL: f64 = 1e-7;
const UPPER_EXTRA_EVALS: usize = 2048;

/// Upper bound for `max φ` on `[s, t]`: exact for the sine powers and on the
/// rising branch `[0, τ_φ]` of the sinc powers, otherwise the larger endpoint
/// value plus the continuity bound of the half width, capped by `sup φ`.
fn interval_sup_bound(phi: &PhiFunction, (sup, tau): (f64, f64), s: f64, t: f64) -> f64 {
    let even = |x: f64, y: f64| if x.abs() <= y.abs() { (x.abs(), y.abs()) } else { (y.abs(), x.abs()) };
    match phi {
        PhiFunction::SinePower { .. } => {
            let (a, b) = even(s, t);
            // peaks at odd multiples of π
            let j = ((a / PI - 1.0) / 2.0).ceil().max(0.0);
            if (2.0 * j + 1.0) * PI <= b {
                sup
            } else {
                phi.value(a).max(phi.value(b))
            }
        }
        PhiFunction::SincPower { .. } if even(s, t).1 <= tau => phi.value(even(s, t).1),
        _ => (phi.value(s).max(phi.value(t)) + phi.continuity_bound(0.5 * (t - s).abs())).min(sup),
    }
}

/// Branch and bound over grid cells. A cell `[a, b]` is bounded by the
/// smaller of (endpoint maximum + continuity gap of radius `(b − a)/2`) and
/// the norm of the componentwise interval maxima of `φ(λ_k h)`, which is
/// valid because the norm is monotone in each `|A_k|`. Cells within
/// tolerance of the best attained value are dropped with their bound
/// recorded; the rest are bisected until the evaluation budget runs out.
/// Returns `(upper, best attained, its argument)`.
fn certify_upper(req: &ModulusRequest<'_>, hs: &[f64], values: &[f64], best: f64) -> Result<(f64, f64, f64)> {
    let terms: Vec<(i64, f64, f64)> = req.f.terms().filter(|t| t.2.norm() > 0.0).map(|(k, l, a)| (k, l, a.norm())).collect();
    let sup = req.phi.sup();
    let cell_bound = |a: f64, b: f64| -> Result<f64> {
        let mags: Vec<(i64, f64)> = terms.iter().map(|&(k, l, m)| (k, interval_sup_bound(req.phi, sup, l * a, l * b) * m)).collect();
        sequence_norm(&mags, req.family)
    };
    let mut lower = best;
    let mut arg = 0.0;
    let mut dropped = f64::NEG_INFINITY;
    let mut width = hs[1] - hs[0];
    let mut cells: Vec<(f64, f64, f64, f64)> =
        hs.windows(2).zip(values.windows(2)).map(|(h, v)| (h[0], h[1], v[0], v[1])).collect();
    let mut evals = 0;
    loop {
        let gap = continuity_gap(req.f, req.phi, req.family, 0.5 * width)?;
        cells.retain(|c| {
            let ub = c.2.max(c.3) + gap;
            if ub <= lower {
                dropped = dropped.max(ub);
            }
            ub > lower
        });
        let bounds: Vec<f64> = cells.par_iter().map(|c| cell_bound(c.0, c.1)).collect::<Result<_>>()?;
        evals += cells.len();
        let eps = UPPER_REL_TOL * lower;
        let mut open = Vec::with_capacity(cells.len());
        let mut open_ub = f64::NEG_INFINITY;
        for (c, b) in cells.iter().zip(&bounds) {
            let ub = b.min(c.2.max(c.3) + gap);
            if ub <= lower + eps {
                dropped = dropped.max(ub);
            } else {
                open.push(*c);
                open_ub = open_ub.max(ub);
            }
        }
        if open.is_empty() {
            return Ok((dropped.max(lower), lower, arg));
        }
        if evals + 2 * open.len() > UPPER_EXTRA_EVALS {
            return Ok((open_ub.max(dropped).max(lower), lower, arg));
        }
        let mids: Vec<f64> = open.iter().map(|c| 0.5 * (c.0 + c.1)).collect();
        let mid_vals = sample_norms(req.f, req.phi, req.family, &mids)?;
        evals += mids.len();
        let mut next = Vec::with_capacity(2 * open.len());
        for ((c, m), v) in open.iter().zip(&mids).zip(&mid_vals) {
            if *v > lower {
                lower = *v;
                arg = *m;
            }
            next.push((c.0, *m, c.2, *v));
            next.push((*m, c.1, *v, c.3));
        }
        cells = next;
        width *= 0.5;
    }
}

/// Classical modulus `ω_m`: `φ = 2^m |sin(t/2)|^m`.
pub fn classical_modulus(f: &ApPolynomial, m: u32, delta: f64, family: &OrliczFamily) -> Result<ModulusEstimate> {
    let phi = PhiFunction::sine_power(m as f64)?;
    modulus(&ModulusRequest::new(f, &phi, delta, family))
}

/// Steklov modulus `ω̃_m`: `φ = (1 − sinc t)^m`.
pub fn steklov_modulus(f: &ApPolynomial, m: u32, delta: f64, family: &OrliczFamily) -> Result<ModulusEstimate> {
    let phi = PhiFunction::sinc_power(m)?;
    modulus(&ModulusRequest::new(f, &phi, delta, family))
}

/// Samples of `δ ↦ ω_φ(f, δ)` on the uniform grid `δ_j = j·δ_max/J`.
///
/// `lower[j]` is the running maximum of `‖Δ_h^φ f‖` over sampled `h <= δ_j`,
/// so it is nondecreasing and never exceeds `ω_φ(f, δ_j)`. Every
/// `ω_φ(f, δ_j)` is at most `lower[j] + gap`.
#[derive(Debug, Clone)]
pub struct ModulusProfile {
    deltas: Vec<f64>,
    lower: Vec<f64>,
    gap: f64,
}

impl ModulusProfile {
    pub fn sample(f: &ApPolynomial, phi: &PhiFunction, family: &OrliczFamily, delta_max: f64, intervals: usize) -> Result<Self> {
        if !(delta_max > 0.0) || intervals == 0 {
            return Err(Error::invalid("modulus profile needs delta_max > 0 and at least one interval"));
        }
        let step = delta_max / intervals as f64;
        let deltas: Vec<f64> = (0..=intervals).map(|j| if j == intervals { delta_max } else { j as f64 * step }).collect();
        let mut lower = sample_norms(f, phi, family, &deltas)?;
        for j in 1..lower.len() {
            lower[j] = lower[j].max(lower[j - 1]);
        }
        let gap = continuity_gap(f, phi, family, 0.5 * step)?;
        Ok(ModulusProfile { deltas, lower, gap })
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn step(&self) -> f64 {
        self.deltas[1] - self.deltas[0]
    }

    /// Composite Simpson estimate of `∫ ω(δ) w(δ) dδ` over the profile range,
    /// with `ω` replaced by the lower samples.
    pub fn integrate(&self, w: impl Fn(f64) -> f64) -> f64 {
        let samples: Vec<f64> = self.deltas.iter().zip(&self.lower).map(|(&d, &l)| l * w(d)).collect();
        crate::quadrature::composite_simpson_samples(&samples, self.step())
    }

    /// Certified bracket of the Stieltjes integral `∫ ω(δ) dv(δ)` for a
    /// nondecreasing `v`, from the monotonicity of `ω` in `δ`.
    pub fn stieltjes_bracket(&self, v: impl Fn(f64) -> f64) -> (f64, f64) {
        let vs: Vec<f64> = self.deltas.iter().map(|&d| v(d)).collect();
        let mut lo = 0.0;
        let mut hi = 0.0;
        for j in 0..self.deltas.len() - 1 {
            let dv = vs[j + 1] - vs[j];
            lo += self.lower[j] * dv;
            hi += (self.lower[j + 1] + self.gap) * dv;
        }
        (lo, hi)
    }

    /// Lower and upper value at the right end of the range.
    pub fn at_end(&self) -> (f64, f64) {
        let l = *self.lower.last().expect("nonempty");
        (l, l + self.gap)
    }
}
