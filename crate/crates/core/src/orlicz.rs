//! Musielak–Orlicz sequence norms.
//!
//! For a family `M = {M_k}` of Orlicz functions the norm of a coefficient
//! sequence `{a_k}` is the dual supremum
//!
//! ```text
//! ‖a‖_M = sup { Σ_k γ_k |a_k| : Σ_k M*_k(γ_k) <= 1 }
//! ```
//!
//! with `M*_k` the Young conjugate of `M_k`. [`sequence_norm`] evaluates it
//! through the Amemiya form `inf_{t>0} (1 + Σ_k M_k(t|a_k|)) / t`, a 1-D
//! quasi-convex minimization. [`dual_sup_oracle`] attacks the supremum
//! directly in the dual variables and serves as the independent check.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{golden_max, golden_min};
use crate::signal::ApPolynomial;

/// Largest support accepted by [`dual_sup_oracle`].
pub const ORACLE_MAX_SUPPORT: usize = 6;
const ORACLE_STARTS: usize = 64;
const ORACLE_SEED: u64 = 0x000d_1a15_eed5_u64;

/// Piecewise-linear convex Orlicz function through `points`, continued past the
/// last point with slope `slope`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    points: Vec<(f64, f64)>,
    slope: f64,
}

impl Tabulated {
    pub fn new(points: Vec<(f64, f64)>, slope: Option<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidFamily("tabulated Orlicz function needs at least two points".into()));
        }
        if points[0] != (0.0, 0.0) {
            return Err(Error::InvalidFamily("tabulated Orlicz function must start at (0, 0)".into()));
        }
        let mut prev_slope = 0.0f64;
        for w in points.windows(2) {
            let (u0, m0) = w[0];
            let (u1, m1) = w[1];
            if !(u1 > u0) || !m1.is_finite() {
                return Err(Error::InvalidFamily("tabulated abscissae must be finite and strictly increasing".into()));
            }
            let s = (m1 - m0) / (u1 - u0);
            if s < -1e-12 {
                return Err(Error::InvalidFamily("tabulated Orlicz function is decreasing".into()));
            }
            if s < prev_slope - 1e-12 {
                return Err(Error::InvalidFamily(format!("tabulated Orlicz function is not convex near u = {u0}")));
            }
            prev_slope = prev_slope.max(s);
        }
        let slope = slope.unwrap_or(prev_slope);
        if slope < prev_slope - 1e-12 {
            return Err(Error::InvalidFamily("extrapolation slope breaks convexity".into()));
        }
        if !(slope > 0.0) || !slope.is_finite() {
            return Err(Error::InvalidFamily("extrapolation slope must be positive so that M(t) → ∞".into()));
        }
        Ok(Tabulated { points, slope })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    fn eval(&self, u: f64) -> f64 {
        let last = *self.points.last().expect("validated");
        if u >= last.0 {
            return last.1 + self.slope * (u - last.0);
        }
        let i = self.points.partition_point(|p| p.0 <= u).max(1);
        let (u0, m0) = self.points[i - 1];
        let (u1, m1) = self.points[i];
        m0 + (m1 - m0) * (u - u0) / (u1 - u0)
    }

    fn segment_slopes(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.points.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect();
        s.push(self.slope);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OrliczSpec", into = "OrliczSpec")]
pub enum OrliczFunction {
    /// `M(u) = u`.
    Linear,
    /// `M(u) = c u^p`, `p >= 1`, `c > 0`.
    PowerScaled { c: f64, p: f64 },
    /// `M(u) = u^p / (p · p'^{p-1})`, `p > 1`; its norm is the ℓ_p norm.
    StepanetsPower { p: f64 },
    CustomTabulated(Tabulated),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OrliczSpec {
    Linear,
    PowerScaled {
        c: f64,
        p: f64,
    },
    StepanetsPower {
        p: f64,
    },
    CustomTabulated {
        points: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slope: Option<f64>,
    },
}

impl TryFrom<OrliczSpec> for OrliczFunction {
    type Error = Error;

    fn try_from(spec: OrliczSpec) -> Result<Self> {
        match spec {
            OrliczSpec::Linear => Ok(OrliczFunction::Linear),
            OrliczSpec::PowerScaled { c, p } => OrliczFunction::power_scaled(c, p),
            OrliczSpec::StepanetsPower { p } => OrliczFunction::stepanets(p),
            OrliczSpec::CustomTabulated { points, slope } => {
                Ok(OrliczFunction::CustomTabulated(Tabulated::new(points.into_iter().map(|[u, m]| (u, m)).collect(), slope)?))
            }
        }
    }
}

impl From<OrliczFunction> for OrliczSpec {
    fn from(f: OrliczFunction) -> Self {
        match f {
            OrliczFunction::Linear => OrliczSpec::Linear,
            OrliczFunction::PowerScaled { c, p } => OrliczSpec::PowerScaled { c, p },
            OrliczFunction::StepanetsPower { p } => OrliczSpec::StepanetsPower { p },
            OrliczFunction::CustomTabulated(t) => OrliczSpec::CustomTabulated {
                points: t.points.iter().map(|&(u, m)| [u, m]).collect(),
                slope: Some(t.slope),
            },
        }
    }
}

fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

impl OrliczFunction {
    pub fn power_scaled(c: f64, p: f64) -> Result<Self> {
        if !(c > 0.0) || !(p >= 1.0) || !c.is_finite() || !p.is_finite() {
            return Err(Error::InvalidFamily(format!("power_scaled needs c > 0 and p >= 1, got c = {c}, p = {p}")));
        }
        Ok(OrliczFunction::PowerScaled { c, p })
    }

    pub fn stepanets(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::InvalidFamily(format!("stepanets_power needs p > 1, got {p}")));
        }
        Ok(OrliczFunction::StepanetsPower { p })
    }

    pub fn tabulated(points: Vec<(f64, f64)>, slope: Option<f64>) -> Result<Self> {
        Ok(OrliczFunction::CustomTabulated(Tabulated::new(points, slope)?))
    }

    /// `(c, p)` with `M(u) = c u^p`, for the power-law kinds.
    fn power_form(&self) -> Option<(f64, f64)> {
        match *self {
            OrliczFunction::Linear => Some((1.0, 1.0)),
            OrliczFunction::PowerScaled { c, p } => Some((c, p)),
            OrliczFunction::StepanetsPower { p } => {
                let q = conjugate_exponent(p);
                Some((1.0 / (p * q.powf(p - 1.0)), p))
            }
            OrliczFunction::CustomTabulated(_) => None,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            OrliczFunction::CustomTabulated(t) => t.eval(u),
            _ => {
                let (c, p) = self.power_form().expect("power kinds");
                if p == 1.0 {
                    c * u
                } else {
                    c * u.powf(p)
                }
            }
        }
    }

    /// `lim_{u→∞} M(u)/u` when finite.
    pub fn asymptotic_slope(&self) -> Option<f64> {
        match self {
            OrliczFunction::CustomTabulated(t) => Some(t.slope),
            _ => {
                let (c, p) = self.power_form().expect("power kinds");
                (p == 1.0).then_some(c)
            }
        }
    }

    /// True when `M(u) = s·u` exactly.
    pub fn is_linear(&self) -> bool {
        matches!(self.power_form(), Some((_, p)) if p == 1.0)
    }

    pub fn label(&self) -> String {
        match self {
            OrliczFunction::Linear => "linear".into(),
            OrliczFunction::PowerScaled { c, p } => format!("power_scaled:{c}:{p}"),
            OrliczFunction::StepanetsPower { p } => format!("stepanets_power:{p}"),
            OrliczFunction::CustomTabulated(t) => format!("custom_tabulated:{}", t.points.len()),
        }
    }

    pub fn conjugate(&self) -> ConjugateFunction {
        let rule = match self {
            OrliczFunction::CustomTabulated(t) => {
                // M* is piecewise linear with kinks at the segment slopes; the
                // values there come from the numerical supremum.
                let u_hi = t.points.last().expect("validated").0;
                let mut knots: Vec<(f64, f64)> = vec![(0.0, 0.0)];
                for s in t.segment_slopes() {
                    if s > knots.last().expect("nonempty").0 {
                        knots.push((s, numerical_conjugate(|u| t.eval(u), s, Some(u_hi))));
                    }
                }
                ConjugateRule::Tabulated { knots, v_max: t.slope }
            }
            _ => {
                let (c, p) = self.power_form().expect("power kinds");
                if p == 1.0 {
                    ConjugateRule::Box { v_max: c }
                } else {
                    let q = conjugate_exponent(p);
                    ConjugateRule::Power { kappa: (c * p).powf(-q / p) / q, q }
                }
            }
        };
        ConjugateFunction { source: self.clone(), rule }
    }
}

/// `sup_{u >= 0} (uv − M(u))` on a geometric u-grid refined by golden section.
/// `u_hi` bounds the search when known; otherwise it is found by doubling.
pub fn numerical_conjugate(m: impl Fn(f64) -> f64, v: f64, u_hi: Option<f64>) -> f64 {
    let obj = |u: f64| u * v - m(u);
    let hi = match u_hi {
        Some(h) => h,
        None => {
            let mut h = 1.0;
            let mut guard = 0;
            while obj(2.0 * h) > obj(h) && guard < 2000 {
                h *= 2.0;
                guard += 1;
            }
            if guard == 2000 {
                return f64::INFINITY;
            }
            2.0 * h
        }
    };
    const GRID: usize = 256;
    let ratio = (1e-12f64).powf(1.0 / (GRID - 1) as f64);
    let mut grid: Vec<f64> = (0..GRID).map(|i| hi * ratio.powi((GRID - 1 - i) as i32)).collect();
    grid.insert(0, 0.0);
    let (best_i, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &u)| (i, obj(u)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let lo = grid[best_i.saturating_sub(1)];
    let up = grid[(best_i + 1).min(grid.len() - 1)];
    let (_, val) = golden_max(obj, lo, up, 1e-15 * hi.max(1e-300), 400);
    val.max(obj(grid[best_i])).max(0.0)
}

#[derive(Debug, Clone, PartialEq)]
enum ConjugateRule {
    /// `0` on `[0, v_max]`, `+∞` beyond.
    Box { v_max: f64 },
    /// `κ v^q`.
    Power { kappa: f64, q: f64 },
    /// Piecewise linear through `knots`, `+∞` beyond `v_max`.
    Tabulated { knots: Vec<(f64, f64)>, v_max: f64 },
}

/// Young conjugate `M*(v) = sup_{u>=0} (uv − M(u))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateFunction {
    source: OrliczFunction,
    rule: ConjugateRule,
}

impl ConjugateFunction {
    pub fn source(&self) -> &OrliczFunction {
        &self.source
    }

    /// Largest `v` with finite `M*(v)`, if bounded.
    pub fn v_max(&self) -> Option<f64> {
        match &self.rule {
            ConjugateRule::Box { v_max } | ConjugateRule::Tabulated { v_max, .. } => Some(*v_max),
            ConjugateRule::Power { .. } => None,
        }
    }

    pub fn eval(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        match &self.rule {
            ConjugateRule::Box { v_max } => {
                if v <= *v_max {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ConjugateRule::Power { kappa, q } => kappa * v.powf(*q),
            ConjugateRule::Tabulated { knots, v_max } => {
                if v > *v_max {
                    return f64::INFINITY;
                }
                let i = knots.partition_point(|k| k.0 <= v);
                if i == 0 {
                    return 0.0;
                }
                if i >= knots.len() {
                    return knots.last().expect("nonempty").1;
                }
                let (v0, m0) = knots[i - 1];
                let (v1, m1) = knots[i];
                m0 + (m1 - m0) * (v - v0) / (v1 - v0)
            }
        }
    }

    /// `sup { v <= v_max : M*(v) <= budget }`.
    pub fn inverse(&self, budget: f64) -> f64 {
        let budget = budget.max(0.0);
        match &self.rule {
            ConjugateRule::Box { v_max } => *v_max,
            ConjugateRule::Power { kappa, q } => (budget / kappa).powf(1.0 / q),
            ConjugateRule::Tabulated { knots, v_max } => {
                // first knot with value above budget
                let i = knots.partition_point(|k| k.1 <= budget);
                if i >= knots.len() {
                    return *v_max;
                }
                let (v0, m0) = knots[i - 1];
                let (v1, m1) = knots[i];
                v0 + (v1 - v0) * (budget - m0) / (m1 - m0)
            }
        }
    }

    fn power(&self) -> Option<(f64, f64)> {
        match self.rule {
            ConjugateRule::Power { kappa, q } => Some((kappa, q)),
            _ => None,
        }
    }
}

/// A dual weight sequence `γ` paired with a coefficient support.
#[derive(Debug, Clone, PartialEq)]
pub struct DualWeights {
    pub gammas: BTreeMap<i64, f64>,
    /// `Σ_k M*_k(γ_k)` over the support.
    pub residual: f64,
}

impl DualWeights {
    pub fn is_feasible(&self) -> bool {
        self.residual <= 1.0 + 1e-9 && self.gammas.values().all(|&g| g >= 0.0)
    }
}

/// `{M_k}`: one default member plus per-index overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrliczFamily {
    pub default: OrliczFunction,
    #[serde(default)]
    pub overrides: BTreeMap<i64, OrliczFunction>,
}

impl OrliczFamily {
    pub fn uniform(member: OrliczFunction) -> Self {
        OrliczFamily { default: member, overrides: BTreeMap::new() }
    }

    /// All `M_k(u) = u`: the ℓ_1 coefficient norm.
    pub fn linear() -> Self {
        Self::uniform(OrliczFunction::Linear)
    }

    /// All members `StepanetsPower(p)`: the ℓ_p coefficient norm.
    pub fn stepanets(p: f64) -> Result<Self> {
        Ok(Self::uniform(OrliczFunction::stepanets(p)?))
    }

    pub fn with_override(mut self, k: i64, member: OrliczFunction) -> Self {
        self.overrides.insert(k, member);
        self
    }

    pub fn member(&self, k: i64) -> &OrliczFunction {
        self.overrides.get(&k).unwrap_or(&self.default)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// `linear`, `stepanets_power:p`, `power_scaled:c:p`, or inline JSON.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            return Self::from_json(spec);
        }
        let bad = || Error::InvalidFamily(format!("unknown family '{spec}'"));
        let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
        let parts: Vec<&str> = spec.split(':').collect();
        let member = match parts.as_slice() {
            ["linear"] => OrliczFunction::Linear,
            ["stepanets_power", p] => OrliczFunction::stepanets(num(p)?)?,
            ["power_scaled", c, p] => OrliczFunction::power_scaled(num(c)?, num(p)?)?,
            _ => return Err(bad()),
        };
        Ok(Self::uniform(member))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }

    pub fn label(&self) -> String {
        if self.overrides.is_empty() {
            self.default.label()
        } else {
            format!("{}+{}overrides", self.default.label(), self.overrides.len())
        }
    }
}

fn support(magnitudes: &[(i64, f64)]) -> Result<Vec<(i64, f64)>> {
    let mut out: BTreeMap<i64, f64> = BTreeMap::new();
    for &(k, a) in magnitudes {
        if !a.is_finite() {
            return Err(Error::Range { index: k });
        }
        if a < 0.0 {
            return Err(Error::invalid(format!("magnitude at index {k} is negative")));
        }
        if a > 0.0 {
            *out.entry(k).or_insert(0.0) += a;
        }
    }
    Ok(out.into_iter().collect())
}

/// Orlicz norm of an arbitrary nonnegative magnitude sequence `{(k, a_k)}`.
pub fn sequence_norm(magnitudes: &[(i64, f64)], family: &OrliczFamily) -> Result<f64> {
    let supp = support(magnitudes)?;
    if supp.is_empty() {
        return Ok(0.0);
    }
    // The norm is positively homogeneous, so work with max |a_k| = 1.
    let scale = supp.iter().map(|s| s.1).fold(0.0, f64::max);
    let terms: Vec<(i64, f64, &OrliczFunction)> = supp.iter().map(|&(k, a)| (k, a / scale, family.member(k))).collect();

    let tail_limit: f64 = terms
        .iter()
        .map(|&(_, a, m)| m.asymptotic_slope().map(|s| s * a).unwrap_or(f64::INFINITY))
        .sum();
    if terms.iter().all(|t| t.2.is_linear()) {
        return Ok(tail_limit * scale);
    }

    let objective = |t: f64| -> f64 { (1.0 + terms.iter().map(|&(_, a, m)| m.eval(t * a)).sum::<f64>()) / t };

    let sum_a: f64 = terms.iter().map(|t| t.1).sum();
    let mut lo = 1.0 / (sum_a + 1.0);
    let mut hi = terms.len() as f64 / (1.0 + 1e-12);
    if let Some(&(k, _, _)) = terms.iter().find(|&&(_, a, m)| !m.eval(lo * a).is_finite()) {
        return Err(Error::Range { index: k });
    }
    let mut guard = 0;
    while objective(lo / 2.0) < objective(lo) && guard < 200 {
        lo /= 2.0;
        guard += 1;
    }
    guard = 0;
    while objective(hi * 2.0) < objective(hi) && hi < 1e200 && guard < 700 {
        hi *= 2.0;
        guard += 1;
    }
    hi *= 2.0;
    let (_, best) = golden_min(|x| objective(x.exp()), lo.ln(), hi.ln(), 1e-13, 500);
    Ok(best.min(tail_limit) * scale)
}

/// `‖f‖_M`: the sequence norm of the coefficient magnitudes of `f`.
pub fn orlicz_norm(f: &ApPolynomial, family: &OrliczFamily) -> Result<f64> {
    sequence_norm(&f.magnitudes(), family)
}

/// Result of [`dual_sup_oracle`]: the value and the best dual weights found.
#[derive(Debug, Clone)]
pub struct DualSolution {
    pub value: f64,
    pub weights: DualWeights,
}

struct DualProblem {
    keys: Vec<i64>,
    a: Vec<f64>,
    conj: Vec<ConjugateFunction>,
}

impl DualProblem {
    fn value(&self, g: &[f64]) -> f64 {
        self.a.iter().zip(g).map(|(a, g)| a * g).sum()
    }

    fn spend(&self, g: &[f64]) -> f64 {
        self.conj.iter().zip(g).map(|(c, &g)| c.eval(g)).sum()
    }

    /// Pairwise exchange ascent on the budget surface, starting from `g`.
    fn ascend(&self, g: &mut [f64]) {
        let n = g.len();
        let mut last = self.value(g);
        for _sweep in 0..400 {
            // spend any slack greedily, one coordinate at a time
            for i in 0..n {
                let slack = 1.0 - self.spend(g);
                if slack > 0.0 {
                    let own = self.conj[i].eval(g[i]);
                    g[i] = g[i].max(self.conj[i].inverse(own + slack));
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let pair = self.conj[i].eval(g[i]) + self.conj[j].eval(g[j]);
                    let budget = pair + (1.0 - self.spend(g)).max(0.0);
                    let (ci, cj) = (&self.conj[i], &self.conj[j]);
                    let x_hi = ci.inverse(budget);
                    let line = |x: f64| self.a[i] * x + self.a[j] * cj.inverse(budget - ci.eval(x));
                    let current = self.a[i] * g[i] + self.a[j] * g[j];
                    let (x, v) = golden_max(line, 0.0, x_hi, 1e-14 * x_hi.max(1e-300), 300);
                    if v > current {
                        g[i] = x;
                        g[j] = cj.inverse(budget - ci.eval(x));
                    }
                }
            }
            let now = self.value(g);
            if now - last <= 1e-15 * now.abs().max(1e-300) {
                break;
            }
            last = now;
        }
    }

    /// Solves the stationarity system `a_k = μ M*_k'(γ_k)`, `Σ M*_k(γ_k) = 1`
    /// by bisection on `μ`; only defined when every member is a power law or box.
    fn kkt(&self) -> Option<Vec<f64>> {
        let mut smooth = Vec::new();
        let mut g = vec![0.0; self.a.len()];
        for (i, c) in self.conj.iter().enumerate() {
            if let Some((kappa, q)) = c.power() {
                smooth.push((i, kappa, q));
            } else if let (Some(v), true) = (c.v_max(), c.eval(c.v_max()?) == 0.0) {
                g[i] = v;
            } else {
                return None;
            }
        }
        if smooth.is_empty() {
            return Some(g);
        }
        let gamma_at = |mu: f64, i: usize, kappa: f64, q: f64| (self.a[i] / (mu * kappa * q)).powf(1.0 / (q - 1.0));
        let spend = |mu: f64| smooth.iter().map(|&(i, kappa, q)| kappa * gamma_at(mu, i, kappa, q).powf(q)).sum::<f64>();
        let (mut lo, mut hi) = (-300.0f64, 300.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if spend(mid.exp()) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mu = hi.exp();
        for &(i, kappa, q) in &smooth {
            g[i] = gamma_at(mu, i, kappa, q);
        }
        Some(g)
    }
}

/// Brute-force evaluation of the defining supremum for small supports:
/// pairwise-exchange ascent from random points on the budget surface, plus a
/// stationarity solve when the conjugates are smooth.
pub fn dual_sup_oracle(magnitudes: &[(i64, f64)], family: &OrliczFamily, support_limit: usize) -> Result<DualSolution> {
    if support_limit > ORACLE_MAX_SUPPORT {
        return Err(Error::UnsupportedSize { size: support_limit, limit: ORACLE_MAX_SUPPORT });
    }
    let supp = support(magnitudes)?;
    if supp.len() > support_limit {
        return Err(Error::UnsupportedSize { size: supp.len(), limit: support_limit });
    }
    let problem = DualProblem {
        keys: supp.iter().map(|s| s.0).collect(),
        a: supp.iter().map(|s| s.1).collect(),
        conj: supp.iter().map(|s| family.member(s.0).conjugate()).collect(),
    };
    let n = problem.a.len();
    let mut best: Vec<f64> = vec![0.0; n];
    let mut best_val = 0.0;
    if n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
        for _ in 0..ORACLE_STARTS {
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-3..1.0)).collect();
            let total: f64 = w.iter().sum();
            let mut g: Vec<f64> = w.iter().zip(&problem.conj).map(|(w, c)| c.inverse(w / total)).collect();
            problem.ascend(&mut g);
            let v = problem.value(&g);
            if v > best_val && problem.spend(&g) <= 1.0 + 1e-12 {
                best_val = v;
                best = g;
            }
        }
        if let Some(g) = problem.kkt() {
            let v = problem.value(&g);
            if v > best_val && problem.spend(&g) <= 1.0 + 1e-12 {
                best_val = v;
                best = g;
            }
        }
    }
    let residual = problem.spend(&best);
    Ok(DualSolution {
        value: best_val,
        weights: DualWeights { gammas: problem.keys.iter().copied().zip(best).collect(), residual },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    use crate::signal::Spectrum;

    fn lp(a: &[f64], p: f64) -> f64 {
        a.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }

    #[test]
    fn family_specs() {
        assert_eq!(OrliczFamily::parse("linear").unwrap(), OrliczFamily::linear());
        assert_eq!(OrliczFamily::parse("stepanets_power:2.5").unwrap(), OrliczFamily::stepanets(2.5).unwrap());
        let f = OrliczFamily::parse("power_scaled:0.5:3").unwrap();
        assert_eq!(f.label(), "power_scaled:0.5:3");
        let j = OrliczFamily::parse(r#"{"default": {"kind":"stepanets_power","p":2.0}, "overrides": {"3": {"kind":"linear"}}}"#).unwrap();
        assert_eq!(j.member(3), &OrliczFunction::Linear);
        assert!(OrliczFamily::parse("stepanets_power:0.5").is_err());
        assert!(OrliczFamily::parse("lp:2").is_err());
    }

    #[test]
    fn linear_conjugate_is_box() {
        let c = OrliczFunction::Linear.conjugate();
        assert_eq!(c.eval(0.5), 0.0);
        assert_eq!(c.eval(1.0), 0.0);
        assert!(c.eval(1.0 + 1e-9).is_infinite());
        assert_eq!(c.v_max(), Some(1.0));
    }

    #[test]
    fn quadratic_half_is_self_conjugate() {
        let c = OrliczFunction::power_scaled(0.5, 2.0).unwrap().conjugate();
        for &v in &[0.0, 0.3, 1.0, 2.7] {
            assert!((c.eval(v) - v * v / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn power_conjugate_matches_numerical_supremum() {
        for &(cc, p) in &[(1.0, 1.5), (0.3, 2.0), (2.0, 3.0), (0.7, 10.0)] {
            let m = OrliczFunction::power_scaled(cc, p).unwrap();
            let conj = m.conjugate();
            for &v in &[0.05f64, 0.4, 1.0, 3.5] {
                let q = p / (p - 1.0);
                let closed = v.powf(q) * (cc * p).powf(-q / p) / q;
                let numeric = numerical_conjugate(|u| m.eval(u), v, None);
                assert!((conj.eval(v) - closed).abs() <= 1e-12 * closed.max(1.0));
                assert!((numeric - closed).abs() <= 1e-8 * closed.max(1e-300), "c={cc} p={p} v={v}: {numeric} vs {closed}");
            }
        }
    }

    #[test]
    fn stepanets_conjugate_is_pure_power() {
        for &p in &[1.5, 2.0, 3.0, 10.0] {
            let conj = OrliczFunction::stepanets(p).unwrap().conjugate();
            let q = p / (p - 1.0);
            for &v in &[0.1, 0.5, 1.0, 2.0] {
                assert!((conj.eval(v) - v.powf(q)).abs() < 1e-12 * v.powf(q).max(1.0));
            }
        }
    }

    #[test]
    fn tabulated_conjugate_matches_vertex_enumeration() {
        let pts = vec![(0.0, 0.0), (0.5, 0.1), (1.0, 0.4), (2.0, 1.5), (3.0, 3.0)];
        let m = OrliczFunction::tabulated(pts.clone(), Some(2.0)).unwrap();
        let conj = m.conjugate();
        for i in 0..=40 {
            let v = i as f64 * 0.05;
            let vertex = pts.iter().map(|&(u, mu)| u * v - mu).fold(0.0f64, f64::max);
            assert!((conj.eval(v) - vertex).abs() < 1e-10, "v = {v}");
        }
        assert!(conj.eval(2.0 + 1e-9).is_infinite());
    }

    #[test]
    fn young_inequality_on_grids() {
        let members = [
            OrliczFunction::Linear,
            OrliczFunction::power_scaled(0.5, 2.0).unwrap(),
            OrliczFunction::power_scaled(3.0, 1.3).unwrap(),
            OrliczFunction::stepanets(3.0).unwrap(),
            OrliczFunction::tabulated(vec![(0.0, 0.0), (1.0, 0.2), (2.0, 1.0)], Some(1.5)).unwrap(),
        ];
        for m in &members {
            let conj = m.conjugate();
            for i in 0..60 {
                for j in 0..60 {
                    let (u, v) = (i as f64 * 0.1, j as f64 * 0.05);
                    assert!(u * v <= m.eval(u) + conj.eval(v) + 1e-10, "{} at u={u} v={v}", m.label());
                }
            }
            assert_eq!(conj.eval(0.0), 0.0);
        }
    }

    #[test]
    fn tabulated_validation() {
        assert!(OrliczFunction::tabulated(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.5)], None).is_err());
        assert!(OrliczFunction::tabulated(vec![(0.0, 0.1), (1.0, 1.0)], None).is_err());
        assert!(OrliczFunction::tabulated(vec![(0.0, 0.0), (1.0, 0.0)], None).is_err());
        assert!(OrliczFunction::tabulated(vec![(0.0, 0.0), (1.0, 1.0)], Some(0.5)).is_err());
        assert!(OrliczFunction::power_scaled(1.0, 0.5).is_err());
        assert!(OrliczFunction::stepanets(1.0).is_err());
    }

    #[test]
    fn norm_examples() {
        let s2 = OrliczFamily::stepanets(2.0).unwrap();
        let v = sequence_norm(&[(1, 3.0), (2, 4.0)], &s2).unwrap();
        assert!((v - 5.0).abs() < 1e-10);

        let f = ApPolynomial::from_pairs(
            Spectrum::integers(1),
            [(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(2.0, 0.0)), (-1, Complex64::new(0.5, 0.0))],
        )
        .unwrap();
        assert!((orlicz_norm(&f, &OrliczFamily::linear()).unwrap() - 3.5).abs() < 1e-12);
        assert_eq!(orlicz_norm(&ApPolynomial::zero(Spectrum::integers(3)), &s2).unwrap(), 0.0);
    }

    #[test]
    fn lp_reduction_small() {
        for &p in &[1.5, 2.0, 3.0, 10.0] {
            let fam = OrliczFamily::stepanets(p).unwrap();
            let a = [0.3, 1.7, 2.2, 0.01, 5.0];
            let mags: Vec<(i64, f64)> = a.iter().enumerate().map(|(i, &x)| (i as i64, x)).collect();
            let got = sequence_norm(&mags, &fam).unwrap();
            let want = lp(&a, p);
            assert!((got - want).abs() <= 1e-8 * want, "p={p}: {got} vs {want}");
        }
    }

    #[test]
    fn mixed_linear_and_tabulated_tail_limit() {
        // every member has a finite slope: infimum is approached as t → ∞
        let fam = OrliczFamily::uniform(OrliczFunction::tabulated(vec![(0.0, 0.0), (1.0, 0.5)], Some(2.0)).unwrap())
            .with_override(1, OrliczFunction::Linear);
        let mags = [(0, 1.0), (1, 2.0)];
        let amemiya = sequence_norm(&mags, &fam).unwrap();
        let oracle = dual_sup_oracle(&mags, &fam, 6).unwrap().value;
        assert!((amemiya - oracle).abs() < 1e-6, "{amemiya} vs {oracle}");
    }

    #[test]
    fn oracle_single_linear_coefficient() {
        let s = dual_sup_oracle(&[(1, 2.5)], &OrliczFamily::linear(), 6).unwrap();
        assert!((s.value - 2.5).abs() < 1e-12);
        assert!((s.weights.gammas[&1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_l2_pair() {
        let s = dual_sup_oracle(&[(1, 3.0), (2, 4.0)], &OrliczFamily::stepanets(2.0).unwrap(), 6).unwrap();
        assert!((s.value - 5.0).abs() < 1e-6);
        assert!(s.weights.is_feasible());
    }

    #[test]
    fn oracle_rejects_large_support() {
        let mags: Vec<(i64, f64)> = (0..5).map(|k| (k, 1.0)).collect();
        assert!(matches!(
            dual_sup_oracle(&mags, &OrliczFamily::linear(), 4),
            Err(Error::UnsupportedSize { size: 5, limit: 4 })
        ));
        assert!(dual_sup_oracle(&mags, &OrliczFamily::linear(), 7).is_err());
    }

    #[test]
    fn range_error_names_index() {
        let fam = OrliczFamily::stepanets(2.0).unwrap();
        assert!(matches!(sequence_norm(&[(3, f64::INFINITY)], &fam), Err(Error::Range { index: 3 })));
    }

    #[test]
    fn family_config_parses() {
        let fam = OrliczFamily::from_json(r#"{"default": {"kind":"stepanets_power","p":2.0}, "overrides": {"3": {"kind":"linear"}}}"#).unwrap();
        assert_eq!(fam.member(3), &OrliczFunction::Linear);
        assert_eq!(fam.member(-1), &OrliczFunction::StepanetsPower { p: 2.0 });
        let custom = OrliczFamily::from_json(r#"{"default": {"kind":"custom_tabulated","points":[[0,0],[1,0.5],[2,2]]}}"#).unwrap();
        assert!(matches!(custom.default, OrliczFunction::CustomTabulated(_)));
        let bad = OrliczFamily::from_json(r#"{"default": {"kind":"custom_tabulated","points":[[0,0],[1,1],[2,1.2]]}}"#);
        assert!(bad.is_err());
        let back = OrliczFamily::from_json(&fam.to_json()).unwrap();
        assert_eq!(back, fam);
    }
}
