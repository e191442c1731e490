//! Inverse estimates: the modulus `ω_φ(f, τ/λ_n)` bounded by weighted sums of
//! best approximations, sharpness of `π^α`, and the finite-range
//! characterization of the classes `ω_α(f, δ) = O(ω(δ))`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::approximation::{best_approximations, sharpness_probe};
use crate::error::{Error, Result};
use crate::orlicz::OrliczFamily;
use crate::signal::{ApPolynomial, Spectrum};
use crate::smoothness::{modulus, phi_difference_norm, ModulusRequest, PhiFunction};

/// `pass` threshold, as for the direct estimates.
pub const MARGIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
enum MajorantKind {
    PowerLaw(f64),
    /// Piecewise linear through `(t, ω(t))`, from `(0, 0)` to `t = 1`.
    Tabulated(Vec<(f64, f64)>),
}

/// Continuous nondecreasing `ω` on `[0, 1]` with `ω(0) = 0` and `ω > 0` on `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Majorant {
    kind: MajorantKind,
}

impl Majorant {
    /// `ω(t) = t^r`.
    pub fn power_law(r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidMajorant(format!("power law needs r > 0, got {r}")));
        }
        Ok(Majorant { kind: MajorantKind::PowerLaw(r) })
    }

    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 || points[0] != (0.0, 0.0) {
            return Err(Error::InvalidMajorant("table must start at (0, 0) and have at least two points".into()));
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0) || w[1].1 < w[0].1) {
            return Err(Error::InvalidMajorant("table must increase in t and be nondecreasing in ω".into()));
        }
        if !(points[1].1 > 0.0) {
            return Err(Error::InvalidMajorant("ω must be positive on (0, 1]".into()));
        }
        if (points.last().expect("nonempty").0 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMajorant("table must end at t = 1".into()));
        }
        if points.iter().any(|p| !p.1.is_finite()) {
            return Err(Error::InvalidMajorant("table values must be finite".into()));
        }
        Ok(Majorant { kind: MajorantKind::Tabulated(points) })
    }

    /// `power:r`.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec.trim().strip_prefix("power:") {
            Some(r) => Self::power_law(r.parse().map_err(|_| Error::InvalidMajorant(format!("bad exponent in '{spec}'")))?),
            None => Err(Error::InvalidMajorant(format!("unknown majorant '{spec}'"))),
        }
    }

    /// `t^r` exponent, if this is a power law.
    pub fn power_exponent(&self) -> Option<f64> {
        match self.kind {
            MajorantKind::PowerLaw(r) => Some(r),
            MajorantKind::Tabulated(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            MajorantKind::PowerLaw(r) => format!("power:{r}"),
            MajorantKind::Tabulated(p) => format!("table:{}", p.len()),
        }
    }

    /// `ω(δ)`; a table is held at its last value past `t = 1`.
    pub fn eval(&self, delta: f64) -> f64 {
        let d = delta.max(0.0);
        match &self.kind {
            MajorantKind::PowerLaw(r) => d.powf(*r),
            MajorantKind::Tabulated(p) => {
                let d = d.min(1.0);
                let i = p.partition_point(|q| q.0 <= d).clamp(1, p.len() - 1);
                let ((t0, w0), (t1, w1)) = (p[i - 1], p[i]);
                w0 + (w1 - w0) * (d - t0) / (t1 - t0)
            }
        }
    }
}

fn check_index(f: &ApPolynomial, n: usize) -> Result<()> {
    if n == 0 || n > f.degree() {
        return Err(Error::OutOfRange { index: n, max: f.degree() });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

/// `λ_0 = 0, λ_1, …, λ_n`.
fn lambdas(spectrum: &Spectrum, n: usize) -> Vec<f64> {
    std::iter::once(0.0).chain(spectrum.exponents()[..n].iter().copied()).collect()
}

fn general_sum(phi: &PhiFunction, tau: f64, lam: &[f64], e: &[f64]) -> f64 {
    let ln = *lam.last().expect("n >= 1");
    (1..lam.len()).map(|nu| (phi.value(tau * lam[nu] / ln) - phi.value(tau * lam[nu - 1] / ln)) * e[nu - 1]).sum()
}

fn alpha_sum(alpha: f64, lam: &[f64], e: &[f64]) -> f64 {
    let ln = *lam.last().expect("n >= 1");
    let s: f64 = (1..lam.len()).map(|nu| (lam[nu].powf(alpha) - lam[nu - 1].powf(alpha)) * e[nu - 1]).sum();
    (PI / ln).powf(alpha) * s
}

/// `Σ_{ν=1}^n (φ(τλ_ν/λ_n) − φ(τλ_{ν−1}/λ_n)) E_{λ_ν}(f)` with `τ` the smallest
/// maximizer of `φ`.
pub fn inverse_bound_general(f: &ApPolynomial, n: usize, phi: &PhiFunction, family: &OrliczFamily) -> Result<f64> {
    check_index(f, n)?;
    phi.check_monotone_to_sup()?;
    let e = best_approximations(f, n, family)?;
    Ok(general_sum(phi, phi.sup_argument(), &lambdas(f.spectrum(), n), &e))
}

/// `(π/λ_n)^α Σ_{ν=1}^n (λ_ν^α − λ_{ν−1}^α) E_{λ_ν}(f)`.
pub fn inverse_bound_alpha(f: &ApPolynomial, n: usize, alpha: f64, family: &OrliczFamily) -> Result<f64> {
    check_index(f, n)?;
    check_alpha(alpha)?;
    let e = best_approximations(f, n, family)?;
    Ok(alpha_sum(alpha, &lambdas(f.spectrum(), n), &e))
}

/// The derivative-weighted forms of the `α`-bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryBounds {
    /// `α(π/λ_n)^α Σ λ_ν^{α−1}(λ_ν − λ_{ν−1}) E_{λ_ν}`.
    pub general: f64,
    /// `Cα(π/λ_n)^α Σ λ_ν^{α−1} E_{λ_ν}`, valid when every gap is at most `C`.
    pub gap_form: f64,
    /// `α(2π/λ_n)^α Σ λ_ν^{α−1}(λ_ν − λ_{ν−1}) E_{λ_ν}`.
    pub legacy: f64,
}

/// All three sums. They follow from the `α`-bound through
/// `λ_ν^α − λ_{ν−1}^α <= αλ_ν^{α−1}(λ_ν − λ_{ν−1})`, which needs `α >= 1`;
/// for `α < 1` they are computed but are not upper bounds in general.
///
/// The gap check includes `λ_1 − λ_0 = λ_1`, since the `ν = 1` term uses it.
pub fn inverse_bound_corollary(f: &ApPolynomial, n: usize, alpha: f64, family: &OrliczFamily, c: f64) -> Result<CorollaryBounds> {
    check_index(f, n)?;
    check_alpha(alpha)?;
    if !(c > 0.0) {
        return Err(Error::invalid("gap constant C must be positive"));
    }
    let (index, gap) = f.spectrum().max_gap();
    if gap > c {
        return Err(Error::SpectrumGapTooLarge { index, gap, bound: c });
    }
    let e = best_approximations(f, n, family)?;
    let lam = lambdas(f.spectrum(), n);
    let ln = lam[n];
    let mut weighted = 0.0;
    let mut plain = 0.0;
    for nu in 1..=n {
        let w = lam[nu].powf(alpha - 1.0) * e[nu - 1];
        weighted += w * (lam[nu] - lam[nu - 1]);
        plain += w;
    }
    Ok(CorollaryBounds {
        general: alpha * (PI / ln).powf(alpha) * weighted,
        gap_form: c * alpha * (PI / ln).powf(alpha) * plain,
        legacy: alpha * (2.0 * PI / ln).powf(alpha) * weighted,
    })
}

/// Which modulus the inverse check bounds.
#[derive(Debug, Clone)]
pub enum InverseForm {
    /// `ω_α` at `δ = π/λ_n`.
    Alpha(f64),
    /// `ω_φ` at `δ = τ_φ/λ_n`.
    Phi(PhiFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseBound {
    pub name: String,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseCertificate {
    pub n: usize,
    pub phi: String,
    pub family: String,
    pub delta: f64,
    /// Certified upper estimate of the modulus at `delta`.
    pub lhs: f64,
    /// Attained lower estimate of the modulus.
    pub lhs_lower: f64,
    pub bounds: Vec<InverseBound>,
    pub pass: bool,
}

/// Evaluates every applicable bound against the certified modulus upper
/// estimate. For `α`: the `φ_α` general bound, the `α`-bound, and for
/// `α >= 1` the derivative-weighted and legacy forms (plus the gap form when
/// `gap_c` is given).
pub fn verify_inverse(
    f: &ApPolynomial,
    n: usize,
    form: &InverseForm,
    family: &OrliczFamily,
    gap_c: Option<f64>,
) -> Result<InverseCertificate> {
    check_index(f, n)?;
    let ln = f.spectrum().lambda(n as i64);
    let lam = lambdas(f.spectrum(), n);
    let e = best_approximations(f, n, family)?;
    let (phi, mut rhs) = match form {
        InverseForm::Alpha(alpha) => {
            check_alpha(*alpha)?;
            let phi = PhiFunction::sine_power(*alpha)?;
            let mut rhs = vec![("theorem2", general_sum(&phi, PI, &lam, &e)), ("theorem3", alpha_sum(*alpha, &lam, &e))];
            if *alpha >= 1.0 {
                let c = gap_c.unwrap_or(f64::INFINITY);
                let b = if c.is_finite() {
                    inverse_bound_corollary(f, n, *alpha, family, c)?
                } else {
                    inverse_bound_corollary(f, n, *alpha, family, f.spectrum().max_gap().1.max(f64::MIN_POSITIVE))?
                };
                rhs.push(("corollary6", b.general));
                if gap_c.is_some() {
                    rhs.push(("corollary6_gap", b.gap_form));
                }
                rhs.push(("inverse_legacy", b.legacy));
            }
            (phi, rhs)
        }
        InverseForm::Phi(phi) => {
            phi.check_monotone_to_sup()?;
            (phi.clone(), vec![("theorem2", general_sum(phi, phi.sup_argument(), &lam, &e))])
        }
    };
    let tau = match form {
        InverseForm::Alpha(_) => PI,
        InverseForm::Phi(phi) => phi.sup_argument(),
    };
    let delta = tau / ln;
    let m = modulus(&ModulusRequest::new(f, &phi, delta, family))?;
    let bounds: Vec<InverseBound> = rhs
        .drain(..)
        .map(|(name, rhs)| {
            let margin = rhs - m.upper;
            InverseBound { name: name.into(), rhs, margin, pass: margin >= -MARGIN_TOL }
        })
        .collect();
    let pass = bounds.iter().all(|b| b.pass);
    Ok(InverseCertificate { n, phi: phi.label(), family: family.label(), delta, lhs: m.upper, lhs_lower: m.lower, bounds, pass })
}

/// `‖Δ^α_{π/λ_n} f*‖ / ((π/λ_n)^α Σ (λ_ν^α − λ_{ν−1}^α) E_{λ_ν}(f*))` for
/// `f* = e^{iλ_{k0}x}`, which equals
/// `2^α|sin(πλ_{k0}/(2λ_n))|^α / (πλ_{k0}/λ_n)^α` and tends to `1`.
pub fn sharpness_ratio_scan(
    k0: usize,
    alpha: f64,
    spectrum: &Spectrum,
    family: &OrliczFamily,
    n_list: &[usize],
) -> Result<Vec<(usize, f64)>> {
    check_alpha(alpha)?;
    let probe = sharpness_probe(k0, spectrum.clone())?;
    if let Some(&bad) = n_list.iter().find(|&&n| n < k0 || n > spectrum.len()) {
        return Err(Error::OutOfRange { index: bad, max: spectrum.len() });
    }
    let n_max = n_list.iter().copied().max().unwrap_or(0);
    let e = best_approximations(&probe, n_max, family)?;
    let phi = PhiFunction::sine_power(alpha)?;
    n_list
        .iter()
        .map(|&n| {
            let lam = lambdas(spectrum, n);
            let lhs = phi_difference_norm(&probe, &phi, PI / lam[n], family)?;
            Ok((n, lhs / alpha_sum(alpha, &lam, &e[..n])))
        })
        .collect()
}

/// Partial-sum ratios `R_n = Σ_{v<=n} λ_v^{s−1} ω(1/λ_v) / (λ_n^s ω(1/λ_n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BariCheck {
    pub ratios: Vec<(usize, f64)>,
    pub sup_ratio: f64,
    /// Heuristic only: `R_n` grew by at most 5% over the last doubling of `n`.
    /// Finite data cannot decide a big-O claim.
    pub bounded: bool,
}

pub fn bari_condition_check(omega: &Majorant, spectrum: &Spectrum, s: f64, n_max: usize) -> Result<BariCheck> {
    if !(s > 0.0) {
        return Err(Error::invalid("s must be positive"));
    }
    if n_max == 0 || n_max > spectrum.len() {
        return Err(Error::OutOfRange { index: n_max, max: spectrum.len() });
    }
    let mut sum = 0.0;
    let mut ratios = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let l = spectrum.lambda(n as i64);
        let w = omega.eval(1.0 / l);
        sum += l.powf(s - 1.0) * w;
        ratios.push((n, sum / (l.powf(s) * w)));
    }
    let sup_ratio = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    // logarithmic growth (r = s gives the harmonic numbers) survives a median test
    let last = ratios[n_max - 1].1;
    let half = ratios[n_max.div_ceil(2) - 1].1;
    let bounded = last - half <= 0.05 * last;
    Ok(BariCheck { ratios, sup_ratio, bounded })
}

/// Big-O constants the sup-ratios are compared with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassConstants {
    /// For `sup_δ ω_α(f, δ)/ω(δ)`.
    pub modulus: f64,
    /// For `sup_n E_{λ_n}(f)/ω(1/λ_n)`.
    pub approximation: f64,
}

/// Finite-range evidence for `ω_α(f, δ) = O(ω(δ))` ⟺ `E_{λ_n}(f) = O(ω(1/λ_n))`,
/// sampled at `δ = 1/λ_n`, `n = 1..=n_max` (only `λ_n >= 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub class_tag: String,
    /// `(n, ω_α(f, 1/λ_n)/ω(1/λ_n))` from the certified modulus upper estimate.
    pub modulus_ratios: Vec<(usize, f64)>,
    /// `(n, E_{λ_n}(f)/ω(1/λ_n))`.
    pub approximation_ratios: Vec<(usize, f64)>,
    pub sup_modulus_ratio: f64,
    pub sup_approximation_ratio: f64,
    pub modulus_within: bool,
    pub approximation_within: bool,
    /// Bounded spectrum gaps (when `gap_c` is given) and the Bari heuristic with `s = α`.
    pub converse_applicable: bool,
    pub bari: BariCheck,
}

#[allow(clippy::too_many_arguments)]
pub fn class_membership_report(
    f: &ApPolynomial,
    alpha: f64,
    omega: &Majorant,
    family: &OrliczFamily,
    n_max: usize,
    constants: ClassConstants,
    gap_c: Option<f64>,
) -> Result<ClassReport> {
    check_alpha(alpha)?;
    check_index(f, n_max)?;
    let phi = PhiFunction::sine_power(alpha)?;
    let e = best_approximations(f, n_max, family)?;
    let idx: Vec<usize> = (1..=n_max).filter(|&n| f.spectrum().lambda(n as i64) >= 1.0).collect();
    let modulus_ratios = idx
        .par_iter()
        .map(|&n| {
            let d = 1.0 / f.spectrum().lambda(n as i64);
            let m = modulus(&ModulusRequest::new(f, &phi, d, family))?;
            Ok((n, m.upper / omega.eval(d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let approximation_ratios: Vec<(usize, f64)> =
        idx.iter().map(|&n| (n, e[n - 1] / omega.eval(1.0 / f.spectrum().lambda(n as i64)))).collect();
    let sup = |v: &[(usize, f64)]| v.iter().map(|r| r.1).fold(0.0, f64::max);
    let sup_modulus_ratio = sup(&modulus_ratios);
    let sup_approximation_ratio = sup(&approximation_ratios);
    let bari = bari_condition_check(omega, f.spectrum(), alpha, n_max)?;
    let gaps_ok = gap_c.is_some_and(|c| f.spectrum().max_gap().1 <= c);
    let class_tag = match omega.power_exponent() {
        Some(r) if r <= alpha => format!("BS_M H^{r}_{alpha}"),
        _ => format!("BS_M H^omega_{alpha} (omega = {})", omega.label()),
    };
    Ok(ClassReport {
        class_tag,
        modulus_ratios,
        approximation_ratios,
        sup_modulus_ratio,
        sup_approximation_ratio,
        modulus_within: sup_modulus_ratio <= constants.modulus,
        approximation_within: sup_approximation_ratio <= constants.approximation,
        converse_applicable: gaps_ok && bari.bounded,
        bari,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximation::planted_decay;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_poly(seed: u64, spectrum: Spectrum) -> ApPolynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = spectrum.len() as i64;
        ApPolynomial::from_pairs(spectrum, (-k..=k).map(|j| (j, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))).unwrap()
    }

    #[test]
    fn majorant_validation() {
        assert!(Majorant::power_law(0.0).is_err());
        assert!(Majorant::parse("power:0").is_err());
        assert_eq!(Majorant::parse("power:0.5").unwrap().eval(0.25), 0.5);
        assert!(Majorant::tabulated(vec![(0.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(Majorant::tabulated(vec![(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)]).is_err());
        assert!(Majorant::tabulated(vec![(0.0, 0.0), (0.5, 0.4), (0.9, 0.3)]).is_err());
        let m = Majorant::tabulated(vec![(0.0, 0.0), (0.5, 0.4), (1.0, 0.6)]).unwrap();
        assert!((m.eval(0.25) - 0.2).abs() < 1e-15);
        assert!((m.eval(0.75) - 0.5).abs() < 1e-15);
        assert_eq!(m.eval(3.0), 0.6);
    }

    #[test]
    fn constant_signal_bounds_vanish() {
        let f = ApPolynomial::from_pairs(Spectrum::integers(5), [(0, c(3.0, 1.0))]).unwrap();
        let fam = OrliczFamily::linear();
        let phi = PhiFunction::sine_power(2.0).unwrap();
        assert_eq!(inverse_bound_general(&f, 3, &phi, &fam).unwrap(), 0.0);
        assert_eq!(inverse_bound_alpha(&f, 3, 2.0, &fam).unwrap(), 0.0);
        let b = inverse_bound_corollary(&f, 3, 2.0, &fam, 1.0).unwrap();
        assert_eq!((b.general, b.gap_form), (0.0, 0.0));
        let cert = verify_inverse(&f, 3, &InverseForm::Alpha(2.0), &fam, Some(1.0)).unwrap();
        assert!(cert.pass && cert.lhs == 0.0);
    }

    #[test]
    fn probe_closed_forms() {
        let spec = Spectrum::integers(40);
        let fam = OrliczFamily::linear();
        for k0 in [1usize, 3, 5] {
            let probe = sharpness_probe(k0, spec.clone()).unwrap();
            for n in [k0, 2 * k0, 4 * k0] {
                let phi = PhiFunction::sine_power(2.0).unwrap();
                let general = inverse_bound_general(&probe, n, &phi, &fam).unwrap();
                let tel = phi.value(PI * k0 as f64 / n as f64);
                assert!((general - tel).abs() < 1e-12);
                let a = inverse_bound_alpha(&probe, n, 2.0, &fam).unwrap();
                assert!((a - (PI * k0 as f64 / n as f64).powi(2)).abs() < 1e-12);
                let cert = verify_inverse(&probe, n, &InverseForm::Alpha(2.0), &fam, Some(1.0)).unwrap();
                let want = 4.0 * (PI * k0 as f64 / (2.0 * n as f64)).sin().powi(2);
                assert!((cert.lhs - want).abs() < 1e-6, "{} vs {want}", cert.lhs);
                assert!(cert.pass, "{cert:?}");
            }
        }
    }

    #[test]
    fn arithmetic_alpha_one() {
        let spec = Spectrum::integers(12);
        let f = sharpness_probe(12, spec).unwrap();
        for n in [1, 5, 12] {
            assert!((inverse_bound_alpha(&f, n, 1.0, &OrliczFamily::linear()).unwrap() - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn corollary_forms() {
        let spec = Spectrum::integers(8);
        let f = random_poly(2, spec.clone());
        let fam = OrliczFamily::stepanets(2.0).unwrap();
        let e = best_approximations(&f, 6, &fam).unwrap();
        let alpha = 1.7;
        let b = inverse_bound_corollary(&f, 6, alpha, &fam, 1.0).unwrap();
        let want: f64 = alpha * (PI / 6.0).powf(alpha) * (1..=6).map(|v| (v as f64).powf(alpha - 1.0) * e[v - 1]).sum::<f64>();
        assert!((b.gap_form - want).abs() < 1e-12 * want);
        assert!((b.general - want).abs() < 1e-12 * want);
        assert!((b.legacy / b.general - 2f64.powf(alpha)).abs() < 1e-12);
        assert!(inverse_bound_alpha(&f, 6, alpha, &fam).unwrap() <= b.general);
        let sparse = Spectrum::new(vec![1.0, 2.0, 4.5]).unwrap();
        let g = random_poly(1, sparse);
        assert!(matches!(inverse_bound_corollary(&g, 2, 2.0, &fam, 2.0), Err(Error::SpectrumGapTooLarge { index: 2, .. })));
    }

    #[test]
    fn derivative_forms_fail_below_one() {
        // α < 1: the single-harmonic signal breaks both derivative-weighted forms
        let probe = sharpness_probe(1, Spectrum::integers(2)).unwrap();
        let fam = OrliczFamily::linear();
        let b = inverse_bound_corollary(&probe, 1, 0.5, &fam, 1.0).unwrap();
        let lhs = 2f64.sqrt();
        assert!(b.general < lhs && b.legacy < lhs);
        let cert = verify_inverse(&probe, 1, &InverseForm::Alpha(0.5), &fam, None).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.bounds.len(), 2);
    }

    #[test]
    fn rejects_non_monotone_phi() {
        let f = random_poly(3, Spectrum::integers(4));
        let fam = OrliczFamily::linear();
        let dip = crate::smoothness::CustomPhi::new("dip", |t: f64| if t < 1.0 { t } else if t < 2.0 { 2.5 - t } else { (t - 0.5).min(3.0) }, 6.0)
            .unwrap()
            .with_sup(3.0, 3.5);
        assert!(matches!(inverse_bound_general(&f, 2, &PhiFunction::Custom(dip), &fam), Err(Error::InvalidPhi(_))));
        let sinc = PhiFunction::sinc_power(2).unwrap();
        let cert = verify_inverse(&f, 2, &InverseForm::Phi(sinc.clone()), &fam, None).unwrap();
        assert!(cert.pass, "{cert:?}");
        assert!((cert.bounds[0].rhs - inverse_bound_general(&f, 2, &sinc, &fam).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn sharpness_scan_values() {
        let spec = Spectrum::integers(1000);
        let fam = OrliczFamily::stepanets(3.0).unwrap();
        let r = sharpness_ratio_scan(1, 2.0, &spec, &fam, &[1, 10, 100, 1000]).unwrap();
        assert!((r[0].1 - (2.0 / PI).powi(2)).abs() < 1e-12);
        let x = PI / 2000.0;
        let taylor = 1.0 - x * x / 3.0 + 2.0 * x.powi(4) / 45.0;
        assert!((r[3].1 - taylor).abs() < 1e-12);
        assert!(r.windows(2).all(|w| w[1].1 > w[0].1 && w[1].1 <= 1.0));
        assert!(sharpness_ratio_scan(5, 2.0, &spec, &fam, &[4]).is_err());
    }

    #[test]
    fn bari_cases() {
        let spec = Spectrum::integers(2000);
        for r in [0.5, 1.0, 1.5] {
            let b = bari_condition_check(&Majorant::power_law(r).unwrap(), &spec, 2.0, 2000).unwrap();
            assert!(b.bounded, "r = {r}");
            assert!(b.sup_ratio <= 2.0 / (2.0 - r) + 1e-9);
        }
        // r = s: R_n is the harmonic number, unbounded
        let b = bari_condition_check(&Majorant::power_law(2.0).unwrap(), &spec, 2.0, 2000).unwrap();
        let h: f64 = (1..=2000).map(|v| 1.0 / v as f64).sum();
        assert!((b.ratios[1999].1 - h).abs() < 1e-9);
        assert!(!b.bounded);
    }

    #[test]
    fn class_report_on_planted_decay() {
        let spec = Spectrum::integers(24);
        let f = planted_decay(spec, 0.8).unwrap();
        let omega = Majorant::power_law(0.8).unwrap();
        let consts = ClassConstants { modulus: 20.0, approximation: 1.0 + 1e-12 };
        let rep = class_membership_report(&f, 2.0, &omega, &OrliczFamily::linear(), 16, consts, Some(1.0)).unwrap();
        assert!(rep.approximation_ratios.iter().all(|r| (r.1 - 1.0).abs() < 1e-12));
        assert!(rep.approximation_within && rep.modulus_within, "{rep:?}");
        assert!(rep.converse_applicable);
        assert_eq!(rep.class_tag, "BS_M H^0.8_2");
        let zero = ApPolynomial::from_pairs(Spectrum::integers(6), [(0, c(1.0, 0.0))]).unwrap();
        let rep = class_membership_report(&zero, 2.0, &omega, &OrliczFamily::linear(), 6, consts, None).unwrap();
        assert_eq!((rep.sup_modulus_ratio, rep.sup_approximation_ratio), (0.0, 0.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn random_signals_satisfy_all_bounds(seed in 0u64..10_000, alpha in 1.0f64..4.0, p in 1.2f64..4.0) {
            let f = random_poly(seed, Spectrum::powers(8, 1.1));
            let gap = f.spectrum().max_gap().1;
            let fam = OrliczFamily::stepanets(p).unwrap();
            let n = 1 + (seed % 8) as usize;
            let cert = verify_inverse(&f, n, &InverseForm::Alpha(alpha), &fam, Some(gap)).unwrap();
            prop_assert!(cert.pass, "{:?}", cert);
            let b = inverse_bound_corollary(&f, n, alpha, &fam, gap).unwrap();
            let t3 = inverse_bound_alpha(&f, n, alpha, &fam).unwrap();
            prop_assert!(t3 <= b.general * (1.0 + 1e-12) && b.general <= b.legacy);
        }
    }
}
