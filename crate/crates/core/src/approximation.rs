//! Fourier partial sums and best approximation `E_{λ_n}(f)_M = ‖f − S_n(f)‖_M`,
//! plus the extremal and test signals used by the theorem checks.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::orlicz::{sequence_norm, OrliczFamily};
use crate::signal::{ApPolynomial, Spectrum};

/// `S_n(f) = Σ_{|k| < n} A_k e^{iλ_k x}`.
pub fn partial_sum(f: &ApPolynomial, n: usize) -> Result<ApPolynomial> {
    if n == 0 {
        return Err(Error::invalid("partial sums are indexed from n = 1"));
    }
    Ok(f.map_coeffs(|k, _, a| if k.unsigned_abs() < n as u64 { a } else { Complex64::new(0.0, 0.0) }))
}

fn tail_magnitudes(f: &ApPolynomial, n: usize) -> Vec<(i64, f64)> {
    f.magnitudes().into_iter().filter(|&(k, _)| k.unsigned_abs() >= n as u64).collect()
}

/// `E_{λ_n}(f)_M`: the norm of the coefficient tail `{A_k}_{|k| >= n}`.
pub fn best_approximation(f: &ApPolynomial, n: usize, family: &OrliczFamily) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("best approximation is indexed from n = 1"));
    }
    sequence_norm(&tail_magnitudes(f, n), family)
}

/// `[E_{λ_1}, …, E_{λ_n}]`, reusing the nonzero coefficients of `f`.
pub fn best_approximations(f: &ApPolynomial, n: usize, family: &OrliczFamily) -> Result<Vec<f64>> {
    let mags = f.magnitudes();
    (1..=n)
        .map(|nu| {
            let tail: Vec<(i64, f64)> = mags.iter().copied().filter(|&(k, _)| k.unsigned_abs() >= nu as u64).collect();
            sequence_norm(&tail, family)
        })
        .collect()
}

/// Best approximation by polynomials with spectrum inside `(−λ, λ)`.
pub fn best_approximation_at(f: &ApPolynomial, lambda: f64, family: &OrliczFamily) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("cutoff frequency must be positive"));
    }
    let mags: Vec<(i64, f64)> = f
        .terms()
        .filter(|&(_, l, a)| l.abs() >= lambda && a.norm() > 0.0)
        .map(|(k, _, a)| (k, a.norm()))
        .collect();
    sequence_norm(&mags, family)
}

/// `E_{λ_n}(f)` for `n = 1..=K+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BestApproxProfile {
    /// `(n, λ_n, E_{λ_n})`; `λ_{K+1}` is reported as infinity.
    pub values: Vec<(usize, f64, f64)>,
    pub family: String,
    pub signal: String,
}

impl BestApproxProfile {
    pub fn compute(f: &ApPolynomial, family: &OrliczFamily, signal: impl Into<String>) -> Result<Self> {
        let k = f.degree();
        let mut values = Vec::with_capacity(k + 1);
        for n in 1..=k + 1 {
            let lambda = if n <= k { f.spectrum().lambda(n as i64) } else { f64::INFINITY };
            values.push((n, lambda, best_approximation(f, n, family)?));
        }
        Ok(BestApproxProfile { values, family: family.label(), signal: signal.into() })
    }

    /// `E` values in order of `n`.
    pub fn errors(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.2).collect()
    }

    /// CSV with header `n,lambda_n,E`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lambda_n,E\n");
        for &(n, l, e) in &self.values {
            let _ = writeln!(out, "{n},{},{}", fmt_float(l), fmt_float(e));
        }
        out
    }
}

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// `f*(x) = γ + β e^{−iλ_n x} + δ e^{iλ_n x}`: the signal for which the
/// integral Jackson inequalities become equalities.
pub fn extremal_function(n: usize, gamma: Complex64, beta: Complex64, delta: Complex64, spectrum: Spectrum) -> Result<ApPolynomial> {
    if n == 0 || n > spectrum.len() {
        return Err(Error::OutOfRange { index: n, max: spectrum.len() });
    }
    let n = n as i64;
    ApPolynomial::from_pairs(spectrum, [(0, gamma), (-n, beta), (n, delta)])
}

/// `e^{iλ_{k0} x}`: `E_{λ_ν} = 1` for `ν <= k0` and `0` after.
pub fn sharpness_probe(k0: usize, spectrum: Spectrum) -> Result<ApPolynomial> {
    if k0 == 0 || k0 > spectrum.len() {
        return Err(Error::OutOfRange { index: k0, max: spectrum.len() });
    }
    ApPolynomial::monomial(spectrum, k0 as i64, Complex64::new(1.0, 0.0))
}

/// Positive-frequency signal with `A_ν = λ_ν^{−r} − λ_{ν+1}^{−r}` and
/// `A_K = λ_K^{−r}`, so that under the ℓ_1 norm `E_{λ_n} = λ_n^{−r}` exactly.
pub fn planted_decay(spectrum: Spectrum, r: f64) -> Result<ApPolynomial> {
    if !(r > 0.0) {
        return Err(Error::invalid("planted decay rate must be positive"));
    }
    let lam = spectrum.exponents().to_vec();
    let k = lam.len();
    let pairs: Vec<(i64, Complex64)> = (0..k)
        .map(|i| {
            let next = if i + 1 < k { lam[i + 1].powf(-r) } else { 0.0 };
            ((i + 1) as i64, Complex64::new(lam[i].powf(-r) - next, 0.0))
        })
        .collect();
    ApPolynomial::from_pairs(spectrum, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::orlicz_norm;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_poly(seed: u64, k: usize) -> ApPolynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kk = k as i64;
        ApPolynomial::from_pairs(
            Spectrum::powers(k, 1.1),
            (-kk..=kk).map(|j| (j, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))),
        )
        .unwrap()
    }

    #[test]
    fn partial_sum_edges() {
        let f = random_poly(1, 4);
        assert_eq!(partial_sum(&f, 9).unwrap(), f);
        let s1 = partial_sum(&f, 1).unwrap();
        assert!(s1.terms().all(|(k, _, a)| k == 0 || a.norm() == 0.0));
        assert_eq!(s1.coeff(0), f.coeff(0));
        let star = extremal_function(3, c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0), Spectrum::integers(5)).unwrap();
        let s = partial_sum(&star, 3).unwrap();
        assert_eq!(s.magnitudes(), vec![(0, c(1.0, 2.0).norm())]);
    }

    #[test]
    fn best_approximation_examples() {
        let star = extremal_function(2, c(4.0, 0.0), c(0.3, 0.4), c(-1.0, 0.0), Spectrum::integers(3)).unwrap();
        let e = best_approximation(&star, 2, &OrliczFamily::linear()).unwrap();
        assert!((e - 1.5).abs() < 1e-14);
        assert_eq!(best_approximation(&star, 4, &OrliczFamily::linear()).unwrap(), 0.0);
        let f = ApPolynomial::from_pairs(Spectrum::integers(3), [(1, c(9.0, 0.0)), (2, c(3.0, 0.0)), (-3, c(0.0, 4.0))]).unwrap();
        let e = best_approximation(&f, 2, &OrliczFamily::stepanets(2.0).unwrap()).unwrap();
        assert!((e - 5.0).abs() < 1e-10);
        assert!(best_approximation(&f, 0, &OrliczFamily::linear()).is_err());
    }

    #[test]
    fn cutoff_form_matches_index_form() {
        let f = random_poly(3, 6);
        let fam = OrliczFamily::stepanets(3.0).unwrap();
        for n in 1..=6 {
            let l = f.spectrum().lambda(n as i64);
            assert_eq!(best_approximation(&f, n, &fam).unwrap(), best_approximation_at(&f, l, &fam).unwrap());
        }
    }

    #[test]
    fn extremal_and_probe() {
        let spec = Spectrum::integers(4);
        let z = extremal_function(2, c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), spec.clone()).unwrap();
        assert!(z.is_zero());
        let (g, b, d) = (c(1.0, 1.0), c(-2.0, 0.5), c(0.25, 0.0));
        let star = extremal_function(2, g, b, d, spec.clone()).unwrap();
        assert!((star.evaluate(0.0) - (g + b + d)).norm() < 1e-14);
        let h = star.harmonic_magnitudes();
        assert!((h.get(2) - (b.norm() + d.norm())).abs() < 1e-14);
        assert_eq!(h.get(1), 0.0);
        assert!(extremal_function(5, g, b, d, spec.clone()).is_err());

        let probe = sharpness_probe(3, spec.clone()).unwrap();
        for nu in 1..=3 {
            assert_eq!(best_approximation(&probe, nu, &OrliczFamily::linear()).unwrap(), 1.0);
        }
        assert_eq!(best_approximation(&probe, 4, &OrliczFamily::linear()).unwrap(), 0.0);
        let fam = OrliczFamily::linear().with_override(3, crate::orlicz::OrliczFunction::stepanets(2.5).unwrap());
        assert!((orlicz_norm(&probe, &fam).unwrap() - 1.0).abs() < 1e-10);
        assert!(sharpness_probe(0, spec).is_err());
    }

    #[test]
    fn planted_decay_is_exact() {
        let spec = Spectrum::powers(30, 1.1);
        let f = planted_decay(spec.clone(), 0.7).unwrap();
        for n in 1..=30 {
            let e = best_approximation(&f, n, &OrliczFamily::linear()).unwrap();
            let want = spec.lambda(n as i64).powf(-0.7);
            assert!((e - want).abs() <= 1e-13, "n = {n}");
        }
    }

    #[test]
    fn profile_csv() {
        let probe = sharpness_probe(2, Spectrum::integers(3)).unwrap();
        let p = BestApproxProfile::compute(&probe, &OrliczFamily::linear(), "probe").unwrap();
        assert_eq!(p.errors(), vec![1.0, 1.0, 0.0, 0.0]);
        let csv = p.to_csv();
        assert!(csv.starts_with("n,lambda_n,E\n1,1.0000000000000000e0,1.0000000000000000e0\n"));
        assert!(csv.ends_with("4,inf,0.0000000000000000e0\n"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn profile_nonincreasing_and_consistent(seed in 0u64..10_000, p in 1.1f64..6.0) {
            let f = random_poly(seed, 6);
            let fam = OrliczFamily::stepanets(p).unwrap();
            let prof = BestApproxProfile::compute(&f, &fam, "r").unwrap();
            let e = prof.errors();
            prop_assert_eq!(&e[..6], &best_approximations(&f, 6, &fam).unwrap()[..]);
            prop_assert!(e.windows(2).all(|w| w[1] <= w[0]));
            prop_assert_eq!(*e.last().unwrap(), 0.0);
            let full = orlicz_norm(&f.without_constant(), &fam).unwrap();
            prop_assert!((e[0] - full).abs() <= 1e-12 * full.max(1.0));
            for n in 1..=6 {
                let diff = f.add(&partial_sum(&f, n).unwrap().scale(c(-1.0, 0.0))).unwrap();
                let direct = orlicz_norm(&diff, &fam).unwrap();
                prop_assert!((direct - e[n - 1]).abs() <= 1e-12 * direct.max(1.0));
            }
        }
    }
}
