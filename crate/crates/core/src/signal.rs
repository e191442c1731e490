//! Almost-periodic trigonometric polynomials `f(x) = Σ_k A_k e^{iλ_k x}` in
//! symmetric form: exponents `λ_{-k} = -λ_k`, `λ_0 = 0`, and the positive part
//! of the spectrum strictly increasing.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficient pairs with `|A_k| + |A_{-k}|` at or below this are treated as absent.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// `sin(x)/x`, with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Positive Fourier exponents `λ_1 < λ_2 < … < λ_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    exponents: Vec<f64>,
}

impl Spectrum {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        for (i, &l) in exponents.iter().enumerate() {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::invalid(format!("exponent #{} = {l} is not strictly positive", i + 1)));
            }
            if i > 0 && l <= exponents[i - 1] {
                return Err(Error::invalid(format!("exponents not strictly increasing at #{}", i + 1)));
            }
        }
        Ok(Spectrum { exponents })
    }

    /// `λ_k = k` for `k = 1..=count`.
    pub fn integers(count: usize) -> Self {
        Spectrum { exponents: (1..=count).map(|k| k as f64).collect() }
    }

    /// `λ_k = k^power` for `k = 1..=count`.
    pub fn powers(count: usize, power: f64) -> Self {
        Spectrum::new((1..=count).map(|k| (k as f64).powf(power)).collect()).expect("k^p is increasing")
    }

    /// Builds a spectrum from arbitrary positive samples, enforcing strict
    /// increase by lifting any non-increasing entry just above its predecessor.
    pub fn monotonized(raw: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut out: Vec<f64> = Vec::new();
        for l in raw {
            let l = match out.last() {
                Some(&prev) if l <= prev => prev + 1e-9 * prev.max(1.0),
                _ => l,
            };
            out.push(l);
        }
        Spectrum::new(out)
    }

    /// `integers:K`, `powers:K:p` or `list:l1,l2,…`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("bad spectrum '{spec}'"));
        let parts: Vec<&str> = spec.trim().split(':').collect();
        match parts.as_slice() {
            ["integers", k] => Ok(Spectrum::integers(k.parse().map_err(|_| bad())?)),
            ["powers", k, p] => {
                let p: f64 = p.parse().map_err(|_| bad())?;
                if !(p > 0.0) {
                    return Err(bad());
                }
                Ok(Spectrum::powers(k.parse().map_err(|_| bad())?, p))
            }
            ["list", l] => Spectrum::new(l.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?),
            _ => Err(bad()),
        }
    }

    /// Number of positive exponents `K`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    /// `λ_k` for any `|k| <= K`, with `λ_0 = 0` and `λ_{-k} = -λ_k`.
    pub fn lambda(&self, k: i64) -> f64 {
        match k.cmp(&0) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => self.exponents[k as usize - 1],
            std::cmp::Ordering::Less => -self.exponents[(-k) as usize - 1],
        }
    }

    /// Largest consecutive gap `λ_{ν+1} - λ_ν` over `ν = 0..K-1` (so it includes `λ_1 - λ_0`).
    pub fn max_gap(&self) -> (usize, f64) {
        let mut best = (0usize, 0.0f64);
        let mut prev = 0.0;
        for (i, &l) in self.exponents.iter().enumerate() {
            if l - prev > best.1 {
                best = (i, l - prev);
            }
            prev = l;
        }
        best
    }

    /// Signed index of an exponent value, or `None` when it is not in `±spectrum ∪ {0}`.
    pub fn index_of(&self, lambda: f64) -> Option<i64> {
        if lambda.abs() <= 1e-12 {
            return Some(0);
        }
        let target = lambda.abs();
        let tol = 1e-12 * target.max(1.0);
        let pos = self.exponents.partition_point(|&l| l < target - tol);
        match self.exponents.get(pos) {
            Some(&l) if (l - target).abs() <= tol => {
                let k = pos as i64 + 1;
                Some(if lambda > 0.0 { k } else { -k })
            }
            _ => None,
        }
    }
}

/// A finite set of nonzero complex weights `θ_0..θ_m` summing to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaCollection {
    thetas: Vec<Complex64>,
}

impl ThetaCollection {
    pub fn new(thetas: Vec<Complex64>) -> Result<Self> {
        if thetas.len() < 2 {
            return Err(Error::invalid("a difference collection needs at least two entries"));
        }
        if thetas.iter().all(|t| t.norm() == 0.0) {
            return Err(Error::invalid("difference collection is identically zero"));
        }
        let sum: Complex64 = thetas.iter().sum();
        if sum.norm() > 1e-12 {
            return Err(Error::invalid(format!("difference collection sums to {sum}, not 0")));
        }
        Ok(ThetaCollection { thetas })
    }

    pub fn from_real(thetas: &[f64]) -> Result<Self> {
        Self::new(thetas.iter().map(|&t| Complex64::new(t, 0.0)).collect())
    }

    /// The alternating binomial collection `θ_j = (-1)^j C(m, j)` of the classical m-th difference.
    pub fn binomial(m: usize) -> Self {
        let mut out = Vec::with_capacity(m + 1);
        let mut c = 1.0f64;
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out.push(Complex64::new(sign * c, 0.0));
            c = c * (m - j) as f64 / (j + 1) as f64;
        }
        ThetaCollection { thetas: out }
    }

    /// Order `m` (one less than the number of weights).
    pub fn order(&self) -> usize {
        self.thetas.len() - 1
    }

    pub fn thetas(&self) -> &[Complex64] {
        &self.thetas
    }

    /// The multiplier `Σ_j θ_j e^{-ijt}` acting on a harmonic with phase `t = λh`.
    pub fn symbol(&self, t: f64) -> Complex64 {
        self.thetas
            .iter()
            .enumerate()
            .map(|(j, th)| th * Complex64::from_polar(1.0, -(j as f64) * t))
            .sum()
    }
}

/// `H_0 = |A_0|` and `H_ν = |A_ν| + |A_{-ν}|` for `ν = 1..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMagnitudes {
    pub h0: f64,
    values: Vec<f64>,
}

impl HarmonicMagnitudes {
    /// `H_ν`; `ν = 0` gives `H_0`.
    pub fn get(&self, nu: usize) -> f64 {
        if nu == 0 {
            self.h0
        } else {
            self.values.get(nu - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// How `fourier_coefficient` obtains `A_λ(f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientMode {
    Exact,
    /// Time average of `f(x) e^{-iλx}` over `[0, horizon]` with Simpson step `step`.
    Empirical { horizon: f64, step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApPolynomial {
    spectrum: Spectrum,
    // index k is stored at k + K
    coeffs: Vec<Complex64>,
}

impl ApPolynomial {
    pub fn zero(spectrum: Spectrum) -> Self {
        let n = 2 * spectrum.len() + 1;
        ApPolynomial { spectrum, coeffs: vec![Complex64::new(0.0, 0.0); n] }
    }

    /// Constant polynomial on an empty spectrum.
    pub fn constant(c: Complex64) -> Self {
        let mut f = Self::zero(Spectrum { exponents: vec![] });
        f.coeffs[0] = c;
        f
    }

    /// `c · e^{iλ_k x}` on `spectrum`.
    pub fn monomial(spectrum: Spectrum, k: i64, c: Complex64) -> Result<Self> {
        let mut f = Self::zero(spectrum);
        f.set(k, c)?;
        Ok(f)
    }

    /// Builds from `(k, A_k)` pairs.
    pub fn from_pairs(spectrum: Spectrum, pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Result<Self> {
        let mut f = Self::zero(spectrum);
        for (k, c) in pairs {
            f.set(k, c)?;
        }
        Ok(f)
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// `K`, the number of positive exponents.
    pub fn degree(&self) -> usize {
        self.spectrum.len()
    }

    fn slot(&self, k: i64) -> Option<usize> {
        let kk = self.degree() as i64;
        (k.abs() <= kk).then(|| (k + kk) as usize)
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.slot(k).map(|i| self.coeffs[i]).unwrap_or_default()
    }

    pub fn set(&mut self, k: i64, c: Complex64) -> Result<()> {
        let i = self.slot(k).ok_or_else(|| Error::invalid(format!("index {k} outside ±{}", self.degree())))?;
        self.coeffs[i] = c;
        Ok(())
    }

    /// `(k, λ_k, A_k)` for every stored index, from `-K` to `K`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, f64, Complex64)> + '_ {
        let kk = self.degree() as i64;
        (-kk..=kk).map(move |k| (k, self.spectrum.lambda(k), self.coeffs[(k + kk) as usize]))
    }

    /// `(k, |A_k|)` over nonzero coefficients; the input of the sequence norm.
    pub fn magnitudes(&self) -> Vec<(i64, f64)> {
        self.terms().filter(|t| t.2.norm() > 0.0).map(|(k, _, a)| (k, a.norm())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Same spectrum, coefficients mapped by `g(k, λ_k, A_k)`.
    pub fn map_coeffs(&self, mut g: impl FnMut(i64, f64, Complex64) -> Complex64) -> Self {
        let coeffs = self.terms().map(|(k, l, a)| g(k, l, a)).collect();
        ApPolynomial { spectrum: self.spectrum.clone(), coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_coeffs(|_, _, a| a * c)
    }

    /// Coefficientwise sum; both operands must share the spectrum.
    pub fn add(&self, other: &ApPolynomial) -> Result<Self> {
        if self.spectrum != other.spectrum {
            return Err(Error::invalid("cannot add polynomials on different spectra"));
        }
        Ok(self.map_coeffs(|k, _, a| a + other.coeff(k)))
    }

    /// `f - A_0(f)`.
    pub fn without_constant(&self) -> Self {
        self.map_coeffs(|k, _, a| if k == 0 { Complex64::new(0.0, 0.0) } else { a })
    }

    /// Exact value `Σ_k A_k e^{iλ_k x}`.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        self.terms().filter(|t| t.2.norm() > 0.0).map(|(_, l, a)| a * Complex64::from_polar(1.0, l * x)).sum()
    }

    /// Drops harmonic pairs with `|A_k| + |A_{-k}| <= PRUNE_THRESHOLD` from the
    /// spectrum, re-indexing the survivors.
    pub fn pruned(&self) -> Self {
        let mut exps = Vec::new();
        let mut pairs = Vec::new();
        for nu in 1..=self.degree() as i64 {
            let (p, n) = (self.coeff(nu), self.coeff(-nu));
            if p.norm() + n.norm() > PRUNE_THRESHOLD {
                exps.push(self.spectrum.lambda(nu));
                pairs.push((p, n));
            }
        }
        let a0 = self.coeff(0);
        let mut out = Self::zero(Spectrum { exponents: exps });
        let d = out.degree();
        out.coeffs[d] = if a0.norm() > PRUNE_THRESHOLD { a0 } else { Complex64::new(0.0, 0.0) };
        for (i, (p, n)) in pairs.into_iter().enumerate() {
            let k = i as i64 + 1;
            out.set(k, p).expect("in range");
            out.set(-k, n).expect("in range");
        }
        out
    }

    /// Empirical mean `(1/T)∫_0^T f(x) dx` by composite Simpson with the given step.
    pub fn empirical_mean(&self, horizon: f64, step: f64) -> Result<Complex64> {
        time_average(|x| self.evaluate(x), horizon, step)
    }

    /// `A_λ(f)`: exact lookup, or the empirical average of `f(x)e^{-iλx}`.
    pub fn fourier_coefficient(&self, lambda: f64, mode: CoefficientMode) -> Result<Complex64> {
        match mode {
            CoefficientMode::Exact => {
                Ok(self.spectrum.index_of(lambda).map(|k| self.coeff(k)).unwrap_or_default())
            }
            CoefficientMode::Empirical { horizon, step } => {
                time_average(|x| self.evaluate(x) * Complex64::from_polar(1.0, -lambda * x), horizon, step)
            }
        }
    }

    /// `Δ_h^Θ f(t) = Σ_j θ_j f(t - jh)`.
    pub fn difference_theta(&self, theta: &ThetaCollection, h: f64) -> Self {
        self.map_coeffs(|_, l, a| a * theta.symbol(l * h))
    }

    /// Steklov average `F_h f(t) = (1/2h)∫_{t-h}^{t+h} f`.
    pub fn steklov(&self, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::invalid(format!("Steklov step must be positive, got {h}")));
        }
        Ok(self.map_coeffs(|_, l, a| a * sinc(l * h)))
    }

    /// `(F_h - I)^m f`, applied as m successive compositions of `F_h - I`.
    pub fn steklov_difference(&self, h: f64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("Steklov difference order must be at least 1"));
        }
        let mut g = self.clone();
        for _ in 0..m {
            let fh = g.steklov(h)?;
            g = fh.add(&g.scale(Complex64::new(-1.0, 0.0)))?;
        }
        Ok(g)
    }

    pub fn harmonic_magnitudes(&self) -> HarmonicMagnitudes {
        let values = (1..=self.degree() as i64).map(|nu| self.coeff(nu).norm() + self.coeff(-nu).norm()).collect();
        HarmonicMagnitudes { h0: self.coeff(0).norm(), values }
    }

    /// Renders the one-harmonic-per-line text format read by [`parse_signal`].
    pub fn to_signal_text(&self) -> String {
        let mut out = String::from("# lambda re_pos im_pos re_neg im_neg\n");
        let a0 = self.coeff(0);
        if a0.norm() > 0.0 {
            let _ = writeln!(out, "0 {:e} {:e} 0 0", a0.re, a0.im);
        }
        for nu in 1..=self.degree() as i64 {
            let (p, n) = (self.coeff(nu), self.coeff(-nu));
            let _ = writeln!(out, "{:e} {:e} {:e} {:e} {:e}", self.spectrum.lambda(nu), p.re, p.im, n.re, n.im);
        }
        out
    }
}

/// Averages `g` over `[0, horizon]`.
pub fn time_average<G: Fn(f64) -> Complex64>(g: G, horizon: f64, step: f64) -> Result<Complex64> {
    if !(horizon > 0.0) || !(step > 0.0) {
        return Err(Error::invalid(format!("horizon {horizon} and step {step} must be positive")));
    }
    if step > horizon / 10.0 {
        return Err(Error::invalid(format!("step {step} is coarser than horizon/10")));
    }
    let mut n = (horizon / step).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let h = horizon / n as f64;
    let mut acc = g(0.0) + g(horizon);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += g(i as f64 * h) * w;
    }
    Ok(acc * (h / 3.0) / horizon)
}

/// Reads the signal text format: `lambda re_pos im_pos re_neg im_neg` per line,
/// `#` comments, strictly increasing lambda, optional leading `0 re im 0 0`.
pub fn parse_signal(text: &str) -> Result<ApPolynomial> {
    let mut a0 = Complex64::new(0.0, 0.0);
    let mut exps = Vec::new();
    let mut pairs = Vec::new();
    let mut last = None::<f64>;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split_whitespace()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        if fields.len() != 5 {
            return Err(Error::Parse { line: line_no, message: format!("expected 5 fields, found {}", fields.len()) });
        }
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse { line: line_no, message: "non-finite value".into() });
        }
        let lambda = fields[0];
        if let Some(prev) = last {
            if lambda <= prev {
                return Err(Error::Parse { line: line_no, message: "lambda must be strictly increasing".into() });
            }
        }
        last = Some(lambda);
        if lambda == 0.0 {
            if fields[3] != 0.0 || fields[4] != 0.0 {
                return Err(Error::Parse { line: line_no, message: "the lambda = 0 line carries only A_0".into() });
            }
            a0 = Complex64::new(fields[1], fields[2]);
        } else if lambda < 0.0 {
            return Err(Error::Parse { line: line_no, message: "lambda must be nonnegative".into() });
        } else {
            exps.push(lambda);
            pairs.push((Complex64::new(fields[1], fields[2]), Complex64::new(fields[3], fields[4])));
        }
    }
    let mut f = ApPolynomial::zero(Spectrum::new(exps)?);
    f.set(0, a0)?;
    for (i, (p, n)) in pairs.into_iter().enumerate() {
        f.set(i as i64 + 1, p)?;
        f.set(-(i as i64 + 1), n)?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_basic_cases() {
        let f = ApPolynomial::monomial(Spectrum::integers(1), 1, c(1.0, 0.0)).unwrap();
        assert!((f.evaluate(0.0) - c(1.0, 0.0)).norm() < 1e-15);
        let z = ApPolynomial::zero(Spectrum::integers(3));
        assert_eq!(z.evaluate(1.7), c(0.0, 0.0));
        let (g, b, d) = (c(0.5, -1.0), c(2.0, 0.25), c(-0.75, 3.0));
        let f = ApPolynomial::from_pairs(Spectrum::integers(3), [(0, g), (-2, b), (2, d)]).unwrap();
        assert!((f.evaluate(0.0) - (g + b + d)).norm() < 1e-14);
    }

    #[test]
    fn empirical_mean_cases() {
        let one = ApPolynomial::constant(c(1.0, 0.0));
        assert!((one.empirical_mean(100.0, 0.01).unwrap() - c(1.0, 0.0)).norm() < 1e-10);

        // (e^{iT} - 1)/(iT) oracle
        let t = 2.0 * PI * 1000.0;
        let f = ApPolynomial::monomial(Spectrum::integers(1), 1, c(1.0, 0.0)).unwrap();
        let oracle = (Complex64::from_polar(1.0, t) - 1.0) / (Complex64::i() * t);
        let got = f.empirical_mean(t, 0.01).unwrap();
        assert!((got - oracle).norm() < 1e-8);
        assert!(got.norm() < 1e-3);

        let f = ApPolynomial::from_pairs(Spectrum::new(vec![2.0]).unwrap(), [(0, c(3.0, 0.0)), (1, c(1.0, 0.0))]).unwrap();
        let got = f.empirical_mean(1e4, 0.01).unwrap();
        assert!((got - c(3.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn spectrum_specs() {
        assert_eq!(Spectrum::parse("integers:3").unwrap(), Spectrum::integers(3));
        assert_eq!(Spectrum::parse("powers:4:1.1").unwrap(), Spectrum::powers(4, 1.1));
        assert_eq!(Spectrum::parse("list:0.5, 2,7").unwrap().exponents(), &[0.5, 2.0, 7.0]);
        for bad in ["integers", "powers:3:-1", "list:2,1", "ints:3"] {
            assert!(Spectrum::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn empirical_mean_rejects_bad_arguments() {
        let f = ApPolynomial::constant(c(1.0, 0.0));
        assert!(f.empirical_mean(0.0, 0.1).is_err());
        assert!(f.empirical_mean(10.0, -0.1).is_err());
        assert!(f.empirical_mean(10.0, 5.0).is_err());
    }

    #[test]
    fn fourier_coefficient_lookup_and_empirical() {
        let f = ApPolynomial::monomial(Spectrum::new(vec![2.0]).unwrap(), 1, c(5.0, 0.0)).unwrap();
        assert_eq!(f.fourier_coefficient(2.0, CoefficientMode::Exact).unwrap(), c(5.0, 0.0));
        assert_eq!(f.fourier_coefficient(3.0, CoefficientMode::Exact).unwrap(), c(0.0, 0.0));
        let e = f.fourier_coefficient(2.0, CoefficientMode::Empirical { horizon: 1e4, step: 0.01 }).unwrap();
        assert!((e - c(5.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn first_difference_multiplier() {
        let lambda = 1.7;
        let h = 0.4;
        let f = ApPolynomial::monomial(Spectrum::new(vec![lambda]).unwrap(), 1, c(1.0, 0.0)).unwrap();
        let theta = ThetaCollection::from_real(&[1.0, -1.0]).unwrap();
        let d = f.difference_theta(&theta, h);
        let expected = c(1.0, 0.0) - Complex64::from_polar(1.0, -lambda * h);
        assert!((d.coeff(1) - expected).norm() < 1e-15);
        assert!(f.difference_theta(&theta, 0.0).is_zero());
        // direct evaluation of f(t) - f(t - h)
        let t = 0.9;
        let direct = f.evaluate(t) - f.evaluate(t - h);
        assert!((d.evaluate(t) - direct).norm() < 1e-14);
    }

    #[test]
    fn steklov_cases() {
        let k = ApPolynomial::constant(c(2.5, -1.0));
        assert_eq!(k.steklov(0.3).unwrap().coeff(0), c(2.5, -1.0));
        let f = ApPolynomial::monomial(Spectrum::new(vec![1.0]).unwrap(), 1, c(1.0, 0.0)).unwrap();
        assert!(f.steklov(PI).unwrap().coeff(1).norm() < 1e-15);
        let half = f.steklov(PI / 2.0).unwrap().coeff(1);
        assert!((half - c(2.0 / PI, 0.0)).norm() < 1e-15);
        assert!(f.steklov(0.0).is_err());
        assert!(f.steklov(-1.0).is_err());
    }

    #[test]
    fn steklov_matches_direct_integration() {
        // F_h f(t) = (1/2h)∫_{t-h}^{t+h} f by quadrature
        let f = ApPolynomial::from_pairs(
            Spectrum::new(vec![0.7, 2.3]).unwrap(),
            [(0, c(1.0, 0.5)), (1, c(0.3, -0.2)), (-2, c(-1.1, 0.4))],
        )
        .unwrap();
        let h = 0.9;
        let fh = f.steklov(h).unwrap();
        for &t in &[0.0, 1.3, -2.1] {
            let re = crate::quadrature::adaptive_simpson(|u| f.evaluate(u).re, t - h, t + h, 1e-13, 8);
            let im = crate::quadrature::adaptive_simpson(|u| f.evaluate(u).im, t - h, t + h, 1e-13, 8);
            let direct = c(re, im) / (2.0 * h);
            assert!((fh.evaluate(t) - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn steklov_difference_cases() {
        let f = ApPolynomial::monomial(Spectrum::new(vec![1.0]).unwrap(), 1, c(1.0, 0.0)).unwrap();
        assert!(f.steklov_difference(1e-9, 1).unwrap().coeff(1).norm() < 1e-12);
        let d2 = f.steklov_difference(PI, 2).unwrap().coeff(1);
        assert!((d2 - c(1.0, 0.0)).norm() < 1e-14);
        let k = ApPolynomial::constant(c(4.0, 0.0));
        for m in 1..4 {
            assert!(k.steklov_difference(0.7, m).unwrap().is_zero());
        }
    }

    #[test]
    fn steklov_difference_matches_multiplier_and_binomial_expansion() {
        let f = ApPolynomial::from_pairs(
            Spectrum::new(vec![0.5, 1.5, 4.0]).unwrap(),
            [(1, c(1.0, 0.0)), (-2, c(0.2, 0.7)), (3, c(-0.4, 0.1))],
        )
        .unwrap();
        let h = 0.8;
        for m in 1..=4usize {
            let d = f.steklov_difference(h, m).unwrap();
            // multiplier (sinc - 1)^m
            for (k, l, a) in f.terms() {
                let want = a * (sinc(l * h) - 1.0).powi(m as i32);
                assert!((d.coeff(k) - want).norm() < 1e-12);
            }
            // Σ_j (-1)^{m-j} C(m,j) F_h^j
            let mut acc = ApPolynomial::zero(f.spectrum().clone());
            let mut fj = f.clone();
            let mut binom = 1.0;
            for j in 0..=m {
                let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
                acc = acc.add(&fj.scale(c(sign * binom, 0.0))).unwrap();
                fj = fj.steklov(h).unwrap();
                binom = binom * (m - j) as f64 / (j + 1) as f64;
            }
            for k in -3..=3 {
                assert!((acc.coeff(k) - d.coeff(k)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn harmonic_magnitude_cases() {
        let f = ApPolynomial::monomial(Spectrum::integers(2), 1, c(3.0, 4.0)).unwrap();
        let h = f.harmonic_magnitudes();
        assert!((h.get(1) - 5.0).abs() < 1e-15);
        assert_eq!(h.get(2), 0.0);
        let z = ApPolynomial::zero(Spectrum::integers(3)).harmonic_magnitudes();
        assert!(z.values().iter().all(|&v| v == 0.0) && z.h0 == 0.0);
    }

    #[test]
    fn binomial_theta_sums_to_zero() {
        for m in 1..8 {
            let t = ThetaCollection::binomial(m);
            let s: Complex64 = t.thetas().iter().sum();
            assert!(s.norm() < 1e-12);
            assert_eq!(t.order(), m);
        }
        assert!(ThetaCollection::from_real(&[1.0, 1.0]).is_err());
        assert!(ThetaCollection::from_real(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn prune_drops_empty_pairs() {
        let f = ApPolynomial::from_pairs(Spectrum::integers(4), [(1, c(1.0, 0.0)), (-3, c(0.0, 2.0)), (2, c(1e-17, 0.0))]).unwrap();
        let p = f.pruned();
        assert_eq!(p.spectrum().exponents(), &[1.0, 3.0]);
        assert_eq!(p.coeff(-2), c(0.0, 2.0));
        assert_eq!(p.coeff(1), c(1.0, 0.0));
    }

    #[test]
    fn signal_text_round_trip_and_errors() {
        let f = ApPolynomial::from_pairs(Spectrum::new(vec![0.5, 2.25]).unwrap(), [(0, c(1.0, -2.0)), (1, c(0.1, 0.2)), (-2, c(3.0, 0.0))]).unwrap();
        let g = parse_signal(&f.to_signal_text()).unwrap();
        assert_eq!(f, g);
        assert!(parse_signal("1 0 0 0 0\n0.5 1 0 0 0\n").is_err());
        assert!(parse_signal("1 0 0 0\n").is_err());
        assert!(parse_signal("1 a 0 0 0\n").is_err());
        assert!(parse_signal("0 1 0 2 0\n").is_err());
        let only_const = parse_signal("# c\n0 2 0 0 0\n").unwrap();
        assert_eq!(only_const.coeff(0), c(2.0, 0.0));
    }
}
