//! Build an almost-periodic polynomial, evaluate it, and recover its
//! coefficients from time averages.

use apjackson::signal::{CoefficientMode, ThetaCollection};
use apjackson::{parse_signal, ApPolynomial, Spectrum};
use num_complex::Complex64;

fn main() -> apjackson::Result<()> {
    let spec = Spectrum::new(vec![1.0, 2f64.sqrt(), 3.5])?;
    let f = ApPolynomial::from_pairs(
        spec,
        [(0, Complex64::new(0.5, 0.0)), (1, Complex64::new(1.0, -0.5)), (-2, Complex64::new(0.0, 0.75)), (3, Complex64::new(0.25, 0.0))],
    )?;
    println!("f(1.3) = {}", f.evaluate(1.3));
    for lambda in [1.0, -(2f64.sqrt()), 3.5] {
        let exact = f.fourier_coefficient(lambda, CoefficientMode::Exact)?;
        let mean = f.fourier_coefficient(lambda, CoefficientMode::Empirical { horizon: 2e3, step: 0.02 })?;
        println!("A({lambda:+.4}) exact {exact:.6}  averaged {mean:.6}");
    }

    // second difference and Steklov average act as multipliers on each harmonic
    let d2 = f.difference_theta(&ThetaCollection::binomial(2), 0.4);
    println!("second difference at h = 0.4 has {} harmonics", d2.magnitudes().len());
    println!("Steklov average at h = 0.4: f_h(1.3) = {}", f.steklov(0.4)?.evaluate(1.3));

    let text = f.to_signal_text();
    let back = parse_signal(&text)?;
    println!("round trip through the text format:\n{text}equal: {}", back == f);
    Ok(())
}
