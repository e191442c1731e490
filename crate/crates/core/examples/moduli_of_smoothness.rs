//! Generalized moduli of smoothness: classical, Steklov and a custom φ.

use std::f64::consts::PI;

use apjackson::smoothness::{classical_modulus, steklov_modulus, CustomPhi};
use apjackson::{modulus, ApPolynomial, ModulusRequest, OrliczFamily, PhiFunction, Spectrum};
use num_complex::Complex64;

fn main() -> apjackson::Result<()> {
    let f = ApPolynomial::from_pairs(
        Spectrum::integers(5),
        [(1, Complex64::new(1.0, 0.0)), (-2, Complex64::new(0.5, 0.5)), (5, Complex64::new(0.2, 0.0))],
    )?;
    let fam = OrliczFamily::stepanets(2.0)?;
    for delta in [0.05, 0.2, 0.5, 1.0, PI] {
        let w2 = classical_modulus(&f, 2, delta, &fam)?;
        let s1 = steklov_modulus(&f, 1, delta, &fam)?;
        println!(
            "delta {delta:.3}: omega_2 in [{:.8}, {:.8}] at h = {:.4}; steklov_1 in [{:.8}, {:.8}]",
            w2.lower, w2.upper, w2.argmax, s1.lower, s1.upper
        );
    }

    let bump = PhiFunction::Custom(CustomPhi::new("1 - cos^3", |t: f64| 1.0 - t.cos().powi(3), PI)?);
    let phi_a = PhiFunction::sine_power(1.5)?;
    for phi in [&bump, &phi_a] {
        let m = modulus(&ModulusRequest::new(&f, phi, 0.7, &fam))?;
        println!("{:<16} sup = {:.4} at {:.4}; modulus(0.7) in [{:.8}, {:.8}]", phi.label(), phi.sup().0, phi.sup().1, m.lower, m.upper);
    }
    Ok(())
}
