//! Inverse estimates of the modulus by best approximations, and how tight
//! they are on a single exponential.

use apjackson::{sharpness_ratio_scan, verify_inverse, ApPolynomial, InverseForm, OrliczFamily, PhiFunction, Spectrum};
use num_complex::Complex64;

fn main() -> apjackson::Result<()> {
    let spec = Spectrum::powers(10, 1.1);
    let f = ApPolynomial::from_pairs(
        spec.clone(),
        [(1, Complex64::new(1.0, 0.0)), (-3, Complex64::new(0.4, 0.2)), (7, Complex64::new(0.0, -0.3))],
    )?;
    let fam = OrliczFamily::stepanets(2.0)?;
    let gap = spec.max_gap().1;
    for form in [InverseForm::Alpha(2.0), InverseForm::Alpha(0.5), InverseForm::Phi(PhiFunction::sinc_power(1)?)] {
        let cert = verify_inverse(&f, 5, &form, &fam, Some(gap))?;
        println!("{} at delta {:.4}: modulus <= {:.8}", cert.phi, cert.delta, cert.lhs);
        for b in &cert.bounds {
            println!("  {:<16} rhs {:.8} margin {:+.3e}", b.name, b.rhs, b.margin);
        }
    }

    let scan = sharpness_ratio_scan(1, 2.0, &Spectrum::integers(1000), &OrliczFamily::linear(), &[1, 10, 100, 1000])?;
    for (n, r) in scan {
        println!("n {n:>4}: modulus / bound = {r:.8}");
    }
    Ok(())
}
