//! Jackson integrals, the derived constants, and direct estimates on the
//! extremal signal where they become equalities.

use std::f64::consts::PI;

use apjackson::jackson::{corollary2_constant, corollary2_integer_constant, corollary4_constant, km_displayed_sum};
use apjackson::{
    extremal_function, jackson_integral, km_constant, verify_corollary2, verify_corollary3, verify_theorem1, OrliczFamily,
    PhiFunction, Spectrum, WeightFunction,
};
use num_complex::Complex64;

fn main() -> apjackson::Result<()> {
    let spec = Spectrum::integers(20);
    let v = WeightFunction::one_minus_cos(PI)?;
    for alpha in [1.0, 2.0, 3.0, 4.0] {
        let i = jackson_integral(4, &PhiFunction::sine_power(alpha)?, &v, &spec, None)?;
        println!("alpha {alpha}: integral {:.10} attained at k = {}", i.value, i.argmin);
    }
    for m in 1..=3 {
        println!("K({m}) = {:.10}  Steklov constant {:.10}", km_constant(m)?, corollary4_constant(m)?);
    }
    println!("displayed finite-sum form of K(1): {}", km_displayed_sum(1));
    println!("sup-modulus constants at alpha = 2: {:.6} and {:.6}", corollary2_constant(2.0), corollary2_integer_constant(2.0).unwrap_or(f64::NAN));

    let n = 3;
    let star = extremal_function(n, Complex64::new(0.2, 0.0), Complex64::new(0.6, -0.3), Complex64::new(1.0, 0.0), spec)?;
    let fam = OrliczFamily::linear();
    let phi = PhiFunction::sine_power(2.0)?;
    for cert in verify_theorem1(&star, n, &phi, &v, &fam, None)? {
        println!("{:<18} lhs {:.10} rhs {:.10} pass {}", cert.theorem, cert.lhs, cert.rhs, cert.pass);
    }
    let c3 = verify_corollary3(&star, n, 2.0, 0.75 * PI, &fam)?;
    println!("{:<18} lhs {:.10} rhs {:.10} pass {}", c3.theorem, c3.lhs, c3.rhs, c3.pass);
    for cert in verify_corollary2(&star, n, 2.0, &fam)? {
        println!("{:<18} lhs {:.10} rhs {:.10} strict pass {}", cert.theorem, cert.lhs, cert.rhs, cert.pass);
    }
    Ok(())
}
