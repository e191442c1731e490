//! Best approximations `E_{λ_n}` and their decay for planted signals.

use apjackson::{best_approximation, planted_decay, BestApproxProfile, OrliczFamily, Spectrum};

fn main() -> apjackson::Result<()> {
    let spec = Spectrum::powers(12, 1.1);
    let f = planted_decay(spec.clone(), 0.8)?;
    let linear = OrliczFamily::linear();
    println!("planted rate 0.8 on lambda_k = k^1.1 (l1 norm):");
    for n in [1, 2, 4, 8, 12] {
        let e = best_approximation(&f, n, &linear)?;
        let lam = spec.lambda(n as i64);
        println!("  n {n:>2}  lambda {lam:.4}  E {e:.8}  lambda^-0.8 {:.8}", lam.powf(-0.8));
    }
    let profile = BestApproxProfile::compute(&f, &OrliczFamily::stepanets(2.0)?, "planted")?;
    print!("l2 profile:\n{}", profile.to_csv());
    Ok(())
}
