//! Musielak–Orlicz norms of a coefficient sequence, checked against the dual
//! supremum and the ℓ_p closed form.

use apjackson::orlicz::ORACLE_MAX_SUPPORT;
use apjackson::{dual_sup_oracle, orlicz_norm, ApPolynomial, OrliczFamily, OrliczFunction, Spectrum};
use num_complex::Complex64;

fn main() -> apjackson::Result<()> {
    let f = ApPolynomial::from_pairs(
        Spectrum::integers(3),
        [(-1, Complex64::new(0.6, 0.0)), (1, Complex64::new(0.0, 1.2)), (3, Complex64::new(-0.3, 0.4))],
    )?;
    let lp = |p: f64| f.magnitudes().iter().map(|(_, a)| a.powf(p)).sum::<f64>().powf(1.0 / p);

    let families = vec![
        OrliczFamily::linear(),
        OrliczFamily::stepanets(2.0)?,
        OrliczFamily::stepanets(3.0)?,
        OrliczFamily::uniform(OrliczFunction::power_scaled(0.5, 2.0)?),
        OrliczFamily::uniform(OrliczFunction::tabulated(vec![(0.0, 0.0), (1.0, 0.2), (2.0, 1.2)], None)?)
            .with_override(3, OrliczFunction::Linear),
    ];
    for fam in &families {
        let norm = orlicz_norm(&f, fam)?;
        let dual = dual_sup_oracle(&f.magnitudes(), fam, ORACLE_MAX_SUPPORT)?;
        println!("{:<40} norm {norm:.10}  dual {:.10}", fam.label(), dual.value);
    }
    println!("l2 {:.10}  l3 {:.10}", lp(2.0), lp(3.0));

    let json = families[4].to_json();
    println!("family as JSON: {json}");
    println!("parsed back: {}", OrliczFamily::from_json(&json)?.label());
    Ok(())
}
