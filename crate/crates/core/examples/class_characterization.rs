//! Bari-type growth check for majorants and finite-range class evidence for a
//! signal with planted decay.

use apjackson::inverse::ClassConstants;
use apjackson::{bari_condition_check, class_membership_report, planted_decay, Majorant, OrliczFamily, Spectrum};

fn main() -> apjackson::Result<()> {
    let spec = Spectrum::integers(400);
    for (r, s) in [(0.5, 2.0), (1.0, 2.0), (2.0, 2.0)] {
        let b = bari_condition_check(&Majorant::power_law(r)?, &spec, s, 400)?;
        println!("omega = t^{r}, s = {s}: sup ratio {:.4}, looks bounded {}", b.sup_ratio, b.bounded);
    }

    let f = planted_decay(Spectrum::integers(32), 0.8)?;
    let omega = Majorant::power_law(0.8)?;
    let report = class_membership_report(&f, 2.0, &omega, &OrliczFamily::linear(), 32, ClassConstants { modulus: 10.0, approximation: 2.0 }, None)?;
    println!(
        "{}: modulus ratio <= {:.4} ({}), approximation ratio <= {:.4} ({}), converse applicable {}",
        report.class_tag, report.sup_modulus_ratio, report.modulus_within, report.sup_approximation_ratio, report.approximation_within,
        report.converse_applicable
    );
    Ok(())
}
