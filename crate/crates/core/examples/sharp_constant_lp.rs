//! Sharp Jackson constant over step weights, solved as a linear program and
//! compared with the preset weights.

use std::f64::consts::PI;

use apjackson::{jackson_integral, sharp_constant_lp, PhiFunction, Spectrum};

fn main() -> apjackson::Result<()> {
    let spec = Spectrum::integers(16);
    for phi in [PhiFunction::sine_power(2.0)?, PhiFunction::sinc_power(1)?] {
        for g in [64, 128, 256] {
            let sc = sharp_constant_lp(2, &phi, PI, &spec, g, None)?;
            let presets: Vec<String> = sc.preset_ratios.iter().map(|(l, r)| format!("{l} {r:.6}")).collect();
            println!("{:<14} G {g:>3}: LP {:.8}  presets: {}", phi.label(), sc.value, presets.join(", "));
            if g == 256 {
                let check = jackson_integral(2, &phi, &sc.weight, &spec, None)?;
                println!("  optimal weight has integral {:.8} and variation {:.8}", check.value, sc.weight.total_variation());
            }
        }
    }
    Ok(())
}
