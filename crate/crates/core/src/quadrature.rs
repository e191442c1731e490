//! One-dimensional quadrature: adaptive Simpson with an absolute tolerance,
//! and fixed-step composite Simpson for long smooth averages.

const MAX_DEPTH: u32 = 48;

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_rec(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1)
            + adaptive_rec(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1)
    }
}

/// Adaptive Simpson on `[a, b]`, split first into `panels` equal pieces so
/// oscillatory integrands are not under-sampled by the initial rule.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let panel_tol = tol / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == panels { b } else { lo + width };
            let mid = 0.5 * (lo + hi);
            let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
            let whole = simpson(flo, fmid, fhi, lo, hi);
            adaptive_rec(&f, lo, flo, mid, fmid, hi, fhi, whole, panel_tol, 0)
        })
        .sum()
}

/// Composite Simpson over `samples` taken on a uniform grid with spacing `step`.
/// An odd number of intervals falls back to trapezoid on the last one.
pub fn composite_simpson_samples(samples: &[f64], step: f64) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let intervals = n - 1;
    let even = intervals - intervals % 2;
    let mut acc = 0.0;
    let mut i = 0;
    while i < even {
        acc += samples[i] + 4.0 * samples[i + 1] + samples[i + 2];
        i += 2;
    }
    acc *= step / 3.0;
    if even < intervals {
        acc += 0.5 * step * (samples[n - 2] + samples[n - 1]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn adaptive_matches_elementary_integrals() {
        let v = adaptive_simpson(|u: f64| (1.0 - u.cos()) * u.sin(), 0.0, PI, 1e-12, 4);
        assert!((v - 2.0).abs() < 1e-10);
        let v = adaptive_simpson(|u: f64| u * u * u.sin(), 0.0, PI, 1e-12, 4);
        assert!((v - (PI * PI - 4.0)).abs() < 1e-10);
    }

    #[test]
    fn composite_handles_odd_interval_count() {
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        assert!((composite_simpson_samples(&ys, 0.1) - 1.0 / 3.0).abs() < 1e-12);
        let ys: Vec<f64> = xs[..10].to_vec();
        let exact = 0.9 * 0.9 / 2.0;
        assert!((composite_simpson_samples(&ys, 0.1) - exact).abs() < 1e-12);
    }
}
