//! Golden-section search on unimodal functions.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes `f` on `[lo, hi]` until the bracket is narrower than `tol`;
/// returns `(argmin, min)`. The endpoints are compared too, so a monotone `f`
/// yields the better endpoint.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> (f64, f64) {
    let f_lo = f(lo);
    let f_hi = f(hi);
    let (a0, b0) = (lo, hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (hi - lo).abs() <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if f_lo < best.1 {
        best = (a0, f_lo);
    }
    if f_hi < best.1 {
        best = (b0, f_hi);
    }
    best
}

/// Maximizes `f` on `[lo, hi]`; returns `(argmax, max)`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> (f64, f64) {
    let (x, v) = golden_min(|x| -f(x), lo, hi, tol, max_iter);
    (x, -v)
}
