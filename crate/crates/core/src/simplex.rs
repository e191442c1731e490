//! Dense tableau simplex for `max cᵀx` subject to `Ax <= b`, `x >= 0`,
//! `b >= 0`. The slack basis is feasible, so no phase one is needed.
//! Bland's rule takes over on long degenerate runs to keep it finite.

pub const TOLERANCE: f64 = 1e-10;
/// Smallest pivot element accepted by the ratio test.
const PIVOT_TOLERANCE: f64 = 1e-9;
const BLAND_AFTER: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Optimal multipliers of the `Ax <= b` rows, read off the slack columns.
    pub duals: Vec<f64>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpError {
    /// The objective grows without bound along `column`.
    Unbounded { column: usize },
    Malformed(String),
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(LpError::Malformed("dimension mismatch".into()));
    }
    if b.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(LpError::Malformed("right-hand side must be finite and nonnegative".into()));
    }
    let width = n + m + 1;
    let mut t = vec![0.0; (m + 1) * width];
    for i in 0..m {
        let row = &mut t[i * width..(i + 1) * width];
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[width - 1] = b[i];
    }
    let obj = m * width;
    for j in 0..n {
        t[obj + j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0;

    // Dantzig pricing with the largest pivot among ratio ties; Bland's rule
    // takes over during long degenerate stretches so cycling cannot persist.
    let mut degenerate_run = 0usize;
    loop {
        let bland = degenerate_run > BLAND_AFTER;
        let candidates = (0..n + m).filter(|&j| t[obj + j] < -TOLERANCE);
        let enter = if bland {
            candidates.min()
        } else {
            candidates.min_by(|&a, &b| t[obj + a].total_cmp(&t[obj + b]))
        };
        let Some(enter) = enter else {
            break;
        };
        let mut min_ratio = f64::INFINITY;
        for i in 0..m {
            let aij = t[i * width + enter];
            if aij > PIVOT_TOLERANCE {
                min_ratio = min_ratio.min(t[i * width + width - 1].max(0.0) / aij);
            }
        }
        if min_ratio == f64::INFINITY {
            return Err(LpError::Unbounded { column: enter });
        }
        let slack = TOLERANCE * (1.0 + min_ratio);
        let mut leave: Option<usize> = None;
        for i in 0..m {
            let aij = t[i * width + enter];
            if aij > PIVOT_TOLERANCE && t[i * width + width - 1].max(0.0) / aij <= min_ratio + slack {
                let better = match leave {
                    None => true,
                    Some(l) if bland => basis[i] < basis[l],
                    Some(l) => aij > t[l * width + enter],
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let r = leave.expect("a row attains the minimum ratio");
        degenerate_run = if min_ratio <= TOLERANCE { degenerate_run + 1 } else { 0 };
        pivot(&mut t, width, m, r, enter);
        basis[r] = enter;
        pivots += 1;
    }

    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i * width + width - 1];
        }
    }
    let duals = (0..m).map(|i| t[obj + n + i].max(0.0)).collect();
    Ok(LpSolution { x, objective: t[obj + width - 1], duals, pivots })
}

fn pivot(t: &mut [f64], width: usize, m: usize, r: usize, col: usize) {
    let p = t[r * width + col];
    for v in &mut t[r * width..(r + 1) * width] {
        *v /= p;
    }
    let pivot_row: Vec<f64> = t[r * width..(r + 1) * width].to_vec();
    for i in 0..=m {
        if i == r {
            continue;
        }
        let factor = t[i * width + col];
        if factor != 0.0 {
            for (v, pr) in t[i * width..(i + 1) * width].iter_mut().zip(&pivot_row) {
                *v -= factor * pr;
            }
            t[i * width + col] = 0.0;
        }
    }
}
