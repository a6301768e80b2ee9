//! Float helpers that work without `std`, plus tiny dense linear algebra.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn log10(x: f64) -> f64 {
    libm::log10(x)
}

/// `-p log2 p` with the `0 log 0 = 0` convention.
#[inline]
pub(crate) fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * log2(p)
    }
}

/// Pairwise summation; order-independent enough for aggregating trial means.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting. `a` is row-major `n × n`. Returns `None` when singular.
pub(crate) fn solve_square(a: &[f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        let mut best = abs(m[col * n + col]);
        for r in col + 1..n {
            let v = abs(m[r * n + col]);
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best < 1e-14 {
            return None;
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            rhs.swap(col, piv);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[r * n + c] -= f * m[col * n + c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = rhs[r];
        for c in r + 1..n {
            s -= m[r * n + c] * x[c];
        }
        x[r] = s / m[r * n + r];
    }
    Some(x)
}

/// Minimum-norm solution of `a x = b` for `a` of shape `rows × cols`,
/// computed as `aᵀ (a aᵀ)⁺ b` after dropping dependent rows. Returns the
/// solution together with the residual `max |a x − b|`.
pub(crate) fn min_norm_solve(a: &[f64], b: &[f64], rows: usize, cols: usize) -> (Vec<f64>, f64) {
    // Greedily keep linearly independent rows (Gram-Schmidt on rows).
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut kept = Vec::new();
    for r in 0..rows {
        let mut v = a[r * cols..(r + 1) * cols].to_vec();
        for q in &basis {
            let d: f64 = v.iter().zip(q).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= d * y;
            }
        }
        let norm = sqrt(v.iter().map(|x| x * x).sum());
        if norm > 1e-10 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
            kept.push(r);
        }
    }
    let k = kept.len();
    let mut x = vec![0.0; cols];
    if k > 0 {
        let mut gram = vec![0.0; k * k];
        for (i, &ri) in kept.iter().enumerate() {
            for (j, &rj) in kept.iter().enumerate() {
                gram[i * k + j] = (0..cols).map(|c| a[ri * cols + c] * a[rj * cols + c]).sum();
            }
        }
        let rhs: Vec<f64> = kept.iter().map(|&r| b[r]).collect();
        if let Some(y) = solve_square(&gram, &rhs, k) {
            for (i, &ri) in kept.iter().enumerate() {
                for c in 0..cols {
                    x[c] += a[ri * cols + c] * y[i];
                }
            }
        }
    }
    let mut residual: f64 = 0.0;
    for r in 0..rows {
        let ax: f64 = (0..cols).map(|c| a[r * cols + c] * x[c]).sum();
        residual = residual.max(abs(ax - b[r]));
    }
    (x, residual)
}

/// Formats `x` in plain decimal notation with at least `sig` significant digits.
pub fn format_significant(x: f64, sig: usize) -> alloc::string::String {
    if !x.is_finite() {
        return alloc::format!("{x}");
    }
    if x == 0.0 {
        return alloc::format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let exp = floor(log10(abs(x))) as i64;
    let decimals = (sig as i64 - 1 - exp).max(0) as usize;
    alloc::format!("{:.*}", decimals, x)
}
