//! Truncated power series with f64 coefficients. A series of length n holds
//! the coefficients of w⁰..w^{n−1}; every operation truncates to the length of
//! its first argument.

pub(crate) fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    (0..n)
        .map(|k| (0..=k).filter(|&i| k - i < b.len()).map(|i| a[i] * b[k - i]).sum())
        .collect()
}

/// 1/a, requiring a₀ ≠ 0.
pub(crate) fn recip(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut r = vec![0.0; n];
    r[0] = 1.0 / a[0];
    for k in 1..n {
        let s: f64 = (1..=k).map(|i| a[i] * r[k - i]).sum();
        r[k] = -s * r[0];
    }
    r
}

pub(crate) fn div(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut b = b.to_vec();
    b.resize(a.len(), 0.0);
    mul(a, &recip(&b))
}

/// √a, requiring a₀ > 0.
pub(crate) fn sqrt(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut r = vec![0.0; n];
    r[0] = a[0].sqrt();
    for k in 1..n {
        let s: f64 = (1..k).map(|i| r[i] * r[k - i]).sum();
        r[k] = (a[k] - s) / (2.0 * r[0]);
    }
    r
}

/// a(b(w)) for b₀ = 0.
pub(crate) fn compose(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut out = vec![0.0; n];
    for &ak in a.iter().take(n).rev() {
        out = mul(&out, b);
        out[0] += ak;
    }
    out
}

/// The compositional inverse b with a(b(w)) = w, for a₀ = 0 and a₁ ≠ 0.
pub(crate) fn revert(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut b = vec![0.0; n];
    if n < 2 {
        return b;
    }
    b[1] = 1.0 / a[1];
    for m in 2..n {
        let c = compose(&a[..=m], &b[..=m]);
        b[m] = -c[m] / a[1];
    }
    b
}

pub(crate) fn deriv(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut d: Vec<f64> = (1..n).map(|k| k as f64 * a[k]).collect();
    d.push(0.0);
    d
}

pub(crate) fn eval(a: &[f64], w: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * w + c)
}
