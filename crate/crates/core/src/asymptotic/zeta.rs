//! Expansions of x and y in powers of ζ about the transition point ζ = 0,
//! used to start the inversion. The coefficients come from Taylor-developing
//! ζ ∂ζ/∂x = y(t_p − t₀)/(2r) (fixed y) and
//! ζ ∂ζ/∂y = x(t_p − t₀)/(2r) + (x+2r)(y−y₀)/(2ry(1−y)) (fixed x)
//! around the transition, integrating, and reverting the resulting series.

use super::frame::saddle_point;
use crate::error::{domain, Error, Result};
use crate::params::{transition_x, transition_y, ShapeParams};
use crate::series;

/// Highest power of ζ supported.
pub const MAX_ZETA_ORDER: usize = 5;

/// A truncated ζ-series evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaSeriesValue {
    pub value: f64,
    /// Magnitude of the highest-order term included, the truncation estimate.
    pub last_term: f64,
}

/// Series of t₀ in s when ξ = ξ₀ + ξ₁ s, from ξt² + (cos²θ − ξ)t − 1 = 0.
fn saddle_series(c2: f64, xi0: f64, xi1: f64, n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n];
    t[0] = saddle_point(c2, xi0);
    // ∂F/∂t at the base point equals √((cos²θ−ξ)² + 4ξ) > 0
    let slope = 2.0 * xi0 * t[0] + c2 - xi0;
    let mut xi = vec![0.0; n];
    xi[0] = xi0;
    if n > 1 {
        xi[1] = xi1;
    }
    for k in 1..n {
        let t2 = series::mul(&t, &t);
        let lin: Vec<f64> = (0..n).map(|i| if i == 0 { c2 - xi[0] } else { -xi[i] }).collect();
        let xt2 = series::mul(&xi, &t2);
        let lt = series::mul(&lin, &t);
        let f_k = xt2[k] + lt[k];
        t[k] = -f_k / slope;
    }
    t
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ZETA_ORDER {
        return domain(format!("zeta-series order must lie in 1..={MAX_ZETA_ORDER}, got {order}"));
    }
    Ok(())
}

/// Reverts ζ = σ ε √S(ε) into ε = Σ e_k ζ^k (e₀ = 0), where S is given by
/// its coefficients and σ = ±1.
fn revert_scaled(s: &[f64], sigma: f64) -> Result<Vec<f64>> {
    if !(s[0] > 0.0) {
        return Err(Error::SeriesInvalid(format!("leading zeta coefficient is not real (S0 = {})", s[0])));
    }
    let root = series::sqrt(s);
    let mut w = vec![0.0; s.len() + 1];
    for (k, c) in root.iter().enumerate() {
        w[k + 1] = sigma * c;
    }
    Ok(series::revert(&w))
}

/// x₀, x₁, …, x_order of x = Σ x_k ζ^k at fixed (p, q, y).
pub fn x_zeta_coeffs(sp: &ShapeParams, y: f64, order: usize) -> Result<Vec<f64>> {
    check_order(order)?;
    if !(y > 0.0 && y < 1.0) {
        return domain(format!("the zeta series needs 0 < y < 1, got {y}"));
    }
    let (q, r) = (sp.q(), sp.r());
    let radicand = q - r * (1.0 - y) * (1.0 - y);
    if !(radicand > 0.0) {
        return Err(Error::SeriesInvalid(format!("x1 is not real: q - r(1-y)^2 = {radicand}")));
    }
    let x0 = transition_x(sp, y);
    let n = order + 2;
    let t = saddle_series(sp.cos2(), y * x0 / (2.0 * r), y / (2.0 * r), n);
    // ζ² = −(y/r) Σ_{k≥1} T_k s^{k+1}/(k+1), T = t₀(s) − t_p with T₀ = 0
    let s: Vec<f64> = (0..n - 1).map(|j| -(y / r) * t[j + 1] / (j as f64 + 2.0)).collect();
    let e = revert_scaled(&s[..order], 1.0)?;
    let mut coeffs = e;
    coeffs[0] = x0;
    Ok(coeffs)
}

/// y₀, y₁, …, y_order of y = Σ y_k ζ^k at fixed (p, q, x).
pub fn y_zeta_coeffs(sp: &ShapeParams, x: f64, order: usize) -> Result<Vec<f64>> {
    check_order(order)?;
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("the zeta series needs finite x >= 0, got {x}"));
    }
    let r = sp.r();
    let y0 = transition_y(sp, x);
    let n = order + 2;
    let t = saddle_series(sp.cos2(), x * y0 / (2.0 * r), x / (2.0 * r), n);
    let mut yv = vec![0.0; n];
    yv[0] = y0;
    yv[1] = 1.0;
    let tp = series::recip(&yv);
    let one_minus: Vec<f64> = yv.iter().enumerate().map(|(k, c)| if k == 0 { 1.0 - c } else { -c }).collect();
    let inv = series::recip(&series::mul(&yv, &one_minus));
    // G(ε) = x(t_p − t₀)/(2r) + (x+2r) ε/(2r y(1−y))
    let mut g: Vec<f64> = (0..n).map(|k| x * (tp[k] - t[k]) / (2.0 * r)).collect();
    let c = (x + 2.0 * r) / (2.0 * r);
    for k in 1..n {
        g[k] += c * inv[k - 1];
    }
    g[0] = 0.0;
    // ζ² = 2 Σ G_k ε^{k+1}/(k+1); ζ decreases through the transition as y grows
    let s: Vec<f64> = (0..n - 1).map(|j| 2.0 * g[j + 1] / (j as f64 + 2.0)).collect();
    let mut coeffs = revert_scaled(&s[..order], -1.0)?;
    coeffs[0] = y0;
    Ok(coeffs)
}

fn evaluate(coeffs: &[f64], zeta: f64) -> ZetaSeriesValue {
    let order = coeffs.len() - 1;
    ZetaSeriesValue { value: series::eval(coeffs, zeta), last_term: (coeffs[order] * zeta.powi(order as i32)).abs() }
}

/// x(ζ) at fixed (p, q, y) through ζ^order.
pub fn x_of_zeta(sp: &ShapeParams, y: f64, zeta: f64, order: usize) -> Result<ZetaSeriesValue> {
    let v = evaluate(&x_zeta_coeffs(sp, y, order)?, zeta);
    if !(v.value >= 0.0) {
        return Err(Error::SeriesInvalid(format!("zeta series gives negative x = {}", v.value)));
    }
    Ok(v)
}

/// y(ζ) at fixed (p, q, x) through ζ^order.
pub fn y_of_zeta(sp: &ShapeParams, x: f64, zeta: f64, order: usize) -> Result<ZetaSeriesValue> {
    let v = evaluate(&y_zeta_coeffs(sp, x, order)?, zeta);
    if !(v.value > 0.0 && v.value < 1.0) {
        return Err(Error::SeriesInvalid(format!("zeta series gives y = {} outside (0, 1)", v.value)));
    }
    Ok(v)
}
