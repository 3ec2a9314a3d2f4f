use super::frame::SaddleFrame;
use crate::error::{domain, Error, Result};
use crate::series;

/// Highest power of w kept in the inversion t(w) of φ(t) − φ(t₀) = w²/2.
pub const MAX_ORDER: usize = 32;

/// |ζ| below which g is built from the pole-free factorisation of f instead
/// of g_{2k} = f_{2k} − ζ^{−(2k+1)}.
pub const DEFAULT_TAU: f64 = 0.05;

/// Coefficients of t(w) = Σ t_k w^k, f(w) = Σ f_k w^k and of the even part of
/// g(w) = f(w) + 1/(w − ζ).
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    pub t: Vec<f64>,
    pub f: Vec<f64>,
    /// g₀, g₂, g₄, …
    pub g_even: Vec<f64>,
}

/// u(w) with φ(t₀+u) − φ(t₀) = w²/2 from the Taylor coefficients a_k of the
/// left side (a₀ = a₁ = 0, a₂ > 0). Returns n = a.len() − 1 coefficients.
pub(crate) fn invert_taylor(a: &[f64]) -> Result<Vec<f64>> {
    if a.len() < 3 || !(a[2] > 0.0) {
        return Err(Error::DegenerateFrame("second derivative of the phase is not positive".into()));
    }
    let n = a.len() - 1;
    // w = u √(2 Σ a_{k+2} u^k)
    let inner: Vec<f64> = (0..n - 1).map(|k| 2.0 * a[k + 2]).collect();
    let root = series::sqrt(&inner);
    let mut w = vec![0.0; n];
    w[1..].copy_from_slice(&root);
    Ok(series::revert(&w))
}

/// t₀, t₁, …, t_order from numeric inversion of the saddle transformation.
pub fn invert_phi_series(frame: &SaddleFrame, order: usize) -> Result<Vec<f64>> {
    if order == 0 || order > MAX_ORDER {
        return domain(format!("inversion order must lie in 1..={MAX_ORDER}, got {order}"));
    }
    let mut t = invert_taylor(&frame.phi_taylor(order + 2))?;
    t[0] = frame.t0;
    Ok(t)
}

/// f₀, f₁, … of f(w) = t′(w) / (t(w)(1 − y t(w))), one fewer than t.
pub fn f_coeffs(frame: &SaddleFrame, t: &[f64]) -> Result<Vec<f64>> {
    let y = frame.y;
    if 1.0 - y * t[0] == 0.0 {
        return Err(Error::NearTransition(
            "the pole coincides with the saddle; subtract it first (erfc-uniform expansion)".into(),
        ));
    }
    let n = t.len() - 1;
    let tt = &t[..n];
    let one_minus: Vec<f64> = tt.iter().enumerate().map(|(k, &c)| if k == 0 { 1.0 - y * c } else { -y * c }).collect();
    let den = series::mul(tt, &one_minus);
    let dt = &series::deriv(t)[..n];
    Ok(series::div(dt, &den))
}

/// Σ_{j>k} c_j ζ^{j−k−1}, the coefficients of (c(w) − c(ζ))/(w − ζ).
fn divided_difference(c: &[f64], zeta: f64) -> Vec<f64> {
    let n = c.len();
    let mut out = vec![0.0; n - 1];
    let mut acc = 0.0;
    for k in (0..n - 1).rev() {
        acc = acc * zeta + c[k + 1];
        out[k] = acc;
    }
    out
}

/// g₀, g₂, … For |ζ| ≥ τ they follow from g_{2k} = f_{2k} − ζ^{−(2k+1)}.
/// Closer to the transition that subtraction cancels, and g is formed as
/// (K(w) − K(ζ))/(w − ζ) with f = K/(w − ζ), K = −t′/(y t Q),
/// t(w) − t_p = (w − ζ) Q(w), all of which are free of the pole.
pub fn g_coeffs(frame: &SaddleFrame, t: &[f64], f: &[f64], tau: f64) -> Vec<f64> {
    let zeta = frame.zeta;
    if zeta.abs() >= tau {
        return (0..f.len().div_ceil(2))
            .map(|k| f[2 * k] - zeta.powi(-(2 * k as i32 + 1)))
            .collect();
    }
    let n = t.len();
    // Q_k = Σ_{j>k} t_j ζ^{j−k−1}; uses t(ζ) = t_p
    let q = divided_difference(t, zeta);
    let m = n - 1;
    let dt = &series::deriv(t)[..m];
    let den: Vec<f64> = series::mul(&t[..m], &q).iter().map(|c| frame.y * c).collect();
    let k_series: Vec<f64> = series::div(dt, &den).iter().map(|c| -c).collect();
    let g = divided_difference(&k_series, zeta);
    (0..g.len().div_ceil(2)).map(|k| g[2 * k]).collect()
}

/// All coefficients needed for k = 0..=k_max of the saddle and erfc-uniform sums.
pub fn expansion_coefficients(frame: &SaddleFrame, k_max: usize, tau: f64) -> Result<ExpansionCoefficients> {
    let order = (2 * k_max + 16).min(MAX_ORDER);
    if 2 * k_max + 3 > order {
        return domain(format!("k_max = {k_max} exceeds the available expansion order"));
    }
    let t = invert_phi_series(frame, order)?;
    let f = f_coeffs(frame, &t).unwrap_or_else(|_| vec![f64::INFINITY; order]);
    let mut g_even = g_coeffs(frame, &t, &f, tau);
    g_even.truncate(k_max + 2);
    let mut f = f;
    f.truncate(2 * k_max + 3);
    Ok(ExpansionCoefficients { t, f, g_even })
}

/// t₁ … t₄ in closed form through φ″ … φ⁽⁵⁾, for checking the numeric inversion.
pub fn closed_form_t(fr: &SaddleFrame) -> [f64; 4] {
    let (p2, p3, p4, p5) = (fr.phi2, fr.phi3, fr.phi4, fr.phi5);
    let t0 = fr.t0;
    [
        t0 * (t0 - 1.0) / (fr.s2 * t0 * t0 - (t0 - 1.0).powi(2)).sqrt(),
        -p3 / (6.0 * p2 * p2),
        (5.0 * p3 * p3 - 3.0 * p2 * p4) / (72.0 * p2.powf(3.5)),
        (45.0 * p4 * p3 * p2 - 40.0 * p3.powi(3) - 9.0 * p5 * p2 * p2) / (1080.0 * p2.powi(5)),
    ]
}

/// f₀ and f₂ in closed form, for checking the series division.
pub fn closed_form_f(fr: &SaddleFrame) -> [f64; 2] {
    let (p2, p3, p4) = (fr.phi2, fr.phi3, fr.phi4);
    let (t0, y) = (fr.t0, fr.y);
    let f0 = (t0 - 1.0) / ((1.0 - y * t0) * (fr.s2 * t0 * t0 - (t0 - 1.0).powi(2)).sqrt());
    let poly = 24.0 * p2 * p2 + 12.0 * p2 * (p3 - 6.0 * y * p2) * t0
        + (72.0 * p2 * p2 * y * y + 5.0 * p3 * p3 - 36.0 * p3 * y * p2 - 3.0 * p4 * p2) * t0 * t0
        + 2.0 * y * (12.0 * p3 * y * p2 + 3.0 * p4 * p2 - 5.0 * p3 * p3) * t0.powi(3)
        + y * y * (5.0 * p3 * p3 - 3.0 * p4 * p2) * t0.powi(4);
    let f2 = poly / (24.0 * p2.powf(3.5) * t0.powi(3) * (1.0 - y * t0).powi(3));
    [f0, f2]
}
