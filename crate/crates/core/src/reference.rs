//! Direct summation of the Poisson mixture defining B and B̄.
//!
//! B = e^{-x/2} Σ (x/2)^j/j! I_y(p+j, q) and B̄ = e^{-x/2} Σ (x/2)^j/j! I_{1-y}(q, p+j).
//! The central terms are generated from the exact relation
//! I_y(a, b) = I_y(a+1, b) + y^a (1-y)^b / (a B(a, b)), which only ever adds
//! positive quantities: downwards in j for B, upwards in j for B̄.

use crate::dispatch;
use crate::error::{domain, Error, Result};
use crate::kernels::{ln_beta_prefix, ln_central_beta, rlog1, stirling_correction, lgamma, CentralBetaArgs};
use crate::params::{transition_y, EvalPoint, Method, ProbabilityPair, ShapeParams, Target};

const MAX_TERMS: usize = 1_000_000;
/// ln(1e-18): terms below this fraction of the running sum are negligible.
const LN_NEGLIGIBLE: f64 = -41.446_531_673_892_82;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// ln of the Poisson weight e^{-λ} λ^j / j!.
pub(crate) fn ln_poisson(j: usize, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return if j == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if j == 0 {
        return -lambda;
    }
    let jf = j as f64;
    if jf < 10.0 {
        return -lambda + jf * lambda.ln() - lgamma(jf + 1.0);
    }
    // −(λ−j) + j ln(λ/j) − ½ln(2πj) − δ(j), without cancellation near the mode
    -jf * rlog1((lambda - jf) / jf) - 0.5 * (LN_2PI + jf.ln()) - stirling_correction(jf)
}

/// Running sum of positive terms given by their logarithms, with
/// compensated (Neumaier) summation at a movable reference scale.
#[derive(Debug, Clone)]
pub(crate) struct LogSum {
    ln_ref: f64,
    sum: f64,
    comp: f64,
}

impl LogSum {
    pub(crate) fn new() -> Self {
        Self { ln_ref: f64::NEG_INFINITY, sum: 0.0, comp: 0.0 }
    }

    pub(crate) fn add_ln(&mut self, ln_v: f64) {
        if ln_v == f64::NEG_INFINITY {
            return;
        }
        if self.sum == 0.0 {
            self.ln_ref = ln_v;
            self.sum = 1.0;
            return;
        }
        if ln_v > self.ln_ref + 100.0 {
            let f = (self.ln_ref - ln_v).exp();
            self.sum *= f;
            self.comp *= f;
            self.ln_ref = ln_v;
        }
        let v = (ln_v - self.ln_ref).exp();
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn ln_total(&self) -> f64 {
        if self.sum == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.ln_ref + (self.sum + self.comp).ln()
        }
    }
}

/// A positive quantity exp(ln_s) · u whose mantissa u is kept in range.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    ln_s: f64,
    u: f64,
    uh: f64,
}

impl Scaled {
    /// Value exp(ln_v) with companion increment exp(ln_h).
    fn new(ln_v: f64, ln_h: f64) -> Self {
        if ln_h - ln_v > 600.0 {
            Self { ln_s: ln_h, u: (ln_v - ln_h).exp(), uh: 1.0 }
        } else {
            Self { ln_s: ln_v, u: 1.0, uh: (ln_h - ln_v).exp() }
        }
    }

    /// Multiplies the increment by `factor`, keeping it representable.
    fn scale_increment(&mut self, factor: f64) {
        let next = self.uh * factor;
        if next > 1e200 || !next.is_finite() {
            let ln_new = self.uh.ln() + factor.ln();
            self.u = (self.u.ln() - ln_new).exp();
            self.ln_s += ln_new;
            self.uh = 1.0;
        } else {
            self.uh = next;
        }
    }

    fn accumulate(&mut self) {
        self.u += self.uh;
        if self.u > 1e200 {
            self.u *= 1e-200;
            self.uh *= 1e-200;
            self.ln_s += 200.0 * std::f64::consts::LN_10;
        }
    }

    fn ln_value(&self) -> f64 {
        self.ln_s + self.u.ln()
    }
}

fn poisson_window(lambda: f64) -> f64 {
    10.0 * lambda.sqrt() + 30.0
}

fn series_ln_b(p: f64, q: f64, lambda: f64, y: f64) -> Result<(f64, usize)> {
    let w = poisson_window(lambda);
    let j_top = (lambda + w).ceil() as usize;
    let j_window_lo = (lambda - w).floor().max(0.0) as usize;
    if j_top - j_window_lo > MAX_TERMS {
        return Err(Error::Evaluation(format!("Poisson window of {} terms is too wide", j_top - j_window_lo)));
    }
    let a_top = p + j_top as f64;
    let (ln_i, _) = ln_central_beta(CentralBetaArgs::new(a_top, q, y)?)?;
    let ln_h = ln_beta_prefix(a_top, q, y) - a_top.ln();
    let mut cur = Scaled::new(ln_i, ln_h);
    let mut acc = LogSum::new();
    acc.add_ln(ln_poisson(j_top, lambda) + cur.ln_value());
    let mut prev = f64::INFINITY;
    let mut n = 1;
    let mut j = j_top;
    while j > 0 {
        let jf = j as f64;
        // h_{j-1} = h_j (p+j) / (y (p+q+j-1)),  I_{j-1} = I_j + h_{j-1}
        cur.scale_increment((p + jf) / (y * (p + q + jf - 1.0)));
        cur.accumulate();
        j -= 1;
        n += 1;
        let ln_t = ln_poisson(j, lambda) + cur.ln_value();
        acc.add_ln(ln_t);
        if j < j_window_lo && ln_t < acc.ln_total() + LN_NEGLIGIBLE && ln_t < prev {
            break;
        }
        prev = ln_t;
    }
    Ok((acc.ln_total(), n))
}

fn series_ln_bbar(p: f64, q: f64, lambda: f64, y: f64) -> Result<(f64, usize)> {
    let w = poisson_window(lambda);
    let j_lo = (lambda - w).floor().max(0.0) as usize;
    let j_window_hi = (lambda + w).ceil() as usize;
    let a_lo = p + j_lo as f64;
    let (_, ln_ic) = ln_central_beta(CentralBetaArgs::new(a_lo, q, y)?)?;
    let ln_h = ln_beta_prefix(a_lo, q, y) - a_lo.ln();
    let mut cur = Scaled::new(ln_ic, ln_h);
    let mut acc = LogSum::new();
    acc.add_ln(ln_poisson(j_lo, lambda) + cur.ln_value());
    let mut prev = f64::NEG_INFINITY;
    let mut j = j_lo;
    let mut n = 1;
    loop {
        let jf = j as f64;
        // Ī_{j+1} = Ī_j + h_j,  h_{j+1} = h_j y (p+q+j) / (p+j+1)
        cur.accumulate();
        cur.scale_increment(y * (p + q + jf) / (p + jf + 1.0));
        j += 1;
        n += 1;
        let ln_t = ln_poisson(j, lambda) + cur.ln_value();
        acc.add_ln(ln_t);
        if j > j_window_hi && ln_t < acc.ln_total() + LN_NEGLIGIBLE && ln_t < prev {
            break;
        }
        if n > MAX_TERMS {
            return Err(Error::Evaluation("complement series exceeded 10^6 terms".into()));
        }
        prev = ln_t;
    }
    Ok((acc.ln_total(), n))
}

/// ln B (or ln B̄) by the defining series, together with the number of terms
/// summed. Requires 0 < y < 1.
pub fn ln_eval_series_target(sp: &ShapeParams, pt: &EvalPoint, target: Target) -> Result<(f64, usize)> {
    let (x, y) = (pt.x(), pt.y());
    if y <= 0.0 || y >= 1.0 {
        return domain(format!("series summation needs 0 < y < 1, got {y}"));
    }
    match target {
        Target::B => series_ln_b(sp.p(), sp.q(), 0.5 * x, y),
        Target::Bbar => series_ln_bbar(sp.p(), sp.q(), 0.5 * x, y),
    }
}

fn rounding_estimate(value: f64, n_terms: usize) -> f64 {
    value * f64::EPSILON * (8.0 + 4.0 * (n_terms as f64).sqrt())
}

/// B and B̄ from the defining series, summing whichever is smaller: B when
/// y ≤ y₀ = (x+2p)/(x+2r), else B̄.
pub fn eval_series(sp: &ShapeParams, pt: &EvalPoint, tol: f64) -> Result<ProbabilityPair> {
    if !(tol >= 1e-15) {
        return domain(format!("tolerance must be at least 1e-15, got {tol}"));
    }
    let (x, y) = (pt.x(), pt.y());
    if y == 0.0 {
        return Ok(ProbabilityPair::from_b(0.0, Method::Boundary, 0.0));
    }
    if y == 1.0 {
        return Ok(ProbabilityPair::from_b(1.0, Method::Boundary, 0.0));
    }
    if x == 0.0 {
        let (i, ic) = crate::kernels::central_beta(CentralBetaArgs::new(sp.p(), sp.q(), y)?)?;
        return Ok(if i <= ic {
            ProbabilityPair::from_b(i, Method::Central, rounding_estimate(i, 1))
        } else {
            ProbabilityPair::from_bbar(ic, Method::Central, rounding_estimate(ic, 1))
        });
    }
    let target = if y <= transition_y(sp, x) { Target::B } else { Target::Bbar };
    let (ln_v, n) = ln_eval_series_target(sp, pt, target)?;
    let v = ln_v.exp();
    Ok(ProbabilityPair::from_target(target, v, Method::Series, rounding_estimate(v, n)))
}

/// I_y(p+j, q) for j = j_lo..=j_hi.
pub fn central_term_sequence(sp: &ShapeParams, y: f64, j_lo: usize, j_hi: usize) -> Result<Vec<f64>> {
    if j_lo > j_hi {
        return domain(format!("empty index range {j_lo}..={j_hi}"));
    }
    if !(0.0..=1.0).contains(&y) {
        return domain(format!("quantile must lie in [0, 1], got {y}"));
    }
    let len = j_hi - j_lo + 1;
    if y == 0.0 {
        return Ok(vec![0.0; len]);
    }
    if y == 1.0 {
        return Ok(vec![1.0; len]);
    }
    let (p, q) = (sp.p(), sp.q());
    let a_top = p + j_hi as f64;
    let (ln_i, _) = ln_central_beta(CentralBetaArgs::new(a_top, q, y)?)?;
    let ln_h = ln_beta_prefix(a_top, q, y) - a_top.ln();
    let mut cur = Scaled::new(ln_i, ln_h);
    let mut out = vec![0.0; len];
    out[len - 1] = cur.ln_value().exp();
    for j in (j_lo..j_hi).rev() {
        let jf = (j + 1) as f64;
        cur.scale_increment((p + jf) / (y * (p + q + jf - 1.0)));
        cur.accumulate();
        out[j - j_lo] = cur.ln_value().exp();
    }
    Ok(out)
}

/// 1 − q(λ, ω; 2a, 2b) from its double series with x = ω/(ω+1).
pub fn eval_type2_qfunction(a: f64, b: f64, lambda: f64, omega: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !(lambda >= 0.0) || !(omega >= 0.0) {
        return domain(format!("type-II q-function needs a, b > 0 and λ, ω >= 0, got ({a}, {b}, {lambda}, {omega})"));
    }
    if omega == 0.0 {
        return Ok(0.0);
    }
    if lambda > 700.0 {
        return Err(Error::Evaluation(format!("e^-λ underflows at λ = {lambda}; use eval_series")));
    }
    let x = omega / (omega + 1.0);
    // Σ_n A_n S_n with A_n / A_0 generated by ratios and e^{-λ} S_n the Poisson CDF
    let mut weight = (-lambda).exp();
    let mut poisson_cdf = weight;
    let mut a_ratio = 1.0f64;
    let mut sum = poisson_cdf;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        a_ratio *= x * (a + b + nf) / (a + 1.0 + nf);
        weight *= lambda / (nf + 1.0);
        poisson_cdf += weight;
        let term = a_ratio * poisson_cdf;
        sum += term;
        if !sum.is_finite() {
            break;
        }
        let ratio = x * (a + b + nf + 1.0) / (a + 2.0 + nf);
        if nf > lambda && ratio < 1.0 && term <= 1e-17 * sum * (1.0 - ratio) && weight <= 1e-17 * poisson_cdf {
            return Ok((ln_beta_prefix(a, b, x) - a.ln() + sum.ln()).exp());
        }
    }
    Err(Error::Evaluation(format!(
        "type-II double series does not converge in practice at x = {x}; use eval_series"
    )))
}

/// CDF of the noncentral F distribution with ν₁, ν₂ degrees of freedom and
/// noncentrality λ, via B_{ν₁/2, ν₂/2}(λ, ν₁w/(ν₁w + ν₂)).
pub fn noncentral_f_cdf(w: f64, nu1: f64, nu2: f64, lambda: f64) -> Result<ProbabilityPair> {
    if !(w >= 0.0) {
        return domain(format!("F statistic must be >= 0, got {w}"));
    }
    let sp = ShapeParams::new(0.5 * nu1, 0.5 * nu2)?;
    let y = if w.is_infinite() { 1.0 } else { nu1 * w / (nu1 * w + nu2) };
    let pt = EvalPoint::new(lambda, y)?;
    dispatch::evaluate(&sp, &pt, dispatch::DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::central_beta_cdf;

    fn sp(p: f64, q: f64) -> ShapeParams {
        ShapeParams::new(p, q).unwrap()
    }

    fn pt(x: f64, y: f64) -> EvalPoint {
        EvalPoint::new(x, y).unwrap()
    }

    #[test]
    fn poisson_weights_sum_to_one() {
        for &lambda in &[0.3f64, 7.0, 27.0, 125.0, 4000.0] {
            let mut acc = LogSum::new();
            for j in 0..(lambda + 10.0 * lambda.sqrt() + 40.0) as usize {
                acc.add_ln(ln_poisson(j, lambda));
            }
            assert!(acc.ln_total().abs() < 1e-14, "λ={lambda}: {}", acc.ln_total());
        }
    }

    #[test]
    fn special_values() {
        let s = sp(3.0, 4.0);
        assert_eq!(eval_series(&s, &pt(5.0, 0.0), 1e-14).unwrap().b, 0.0);
        assert_eq!(eval_series(&s, &pt(5.0, 1.0), 1e-14).unwrap().b, 1.0);
        let c = eval_series(&s, &pt(0.0, 0.3), 1e-14).unwrap();
        let i = central_beta_cdf(CentralBetaArgs::new(3.0, 4.0, 0.3).unwrap()).unwrap();
        assert_eq!(c.b, i);
    }

    #[test]
    fn table_value_exact_case() {
        // 40-digit mpmath sum of the series: 0.45630261933697895485
        let v = eval_series(&sp(5.0, 5.0), &pt(54.0, 0.8640), 1e-15).unwrap();
        assert!((v.b - 0.456_302_619_336_978_95).abs() < 1e-14 * 0.4563, "{}", v.b);
        assert_eq!(v.method, Method::Series);
    }

    #[test]
    fn transition_point_value() {
        let v = eval_series(&sp(10.0, 15.0), &pt(50.0 / 11.0, 0.45), 1e-14).unwrap();
        assert!((v.b - 0.50952).abs() < 5e-6, "{}", v.b);
    }

    #[test]
    fn both_targets_agree() {
        for &(p, q, x, y) in &[(10.0, 15.0, 4.5, 0.45), (2.0, 30.0, 300.0, 0.6), (100.0, 3.0, 20.0, 0.95)] {
            let s = sp(p, q);
            let e = pt(x, y);
            let b = ln_eval_series_target(&s, &e, Target::B).unwrap().0.exp();
            let bb = ln_eval_series_target(&s, &e, Target::Bbar).unwrap().0.exp();
            assert!((b + bb - 1.0).abs() < 1e-14, "({p},{q},{x},{y}): {b} + {bb}");
        }
    }

    #[test]
    fn term_sequence_matches_direct_fraction() {
        let s = sp(10.0, 15.0);
        let seq = central_term_sequence(&s, 0.45, 0, 60).unwrap();
        for (j, v) in seq.iter().enumerate() {
            let direct = central_beta_cdf(CentralBetaArgs::new(10.0 + j as f64, 15.0, 0.45).unwrap()).unwrap();
            assert!(((v - direct) / direct).abs() < 1e-13, "j={j}: {v:e} vs {direct:e}");
        }
        assert!(central_term_sequence(&s, 0.0, 2, 5).unwrap().iter().all(|&v| v == 0.0));
        assert!(central_term_sequence(&s, 1.0, 2, 5).unwrap().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn type2_qfunction_identity() {
        let omega = 0.8640 / (1.0 - 0.8640);
        let qf = eval_type2_qfunction(5.0, 5.0, 27.0, omega).unwrap();
        let b = eval_series(&sp(5.0, 5.0), &pt(54.0, 0.8640), 1e-15).unwrap().b;
        assert!((qf - b).abs() < 1e-12, "{qf} vs {b}");
        let i = central_beta_cdf(CentralBetaArgs::new(3.0, 2.0, 0.4).unwrap()).unwrap();
        assert!((eval_type2_qfunction(3.0, 2.0, 0.0, 0.4 / 0.6).unwrap() - i).abs() < 1e-14);
        assert_eq!(eval_type2_qfunction(3.0, 2.0, 4.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_tiny_tolerance() {
        assert!(eval_series(&sp(1.0, 1.0), &pt(1.0, 0.5), 1e-17).is_err());
    }
}
