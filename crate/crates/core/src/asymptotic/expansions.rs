use std::f64::consts::PI;

use super::coeffs::{expansion_coefficients, DEFAULT_TAU};
use super::frame::{build_frame, SaddleFrame};
use crate::error::{domain, Error, Result};
use crate::kernels::{erfc, erfcx, lgamma};
use crate::params::{EvalPoint, Method, ProbabilityPair, ShapeParams, Target};

/// Largest k accepted by the saddle and erfc-uniform sums.
pub const MAX_K_TERMS: usize = 12;

/// Margin δ below the transition quantile y₀ required by the plain saddle expansion.
pub const SADDLE_DELTA: f64 = 0.05;

/// Result of a large-z evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeZResult {
    pub pair: ProbabilityPair,
    /// The sum terminated (q a positive integer), so the value is exact up to rounding.
    pub exact: bool,
}

/// B from the expansion for large z = xy/2 with p, q bounded, summing
/// n = 0..=n_terms of (−1)ⁿ (1−q)ₙ cₙ / zⁿ.
pub fn eval_large_z(sp: &ShapeParams, pt: &EvalPoint, n_terms: usize) -> Result<LargeZResult> {
    let (p, q, x, y) = (sp.p(), sp.q(), pt.x(), pt.y());
    if !(y > 0.0 && y < 1.0) {
        return domain(format!("the large-z expansion needs 0 < y < 1, got {y}"));
    }
    let z = pt.z();
    if !(z > 0.0) {
        return domain("the large-z expansion needs z = xy/2 > 0");
    }
    let ratio = y / (1.0 - y);
    // a_n = (−1)ⁿ (1−p−q)ₙ / n!, b_n = (y/(1−y))ⁿ, c_n = Σ a_m b_{n−m} = a_n + ratio c_{n−1}
    let mut a = 1.0;
    let mut c = 1.0;
    // (−1)ⁿ (1−q)ₙ / zⁿ
    let mut poch = 1.0;
    let mut sum = 1.0;
    let mut last = 1.0f64;
    let mut exact = false;
    let mut err_term = 0.0;
    // a positive integer q ends the sum at n = q, whatever the size of the terms
    let terminates = q.fract() == 0.0 && q <= (n_terms + 1) as f64;
    for n in 1..=n_terms + 1 {
        let nf = n as f64;
        a *= -(1.0 - p - q + nf - 1.0) / nf;
        c = a + ratio * c;
        poch *= -(1.0 - q + nf - 1.0) / z;
        let term = poch * c;
        if poch == 0.0 {
            exact = true;
            break;
        }
        if n == n_terms + 1 {
            err_term = term.abs();
            break;
        }
        if !terminates && term.abs() > last.abs() && n > 1 {
            // the asymptotic series has started to diverge
            err_term = term.abs();
            break;
        }
        sum += term;
        last = term;
    }
    let ln_pref = -(1.0 - y) * x / 2.0 + p * y.ln() + (q - 1.0) * (-y).ln_1p() + (q - 1.0) * z.ln() - lgamma(q);
    let scale = ln_pref.exp();
    let b = scale * sum;
    let err = if exact { 0.0 } else { scale * err_term } + 8.0 * f64::EPSILON * b.abs();
    Ok(LargeZResult { pair: ProbabilityPair::from_b(b, Method::LargeZ, err), exact })
}

fn check_k(k_terms: usize) -> Result<()> {
    if k_terms > MAX_K_TERMS {
        return domain(format!("at most {MAX_K_TERMS} expansion terms are supported, got {k_terms}"));
    }
    Ok(())
}

/// (−1)^k 2^k (½)_k / r^k for k = 0..=n.
fn weights(r: f64, n: usize) -> Vec<f64> {
    let mut w = vec![1.0; n + 1];
    for k in 1..=n {
        w[k] = -w[k - 1] * (2.0 * k as f64 - 1.0) / r;
    }
    w
}

/// The weighted sum through k_terms and the magnitude of the first omitted term.
fn weighted_sum(coeffs: &[f64], r: f64, k_terms: usize) -> (f64, f64) {
    let w = weights(r, k_terms + 1);
    let sum = (0..=k_terms).map(|k| w[k] * coeffs[k]).sum();
    (sum, (w[k_terms + 1] * coeffs[k_terms + 1]).abs())
}

/// B for large r with the pole well beyond the saddle (y ≤ y₀ − δ), summing
/// k = 0..=k_terms. Uses e^{−x/2+rφ(t₀)} y^p (1−y)^q = e^{−rζ²/2}.
pub fn eval_saddle(sp: &ShapeParams, pt: &EvalPoint, k_terms: usize) -> Result<ProbabilityPair> {
    check_k(k_terms)?;
    let frame = build_frame(sp, pt)?;
    if pt.y() > frame.y0 - SADDLE_DELTA {
        return Err(Error::NearTransition(format!(
            "y = {} is within {SADDLE_DELTA} of the transition value {:.6}; use the erfc-uniform expansion",
            pt.y(),
            frame.y0
        )));
    }
    saddle_from_frame(&frame, k_terms)
}

pub(crate) fn saddle_from_frame(frame: &SaddleFrame, k_terms: usize) -> Result<ProbabilityPair> {
    let c = expansion_coefficients(frame, k_terms, DEFAULT_TAU)?;
    let f_even: Vec<f64> = c.f.iter().step_by(2).copied().collect();
    let (sum, omitted) = weighted_sum(&f_even, frame.r, k_terms);
    let pref = (-0.5 * frame.r * frame.zeta * frame.zeta).exp() / (2.0 * PI * frame.r).sqrt();
    let b = pref * sum;
    let err = pref * omitted + 16.0 * f64::EPSILON * b.abs();
    Ok(ProbabilityPair::from_b(b, Method::Saddle, err))
}

/// B and B̄ uniformly through the transition:
/// B = ½erfc(η) + e^{−η²}/√(2πr) Σ (−1)^k g_{2k} 2^k (½)_k / r^k, η = ζ√(r/2),
/// summing k = 0..=k_terms. The smaller member is computed directly.
pub fn eval_erfc_uniform(sp: &ShapeParams, pt: &EvalPoint, k_terms: usize) -> Result<ProbabilityPair> {
    check_k(k_terms)?;
    let frame = build_frame(sp, pt)?;
    erfc_uniform_from_frame(&frame, k_terms)
}

pub(crate) fn erfc_uniform_from_frame(frame: &SaddleFrame, k_terms: usize) -> Result<ProbabilityPair> {
    let c = expansion_coefficients(frame, k_terms, DEFAULT_TAU)?;
    let (sum, omitted) = weighted_sum(&c.g_even, frame.r, k_terms);
    let eta = frame.eta();
    let s = 1.0 / (2.0 * PI * frame.r).sqrt();
    let gauss = (-eta * eta).exp();
    let (target, value) = if eta >= 0.0 {
        // B = e^{−η²} (½ erfcx(η) + R/√(2πr))
        (Target::B, gauss * (0.5 * erfcx(eta) + s * sum))
    } else {
        // B̄ = ½ erfc(−η) − e^{−η²} R/√(2πr)
        (Target::Bbar, gauss * (0.5 * erfcx(-eta) - s * sum))
    };
    let err = gauss * s * omitted + 16.0 * f64::EPSILON * value.abs().max(gauss * s * sum.abs());
    Ok(ProbabilityPair::from_target(target, value, Method::ErfcUniform, err))
}

/// ½ erfc(η), the leading term of the erfc-uniform expansion.
pub fn erfc_leading(frame: &SaddleFrame) -> f64 {
    0.5 * erfc(frame.eta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::ln_eval_series_target;

    fn sp(p: f64, q: f64) -> ShapeParams {
        ShapeParams::new(p, q).unwrap()
    }

    fn pt(x: f64, y: f64) -> EvalPoint {
        EvalPoint::new(x, y).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn large_z_table_rows() {
        let r = eval_large_z(&sp(2.3, 3.5), &pt(54.0, 0.8640), 5).unwrap();
        assert!(rel(r.pair.b, 0.276_008_272_854_770_6) < 1e-13, "{}", r.pair.b);
        assert!(!r.exact);
        let r = eval_large_z(&sp(5.0, 5.0), &pt(54.0, 0.864), 4).unwrap();
        assert!(r.exact);
        assert!((r.pair.b - 0.456_302_619_336_979_2).abs() < 1e-14, "{}", r.pair.b);
        let r = eval_large_z(&sp(5.0, 5.0), &pt(140.0, 0.9), 4).unwrap();
        assert!(r.exact);
        assert!(rel(r.pair.b, 0.104_133_493_039_755_5) < 1e-13, "{}", r.pair.b);
        let oracle = ln_eval_series_target(&sp(5.0, 5.0), &pt(140.0, 0.9), Target::B).unwrap().0.exp();
        assert!(rel(r.pair.b, oracle) < 1e-13);
    }

    #[test]
    fn large_z_error_estimate_is_realistic() {
        let r = eval_large_z(&sp(2.3, 3.5), &pt(250.0, 0.9), 5).unwrap();
        let oracle = ln_eval_series_target(&sp(2.3, 3.5), &pt(250.0, 0.9), Target::B).unwrap().0.exp();
        let actual = (r.pair.b - oracle).abs();
        assert!(actual < 10.0 * r.pair.err_est && actual > 0.01 * r.pair.err_est, "{actual:e} vs {:e}", r.pair.err_est);
    }

    #[test]
    fn saddle_table_rows() {
        let r = eval_saddle(&sp(30.0, 30.0), &pt(100.0, 0.1), 2).unwrap();
        assert!(rel(r.b, 5.341_313_347_397_197e-33) < 1e-13, "{:e}", r.b);
        let r = eval_saddle(&sp(30.0, 30.0), &pt(250.0, 0.1), 2).unwrap();
        assert!(rel(r.b, 3.252_685_735_589_340e-60) < 1e-13, "{:e}", r.b);
        assert!(matches!(eval_saddle(&sp(30.0, 30.0), &pt(100.0, 0.7), 2), Err(Error::NearTransition(_))));
    }

    #[test]
    fn erfc_uniform_matches_saddle_far_from_transition() {
        let s = sp(30.0, 30.0);
        let e = pt(150.0, 0.1);
        let fr = build_frame(&s, &e).unwrap();
        assert!(fr.eta() > 5.0);
        // at k = 2 the two differ by the truncation of the erfc asymptotics (~1e-6)
        let a = eval_saddle(&s, &e, MAX_K_TERMS).unwrap().b;
        let b = eval_erfc_uniform(&s, &e, MAX_K_TERMS).unwrap().b;
        assert!(rel(a, b) < 1e-9, "{a:e} vs {b:e}");
    }

    #[test]
    fn erfc_uniform_table_rows() {
        // printed values that an exact implementation reproduces to many digits
        for &(p, q, x, y, v) in &[(20.0, 20.0, 54.0, 0.8787, 0.999_867_657_379_825_3), (10.0, 10.0, 54.0, 0.8686, 0.918_779_058_318_961)] {
            let r = eval_erfc_uniform(&sp(p, q), &pt(x, y), 2).unwrap();
            assert!(rel(r.b, v) < 1e-11, "({p},{q},{x},{y}): {} vs {v}", r.b);
        }
    }

    #[test]
    fn more_terms_improve_accuracy() {
        let s = sp(40.0, 60.0);
        let e = pt(30.0, 0.5);
        let oracle = ln_eval_series_target(&s, &e, Target::B).unwrap().0.exp();
        let e2 = (eval_erfc_uniform(&s, &e, 2).unwrap().b - oracle).abs();
        let e6 = (eval_erfc_uniform(&s, &e, 6).unwrap().b - oracle).abs();
        assert!(e6 < 0.01 * e2, "{e2:e} {e6:e}");
    }

    #[test]
    fn rejects_too_many_terms() {
        assert!(eval_erfc_uniform(&sp(30.0, 30.0), &pt(10.0, 0.5), MAX_K_TERMS + 1).is_err());
    }
}
