//! Convergent expansions of B and B̄ in series of Kummer functions, obtained by
//! iterating the first-order relations in p (for B) or q (for B̄) to infinity.
//! They converge geometrically like y^j (resp. (1−y)^j) and suit small y for B.

use crate::error::{domain, Error, Result};
use crate::kernels::{ln_beta_prefix, ln_m_positive, m_signed_series};
use crate::params::{EvalPoint, Method, ProbabilityPair, ShapeParams, Target};
use crate::reference::LogSum;

/// Which expansion to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KummerVariant {
    /// B with factors M(p+q+j, p+1+j, xy/2).
    Direct,
    /// B with the transformed factors M(1−q, p+1+j, −xy/2), which stay O(1).
    Transformed,
    /// B̄ with factors M(p+q+j, p, xy/2).
    Complement,
}

impl KummerVariant {
    pub fn target(&self) -> Target {
        match self {
            KummerVariant::Direct | KummerVariant::Transformed => Target::B,
            KummerVariant::Complement => Target::Bbar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerSeriesPlan {
    variant: KummerVariant,
    max_terms: usize,
    tol: f64,
}

impl KummerSeriesPlan {
    pub const MAX_TERMS_LIMIT: usize = 100_000;

    pub fn new(variant: KummerVariant, max_terms: usize, tol: f64) -> Result<Self> {
        if max_terms == 0 || max_terms > Self::MAX_TERMS_LIMIT {
            return domain(format!("max_terms must lie in 1..={}, got {max_terms}", Self::MAX_TERMS_LIMIT));
        }
        if !(tol >= 1e-15) || !tol.is_finite() {
            return domain(format!("tolerance must be at least 1e-15, got {tol}"));
        }
        Ok(Self { variant, max_terms, tol })
    }

    /// Default plan for `target`: the transformed series for B.
    pub fn for_target(target: Target, tol: f64) -> Result<Self> {
        let variant = match target {
            Target::B => KummerVariant::Transformed,
            Target::Bbar => KummerVariant::Complement,
        };
        Self::new(variant, Self::MAX_TERMS_LIMIT, tol)
    }

    pub fn variant(&self) -> KummerVariant {
        self.variant
    }

    pub fn target(&self) -> Target {
        self.variant.target()
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// ln M(1−q, b, −z) for b > 0, z ≥ 0. The function equals e^{−z} M(b+q−1, b, z)
/// and is positive; the short signed series is used unless it cancels.
fn ln_m_transformed(q: f64, b: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(0.0);
    }
    let (s, s_abs) = m_signed_series(1.0 - q, b, -z)?;
    if s > 0.0 && s_abs <= 1e3 * s {
        return Ok(s.ln());
    }
    Ok(-z + ln_m_positive(b + q - 1.0, b, z)?)
}

/// ln of the j-th Kummer factor of `variant`.
fn ln_factor(variant: KummerVariant, p: f64, q: f64, z: f64, j: f64) -> Result<f64> {
    match variant {
        KummerVariant::Direct => ln_m_positive(p + q + j, p + 1.0 + j, z),
        KummerVariant::Transformed => ln_m_transformed(q, p + 1.0 + j, z),
        KummerVariant::Complement => ln_m_positive(p + q + j, p, z),
    }
}

struct SeriesSum {
    ln_sum: f64,
    terms: usize,
}

fn sum_terms(
    variant: KummerVariant,
    sp: &ShapeParams,
    pt: &EvalPoint,
    max_terms: usize,
    tol: f64,
    stop_after: Option<usize>,
) -> Result<SeriesSum> {
    let (p, q, y, z) = (sp.p(), sp.q(), pt.y(), pt.z());
    let (ln_w, denom0) = match variant {
        KummerVariant::Direct | KummerVariant::Transformed => (y.ln(), p + 1.0),
        KummerVariant::Complement => ((-y).ln_1p(), q + 1.0),
    };
    let mut sum = LogSum::new();
    // ln of w^j (p+q)_j / (denom0)_j
    let mut ln_coeff = 0.0f64;
    let mut prev = f64::NEG_INFINITY;
    for j in 0..max_terms {
        let jf = j as f64;
        if j > 0 {
            ln_coeff += ln_w + ((p + q + jf - 1.0) / (denom0 + jf - 1.0)).ln();
        }
        let ln_term = ln_coeff + ln_factor(variant, p, q, z, jf)?;
        sum.add_ln(ln_term);
        if stop_after == Some(j) {
            return Ok(SeriesSum { ln_sum: sum.ln_total(), terms: j + 1 });
        }
        let ratio = (ln_term - prev).exp();
        prev = ln_term;
        if j > 0 && ratio < 1.0 {
            // geometric bound on the tail once terms decrease
            let ln_tail = ln_term + (ratio / (1.0 - ratio)).ln();
            if ln_tail <= tol.ln() - 3.0 + sum.ln_total() {
                return Ok(SeriesSum { ln_sum: sum.ln_total(), terms: j + 1 });
            }
        }
        if ln_term == f64::NEG_INFINITY {
            return Ok(SeriesSum { ln_sum: sum.ln_total(), terms: j + 1 });
        }
    }
    if stop_after.is_some() {
        return Ok(SeriesSum { ln_sum: sum.ln_total(), terms: max_terms });
    }
    Err(Error::Evaluation(format!(
        "Kummer series for {} did not converge in {max_terms} terms; use the defining series or an asymptotic route",
        variant.target()
    )))
}

fn ln_prefactor(variant: KummerVariant, sp: &ShapeParams, pt: &EvalPoint) -> f64 {
    let (p, q, x, y) = (sp.p(), sp.q(), pt.x(), pt.y());
    let base = ln_beta_prefix(p, q, y);
    match variant {
        KummerVariant::Direct => -0.5 * x + base - p.ln(),
        KummerVariant::Transformed => 0.5 * x * (y - 1.0) + base - p.ln(),
        KummerVariant::Complement => -0.5 * x + base - q.ln(),
    }
}

/// ln of the target of `plan` and the number of terms used.
pub fn ln_eval_kummer_series(sp: &ShapeParams, pt: &EvalPoint, plan: &KummerSeriesPlan) -> Result<(f64, usize)> {
    let y = pt.y();
    match plan.target() {
        Target::B if y == 0.0 => return Ok((f64::NEG_INFINITY, 0)),
        Target::B if y >= 1.0 => return domain("the Kummer series for B needs y < 1"),
        Target::Bbar if y == 1.0 => return Ok((f64::NEG_INFINITY, 0)),
        Target::Bbar if y <= 0.0 => return domain("the Kummer series for Bbar needs y > 0"),
        _ => {}
    }
    let s = sum_terms(plan.variant(), sp, pt, plan.max_terms(), plan.tol(), None)?;
    Ok((ln_prefactor(plan.variant(), sp, pt) + s.ln_sum, s.terms))
}

/// B (or B̄) from the Kummer-function series selected by `plan`.
pub fn eval_kummer_series(sp: &ShapeParams, pt: &EvalPoint, plan: &KummerSeriesPlan) -> Result<ProbabilityPair> {
    let (ln_v, n) = ln_eval_kummer_series(sp, pt, plan)?;
    let v = ln_v.exp();
    let err = v * (plan.tol() + f64::EPSILON * (16.0 + 4.0 * (n as f64).sqrt()));
    Ok(ProbabilityPair::from_target(plan.target(), v, Method::KummerSeries, err))
}

/// The finite part of B_{p,q} = B_{p+N+1,q} + Σ_{j=0}^{N} h_{p+j}: the sum of the
/// first N+1 increments of the p-relation.
pub fn kummer_partial_sum(sp: &ShapeParams, pt: &EvalPoint, n: usize) -> Result<f64> {
    if pt.y() == 0.0 {
        return Ok(0.0);
    }
    let s = sum_terms(KummerVariant::Direct, sp, pt, n + 1, 1e-15, Some(n))?;
    Ok((ln_prefactor(KummerVariant::Direct, sp, pt) + s.ln_sum).exp())
}
