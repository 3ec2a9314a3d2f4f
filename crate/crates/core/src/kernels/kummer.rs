use crate::error::{domain, Error, Result};

const MAX_TERMS: usize = 1_000_000;
const RESCALE: f64 = 1e280;

/// Arguments of the confluent hypergeometric function M(a, b, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerArgs {
    a: f64,
    b: f64,
    z: f64,
}

impl KummerArgs {
    /// Requires finite a, finite b > 0 and finite z.
    pub fn new(a: f64, b: f64, z: f64) -> Result<Self> {
        if !a.is_finite() || !z.is_finite() || !(b > 0.0) || !b.is_finite() {
            return domain(format!("Kummer M needs finite a, z and b > 0, got ({a}, {b}, {z})"));
        }
        Ok(Self { a, b, z })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// ln M(a, b, z) for a ≥ 0, b > 0, z ≥ 0, where every series term is positive.
pub(crate) fn ln_m_positive(a: f64, b: f64, z: f64) -> Result<f64> {
    if a == 0.0 || z == 0.0 {
        return Ok(0.0);
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut ln_scale = 0.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        sum += term;
        if sum > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            ln_scale += RESCALE.ln();
        }
        // once terms decrease, the tail is bounded by a geometric series
        let ratio = (a + nf + 1.0) * z / ((b + nf + 1.0) * (nf + 2.0));
        if ratio < 1.0 && term <= 1e-17 * sum * (1.0 - ratio) {
            return Ok(ln_scale + sum.ln());
        }
    }
    Err(Error::Evaluation(format!("Kummer series did not converge for ({a}, {b}, {z})")))
}

/// Plain power series of M(a, b, z) with arbitrary signs. Returns the sum and
/// the sum of absolute values, whose ratio measures the cancellation.
pub(crate) fn m_signed_series(a: f64, b: f64, z: f64) -> Result<(f64, f64)> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        if term == 0.0 {
            return Ok((sum, abs_sum));
        }
        sum += term;
        abs_sum += term.abs();
        if !abs_sum.is_finite() {
            break;
        }
        let ratio = ((a + nf + 1.0) * z / ((b + nf + 1.0) * (nf + 2.0))).abs();
        if ratio < 1.0 && term.abs() <= 1e-17 * sum.abs().max(1e-300) * (1.0 - ratio) {
            return Ok((sum, abs_sum));
        }
    }
    Err(Error::Evaluation(format!("Kummer series failed for ({a}, {b}, {z})")))
}

/// ln M(a, b, z) for a ≥ 0, z ≥ 0 (all terms positive).
pub fn ln_kummer_m(args: KummerArgs) -> Result<f64> {
    let KummerArgs { a, b, z } = args;
    if a >= 0.0 && z >= 0.0 {
        return ln_m_positive(a, b, z);
    }
    if z < 0.0 && b - a >= 0.0 {
        // Kummer transformation M(a,b,z) = e^z M(b-a, b, -z)
        return Ok(z + ln_m_positive(b - a, b, -z)?);
    }
    let v = kummer_m(args)?;
    if v <= 0.0 {
        return Err(Error::Evaluation(format!("M({a}, {b}, {z}) = {v} is not positive")));
    }
    Ok(v.ln())
}

/// M(a, b, z) = ₁F₁(a; b; z).
pub fn kummer_m(args: KummerArgs) -> Result<f64> {
    let KummerArgs { a, b, z } = args;
    if (a >= 0.0 && z >= 0.0) || (z < 0.0 && b - a >= 0.0) {
        return ln_kummer_m(args).map(f64::exp);
    }
    let (s, s_abs) = m_signed_series(a, b, z)?;
    if s_abs > 1e8 * s.abs() {
        return Err(Error::Evaluation(format!(
            "cancellation in the Kummer series for ({a}, {b}, {z}) exceeds 8 digits"
        )));
    }
    Ok(s)
}

/// ρ(a, b, z) = M(a+1, b+1, z) / M(a, b, z) for a ≥ 0, b > 0, z ≥ 0.
///
/// Both series are summed together under a common scale factor, so the ratio
/// keeps full relative precision even when M itself would overflow. (The
/// continued fraction from the contiguous relations is unstable for z > b.)
pub fn kummer_ratio_shift11(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(a >= 0.0 && b > 0.0 && z >= 0.0) || !a.is_finite() || !b.is_finite() || !z.is_finite() {
        return domain(format!("Kummer ratio needs a >= 0, b > 0, z >= 0, got ({a}, {b}, {z})"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let (mut t0, mut t1) = (1.0f64, 1.0f64);
    let (mut s0, mut s1) = (1.0f64, 1.0f64);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        t0 *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        t1 *= (a + 1.0 + nf) * z / ((b + 1.0 + nf) * (nf + 1.0));
        s0 += t0;
        s1 += t1;
        if s1 > RESCALE || s0 > RESCALE {
            s0 /= RESCALE;
            s1 /= RESCALE;
            t0 /= RESCALE;
            t1 /= RESCALE;
        }
        let ratio = (a + nf + 2.0) * z / ((b + nf + 2.0) * (nf + 2.0));
        if ratio < 1.0 && t1 <= 1e-17 * s1 * (1.0 - ratio) && t0 <= 1e-17 * s0 * (1.0 - ratio) {
            return Ok(s1 / s0);
        }
    }
    Err(Error::Evaluation(format!("Kummer ratio series did not converge for ({a}, {b}, {z})")))
}
