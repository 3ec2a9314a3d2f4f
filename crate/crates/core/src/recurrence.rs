//! Recurrence relations in p and q for B and B̄.
//!
//! Every relation here is exact, but each is numerically usable only in the
//! direction in which the wanted function is the minimal (or dominant, when
//! running forward) solution. Runs are rejected up front when the direction
//! would amplify rounding errors.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernels::{kummer_ratio_shift11, ln_beta_prefix, ln_m_positive};
use crate::params::{EvalPoint, ShapeParams, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    P,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Forward,
    Backward,
}

/// Axis, sense and function of a recurrence run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RecurrenceDirection {
    pub axis: Axis,
    pub sense: Sense,
    pub target: Target,
}

impl fmt::Display for RecurrenceDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = match self.axis {
            Axis::P => "p",
            Axis::Q => "q",
        };
        let sense = match self.sense {
            Sense::Forward => "forward",
            Sense::Backward => "backward",
        };
        write!(f, "{} {axis}-{sense}", self.target)
    }
}

impl RecurrenceDirection {
    pub fn new(axis: Axis, sense: Sense, target: Target) -> Self {
        Self { axis, sense, target }
    }

    /// Whether the three-term recurrence may be run in this direction.
    ///
    /// In p, B is minimal (B_{p+1}/B_p → y) and B̄ dominant (ratio → 1); in q
    /// the roles swap. Minimal solutions are computed backwards, dominant ones
    /// forwards.
    pub fn three_term_admissible(&self) -> bool {
        use {Axis::*, Sense::*, Target::*};
        matches!(
            (self.axis, self.sense, self.target),
            (P, Backward, B) | (P, Forward, Bbar) | (Q, Forward, B) | (Q, Backward, Bbar)
        )
    }

    /// Whether the four-term recurrence may be run in this direction. The
    /// extra spurious solution restricts it to B, backwards in p or forwards in q.
    pub fn four_term_admissible(&self) -> bool {
        use {Axis::*, Sense::*, Target::*};
        matches!((self.axis, self.sense, self.target), (P, Backward, B) | (Q, Forward, B))
    }

    fn check_three_term(&self) -> Result<()> {
        if self.three_term_admissible() {
            return Ok(());
        }
        let why = match (self.axis, self.target) {
            (Axis::P, Target::B) => "B is minimal as p grows (ratio -> y), so it must be computed with decreasing p",
            (Axis::P, Target::Bbar) => "Bbar is dominant as p grows (ratio -> 1) and B is minimal, so Bbar must be computed with increasing p",
            (Axis::Q, Target::B) => "B is dominant as q grows (ratio -> 1) and Bbar is minimal, so B must be computed with increasing q",
            (Axis::Q, Target::Bbar) => "Bbar is minimal as q grows (ratio -> 1-y), so it must be computed with decreasing q",
        };
        Err(Error::UnstableDirection(format!("three-term {self}: {why}")))
    }

    fn check_four_term(&self) -> Result<()> {
        if self.four_term_admissible() {
            return Ok(());
        }
        let why = match (self.axis, self.sense, self.target) {
            (Axis::P, Sense::Forward, _) => {
                "forward in p a spurious solution with y_{p+1}/y_p ~ -2p/x dominates every wanted solution"
            }
            (_, _, Target::Bbar) => "Bbar is not minimal for the four-term relation and cannot be isolated in either direction",
            _ => "B is dominant in q and only the forward direction is stable",
        };
        Err(Error::UnstableDirection(format!("four-term {self}: {why}")))
    }
}

/// Result of iterating a recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceRun {
    /// Parameters of the last seed.
    pub start: ShapeParams,
    /// Seeds ordered along the direction of travel; the last one belongs to `start`.
    pub seeds: Vec<f64>,
    pub steps: usize,
    pub direction: RecurrenceDirection,
    /// One computed value per step, in order of computation.
    pub values: Vec<f64>,
    /// Parameters of the last computed value.
    pub end: ShapeParams,
    /// Largest relative residual |Σ coeff·value| / max|coeff·value| over the steps.
    pub residual_max: f64,
}

impl RecurrenceRun {
    pub fn last(&self) -> f64 {
        *self.values.last().unwrap_or_else(|| self.seeds.last().expect("seeds are never empty"))
    }
}

fn ln_prefix(p: f64, q: f64, pt: &EvalPoint) -> f64 {
    -0.5 * pt.x() + ln_beta_prefix(p, q, pt.y())
}

/// e^{-x/2} y^p (1-y)^q M(p+q, p+1, xy/2) / (p B(p,q)), the increment of the p-shift.
pub fn p_shift_term(sp: &ShapeParams, pt: &EvalPoint) -> Result<f64> {
    let (p, q) = (sp.p(), sp.q());
    Ok((ln_prefix(p, q, pt) + ln_m_positive(p + q, p + 1.0, pt.z())? - p.ln()).exp())
}

/// e^{-x/2} y^p (1-y)^q M(p+q, p, xy/2) / (q B(p,q)), the increment of the q-shift.
pub fn q_shift_term(sp: &ShapeParams, pt: &EvalPoint) -> Result<f64> {
    let (p, q) = (sp.p(), sp.q());
    Ok((ln_prefix(p, q, pt) + ln_m_positive(p + q, p, pt.z())? - q.ln()).exp())
}

fn pq_shift_term(sp: &ShapeParams, pt: &EvalPoint) -> Result<f64> {
    let (p, q) = (sp.p(), sp.q());
    Ok((ln_prefix(p, q, pt) - pt.y().ln() + ln_m_positive(p + q, p, pt.z())? - q.ln()).exp())
}

/// Parameter shifts available to the first-order relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FirstOrderShift {
    PUp,
    PDown,
    QUp,
    QDown,
    /// (p, q) → (p−1, q+1)
    PDownQUp,
    /// (p, q) → (p+1, q−1)
    PUpQDown,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResult {
    pub value: f64,
    pub params: ShapeParams,
    /// The step subtracts a positive term from the target, which loses
    /// relative accuracy when repeated.
    pub unstable: bool,
}

/// Moves `value` (B or B̄ at `sp`) one step along `shift` with the exact
/// inhomogeneous first-order relations.
pub fn first_order_step(
    sp: &ShapeParams,
    pt: &EvalPoint,
    value: f64,
    shift: FirstOrderShift,
    target: Target,
) -> Result<StepResult> {
    use FirstOrderShift::*;
    let (p, q) = (sp.p(), sp.q());
    // sign with which the increment enters B at the new parameters
    let (params, term, sign_b) = match shift {
        PUp => (sp.shifted(1.0, 0.0)?, p_shift_term(sp, pt)?, -1.0),
        PDown => {
            let np = sp.shifted(-1.0, 0.0)?;
            (np, p_shift_term(&np, pt)?, 1.0)
        }
        QUp => (sp.shifted(0.0, 1.0)?, q_shift_term(sp, pt)?, 1.0),
        QDown => {
            let np = sp.shifted(0.0, -1.0)?;
            (np, q_shift_term(&np, pt)?, -1.0)
        }
        PDownQUp => {
            if p <= 1.0 {
                return Err(Error::Domain(format!("cannot lower p = {p} below 0")));
            }
            (sp.shifted(-1.0, 1.0)?, pq_shift_term(sp, pt)?, 1.0)
        }
        PUpQDown => {
            if q <= 1.0 {
                return Err(Error::Domain(format!("cannot lower q = {q} below 0")));
            }
            let np = sp.shifted(1.0, -1.0)?;
            (np, pq_shift_term(&np, pt)?, -1.0)
        }
    };
    let sign = match target {
        Target::B => sign_b,
        Target::Bbar => -sign_b,
    };
    Ok(StepResult { value: value + sign * term, params, unstable: sign < 0.0 })
}

/// c_{p,q} = ((p+q−1)/p) y M(p+q, p+1, xy/2) / M(p+q−1, p, xy/2).
pub fn ttrr_p_coeff(sp: &ShapeParams, pt: &EvalPoint) -> Result<f64> {
    let (p, q) = (sp.p(), sp.q());
    let a = p + q - 1.0;
    if a <= 0.0 {
        return Err(Error::Domain(format!("three-term coefficient needs p + q > 1, got {}", p + q)));
    }
    Ok(a / p * pt.y() * kummer_ratio_shift11(a, p, pt.z())?)
}

/// c̄_{p,q} = ((p+q−1)/q) (1−y) M(p+q, p, xy/2) / M(p+q−1, p, xy/2), using
/// M(a+1, b) = M(a, b) + (z/b) M(a+1, b+1).
pub fn ttrr_q_coeff(sp: &ShapeParams, pt: &EvalPoint) -> Result<f64> {
    let (p, q) = (sp.p(), sp.q());
    let a = p + q - 1.0;
    if a <= 0.0 {
        return Err(Error::Domain(format!("three-term coefficient needs p + q > 1, got {}", p + q)));
    }
    let z = pt.z();
    Ok(a / q * (1.0 - pt.y()) * (1.0 + z / p * kummer_ratio_shift11(a, p, z)?))
}

fn step_vector(axis: Axis, sense: Sense) -> (f64, f64) {
    let s = match sense {
        Sense::Forward => 1.0,
        Sense::Backward => -1.0,
    };
    match axis {
        Axis::P => (s, 0.0),
        Axis::Q => (0.0, s),
    }
}

fn rel_residual(terms: &[f64]) -> f64 {
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if scale == 0.0 {
        0.0
    } else {
        terms.iter().sum::<f64>().abs() / scale
    }
}

/// Iterates the three-term recurrence y_{n+1} − (1+c_n) y_n + c_n y_{n−1} = 0
/// along `direction.axis`. `seeds` are two consecutive values ordered along the
/// direction of travel, the second belonging to `sp`.
pub fn run_ttrr(
    direction: RecurrenceDirection,
    seeds: [f64; 2],
    steps: usize,
    sp: &ShapeParams,
    pt: &EvalPoint,
) -> Result<RecurrenceRun> {
    direction.check_three_term()?;
    let (dp, dq) = step_vector(direction.axis, direction.sense);
    let coeff = |s: &ShapeParams| match direction.axis {
        Axis::P => ttrr_p_coeff(s, pt),
        Axis::Q => ttrr_q_coeff(s, pt),
    };
    let (mut prev, mut cur) = (seeds[0], seeds[1]);
    let mut at = *sp;
    let mut values = Vec::with_capacity(steps);
    let mut residual_max = 0.0f64;
    for _ in 0..steps {
        let c = coeff(&at)?;
        let next = match direction.sense {
            // prev = y_{n-1}, cur = y_n
            Sense::Forward => (1.0 + c) * cur - c * prev,
            // prev = y_{n+1}, cur = y_n
            Sense::Backward => ((1.0 + c) * cur - prev) / c,
        };
        let res = match direction.sense {
            Sense::Forward => rel_residual(&[next, -(1.0 + c) * cur, c * prev]),
            Sense::Backward => rel_residual(&[prev, -(1.0 + c) * cur, c * next]),
        };
        residual_max = residual_max.max(res);
        values.push(next);
        prev = cur;
        cur = next;
        at = at.shifted(dp, dq)?;
    }
    Ok(RecurrenceRun { start: *sp, seeds: seeds.to_vec(), steps, direction, values, end: at, residual_max })
}

/// B_{p+1,q} / B_{p,q} from the continued fraction
/// c_{p+1}/(1 + c_{p+1} − c_{p+2}/(1 + c_{p+2} − …)), which converges because B
/// is the minimal solution in increasing p.
pub fn pincherle_ratio_p(sp: &ShapeParams, pt: &EvalPoint, depth: usize) -> Result<f64> {
    let tiny = 1e-300;
    // modified Lentz on b0 + a1/(b1 + a2/(b2 + …)) with b0 = 0, a1 = c_{p+1},
    // b_j = 1 + c_{p+j}, a_j = −c_{p+j−1}... written via the coefficient sequence
    let mut f = tiny;
    let mut c_l = f;
    let mut d_l = 0.0;
    for j in 1..=depth {
        let cj = ttrr_p_coeff(&sp.shifted(j as f64, 0.0)?, pt)?;
        let aj = if j == 1 { cj } else { -cj };
        let bj = 1.0 + cj;
        d_l = bj + aj * d_l;
        if d_l.abs() < tiny {
            d_l = tiny;
        }
        c_l = bj + aj / c_l;
        if c_l.abs() < tiny {
            c_l = tiny;
        }
        d_l = 1.0 / d_l;
        let delta = c_l * d_l;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(f);
        }
    }
    Err(Error::Evaluation(format!("ratio continued fraction did not converge within depth {depth}")))
}

/// (c₀, c₁, c₂, c₃) of c₃ y_{p+3} + c₂ y_{p+2} + c₁ y_{p+1} + c₀ y_p = 0.
pub fn fttr_p_coeffs(sp: &ShapeParams, pt: &EvalPoint) -> (f64, f64, f64, f64) {
    let (p, q, x, y) = (sp.p(), sp.q(), pt.x(), pt.y());
    let h = 0.5 * x * y;
    ((p + q) * y * y, -y * (p + 1.0 - h + y * (p + q)), y * (p + 1.0 - h) - h, h)
}

/// (d₀, d₁, d₂, d₃) of d₃ y_{q+3} + d₂ y_{q+2} + d₁ y_{q+1} + d₀ y_q = 0.
pub fn fttr_q_coeffs(sp: &ShapeParams, pt: &EvalPoint) -> (f64, f64, f64, f64) {
    let (p, q, x, y) = (sp.p(), sp.q(), pt.x(), pt.y());
    let h = 0.5 * x * y;
    let w = 1.0 - y;
    (
        -(p + q) * w * w,
        w * ((p + q) * w + p + 2.0 * q + 2.0 + h),
        -w * (p + 2.0 * q + 2.0 + h) - q - 2.0,
        q + 2.0,
    )
}

/// Iterates the four-term recurrence. `seeds` are three consecutive values
/// ordered along the direction of travel, the last belonging to `sp`.
pub fn run_fttr(
    direction: RecurrenceDirection,
    seeds: [f64; 3],
    steps: usize,
    sp: &ShapeParams,
    pt: &EvalPoint,
) -> Result<RecurrenceRun> {
    direction.check_four_term()?;
    run_fttr_unguarded(direction, seeds, steps, sp, pt)
}

/// `run_fttr` without the stability guard, for demonstrating the digit loss
/// of inadmissible directions.
#[doc(hidden)]
pub fn run_fttr_unguarded(
    direction: RecurrenceDirection,
    seeds: [f64; 3],
    steps: usize,
    sp: &ShapeParams,
    pt: &EvalPoint,
) -> Result<RecurrenceRun> {
    let (dp, dq) = step_vector(direction.axis, direction.sense);
    let coeffs = |s: &ShapeParams| match direction.axis {
        Axis::P => fttr_p_coeffs(s, pt),
        Axis::Q => fttr_q_coeffs(s, pt),
    };
    let mut window = seeds;
    let mut at = *sp;
    let mut values = Vec::with_capacity(steps);
    let mut residual_max = 0.0f64;
    for _ in 0..steps {
        let next = match direction.sense {
            Sense::Forward => {
                // window = (y_n, y_{n+1}, y_{n+2}) with at ↦ n+2; coefficients at n
                let base = at.shifted(-2.0 * dp, -2.0 * dq)?;
                let (k0, k1, k2, k3) = coeffs(&base);
                let next = -(k2 * window[2] + k1 * window[1] + k0 * window[0]) / k3;
                residual_max = residual_max.max(rel_residual(&[k3 * next, k2 * window[2], k1 * window[1], k0 * window[0]]));
                next
            }
            Sense::Backward => {
                // window = (y_{n+3}, y_{n+2}, y_{n+1}) with at ↦ n+1; coefficients at n
                let base = at.shifted(dp, dq)?;
                let (k0, k1, k2, k3) = coeffs(&base);
                let next = -(k3 * window[0] + k2 * window[1] + k1 * window[2]) / k0;
                residual_max = residual_max.max(rel_residual(&[k3 * window[0], k2 * window[1], k1 * window[2], k0 * next]));
                next
            }
        };
        values.push(next);
        window = [window[1], window[2], next];
        at = at.shifted(dp, dq)?;
    }
    Ok(RecurrenceRun { start: *sp, seeds: seeds.to_vec(), steps, direction, values, end: at, residual_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{central_beta_cdf, CentralBetaArgs};
    use crate::reference::ln_eval_series_target;

    fn sp(p: f64, q: f64) -> ShapeParams {
        ShapeParams::new(p, q).unwrap()
    }

    fn pt(x: f64, y: f64) -> EvalPoint {
        EvalPoint::new(x, y).unwrap()
    }

    fn oracle(p: f64, q: f64, e: &EvalPoint, target: Target) -> f64 {
        ln_eval_series_target(&sp(p, q), e, target).unwrap().0.exp()
    }

    #[test]
    fn guards_enumerate_all_combinations() {
        let mut three = 0;
        let mut four = 0;
        for axis in [Axis::P, Axis::Q] {
            for sense in [Sense::Forward, Sense::Backward] {
                for target in [Target::B, Target::Bbar] {
                    let d = RecurrenceDirection::new(axis, sense, target);
                    three += d.three_term_admissible() as usize;
                    four += d.four_term_admissible() as usize;
                    let r3 = run_ttrr(d, [0.5, 0.5], 1, &sp(3.0, 4.0), &pt(1.0, 0.3));
                    assert_eq!(r3.is_ok(), d.three_term_admissible(), "{d}");
                    let r4 = run_fttr(d, [0.5, 0.5, 0.5], 1, &sp(3.0, 4.0), &pt(1.0, 0.3));
                    assert_eq!(r4.is_ok(), d.four_term_admissible(), "{d}");
                }
            }
        }
        assert_eq!(three, 4);
        assert_eq!(four, 2);
        let msg = run_fttr(RecurrenceDirection::new(Axis::P, Sense::Forward, Target::Bbar), [1.0; 3], 5, &sp(300.0, 200.0), &pt(10.0, 0.2))
            .unwrap_err()
            .to_string();
        assert!(msg.contains("-2p/x"), "{msg}");
    }

    #[test]
    fn first_order_steps_invert_each_other() {
        let s = sp(10.0, 15.0);
        let e = pt(4.5, 0.45);
        let b = oracle(10.0, 15.0, &e, Target::B);
        for (fwd, back) in [
            (FirstOrderShift::PUp, FirstOrderShift::PDown),
            (FirstOrderShift::QUp, FirstOrderShift::QDown),
            (FirstOrderShift::PDownQUp, FirstOrderShift::PUpQDown),
        ] {
            let up = first_order_step(&s, &e, b, fwd, Target::B).unwrap();
            let down = first_order_step(&up.params, &e, up.value, back, Target::B).unwrap();
            assert_eq!(down.params, s);
            assert!(((down.value - b) / b).abs() < 1e-14, "{fwd:?}: {} vs {b}", down.value);
            assert_ne!(up.unstable, down.unstable);
        }
    }

    #[test]
    fn first_order_residuals() {
        let e = pt(50.0, 0.4);
        let b = oracle(30.0, 20.0, &e, Target::B);
        for (shift, np, nq) in [
            (FirstOrderShift::PUp, 31.0, 20.0),
            (FirstOrderShift::QUp, 30.0, 21.0),
            (FirstOrderShift::PDownQUp, 29.0, 21.0),
        ] {
            let step = first_order_step(&sp(30.0, 20.0), &e, b, shift, Target::B).unwrap();
            let want = oracle(np, nq, &e, Target::B);
            assert!(((step.value - want) / b).abs() < 1e-13, "{shift:?}: {} vs {want}", step.value);
        }
        // complement: sign reversed
        let bb = oracle(30.0, 20.0, &e, Target::Bbar);
        let step = first_order_step(&sp(30.0, 20.0), &e, bb, FirstOrderShift::PUp, Target::Bbar).unwrap();
        let want = oracle(31.0, 20.0, &e, Target::Bbar);
        assert!(((step.value - want) / want).abs() < 5e-14);
        assert!(!step.unstable);
    }

    #[test]
    fn ttrr_coefficients() {
        // x = 0: both Kummer functions are 1
        let c = ttrr_p_coeff(&sp(10.0, 15.0), &pt(0.0, 0.45)).unwrap();
        assert!((c - 24.0 / 10.0 * 0.45).abs() < 1e-15);
        let s = sp(300.0, 200.0);
        let e = pt(50.0, 0.4);
        let z = e.z();
        let direct = 499.0 / 300.0 * 0.4 * (ln_m_positive(500.0, 301.0, z).unwrap() - ln_m_positive(499.0, 300.0, z).unwrap()).exp();
        assert!(((ttrr_p_coeff(&s, &e).unwrap() - direct) / direct).abs() < 1e-12);
        let c = ttrr_p_coeff(&sp(1e4, 10.0), &pt(10.0, 0.3)).unwrap();
        assert!((c / 0.3 - 1.0).abs() < 5e-3);
        let cq = ttrr_q_coeff(&s, &e).unwrap();
        let direct = 499.0 / 200.0 * 0.6 * (ln_m_positive(500.0, 300.0, z).unwrap() - ln_m_positive(499.0, 300.0, z).unwrap()).exp();
        assert!(((cq - direct) / direct).abs() < 1e-12);
    }

    #[test]
    fn ttrr_residual_with_oracle_values() {
        let e = pt(50.0, 0.4);
        let ys: Vec<f64> = (29..=31).map(|p| oracle(p as f64, 200.0, &e, Target::Bbar)).collect();
        let c = ttrr_p_coeff(&sp(30.0, 200.0), &e).unwrap();
        assert!(rel_residual(&[ys[2], -(1.0 + c) * ys[1], c * ys[0]]) < 1e-13);
    }

    #[test]
    fn pincherle_ratio_central_limit() {
        let e = pt(0.0, 0.45);
        let r = pincherle_ratio_p(&sp(10.0, 15.0), &e, 10_000).unwrap();
        let i0 = central_beta_cdf(CentralBetaArgs::new(10.0, 15.0, 0.45).unwrap()).unwrap();
        let i1 = central_beta_cdf(CentralBetaArgs::new(11.0, 15.0, 0.45).unwrap()).unwrap();
        assert!((r - i1 / i0).abs() < 1e-13 * r, "{r} vs {}", i1 / i0);
    }

    #[test]
    fn pincherle_ratio_matches_series() {
        let e = pt(4.5, 0.45);
        let r = pincherle_ratio_p(&sp(10.0, 15.0), &e, 10_000).unwrap();
        let want = oracle(11.0, 15.0, &e, Target::B) / oracle(10.0, 15.0, &e, Target::B);
        assert!((r - want).abs() < 1e-12 * want, "{r} vs {want}");
    }

    #[test]
    fn four_term_residuals() {
        let e = pt(10.0, 0.2);
        let ys: Vec<f64> = (1000..1004).map(|p| oracle(p as f64, 1200.0, &e, Target::B)).collect();
        let (c0, c1, c2, c3) = fttr_p_coeffs(&sp(1000.0, 1200.0), &e);
        assert_eq!(c3, 1.0);
        let res = rel_residual(&[c0 * ys[0], c1 * ys[1], c2 * ys[2], c3 * ys[3]]);
        assert!(res < 5e-13, "{res:e}");
        let e = pt(50.0, 0.4);
        let ys: Vec<f64> = (20..24).map(|q| oracle(30.0, q as f64, &e, Target::B)).collect();
        let (d0, d1, d2, d3) = fttr_q_coeffs(&sp(30.0, 20.0), &e);
        assert!(rel_residual(&[d0 * ys[0], d1 * ys[1], d2 * ys[2], d3 * ys[3]]) < 1e-13);
    }

    #[test]
    fn four_term_q_forward_tracks_series() {
        let e = pt(50.0, 0.4);
        let seeds = [20.0, 21.0, 22.0].map(|q| oracle(30.0, q, &e, Target::B));
        let d = RecurrenceDirection::new(Axis::Q, Sense::Forward, Target::B);
        let run = run_fttr(d, seeds, 200, &sp(30.0, 22.0), &e).unwrap();
        assert_eq!(run.end, sp(30.0, 222.0));
        let want = oracle(30.0, 222.0, &e, Target::B);
        assert!(((run.last() - want) / want).abs() < 1e-12, "{} vs {want}", run.last());
    }
}
