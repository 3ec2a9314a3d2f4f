//! Region-based choice of evaluation route and of the directly computed
//! member of the pair (B or B̄).

use std::fmt;

use crate::asymptotic::{build_frame, eval_large_z, expansions, SaddleFrame, MAX_K_TERMS, SADDLE_DELTA};
use crate::error::{domain, Result};
use crate::kummer_series::{eval_kummer_series, KummerSeriesPlan};
use crate::params::{transition_y, EvalPoint, Method, ProbabilityPair, ShapeParams, Target};
use crate::reference::eval_series;

pub const DEFAULT_TOL: f64 = 1e-12;

/// Smallest r = p + q for which the saddle and erfc-uniform expansions are tried.
pub const ASYMPTOTIC_MIN_R: f64 = 40.0;
/// Smallest z = xy/2 for the large-z expansion.
pub const LARGE_Z_MIN_Z: f64 = 40.0;
/// Largest p and q for the large-z expansion.
pub const LARGE_Z_MAX_PQ: f64 = 10.0;
/// Largest y routed to the Kummer series.
pub const KUMMER_MAX_Y: f64 = 0.2;
/// The saddle frame is used only for y and cos²θ, sin²θ inside [STRIP, 1 − STRIP].
pub const STRIP: f64 = 0.01;

const LARGE_Z_MAX_TERMS: usize = 60;

/// The route and primary member that [`evaluate`] starts from.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodChoice {
    pub route: Method,
    pub primary_target: Target,
    pub rationale: String,
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} for {}: {}", self.route, self.primary_target, self.rationale)
    }
}

fn primary_target(sp: &ShapeParams, pt: &EvalPoint) -> Target {
    if pt.y() <= transition_y(sp, pt.x()) {
        Target::B
    } else {
        Target::Bbar
    }
}

fn in_strip(sp: &ShapeParams, y: f64) -> bool {
    let hi = 1.0 - STRIP;
    (STRIP..=hi).contains(&y) && (STRIP..=hi).contains(&sp.cos2())
}

fn valid_frame(sp: &ShapeParams, pt: &EvalPoint) -> Option<SaddleFrame> {
    if sp.r() < ASYMPTOTIC_MIN_R || !in_strip(sp, pt.y()) {
        return None;
    }
    build_frame(sp, pt).ok()
}

/// Chooses the route without evaluating anything.
pub fn explain(sp: &ShapeParams, pt: &EvalPoint) -> MethodChoice {
    let (p, q, x, y) = (sp.p(), sp.q(), pt.x(), pt.y());
    let primary_target = primary_target(sp, pt);
    let choice = |route, rationale: String| MethodChoice { route, primary_target, rationale };
    if y == 0.0 || y == 1.0 {
        return choice(Method::Boundary, format!("y = {y} gives an exact value"));
    }
    if x == 0.0 {
        return choice(Method::Central, "x = 0 reduces to the central incomplete beta function".into());
    }
    if let Some(frame) = valid_frame(sp, pt) {
        return if y <= frame.y0 - SADDLE_DELTA {
            choice(Method::Saddle, format!("r = {} and y is at least {SADDLE_DELTA} below y0 = {:.6}", sp.r(), frame.y0))
        } else {
            choice(Method::ErfcUniform, format!("r = {} and y is near or above y0 = {:.6}", sp.r(), frame.y0))
        };
    }
    let z = pt.z();
    if z >= LARGE_Z_MIN_Z && p <= LARGE_Z_MAX_PQ && q <= LARGE_Z_MAX_PQ && primary_target == Target::B && y <= 1.0 - STRIP {
        return choice(Method::LargeZ, format!("z = {z} is large and p, q <= {LARGE_Z_MAX_PQ}"));
    }
    if y <= KUMMER_MAX_Y {
        return choice(Method::KummerSeries, format!("y = {y} <= {KUMMER_MAX_Y}"));
    }
    choice(Method::Series, "no expansion applies; Poisson-weighted series".into())
}

fn good_enough(pair: &ProbabilityPair, target: Target, tol: f64) -> bool {
    pair.err_est <= tol * pair.get(target)
}

fn better(a: Option<ProbabilityPair>, b: ProbabilityPair, target: Target) -> ProbabilityPair {
    match a {
        Some(a) if a.err_est / a.get(target) <= b.err_est / b.get(target) => a,
        _ => b,
    }
}

/// Raises k until the estimate meets the tolerance or stops improving.
fn adaptive_k(frame: &SaddleFrame, target: Target, tol: f64, uniform: bool) -> Option<ProbabilityPair> {
    let mut best: Option<ProbabilityPair> = None;
    for k in 2..=MAX_K_TERMS {
        let res = if uniform {
            expansions::erfc_uniform_from_frame(frame, k)
        } else {
            expansions::saddle_from_frame(frame, k)
        };
        let Ok(pair) = res else { break };
        let v = pair.get(target);
        if !(v.is_finite() && v > 0.0 && pair.err_est.is_finite()) {
            break;
        }
        if let Some(b) = best {
            if pair.err_est >= b.err_est {
                break;
            }
        }
        best = Some(pair);
        if good_enough(&pair, target, tol) {
            break;
        }
    }
    best
}

fn asymptotic(sp: &ShapeParams, pt: &EvalPoint, route: Method, target: Target, tol: f64) -> Option<ProbabilityPair> {
    match route {
        Method::Saddle | Method::ErfcUniform => {
            let frame = build_frame(sp, pt).ok()?;
            let uniform = adaptive_k(&frame, target, tol, true);
            if route == Method::Saddle && !uniform.is_some_and(|u| good_enough(&u, target, tol)) {
                let saddle = adaptive_k(&frame, target, tol, false)?;
                return Some(better(uniform, saddle, target));
            }
            uniform
        }
        Method::LargeZ => eval_large_z(sp, pt, LARGE_Z_MAX_TERMS).ok().map(|r| r.pair),
        _ => None,
    }
}

fn convergent(sp: &ShapeParams, pt: &EvalPoint, target: Target, tol: f64, kummer: bool) -> Result<ProbabilityPair> {
    let tol = tol.max(1e-15);
    if kummer {
        let plan = KummerSeriesPlan::for_target(target, tol)?;
        if let Ok(pair) = eval_kummer_series(sp, pt, &plan) {
            return Ok(pair);
        }
    }
    eval_series(sp, pt, tol)
}

/// B and B̄ at (p, q, x, y). `tol` is relative to the directly computed (smaller)
/// member. An asymptotic route whose error estimate misses `tol` falls back to
/// a convergent series; if nothing reaches `tol` the best result is returned
/// with its `err_est` showing the shortfall.
pub fn evaluate(sp: &ShapeParams, pt: &EvalPoint, tol: f64) -> Result<ProbabilityPair> {
    if !(tol > 0.0 && tol.is_finite()) {
        return domain(format!("tolerance must be positive and finite, got {tol}"));
    }
    let choice = explain(sp, pt);
    let target = choice.primary_target;
    match choice.route {
        Method::Boundary => Ok(ProbabilityPair::from_b(pt.y(), Method::Boundary, 0.0)),
        Method::Central | Method::Series => eval_series(sp, pt, tol.max(1e-15)),
        Method::KummerSeries => convergent(sp, pt, target, tol, true),
        route => {
            let fast = asymptotic(sp, pt, route, target, tol);
            if let Some(pair) = fast {
                if good_enough(&pair, target, tol) {
                    return Ok(pair);
                }
            }
            match convergent(sp, pt, target, tol, pt.y() <= KUMMER_MAX_Y) {
                Ok(slow) => Ok(better(fast, slow, target)),
                Err(e) => fast.ok_or(e),
            }
        }
    }
}

/// Evaluates with one named route and no fallback. The expansions raise k
/// adaptively as in [`evaluate`]; a route that does not apply is an error.
pub fn evaluate_route(sp: &ShapeParams, pt: &EvalPoint, route: Method, tol: f64) -> Result<ProbabilityPair> {
    if !(tol > 0.0 && tol.is_finite()) {
        return domain(format!("tolerance must be positive and finite, got {tol}"));
    }
    let target = primary_target(sp, pt);
    match route {
        Method::Series | Method::Central => eval_series(sp, pt, tol.max(1e-15)),
        Method::KummerSeries => eval_kummer_series(sp, pt, &KummerSeriesPlan::for_target(target, tol.max(1e-15))?),
        Method::LargeZ => Ok(eval_large_z(sp, pt, LARGE_Z_MAX_TERMS)?.pair),
        Method::Saddle | Method::ErfcUniform => {
            let frame = build_frame(sp, pt)?;
            if route == Method::Saddle && pt.y() > frame.y0 - SADDLE_DELTA {
                return Err(crate::Error::NearTransition(format!(
                    "y = {} is within {SADDLE_DELTA} of the transition value {:.6}",
                    pt.y(),
                    frame.y0
                )));
            }
            adaptive_k(&frame, target, tol, route == Method::ErfcUniform)
                .ok_or_else(|| crate::Error::Evaluation(format!("the {route} expansion gave no finite value")))
        }
        Method::Boundary | Method::Recurrence => domain(format!("{route} is not a selectable route")),
    }
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

    #[test]
    fn boundaries() {
        let r = evaluate(&sp(3.0, 4.0), &pt(5.0, 1.0), DEFAULT_TOL).unwrap();
        assert_eq!((r.b, r.bbar, r.method), (1.0, 0.0, Method::Boundary));
        let r = evaluate(&sp(3.0, 4.0), &pt(5.0, 0.0), DEFAULT_TOL).unwrap();
        assert_eq!((r.b, r.method), (0.0, Method::Boundary));
        let r = evaluate(&sp(3.0, 4.0), &pt(0.0, 0.3), DEFAULT_TOL).unwrap();
        assert_eq!(r.method, Method::Central);
    }

    #[test]
    fn moderate_point_uses_series() {
        let (s, e) = (sp(10.0, 15.0), pt(4.5, 0.45));
        let r = evaluate(&s, &e, DEFAULT_TOL).unwrap();
        assert_eq!(r.method, Method::Series);
        let o = eval_series(&s, &e, 1e-15).unwrap();
        assert!((r.b - o.b).abs() < 1e-13);
    }

    #[test]
    fn erfc_uniform_point() {
        let r = evaluate(&sp(20.0, 20.0), &pt(54.0, 0.8787), DEFAULT_TOL).unwrap();
        assert_eq!(r.method, Method::ErfcUniform);
        assert!((r.b - 0.999_867_657_379_825_3).abs() < 1e-11, "{}", r.b);
    }

    #[test]
    fn explain_examples() {
        let s = sp(10.0, 15.0);
        assert_eq!(explain(&s, &pt(4.5, 0.6)).primary_target, Target::Bbar);
        assert_eq!(explain(&s, &pt(4.5, 0.3)).primary_target, Target::B);
        assert_eq!(explain(&sp(30.0, 30.0), &pt(100.0, 0.1)).route, Method::Saddle);
        assert_eq!(explain(&sp(2.3, 3.5), &pt(250.0, 0.9)).route, Method::LargeZ);
        assert_eq!(explain(&sp(2.3, 3.5), &pt(5.0, 0.1)).route, Method::KummerSeries);
    }

    #[test]
    fn primary_switches_at_transition() {
        let s = sp(10.0, 15.0);
        let y0 = transition_y(&s, 4.5);
        assert_eq!(explain(&s, &pt(4.5, y0 - 1e-9)).primary_target, Target::B);
        assert_eq!(explain(&s, &pt(4.5, y0 + 1e-9)).primary_target, Target::Bbar);
    }

    #[test]
    fn routes_agree_with_reference() {
        for &(p, q, x, y) in &[(30.0, 30.0, 100.0, 0.1), (100.0, 200.0, 300.0, 0.5), (2.3, 3.5, 250.0, 0.9), (5.0, 5.0, 140.0, 0.9), (4.0, 9.0, 30.0, 0.15), (500.0, 800.0, 100.0, 0.4)] {
            let (s, e) = (sp(p, q), pt(x, y));
            let r = evaluate(&s, &e, DEFAULT_TOL).unwrap();
            let t = explain(&s, &e).primary_target;
            let o = ln_eval_series_target(&s, &e, t).unwrap().0.exp();
            let v = r.get(t);
            assert!(((v - o) / o).abs() < 1e-11, "({p},{q},{x},{y}) via {}: {v:e} vs {o:e}", r.method);
        }
    }

    #[test]
    fn forced_routes() {
        let (s, e) = (sp(30.0, 30.0), pt(100.0, 0.1));
        let auto = evaluate(&s, &e, DEFAULT_TOL).unwrap();
        for route in [Method::Series, Method::KummerSeries, Method::Saddle, Method::ErfcUniform] {
            let r = evaluate_route(&s, &e, route, DEFAULT_TOL).unwrap();
            assert!(((r.b - auto.b) / auto.b).abs() < 1e-11, "{route}: {:e} vs {:e}", r.b, auto.b);
        }
        assert!(evaluate_route(&s, &pt(100.0, 0.7), Method::Saddle, DEFAULT_TOL).is_err());
        assert!(evaluate_route(&s, &e, Method::Recurrence, DEFAULT_TOL).is_err());
    }

    #[test]
    fn unreachable_tolerance_is_reported_not_raised() {
        let r = evaluate(&sp(2.3, 3.5), &pt(54.0, 0.864), 1e-30).unwrap();
        assert!(r.err_est > 1e-30 * r.primary());
        assert!(evaluate(&sp(2.3, 3.5), &pt(54.0, 0.864), 0.0).is_err());
    }
}
