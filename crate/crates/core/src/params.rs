use std::fmt;

use crate::error::{domain, Result};

/// Shape parameters (p, q) of the distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams {
    p: f64,
    q: f64,
}

impl ShapeParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
            return domain(format!("shape parameters must be positive and finite, got p={p}, q={q}"));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// r = p + q
    pub fn r(&self) -> f64 {
        self.p + self.q
    }

    /// Angle θ with p = r cos²θ and q = r sin²θ.
    pub fn theta(&self) -> f64 {
        self.q.sqrt().atan2(self.p.sqrt())
    }

    /// cos²θ = p/r
    pub fn cos2(&self) -> f64 {
        self.p / self.r()
    }

    /// sin²θ = q/r
    pub fn sin2(&self) -> f64 {
        self.q / self.r()
    }

    pub(crate) fn shifted(&self, dp: f64, dq: f64) -> Result<Self> {
        Self::new(self.p + dp, self.q + dq)
    }
}

/// Evaluation point: noncentrality x ≥ 0 and quantile y ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    x: f64,
    y: f64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x >= 0.0) || !x.is_finite() {
            return domain(format!("noncentrality must be finite and >= 0, got x={x}"));
        }
        if !(0.0..=1.0).contains(&y) {
            return domain(format!("quantile must lie in [0, 1], got y={y}"));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// z = xy/2, the Kummer argument.
    pub fn z(&self) -> f64 {
        0.5 * self.x * self.y
    }

    /// ξ = z / r
    pub fn xi(&self, sp: &ShapeParams) -> f64 {
        self.z() / sp.r()
    }
}

/// Quantile y₀ = (x + 2p)/(x + 2r) where saddle and pole coincide for fixed x.
pub fn transition_y(sp: &ShapeParams, x: f64) -> f64 {
    (x + 2.0 * sp.p()) / (x + 2.0 * sp.r())
}

/// Noncentrality x₀ = 2(ry − p)/(1 − y) where saddle and pole coincide for fixed y.
pub fn transition_x(sp: &ShapeParams, y: f64) -> f64 {
    2.0 * (sp.r() * y - sp.p()) / (1.0 - y)
}

/// Which of B and B̄ = 1 − B an algorithm computes directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    B,
    Bbar,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::B => "B",
            Target::Bbar => "Bbar",
        })
    }
}

/// Evaluation route that produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Boundary,
    Central,
    Series,
    KummerSeries,
    LargeZ,
    Saddle,
    ErfcUniform,
    Recurrence,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Boundary => "boundary",
            Method::Central => "central",
            Method::Series => "series",
            Method::KummerSeries => "kummer-series",
            Method::LargeZ => "large-z",
            Method::Saddle => "saddle",
            Method::ErfcUniform => "erfc-uniform",
            Method::Recurrence => "recurrence",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// B and its complement B̄. Only one of them is computed; the other is set as
/// 1 minus it, so `b + bbar == 1` up to the rounding of that subtraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityPair {
    pub b: f64,
    pub bbar: f64,
    pub method: Method,
    /// Absolute error estimate of the directly computed member.
    pub err_est: f64,
}

impl ProbabilityPair {
    pub fn from_b(b: f64, method: Method, err_est: f64) -> Self {
        let b = b.clamp(0.0, 1.0);
        Self { b, bbar: 1.0 - b, method, err_est }
    }

    pub fn from_bbar(bbar: f64, method: Method, err_est: f64) -> Self {
        let bbar = bbar.clamp(0.0, 1.0);
        Self { b: 1.0 - bbar, bbar, method, err_est }
    }

    pub fn from_target(target: Target, value: f64, method: Method, err_est: f64) -> Self {
        match target {
            Target::B => Self::from_b(value, method, err_est),
            Target::Bbar => Self::from_bbar(value, method, err_est),
        }
    }

    /// The member for `target`.
    pub fn get(&self, target: Target) -> f64 {
        match target {
            Target::B => self.b,
            Target::Bbar => self.bbar,
        }
    }

    /// The smaller of the two members, i.e. the one carrying relative accuracy.
    pub fn primary(&self) -> f64 {
        self.b.min(self.bbar)
    }
}
