use crate::error::{Error, Result};
use crate::kernels::rlog1;
use crate::params::{transition_x, transition_y, EvalPoint, ShapeParams};

/// Saddle-point geometry of the contour integral for B at one parameter point.
///
/// The phase is φ(t) = ln t − sin²θ ln(t−1) + ξt with saddle t₀ > 1 and the
/// pole of the integrand at t_p = 1/y.
#[derive(Debug, Clone, Copy, PartialEq)]
#[non_exhaustive]
pub struct SaddleFrame {
    pub p: f64,
    pub q: f64,
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub theta: f64,
    /// cos²θ = p/r
    pub c2: f64,
    /// sin²θ = q/r
    pub s2: f64,
    /// ξ = xy/(2r)
    pub xi: f64,
    pub t0: f64,
    pub tp: f64,
    pub y0: f64,
    pub x0: f64,
    /// ½ζ² = φ(t_p) − φ(t₀), sign(ζ) = sign(t_p − t₀)
    pub zeta: f64,
    /// φ″ … φ⁽⁵⁾ at t₀
    pub phi2: f64,
    pub phi3: f64,
    pub phi4: f64,
    pub phi5: f64,
}

/// Positive root of ξt² + (cos²θ − ξ)t − 1 = 0 in the form 2/(b + √(b² + 4ξ)),
/// b = cos²θ − ξ, which has no cancellation for either sign of b and gives
/// 1/cos²θ at ξ = 0.
pub(crate) fn saddle_point(c2: f64, xi: f64) -> f64 {
    let b = c2 - xi;
    let d = (b * b + 4.0 * xi).sqrt();
    if b >= 0.0 {
        2.0 / (b + d)
    } else {
        (d - b) / (2.0 * xi)
    }
}

impl SaddleFrame {
    /// k-th derivative of φ at t₀ for k ≥ 2:
    /// (−1)^{k−1} (k−1)! (t₀^{−k} − sin²θ (t₀−1)^{−k}).
    pub fn phi_deriv(&self, k: u32) -> f64 {
        assert!(k >= 2, "only derivatives of order 2 and higher are stored");
        let fact: f64 = (1..k).map(f64::from).product();
        let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
        sign * fact * (self.t0.powi(-(k as i32)) - self.s2 * (self.t0 - 1.0).powi(-(k as i32)))
    }

    /// Taylor coefficients a_k = φ⁽ᵏ⁾(t₀)/k! of φ(t₀+u) − φ(t₀) for k < n
    /// (a₀ = a₁ = 0).
    pub(crate) fn phi_taylor(&self, n: usize) -> Vec<f64> {
        let mut a = vec![0.0; n];
        let (u, v) = (1.0 / self.t0, 1.0 / (self.t0 - 1.0));
        let (mut pu, mut pv) = (u, v);
        for (k, ak) in a.iter_mut().enumerate().skip(1) {
            if k >= 2 {
                pu *= u;
                pv *= v;
                let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
                *ak = sign * (pu - self.s2 * pv) / k as f64;
            }
        }
        a
    }

    /// The value η = ζ√(r/2) of the error-function argument.
    pub fn eta(&self) -> f64 {
        self.zeta * (0.5 * self.r).sqrt()
    }
}

/// ½ζ² = φ(t_p) − φ(t₀) written as sin²θ L(v) − L(u), L(t) = t − ln(1+t),
/// u = (t_p−t₀)/t₀, v = (t_p−t₀)/(t₀−1); the linear terms cancel exactly
/// because φ′(t₀) = 0.
fn half_zeta_sq(t0: f64, tp: f64, s2: f64) -> f64 {
    let d = tp - t0;
    s2 * rlog1(d / (t0 - 1.0)) - rlog1(d / t0)
}

/// Saddle geometry at (p, q, x, y) for 0 < y < 1.
pub fn build_frame(sp: &ShapeParams, pt: &EvalPoint) -> Result<SaddleFrame> {
    let (p, q, x, y) = (sp.p(), sp.q(), pt.x(), pt.y());
    if y <= 0.0 || y >= 1.0 {
        return Err(Error::Boundary(format!("no saddle frame at y = {y}; the value is exact there")));
    }
    let r = sp.r();
    let (c2, s2) = (sp.cos2(), sp.sin2());
    let xi = pt.xi(sp);
    let t0 = saddle_point(c2, xi);
    let tp = 1.0 / y;
    let h = half_zeta_sq(t0, tp, s2).max(0.0);
    let zeta = (2.0 * h).sqrt().copysign(tp - t0);
    let mut frame = SaddleFrame {
        p,
        q,
        x,
        y,
        r,
        theta: sp.theta(),
        c2,
        s2,
        xi,
        t0,
        tp,
        y0: transition_y(sp, x),
        x0: transition_x(sp, y),
        zeta: if tp == t0 { 0.0 } else { zeta },
        phi2: 0.0,
        phi3: 0.0,
        phi4: 0.0,
        phi5: 0.0,
    };
    frame.phi2 = frame.phi_deriv(2);
    frame.phi3 = frame.phi_deriv(3);
    frame.phi4 = frame.phi_deriv(4);
    frame.phi5 = frame.phi_deriv(5);
    if !(frame.phi2 > 0.0) || !frame.t0.is_finite() {
        return Err(Error::DegenerateFrame(format!(
            "phi''(t0) = {} is not positive at (p, q, x, y) = ({p}, {q}, {x}, {y})",
            frame.phi2
        )));
    }
    Ok(frame)
}
