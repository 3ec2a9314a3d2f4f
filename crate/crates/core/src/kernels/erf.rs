use crate::error::{domain, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// exp(-z²) without the rounding error of forming z² first.
fn exp_neg_sq(z: f64) -> f64 {
    let split = 134_217_729.0; // 2^27 + 1
    let t = z * split;
    let hi = t - (t - z);
    let lo = z - hi;
    (-hi * hi).exp() * (-(2.0 * hi * lo + lo * lo)).exp()
}

fn erf_taylor(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -z2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// exp(z²) erfc(z) for z ≥ 1 from the Laplace continued fraction.
fn erfcx_cf(z: f64) -> f64 {
    // erfc(z) = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …))))
    let tiny = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = 0.0;
    for k in 1..5000 {
        let a = k as f64 * 0.5;
        d = z + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = z + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI / f
}

/// Complementary error function.
pub fn erfc(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z.abs() < 1.0 {
        return 1.0 - erf_taylor(z);
    }
    if z < 0.0 {
        return 2.0 - erfc(-z);
    }
    if z > 27.3 {
        return 0.0;
    }
    erfcx_cf(z) * exp_neg_sq(z)
}

/// Error function.
pub fn erf(z: f64) -> f64 {
    if z.abs() < 1.0 {
        erf_taylor(z)
    } else if z < 0.0 {
        -erf(-z)
    } else {
        1.0 - erfc(z)
    }
}

/// Splits erfc(z) = m · exp(-e); for z ≥ 1 the exponent is z², otherwise 0.
/// Lets callers combine the Gaussian factor with other exponentials before
/// anything can underflow.
pub fn erfc_parts(z: f64) -> (f64, f64) {
    if z >= 1.0 {
        (erfcx_cf(z), z * z)
    } else {
        (erfc(z), 0.0)
    }
}

/// Scaled complementary error function exp(z²) erfc(z).
pub fn erfcx(z: f64) -> f64 {
    if z >= 1.0 {
        erfcx_cf(z)
    } else {
        (z * z).exp() * erfc(z)
    }
}

/// ln erfc(z), finite for every real z.
pub fn ln_erfc(z: f64) -> f64 {
    let (m, e) = erfc_parts(z);
    m.ln() - e
}

/// Inverse of the standard normal CDF to about 1e-9 relative, used only as a seed.
fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_690e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < 0.024_25 {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - 0.024_25 {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    }
}

/// Solves erfc(z) = s for s in (0, 2).
pub fn inv_erfc(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 2.0) {
        return domain(format!("inv_erfc requires 0 < s < 2, got {s}"));
    }
    if s == 1.0 {
        return Ok(0.0);
    }
    if s > 1.0 {
        return Ok(-inv_erfc(2.0 - s)?);
    }
    let mut z = -acklam(0.5 * s) * std::f64::consts::FRAC_1_SQRT_2;
    let ln_s = s.ln();
    for _ in 0..8 {
        // Newton on ln erfc(z) − ln s; d/dz ln erfc = −2 / (√π erfcx(z))
        let g = ln_erfc(z) - ln_s;
        let dg = -FRAC_2_SQRT_PI / erfcx(z);
        let step = g / dg;
        z -= step;
        if step.abs() <= 1e-16 * z.abs().max(1e-300) {
            break;
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn erfc_oracle_values() {
        // 25-digit mpmath values
        let cases = [
            (-3.0, 1.999_977_909_503_001_4),
            (-0.5, 1.520_499_877_813_046_5),
            (0.0, 1.0),
            (1e-8, 0.999_999_988_716_208_3),
            (0.5, 0.479_500_122_186_953_46),
            (0.999, 0.157_714_729_793_503_06),
            (1.0, 0.157_299_207_050_285_13),
            (2.5, 4.069_520_174_449_589_7e-4),
            (6.0, 2.151_973_671_249_891_3e-17),
            (26.0, 5.663_192_408_856_142_8e-296),
        ];
        for (z, want) in cases {
            let got = erfc(z);
            assert!(rel(got, want) < 3e-15, "z={z}: {got:e} vs {want:e}");
        }
    }

    #[test]
    fn parts_and_log() {
        // ln erfc(40) from mpmath
        let want = -1_604.261_556_653_273_6;
        assert!(rel(ln_erfc(40.0), want) < 1e-15, "{}", ln_erfc(40.0));
        let (m, e) = erfc_parts(3.0);
        assert!(rel(m * (-e).exp(), erfc(3.0)) < 1e-15);
    }

    #[test]
    fn erf_odd_and_complementary() {
        for &z in &[0.1, 0.7, 1.3, 2.2] {
            assert!((erf(z) + erf(-z)).abs() < 1e-16);
            assert!((erf(z) + erfc(z) - 1.0).abs() < 2e-16);
        }
    }

    #[test]
    fn inverse_round_trip() {
        for &s in &[1e-300, 1e-100, 1e-20, 1e-5, 0.01, 0.3, 0.999, 1.0, 1.2, 1.9, 2.0 - 1e-12] {
            let z = inv_erfc(s).unwrap();
            let back = erfc(z);
            assert!(rel(back, s) < 1e-13, "s={s:e}: z={z}, erfc(z)={back:e}");
        }
        assert!(inv_erfc(0.0).is_err());
        assert!(inv_erfc(2.0).is_err());
    }
}
