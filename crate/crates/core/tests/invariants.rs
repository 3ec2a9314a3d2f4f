use ncbeta::dispatch::{evaluate, DEFAULT_TOL};
use ncbeta::inversion::{invert, InversionProblem};
use ncbeta::kernels::{central_beta_cdf, CentralBetaArgs};
use ncbeta::reference::eval_series;
use ncbeta::{EvalPoint, ShapeParams};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = ShapeParams> {
    (-0.5f64..2.5, -0.5f64..2.5).prop_map(|(a, b)| ShapeParams::new(10f64.powf(a), 10f64.powf(b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pair_is_a_probability_split(sp in shape(), x in 0.0f64..400.0, y in 0.0f64..=1.0) {
        let r = evaluate(&sp, &EvalPoint::new(x, y).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.b) && (0.0..=1.0).contains(&r.bbar));
        prop_assert!((r.b + r.bbar - 1.0).abs() <= 2.0 * f64::EPSILON);
        prop_assert!(r.err_est >= 0.0);
    }

    #[test]
    fn decreasing_in_x(sp in shape(), x in 0.0f64..300.0, dx in 0.1f64..50.0, y in 0.01f64..0.99) {
        let a = evaluate(&sp, &EvalPoint::new(x, y).unwrap(), DEFAULT_TOL).unwrap();
        let b = evaluate(&sp, &EvalPoint::new(x + dx, y).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!(b.b <= a.b + 10.0 * (a.err_est + b.err_est) + 1e-15, "{} then {}", a.b, b.b);
    }

    #[test]
    fn increasing_in_y(sp in shape(), x in 0.0f64..300.0, y in 0.01f64..0.9, dy in 0.001f64..0.09) {
        let a = evaluate(&sp, &EvalPoint::new(x, y).unwrap(), DEFAULT_TOL).unwrap();
        let b = evaluate(&sp, &EvalPoint::new(x, y + dy).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!(b.b >= a.b - 10.0 * (a.err_est + b.err_est) - 1e-15, "{} then {}", a.b, b.b);
    }

    #[test]
    fn zero_noncentrality_is_central(sp in shape(), y in 0.001f64..0.999) {
        let r = evaluate(&sp, &EvalPoint::new(0.0, y).unwrap(), DEFAULT_TOL).unwrap();
        let c = central_beta_cdf(CentralBetaArgs::new(sp.p(), sp.q(), y).unwrap()).unwrap();
        prop_assert!((r.b - c).abs() <= 1e-14 * c.max(1e-300) + 1e-300 || (r.bbar - (1.0 - c)).abs() <= 1e-14);
    }

    #[test]
    fn dispatcher_matches_series(sp in shape(), x in 0.0f64..200.0, y in 0.02f64..0.98) {
        let pt = EvalPoint::new(x, y).unwrap();
        let r = evaluate(&sp, &pt, DEFAULT_TOL).unwrap();
        let s = eval_series(&sp, &pt, 1e-15).unwrap();
        prop_assert!((r.b - s.b).abs() <= 5e-12f64.max(5.0 * r.err_est), "{} via {} vs {}", r.b, r.method, s.b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn inversion_in_y_round_trips(sp in shape(), x in 0.0f64..150.0, z in 0.001f64..0.999) {
        let r = invert(&InversionProblem::for_y(sp, x, z, 1e-10).unwrap()).unwrap();
        let b = evaluate(&sp, &EvalPoint::new(x, r.value).unwrap(), DEFAULT_TOL).unwrap().b;
        prop_assert!((b - z).abs() <= 1e-10 * z.max(1.0 - z), "y = {} B = {b}", r.value);
    }

    #[test]
    fn inversion_in_x_round_trips(sp in shape(), y in 0.02f64..0.98, f in 0.001f64..0.999) {
        let z = f * central_beta_cdf(CentralBetaArgs::new(sp.p(), sp.q(), y).unwrap()).unwrap();
        prop_assume!(z > 1e-8);
        let r = invert(&InversionProblem::for_x(sp, y, z, 1e-10).unwrap()).unwrap();
        let b = evaluate(&sp, &EvalPoint::new(r.value, y).unwrap(), DEFAULT_TOL).unwrap().b;
        prop_assert!((b - z).abs() <= 1e-10 * z.max(1.0 - z), "x = {} B = {b}", r.value);
    }
}
