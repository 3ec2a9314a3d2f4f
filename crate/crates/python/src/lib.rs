use ::ncbeta::dispatch::{self, DEFAULT_TOL};
use ::ncbeta::inversion::{invert, InversionProblem};
use ::ncbeta::reference;
use ::ncbeta::{Error, EvalPoint, ProbabilityPair, ShapeParams};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Infeasible { .. } => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn pair(p: f64, q: f64, x: f64, y: f64, tol: f64) -> PyResult<ProbabilityPair> {
    let sp = ShapeParams::new(p, q).map_err(py_err)?;
    let pt = EvalPoint::new(x, y).map_err(py_err)?;
    dispatch::evaluate(&sp, &pt, tol).map_err(py_err)
}

/// B_{p,q}(x, y), the cumulative noncentral beta distribution.
#[pyfunction]
#[pyo3(signature = (p, q, x, y, tol = DEFAULT_TOL))]
fn cdf(p: f64, q: f64, x: f64, y: f64, tol: f64) -> PyResult<f64> {
    Ok(pair(p, q, x, y, tol)?.b)
}

/// The complement 1 − B_{p,q}(x, y), computed without cancellation.
#[pyfunction]
#[pyo3(signature = (p, q, x, y, tol = DEFAULT_TOL))]
fn sf(p: f64, q: f64, x: f64, y: f64, tol: f64) -> PyResult<f64> {
    Ok(pair(p, q, x, y, tol)?.bbar)
}

/// (B, 1 − B, method, error estimate).
#[pyfunction]
#[pyo3(signature = (p, q, x, y, tol = DEFAULT_TOL))]
fn evaluate(p: f64, q: f64, x: f64, y: f64, tol: f64) -> PyResult<(f64, f64, String, f64)> {
    let r = pair(p, q, x, y, tol)?;
    Ok((r.b, r.bbar, r.method.to_string(), r.err_est))
}

/// (route, directly computed member, rationale) chosen for a point.
#[pyfunction]
fn explain(p: f64, q: f64, x: f64, y: f64) -> PyResult<(String, String, String)> {
    let sp = ShapeParams::new(p, q).map_err(py_err)?;
    let pt = EvalPoint::new(x, y).map_err(py_err)?;
    let c = dispatch::explain(&sp, &pt);
    Ok((c.route.to_string(), c.primary_target.to_string(), c.rationale))
}

/// Noncentral F distribution function with noncentrality `lam`.
#[pyfunction]
fn noncentral_f_cdf(w: f64, nu1: f64, nu2: f64, lam: f64) -> PyResult<f64> {
    Ok(reference::noncentral_f_cdf(w, nu1, nu2, lam).map_err(py_err)?.b)
}

/// x with B_{p,q}(x, y) = z; raises ValueError if z > I_y(p, q).
#[pyfunction]
#[pyo3(signature = (p, q, y, z, tol = 1e-10))]
fn invert_x(p: f64, q: f64, y: f64, z: f64, tol: f64) -> PyResult<f64> {
    let sp = ShapeParams::new(p, q).map_err(py_err)?;
    let problem = InversionProblem::for_x(sp, y, z, tol).map_err(py_err)?;
    Ok(invert(&problem).map_err(py_err)?.value)
}

/// y with B_{p,q}(x, y) = z.
#[pyfunction]
#[pyo3(signature = (p, q, x, z, tol = 1e-10))]
fn invert_y(p: f64, q: f64, x: f64, z: f64, tol: f64) -> PyResult<f64> {
    let sp = ShapeParams::new(p, q).map_err(py_err)?;
    let problem = InversionProblem::for_y(sp, x, z, tol).map_err(py_err)?;
    Ok(invert(&problem).map_err(py_err)?.value)
}

#[pymodule]
fn ncbeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cdf, m)?)?;
    m.add_function(wrap_pyfunction!(sf, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(explain, m)?)?;
    m.add_function(wrap_pyfunction!(noncentral_f_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(invert_x, m)?)?;
    m.add_function(wrap_pyfunction!(invert_y, m)?)?;
    Ok(())
}
