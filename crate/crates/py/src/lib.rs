//! Python bindings for the certificate toolkit.
//!
//! Rationals cross the boundary as exact strings ("p/q" or decimal
//! literals such as "1e-8"); certificates and reports cross as JSON
//! strings, so Python sees the same artifacts the CLI writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gamecert::arith::Rational;
use gamecert::certify;
use gamecert::contfrac;
use gamecert::dimension;
use gamecert::strategies::{alice_ba1, AliceStrategy};

fn parse(s: &str) -> PyResult<Rational> {
    Rational::parse(s).map_err(|e| PyValueError::new_err(format!("bad rational '{s}': {e}")))
}

fn fail<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(fail)
}

/// Exact rational scalar with string round-tripping.
#[pyclass(name = "Rational", frozen, from_py_object)]
#[derive(Clone)]
struct PyRational {
    inner: Rational,
}

#[pymethods]
impl PyRational {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse(text)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Rational('{}')", self.inner)
    }

    fn __add__(&self, other: &PyRational) -> PyRational {
        PyRational { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &PyRational) -> PyRational {
        PyRational { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &PyRational) -> PyRational {
        PyRational { inner: &self.inner * &other.inner }
    }

    fn __truediv__(&self, other: &PyRational) -> PyResult<PyRational> {
        if other.inner.is_zero() {
            return Err(PyValueError::new_err("division by zero"));
        }
        Ok(PyRational { inner: &self.inner / &other.inner })
    }

    fn __richcmp__(&self, other: &PyRational, op: pyo3::basic::CompareOp) -> bool {
        op.matches(self.inner.cmp(&other.inner))
    }

    /// Decimal string with the value rounded down at `digits` places.
    fn decimal(&self, digits: u32) -> String {
        self.inner.to_decimal_floor(digits)
    }
}

/// Continued-fraction expansion of x as strings [a0, a1, ...].
#[pyfunction]
fn cf_expand(x: &str) -> PyResult<Vec<String>> {
    let w = contfrac::cf_expand(&parse(x)?);
    let mut out = vec![w.a0.to_string()];
    out.extend(w.quotients.iter().map(|q| q.to_string()));
    Ok(out)
}

/// Exact value of a continued-fraction word given as integer strings.
#[pyfunction]
fn cf_value(word: Vec<String>) -> PyResult<String> {
    if word.is_empty() {
        return Err(PyValueError::new_err("empty word"));
    }
    let a0: i128 = word[0].parse().map_err(fail)?;
    let quotients = word[1..]
        .iter()
        .map(|s| s.parse::<i64>().map_err(fail))
        .collect::<PyResult<Vec<_>>>()?;
    let w = contfrac::CFWord::new(a0, quotients).map_err(fail)?;
    Ok(contfrac::cf_value(&w).to_string())
}

/// Certify a 3-term arithmetic progression in the middle-epsilon set.
#[pyfunction]
#[pyo3(signature = (epsilon, a = "0", depth = 40))]
fn ap3_meps(epsilon: &str, a: &str, depth: usize) -> PyResult<String> {
    let cert = certify::certify_ap3_meps(parse(epsilon)?, parse(a)?, depth).map_err(fail)?;
    certify::audit_ap(&cert).map_err(fail)?;
    to_json(&cert)
}

/// Certify a 4-term progression for epsilon <= 1/3.
#[pyfunction]
#[pyo3(signature = (epsilon = "1/3", depth = 16))]
fn ap4_newhouse(epsilon: &str, depth: usize) -> PyResult<String> {
    let cert = certify::certify_newhouse_ap4(parse(epsilon)?, depth).map_err(fail)?;
    certify::audit_ap(&cert).map_err(fail)?;
    to_json(&cert)
}

/// Exhaustive progression search over stage-n construction endpoints.
#[pyfunction]
#[pyo3(signature = (epsilon, stage = 2, kmax = 8))]
fn ap_search(epsilon: &str, stage: usize, kmax: usize) -> PyResult<String> {
    let cert = certify::search_ap_endpoints(parse(epsilon)?, stage, kmax).map_err(fail)?;
    certify::audit_ap(&cert).map_err(fail)?;
    to_json(&cert)
}

/// Certify a quotient-bounded (<= 19) point of the ternary Cantor set.
#[pyfunction]
#[pyo3(signature = (depth = 40))]
fn f19_cap_c(depth: usize) -> PyResult<String> {
    let cert = certify::certify_f19_cap_c(depth).map_err(fail)?;
    certify::audit_point(&cert).map_err(fail)?;
    to_json(&cert)
}

/// Certify t = x + y with x and y = t - x quotient-bounded by 49.
#[pyfunction]
#[pyo3(signature = (t, depth = 30))]
fn sumset_f49(t: &str, depth: usize) -> PyResult<String> {
    let cert = certify::certify_sumset_f49(parse(t)?, depth).map_err(fail)?;
    certify::audit_sumset(&cert).map_err(fail)?;
    to_json(&cert)
}

/// Certify the folding-construction point (quotients <= 9, in the Cantor set).
#[pyfunction]
#[pyo3(signature = (iterations = 6, cf_depth = 15))]
fn folding_f9(iterations: usize, cf_depth: usize) -> PyResult<String> {
    let cert = certify::certify_folding_f9(iterations, cf_depth).map_err(fail)?;
    certify::audit_point(&cert).map_err(fail)?;
    to_json(&cert)
}

/// Box-counting dimension estimate; returns (count, lo, hi, manifest_json).
#[pyfunction]
#[pyo3(signature = (n = 2, scale = "1e-6"))]
fn hd_estimate(n: u64, scale: &str) -> PyResult<(u64, String, String, String)> {
    let est = dimension::hd_estimate_fn_cap_cantor(n, parse(scale)?).map_err(fail)?;
    Ok((
        est.count,
        est.estimate.lo.to_string(),
        est.estimate.hi.to_string(),
        to_json(&est)?,
    ))
}

/// Progression-length budget record for (alpha, beta, K2) as JSON.
#[pyfunction]
#[pyo3(signature = (alpha, beta = "1/4", k2 = "1"))]
fn ap_budget(alpha: &str, beta: &str, k2: &str) -> PyResult<String> {
    let rec =
        certify::ap_length_budget(parse(alpha)?, parse(beta)?, parse(k2)?).map_err(fail)?;
    to_json(&rec)
}

/// Survivor-tree report as JSON. strategy is "trivial" or "ba1".
#[pyfunction]
#[pyo3(signature = (strategy = "trivial", epsilon = "1/66", beta = "1/4", group = 3,
                    gamma = "1/4", c = "1/2", levels = 2))]
fn survivor_report(
    strategy: &str,
    epsilon: &str,
    beta: &str,
    group: usize,
    gamma: &str,
    c: &str,
    levels: usize,
) -> PyResult<String> {
    let config = dimension::SurvivorConfig {
        beta: parse(beta)?,
        group,
        gamma: parse(gamma)?,
        c: parse(c)?,
        levels,
    };
    let report = match strategy {
        "trivial" => dimension::survivor_tree(None, &config),
        "ba1" => {
            let mut alice = alice_ba1(parse(epsilon)?, config.beta.clone()).map_err(fail)?;
            dimension::survivor_tree(Some(&mut alice as &mut dyn AliceStrategy), &config)
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown strategy '{other}' (trivial | ba1)"
            )))
        }
    }
    .map_err(fail)?;
    to_json(&report)
}

/// Exact lower-bound formula value as (lo, hi) strings.
#[pyfunction]
fn hd_lower(n: u64, k: u64, beta: &str) -> PyResult<(String, String)> {
    let enc = dimension::hd_lower_formula(n, k, parse(beta)?).map_err(fail)?;
    Ok((enc.lo.to_string(), enc.hi.to_string()))
}

/// Intersection-dimension heuristic max(0, d1 + d2 - d) as a string.
#[pyfunction]
#[pyo3(signature = (d1, d2, d = 1))]
fn independence(d1: &str, d2: &str, d: u32) -> PyResult<String> {
    Ok(dimension::independence_heuristic(parse(d1)?, parse(d2)?, d)
        .map_err(fail)?
        .to_string())
}

/// Re-verify a certificate JSON string; returns its kind or raises.
#[pyfunction]
fn audit(text: &str) -> PyResult<String> {
    if let Ok(cert) = serde_json::from_str::<certify::APCertificate>(text) {
        certify::audit_ap(&cert).map_err(fail)?;
        return Ok("progression".into());
    }
    if let Ok(cert) = serde_json::from_str::<certify::SumsetCertificate>(text) {
        certify::audit_sumset(&cert).map_err(fail)?;
        return Ok("sumset".into());
    }
    if let Ok(cert) = serde_json::from_str::<certify::PointCertificate>(text) {
        certify::audit_point(&cert).map_err(fail)?;
        return Ok("point".into());
    }
    Err(PyValueError::new_err("not a recognized certificate"))
}

#[pymodule]
fn gamecert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRational>()?;
    m.add_function(wrap_pyfunction!(cf_expand, m)?)?;
    m.add_function(wrap_pyfunction!(cf_value, m)?)?;
    m.add_function(wrap_pyfunction!(ap3_meps, m)?)?;
    m.add_function(wrap_pyfunction!(ap4_newhouse, m)?)?;
    m.add_function(wrap_pyfunction!(ap_search, m)?)?;
    m.add_function(wrap_pyfunction!(f19_cap_c, m)?)?;
    m.add_function(wrap_pyfunction!(sumset_f49, m)?)?;
    m.add_function(wrap_pyfunction!(folding_f9, m)?)?;
    m.add_function(wrap_pyfunction!(hd_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(ap_budget, m)?)?;
    m.add_function(wrap_pyfunction!(survivor_report, m)?)?;
    m.add_function(wrap_pyfunction!(hd_lower, m)?)?;
    m.add_function(wrap_pyfunction!(independence, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    Ok(())
}
