//! Python bindings: every function returns exact values as strings or JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hasse_family::exactnum::{parse_rational, rat_to_string, BigRational};
use hasse_family::family::{
    build_fiber, fiber_local_solvability, u_of_t, verify_all, verify_claim, ClaimId, FamilyConfig, ProjValue,
};
use hasse_family::jacinv::{j_invariant, jacobian_weierstrass, weierstrass_discriminant};
use hasse_family::polyring::RationalField;

fn err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<BigRational> {
    parse_rational(s).map_err(err)
}

fn config(
    sweep: Option<(u64, u64)>,
    t_samples: Option<Vec<String>>,
    precision: Option<u32>,
    seed: Option<u64>,
    jobs: Option<usize>,
) -> PyResult<FamilyConfig> {
    let mut c = FamilyConfig::default();
    if let Some((lo, hi)) = sweep {
        c.p_min = lo;
        c.p_max = hi;
    }
    if let Some(ts) = t_samples {
        c.t_samples = ts.iter().map(|t| rational(t)).collect::<PyResult<_>>()?;
    }
    if let Some(n) = precision {
        c.precision = n;
    }
    if let Some(s) = seed {
        c.seed = s;
    }
    c.jobs = jobs.unwrap_or(1);
    Ok(c)
}

/// Certificate for all claims as JSON text.
#[pyfunction]
#[pyo3(signature = (sweep=None, t_samples=None, precision=None, seed=None, jobs=None))]
fn verify(
    py: Python<'_>,
    sweep: Option<(u64, u64)>,
    t_samples: Option<Vec<String>>,
    precision: Option<u32>,
    seed: Option<u64>,
    jobs: Option<usize>,
) -> PyResult<String> {
    let c = config(sweep, t_samples, precision, seed, jobs)?;
    Ok(py.detach(|| verify_all(&c).to_json()))
}

/// One claim result, dependencies included in the run, as JSON text.
#[pyfunction]
#[pyo3(signature = (id, sweep=None, t_samples=None, precision=None, seed=None, jobs=None))]
fn claim(
    py: Python<'_>,
    id: &str,
    sweep: Option<(u64, u64)>,
    t_samples: Option<Vec<String>>,
    precision: Option<u32>,
    seed: Option<u64>,
    jobs: Option<usize>,
) -> PyResult<String> {
    let id: ClaimId = id.parse().map_err(err)?;
    let c = config(sweep, t_samples, precision, seed, jobs)?;
    let r = py.detach(|| verify_claim(id, &c));
    serde_json::to_string(&r).map_err(err)
}

/// `u(t)`; `"inf"` is accepted and returned for the point at infinity.
#[pyfunction]
fn u_of(t: &str) -> PyResult<String> {
    let t: ProjValue = t.parse().map_err(err)?;
    Ok(u_of_t(&t).to_string())
}

/// The ten coefficients of `W_u` in the order x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
#[pyfunction]
fn fiber(u: &str) -> PyResult<Vec<String>> {
    Ok(build_fiber(&rational(u)?).coeffs().iter().map(rat_to_string).collect())
}

/// `(a, b, discriminant, j)` of the Jacobian of `W_{u(t)}`.
#[pyfunction]
fn jacobian(t: &str) -> PyResult<(String, String, String, String)> {
    let u = match u_of_t(&t.parse().map_err(err)?) {
        ProjValue::Finite(u) => u,
        ProjValue::Infinity => return Err(err("u(t) has a pole")),
    };
    let e = jacobian_weierstrass(&RationalField, &build_fiber(&u)).map_err(err)?;
    let j = j_invariant(&RationalField, &e).map_err(err)?;
    let d = weierstrass_discriminant(&RationalField, &e);
    Ok((rat_to_string(&e.a), rat_to_string(&e.b), rat_to_string(&d), rat_to_string(&j)))
}

/// Local solvability certificate of `W_u` at `p` as JSON text, with a `replayed` flag.
#[pyfunction]
#[pyo3(signature = (u, p, precision=8))]
fn solvable(u: &str, p: u64, precision: u32) -> PyResult<String> {
    let s = fiber_local_solvability(&rational(u)?, p, precision).map_err(err)?;
    let mut v = serde_json::to_value(&s).map_err(err)?;
    v["replayed"] = s.replay().into();
    Ok(v.to_string())
}

#[pymodule]
fn hasse_family_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(claim, m)?)?;
    m.add_function(wrap_pyfunction!(u_of, m)?)?;
    m.add_function(wrap_pyfunction!(fiber, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian, m)?)?;
    m.add_function(wrap_pyfunction!(solvable, m)?)?;
    Ok(())
}
