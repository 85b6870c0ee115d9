//! Python module `tfpl`: boundary counts, loop counts and verification
//! suites. Words are passed as 0/1 strings; big integers come back as
//! Python ints and Laurent polynomials as strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyLong;

use tfpl::tfpl_core::{self, Boundary, Grid};
use tfpl::words::Word;

/// Python int parsed from the decimal rendering of a big integer.
fn to_py_int(py: Python<'_>, n: impl ToString) -> PyResult<PyObject> {
    Ok(py.get_type_bound::<PyLong>().call1((n.to_string(),))?.unbind())
}

fn err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn boundary(u: &str, v: &str, w: &str) -> PyResult<(Grid, Boundary)> {
    let parse = |s: &str| Word::parse(s).map_err(err);
    let b = Boundary::new(parse(u)?, parse(v)?, parse(w)?);
    let grid = Grid::new(b.w.len()).map_err(err)?;
    grid.check_words(&[&b.u, &b.v, &b.w]).map_err(err)?;
    Ok((grid, b))
}

/// Number of oriented configurations with boundary (u, v; w).
#[pyfunction]
fn count_oriented(u: &str, v: &str, w: &str) -> PyResult<u64> {
    let (grid, b) = boundary(u, v, w)?;
    tfpl_core::count_oriented(&grid, &b).map_err(err)
}

/// Number of (unoriented) configurations with boundary (u, v; w).
#[pyfunction]
fn count_tfpl(u: &str, v: &str, w: &str) -> PyResult<usize> {
    let (grid, b) = boundary(u, v, w)?;
    Ok(tfpl_core::enumerate_plain(&grid, &b).map_err(err)?.len())
}

/// Oriented configurations weighted by q^(t_ccw - t_cw), as text.
#[pyfunction]
#[pyo3(signature = (u, v, w, restrict_rl0 = false))]
fn weighted_count(u: &str, v: &str, w: &str, restrict_rl0: bool) -> PyResult<String> {
    let (grid, b) = boundary(u, v, w)?;
    Ok(tfpl_core::weighted_count(&grid, &b, restrict_rl0).map_err(err)?.to_string())
}

#[pyfunction]
fn excess(u: &str, v: &str, w: &str) -> PyResult<i64> {
    Ok(boundary(u, v, w)?.1.excess())
}

/// Littlewood-Richardson coefficient of the diagrams of u, v and w.
#[pyfunction]
fn lr(py: Python<'_>, u: &str, v: &str, w: &str) -> PyResult<PyObject> {
    let (_, b) = boundary(u, v, w)?;
    to_py_int(py, tfpl::puzzles::lr(&b.u, &b.v, &b.w))
}

/// Fully packed loop configurations on the n x n grid.
#[pyfunction]
fn count_fpl(py: Python<'_>, n: usize) -> PyResult<u64> {
    py.allow_threads(|| tfpl::fpl::count_fpls_where(n, |_| true)).map_err(err)
}

/// Runs one verification suite and returns its report as a JSON string.
#[pyfunction]
#[pyo3(signature = (suite, max_size = 4))]
fn verify(py: Python<'_>, suite: &str, max_size: usize) -> PyResult<String> {
    let report = py
        .allow_threads(|| tfpl::cli::verify::run_suite(suite, max_size))
        .ok_or_else(|| err(format!("unknown suite {suite}")))?;
    serde_json::to_string(&report).map_err(err)
}

#[pymodule]
#[pyo3(name = "tfpl")]
fn tfpl_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(count_oriented, m)?)?;
    m.add_function(wrap_pyfunction!(count_tfpl, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_count, m)?)?;
    m.add_function(wrap_pyfunction!(excess, m)?)?;
    m.add_function(wrap_pyfunction!(lr, m)?)?;
    m.add_function(wrap_pyfunction!(count_fpl, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SUITES", tfpl::cli::verify::SUITES.to_vec())?;
    Ok(())
}
