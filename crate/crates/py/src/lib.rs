//! Python bindings. Specs are passed as text such as `"B2(24;4,6,3)"`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qbn_core::cyclo;
use qbn_core::graph::build_graph;
use qbn_core::kernel::{adjacency_matrix, kernel_basis};
use qbn_core::poly::IntPolynomial;
use qbn_core::spec::{normalize_spec, parse_raw_spec, BicirculantSpec};
use qbn_core::{enumerate, report};

fn value_error(e: qbn_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(text: &str) -> PyResult<BicirculantSpec> {
    parse_raw_spec(text).map_err(value_error)
}

/// Verdict as a dict with keys class, m, a, b, c, is_nut, reason and witness_f.
#[pyfunction]
fn classify<'py>(py: Python<'py>, spec: &str) -> PyResult<Bound<'py, PyDict>> {
    let r = qbn_core::classify(&parse(spec)?).record();
    let d = PyDict::new(py);
    d.set_item("class", r.class.as_str())?;
    d.set_item("m", r.m)?;
    d.set_item("a", r.a)?;
    d.set_item("b", r.b)?;
    d.set_item("c", r.c)?;
    d.set_item("is_nut", r.is_nut)?;
    d.set_item("reason", r.reason)?;
    d.set_item("witness_f", r.witness_f)?;
    Ok(d)
}

/// The verdict in the command-line tool's JSON form.
#[pyfunction]
fn classify_json(spec: &str) -> PyResult<String> {
    Ok(qbn_core::classify(&parse(spec)?).to_json())
}

#[pyfunction]
fn normalize(spec: &str) -> PyResult<String> {
    Ok(normalize_spec(&parse(spec)?).map_err(value_error)?.to_string())
}

/// True if the adjacency kernel is one-dimensional and spanned by a vector with no zero entry.
#[pyfunction]
fn nut_oracle(spec: &str) -> PyResult<bool> {
    Ok(qbn_core::nut_oracle(&build_graph(&parse(spec)?)))
}

/// Exact kernel basis of the adjacency matrix as lists of `fractions.Fraction`.
#[pyfunction]
fn kernel<'py>(py: Python<'py>, spec: &str) -> PyResult<Bound<'py, PyList>> {
    let basis = kernel_basis(&adjacency_matrix(&build_graph(&parse(spec)?)));
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let out = PyList::empty(py);
    for v in &basis.vectors {
        let row = PyList::empty(py);
        for x in v {
            row.append(fraction.call1((x.numer().clone(), x.denom().clone()))?)?;
        }
        out.append(row)?;
    }
    Ok(out)
}

/// Number of zero eigenvalues and the divisors of m that produce them.
#[pyfunction]
fn zero_multiplicity<'py>(py: Python<'py>, spec: &str) -> PyResult<Bound<'py, PyDict>> {
    let r = cyclo::zero_multiplicity(&parse(spec)?).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("satisfied_divisors", r.satisfied_divisors)?;
    d.set_item("double_divisors", r.double_divisors)?;
    d.set_item("multiplicity", r.multiplicity)?;
    Ok(d)
}

/// Coefficients of Phi_f, constant term first.
#[pyfunction]
fn cyclotomic(f: u64) -> PyResult<Vec<num_bigint::BigInt>> {
    if f == 0 {
        return Err(PyValueError::new_err("f must be positive"));
    }
    Ok(cyclo::cyclotomic(f).coeffs().to_vec())
}

/// True if Phi_f divides the polynomial with the given coefficients (constant term first).
#[pyfunction]
fn divides_cyclotomic(f: u64, coeffs: Vec<i64>) -> PyResult<bool> {
    if f == 0 {
        return Err(PyValueError::new_err("f must be positive"));
    }
    Ok(cyclo::divides_cyclotomic(f, &IntPolynomial::from_i64(&coeffs)))
}

/// Residues `(a+b, a-b, c)` mod f for which Phi_f divides P_{a,b,c}.
#[pyfunction]
fn residue_search(f: u64) -> PyResult<Vec<(u64, u64, u64)>> {
    cyclo::residue_search(f).map_err(value_error)
}

/// Counts (C, B, N, V, Z) for order n, overall and per class.
#[pyfunction]
fn table_row<'py>(py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyDict>> {
    let row = py.detach(|| enumerate::table_row(n)).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("n", row.n)?;
    d.set_item("counts", row.counts.as_array())?;
    let per_class = PyDict::new(py);
    for c in &row.per_class {
        per_class.set_item(c.class.as_str(), c.counts.as_array())?;
    }
    d.set_item("per_class", per_class)?;
    Ok(d)
}

/// Enumeration table for orders 8..=max_order as CSV (aggregate block, blank line, per-class block).
#[pyfunction]
fn table_csv(py: Python<'_>, max_order: u64) -> PyResult<String> {
    let rows = py.detach(|| enumerate::table(max_order)).map_err(value_error)?;
    Ok(report::table_csv(&rows, report::TableKind::Both))
}

#[pymodule]
fn qbn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(classify_json, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(nut_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(zero_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(divides_cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(residue_search, m)?)?;
    m.add_function(wrap_pyfunction!(table_row, m)?)?;
    m.add_function(wrap_pyfunction!(table_csv, m)?)?;
    Ok(())
}
