//! Python bindings. Every function returns a JSON string so the report
//! schemas match the command-line tool.

use gdk_core::cohomology::h1_classes;
use gdk_core::descent::{descend, ModuleJson};
use gdk_core::fincat::{monad_check as check_fixture, MonadFixture};
use gdk_core::forms::{azumaya_suite, etale_h1, hilbert90_suite};
use gdk_core::gfield::{is_galois_extension, ExtDescriptor, GaloisExtension};
use gdk_core::group_core::GGroup;
use gdk_core::selftest;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dump<T: serde::Serialize>(x: &T) -> PyResult<String> {
    serde_json::to_string(x).map_err(err)
}

fn parse<T: for<'de> serde::Deserialize<'de>>(text: &str) -> PyResult<T> {
    serde_json::from_str(text).map_err(err)
}

/// Galois verdict for an extension descriptor such as
/// `{"kind": "field-tower", "p": 2, "m": 2}`.
#[pyfunction]
fn galois_check(descriptor: &str) -> PyResult<String> {
    let ext = parse::<ExtDescriptor>(descriptor)?.build().map_err(err)?;
    dump(&is_galois_extension(&ext))
}

/// `Z^1` size and `H^1` classes of a G-group given as JSON.
#[pyfunction]
fn h1(coefficients: &str) -> PyResult<String> {
    let gg: GGroup = parse(coefficients)?;
    dump(&h1_classes(&gg).map_err(err)?.to_json())
}

#[pyfunction]
fn descend_dim(module: &str) -> PyResult<usize> {
    let (ext, m) = parse::<ModuleJson>(module)?.to_module().map_err(err)?;
    Ok(descend(&ext, &m).map_err(err)?.module.dim)
}

#[pyfunction]
#[pyo3(signature = (p, m, n=1))]
fn hilbert90(p: u32, m: usize, n: usize) -> PyResult<String> {
    let ext = GaloisExtension::tower(p, m).map_err(err)?;
    dump(&hilbert90_suite(&ext, n).map_err(err)?)
}

#[pyfunction]
fn etale(p: u32, m: usize, n: usize) -> PyResult<String> {
    let ext = GaloisExtension::tower(p, m).map_err(err)?;
    dump(&etale_h1(&ext, n).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (p, m, n=2))]
fn azumaya(p: u32, m: usize, n: usize) -> PyResult<String> {
    let ext = GaloisExtension::tower(p, m).map_err(err)?;
    dump(&azumaya_suite(&ext, n).map_err(err)?)
}

#[pyfunction]
fn monad_check(fixture: &str) -> PyResult<String> {
    let f: MonadFixture = parse(fixture)?;
    dump(&check_fixture(&f).map_err(err)?)
}

/// Acceptance criteria as JSON, optionally a single one.
#[pyfunction]
#[pyo3(signature = (fast=true, criterion=None))]
fn run_selftest(py: Python<'_>, fast: bool, criterion: Option<u8>) -> PyResult<String> {
    let results = py.detach(|| match criterion {
        Some(id) => vec![selftest::run_one(id, fast)],
        None => selftest::run(fast),
    });
    dump(&results)
}

#[pymodule]
fn gdk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(galois_check, m)?)?;
    m.add_function(wrap_pyfunction!(h1, m)?)?;
    m.add_function(wrap_pyfunction!(descend_dim, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert90, m)?)?;
    m.add_function(wrap_pyfunction!(etale, m)?)?;
    m.add_function(wrap_pyfunction!(azumaya, m)?)?;
    m.add_function(wrap_pyfunction!(monad_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}
