//! Python bindings. Structured inputs and outputs cross the boundary as JSON
//! strings in the same formats the CLI uses, so the two front ends stay
//! byte-compatible; scalar helpers cross as plain floats.

use num_complex::Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fmi_core::battery::{self, RunConfig};
use fmi_core::gen::ProblemKind;
use fmi_core::io::{Certificate, Envelope, MeasureFile, ProblemData};
use fmi_core::measures::Evaluate;
use fmi_core::report::all_pass;
use fmi_core::{hermitian, np};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_envelope(text: &str) -> PyResult<(ProblemData, Certificate)> {
    let envelope: Envelope = serde_json::from_str(text).map_err(value_error)?;
    Ok((
        envelope.instance.parse().map_err(value_error)?,
        envelope.certificate.parse().map_err(value_error)?,
    ))
}

fn config(seed: u64, tol: f64, grid: usize, trials: usize) -> RunConfig {
    RunConfig {
        seed,
        tol,
        grid,
        trials,
        ..RunConfig::default()
    }
}

/// Generate a seeded solvable instance; returns the envelope as JSON.
#[pyfunction]
#[pyo3(signature = (kind, n=3, seed=0, rho=0.0))]
fn generate(kind: &str, n: usize, seed: u64, rho: f64) -> PyResult<String> {
    let kind = ProblemKind::parse(kind).map_err(value_error)?;
    let envelope = battery::generate(kind, n, seed, rho).map_err(value_error)?;
    serde_json::to_string(&envelope).map_err(value_error)
}

/// Run the full check suite on an envelope; returns `(all_passed, reports_json)`.
#[pyfunction]
#[pyo3(signature = (envelope, seed=0, tol=1e-9, grid=100))]
fn check(envelope: &str, seed: u64, tol: f64, grid: usize) -> PyResult<(bool, String)> {
    let (problem, certificate) = parse_envelope(envelope)?;
    let reports = battery::run_check(&problem, &certificate, &config(seed, tol, grid, 10))
        .map_err(value_error)?;
    Ok((
        all_pass(&reports),
        serde_json::to_string(&reports).map_err(value_error)?,
    ))
}

/// Run the identity catalog on random realizations; returns `(all_passed, reports_json)`.
#[pyfunction]
#[pyo3(signature = (kind, trials=10, seed=0, tol=1e-9, break_fi=false))]
fn identities(
    kind: &str,
    trials: usize,
    seed: u64,
    tol: f64,
    break_fi: bool,
) -> PyResult<(bool, String)> {
    let kind = ProblemKind::parse(kind).map_err(value_error)?;
    let reports = battery::run_identities(kind, &config(seed, tol, 100, trials), break_fi)
        .map_err(value_error)?;
    Ok((
        all_pass(&reports),
        serde_json::to_string(&reports).map_err(value_error)?,
    ))
}

/// Recover the underlying data from an envelope's certificate; returns
/// `(all_passed, reports_json)`.
#[pyfunction]
#[pyo3(signature = (envelope, seed=0))]
fn extract(envelope: &str, seed: u64) -> PyResult<(bool, String)> {
    let (problem, certificate) = parse_envelope(envelope)?;
    let reports = battery::run_extract(&problem, &certificate, &config(seed, 1e-9, 100, 10))
        .map_err(value_error)?;
    Ok((
        all_pass(&reports),
        serde_json::to_string(&reports).map_err(value_error)?,
    ))
}

/// Smallest eigenvalue of the block positivity matrix of an envelope at `z`.
#[pyfunction]
fn fmi_min_eigenvalue(envelope: &str, re: f64, im: f64) -> PyResult<f64> {
    let (problem, certificate) = parse_envelope(envelope)?;
    let z = Complex::new(re, im);
    let matrix = match (&problem, &certificate) {
        (ProblemData::Np(data), Certificate::Disk(w)) => {
            np::fmi(w, data, z).map_err(value_error)?.matrix
        }
        (ProblemData::Hamburger(data), Certificate::Line(w)) => {
            fmi_core::hamburger::fmi(w, data, z).map_err(value_error)?.matrix
        }
        _ => return Err(value_error("problem kind and certificate kind do not match")),
    };
    hermitian::min_eigenvalue(&matrix).map_err(value_error)
}

/// Evaluate a certificate measure file at `z`; returns `(re, im)`.
#[pyfunction]
fn eval_certificate(measure: &str, re: f64, im: f64) -> PyResult<(f64, f64)> {
    let file: MeasureFile = serde_json::from_str(measure).map_err(value_error)?;
    let cert = file.parse().map_err(value_error)?;
    let z = Complex::new(re, im);
    let v = match &cert {
        Certificate::Disk(w) => w.eval(z),
        Certificate::Line(w) => w.eval(z),
    }
    .map_err(value_error)?;
    Ok((v.re, v.im))
}

#[pymodule]
fn fmi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(extract, m)?)?;
    m.add_function(wrap_pyfunction!(fmi_min_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(eval_certificate, m)?)?;
    Ok(())
}
