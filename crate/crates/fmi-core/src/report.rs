//! Uniform result record for every verification the crate can run. The CLI
//! and the Python bindings both serialize these untouched, so field order and
//! types are part of the output contract.

use std::collections::BTreeMap;

use serde::Serialize;

/// One named check with its verdict and the numbers that drove it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub verdict: bool,
    /// Smallest eigenvalue encountered, for positivity-style checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<f64>,
    /// Largest residual encountered, for identity-style checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Point at which the worst value occurred, as `[re, im]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[f64; 2]>,
    /// Sorted key/value bag of auxiliary measurements.
    pub details: BTreeMap<String, serde_json::Value>,
}

impl CheckReport {
    pub fn new(name: &str, verdict: bool) -> Self {
        Self {
            check_name: name.to_string(),
            verdict,
            min_eigenvalue: None,
            residual: None,
            witness: None,
            details: BTreeMap::new(),
        }
    }

    pub fn with_residual(name: &str, residual: f64, tol: f64) -> Self {
        let mut r = Self::new(name, residual <= tol);
        r.residual = Some(residual);
        r.details.insert("tolerance".into(), tol.into());
        r
    }

    pub fn with_min_eigenvalue(name: &str, min_eig: f64, tol: f64) -> Self {
        let mut r = Self::new(name, min_eig >= -tol);
        r.min_eigenvalue = Some(min_eig);
        r.details.insert("tolerance".into(), tol.into());
        r
    }
}

/// `true` only if every report passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.verdict)
}
