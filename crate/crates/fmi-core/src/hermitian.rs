//! Hermitian linear algebra helpers: symmetrization, eigenvalue bounds and
//! tolerance-aware positive-semidefiniteness checks for complex matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use serde::Serialize;

use crate::{FmiError, Result};

/// Complex scalar used everywhere in this crate.
pub type C64 = Complex<f64>;

/// Dense complex matrix used everywhere in this crate.
pub type CMatrix = DMatrix<C64>;

/// Outcome of a positive-semidefiniteness check.
#[derive(Debug, Clone, Serialize)]
pub struct PsdReport {
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    /// Effective absolute tolerance the eigenvalue was compared against.
    pub tolerance: f64,
    /// `true` when the matrix is Hermitian up to the tolerance and its
    /// spectrum is bounded below by `-tolerance`.
    pub verdict: bool,
    /// Frobenius distance from the matrix to its Hermitian part.
    pub hermitian_defect: f64,
}

fn require_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(FmiError::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

/// `(m + m*)/2`.
pub fn hermitian_part(m: &CMatrix) -> Result<CMatrix> {
    require_square(m)?;
    Ok((m + m.adjoint()).scale(0.5))
}

/// Frobenius distance from `m` to its Hermitian part.
pub fn hermitian_defect(m: &CMatrix) -> Result<f64> {
    let h = hermitian_part(m)?;
    Ok((m - h).norm())
}

/// Smallest eigenvalue of the Hermitian part of `m`.
///
/// The input is symmetrized first, so callers may pass matrices that are
/// Hermitian only up to rounding.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    let h = hermitian_part(m)?;
    if h.nrows() == 0 {
        return Err(FmiError::ShapeMismatch("empty matrix has no spectrum".into()));
    }
    let eig = SymmetricEigen::new(h);
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// All eigenvalues of the Hermitian part, ascending.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let h = hermitian_part(m)?;
    if h.nrows() == 0 {
        return Err(FmiError::ShapeMismatch("empty matrix has no spectrum".into()));
    }
    let eig = SymmetricEigen::new(h);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Frobenius norm of `a - b`; errors on shape mismatch.
pub fn residual_norm(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(FmiError::ShapeMismatch(format!(
            "cannot compare {}x{} with {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok((a - b).norm())
}

/// Scale-aware default tolerance: `1e-9` inflated by a cheap upper bound for
/// the spectral radius (maximum absolute row sum), floored at `1`.
pub fn default_tolerance(m: &CMatrix) -> f64 {
    1e-9 * scale_of(m)
}

/// `max(1, max_i sum_j |m_ij|)` — the scale used to turn relative tolerances
/// into absolute ones.
pub fn scale_of(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        let mut row = 0.0;
        for j in 0..m.ncols() {
            row += m[(i, j)].norm();
        }
        worst = worst.max(row);
    }
    worst.max(1.0)
}

/// Check positive semidefiniteness of (the Hermitian part of) `m`.
///
/// `base_tol` is a relative tolerance; the effective absolute tolerance is
/// `base_tol * scale_of(m)` and is recorded in the report. The verdict fails
/// when the Hermitian defect exceeds the effective tolerance, even if the
/// spectrum itself is fine.
pub fn check_psd(m: &CMatrix, base_tol: f64) -> Result<PsdReport> {
    let tolerance = base_tol * scale_of(m);
    let defect = hermitian_defect(m)?;
    let min_eig = min_eigenvalue(m)?;
    Ok(PsdReport {
        min_eigenvalue: min_eig,
        tolerance,
        verdict: defect <= tolerance && min_eig >= -tolerance,
        hermitian_defect: defect,
    })
}
