//! The shared structural layer: a Hermitian data matrix `A`, a shift `T` and
//! two columns `u`, `v` that satisfy a Stein identity (disk geometry) or a
//! Lyapunov identity (half-plane geometry). Every block inequality in this
//! crate is assembled from such a quadruple.

use crate::hermitian::{residual_norm, CMatrix, C64};
use crate::{FmiError, Result};

/// Which structural identity ties the quadruple together, and hence which
/// positivity kernel the associated block inequality carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// Stein identity `A - T A T* = u v* + v u*`; kernel `(w + conj w)/(1 - z conj z)`.
    Disk,
    /// Lyapunov identity `T A - A T* = u v* - v u*`; kernel `(w - conj w)/(z - conj z)`.
    HalfPlane,
}

/// Data quadruple `(A, T, u, v)` tagged with its geometry.
#[derive(Debug, Clone)]
pub struct Realization {
    pub kind: StructureKind,
    pub a: CMatrix,
    pub t: CMatrix,
    /// Column vector, stored as an `n x 1` matrix.
    pub u: CMatrix,
    /// Column vector, stored as an `n x 1` matrix.
    pub v: CMatrix,
}

impl Realization {
    /// Builds the quadruple after checking that all shapes agree.
    pub fn new(kind: StructureKind, a: CMatrix, t: CMatrix, u: CMatrix, v: CMatrix) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(FmiError::NonSquare {
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        if t.shape() != (n, n) {
            return Err(FmiError::ShapeMismatch(format!(
                "shift is {}x{}, data matrix is {n}x{n}",
                t.nrows(),
                t.ncols()
            )));
        }
        for (name, col) in [("u", &u), ("v", &v)] {
            if col.shape() != (n, 1) {
                return Err(FmiError::ShapeMismatch(format!(
                    "column {name} is {}x{}, expected {n}x1",
                    col.nrows(),
                    col.ncols()
                )));
            }
        }
        Ok(Self { kind, a, t, u, v })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    /// Residual of the structural identity the quadruple claims to satisfy.
    pub fn fi_residual(&self) -> f64 {
        let rank_two = match self.kind {
            StructureKind::Disk => &self.u * self.v.adjoint() + &self.v * self.u.adjoint(),
            StructureKind::HalfPlane => &self.u * self.v.adjoint() - &self.v * self.u.adjoint(),
        };
        let lhs = match self.kind {
            StructureKind::Disk => &self.a - &self.t * &self.a * self.t.adjoint(),
            StructureKind::HalfPlane => &self.t * &self.a - &self.a * self.t.adjoint(),
        };
        (lhs - rank_two).norm()
    }
}

/// A block inequality assembled at a point, remembering the point and the
/// geometry it came from.
#[derive(Debug, Clone)]
pub struct FmiMatrix {
    pub z: C64,
    pub kind: StructureKind,
    pub matrix: CMatrix,
}

/// One transformed inequality computed two ways: `direct` from its closed-form
/// block entries and `framed` as a congruence `M F M*` of the original block
/// matrix, together with the Frobenius distance between the two.
#[derive(Debug, Clone)]
pub struct TwoPath {
    pub direct: CMatrix,
    pub framed: CMatrix,
    pub residual: f64,
}

impl TwoPath {
    pub fn new(direct: CMatrix, framed: CMatrix) -> Result<Self> {
        let residual = residual_norm(&direct, &framed)?;
        Ok(Self {
            direct,
            framed,
            residual,
        })
    }
}

/// Inverse via LU, with a descriptive error instead of a panic when the
/// matrix is singular.
pub fn inverse(m: &CMatrix, what: &str) -> Result<CMatrix> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| FmiError::Singular(what.to_string()))
}

/// `n x 1` column with a one in slot `j`.
pub fn unit_col(n: usize, j: usize) -> CMatrix {
    let mut c = CMatrix::zeros(n, 1);
    c[(j, 0)] = C64::new(1.0, 0.0);
    c
}

/// `n x 1` column of ones.
pub fn ones_col(n: usize) -> CMatrix {
    CMatrix::from_element(n, 1, C64::new(1.0, 0.0))
}

/// Assembles the 2x2-block matrix `[[a, b], [b*, c]]` from a square block,
/// a column and a scalar.
pub fn bordered(a: &CMatrix, b: &CMatrix, c: C64) -> CMatrix {
    let n = a.nrows();
    let mut m = CMatrix::zeros(n + 1, n + 1);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, 1)).copy_from(b);
    m.view_mut((n, 0), (1, n)).copy_from(&b.adjoint());
    m[(n, n)] = c;
    m
}

/// Assembles the 2x2-block matrix `[[a, b], [b*, c]]` with square blocks.
pub fn block2(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(b);
    m.view_mut((n, 0), (n, n)).copy_from(&b.adjoint());
    m.view_mut((n, n), (n, n)).copy_from(c);
    m
}

/// Block-diagonal `[[a, 0], [0, d]]` with arbitrary square blocks.
pub fn block_diag(a: &CMatrix, d: &CMatrix) -> CMatrix {
    let (n, m) = (a.nrows(), d.nrows());
    let mut out = CMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(d);
    out
}
