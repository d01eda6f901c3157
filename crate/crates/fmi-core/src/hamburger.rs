//! Truncated power-moment problem on the real line.
//!
//! The data is a moment sequence `s_0, ..., s_2n`. Its realization is the
//! Hankel matrix `A = [s_(k+l)]`, the nilpotent lower shift `T`, the first
//! unit column `u` and the column `v = (0, -s_0, ..., -s_(n-1))`, which
//! together satisfy the Lyapunov identity `T A - A T* = u v* - v u*`.
//!
//! A candidate Nevanlinna function `w` enters through the resolvent column
//! `B(z) = (I - zT)^(-1) (u w(z) - v)`, whose entries are the shifted values
//! `b_k(z) = z^k w(z) + s_0 z^(k-1) + ... + s_(k-1)`. The block matrix
//! `[[A, B], [B*, Im w / Im z]]` is positive semidefinite exactly when `w`
//! solves the moment problem, and congruence transformations of it yield the
//! derived inequalities implemented here, together with the asymptotic
//! moment-recovery probes along the imaginary axis and Gauss quadrature from
//! positive-definite moment data.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::hermitian::{self, CMatrix, C64};
use crate::measures::{b_poly, Evaluate, LineMeasure};
use crate::realization::{
    block2, bordered, inverse, unit_col, FmiMatrix, Realization, StructureKind, TwoPath,
};
use crate::{FmiError, Result};

/// Validated moment sequence `s_0, ..., s_2n` (odd length, `n >= 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentData {
    s: Vec<f64>,
}

impl MomentData {
    pub fn new(s: Vec<f64>) -> Result<Self> {
        if s.len() < 3 || s.len() % 2 == 0 {
            return Err(FmiError::InvalidData(format!(
                "need an odd number of moments (at least 3), got {}",
                s.len()
            )));
        }
        if let Some(bad) = s.iter().find(|x| !x.is_finite()) {
            return Err(FmiError::InvalidData(format!("moment {bad} is not finite")));
        }
        Ok(Self { s })
    }

    /// Moments of `sigma` up to order `2n`, with `rho` added to the last one.
    /// The result is solvable data whose extremal extra mass at infinity
    /// equals `rho`.
    pub fn from_measure(sigma: &LineMeasure, n: usize, rho: f64) -> Result<Self> {
        if n == 0 {
            return Err(FmiError::InvalidData("order must be at least 1".into()));
        }
        let mut s = sigma.moments(2 * n + 1);
        s[2 * n] += rho;
        Self::new(s)
    }

    /// Order `n` of the problem; the data matrix is `(n+1) x (n+1)`.
    pub fn n(&self) -> usize {
        (self.s.len() - 1) / 2
    }

    pub fn moments(&self) -> &[f64] {
        &self.s
    }

    /// Hankel data matrix, nilpotent shift and the two structural columns.
    pub fn realization(&self) -> Realization {
        let n = self.n();
        let a = CMatrix::from_fn(n + 1, n + 1, |k, l| C64::new(self.s[k + l], 0.0));
        let mut t = CMatrix::zeros(n + 1, n + 1);
        for i in 1..=n {
            t[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        let u = unit_col(n + 1, 0);
        let mut v = CMatrix::zeros(n + 1, 1);
        for i in 1..=n {
            v[(i, 0)] = C64::new(-self.s[i - 1], 0.0);
        }
        Realization {
            kind: StructureKind::HalfPlane,
            a,
            t,
            u,
            v,
        }
    }
}

/// Reads the moment sequence back off a Hankel data matrix (anti-diagonals).
fn hankel_moments(a: &CMatrix) -> Vec<f64> {
    let n = a.nrows() - 1;
    (0..=2 * n)
        .map(|j| {
            let k = j.min(n);
            a[(k, j - k)].re
        })
        .collect()
}

fn guard_upper(z: C64) -> Result<()> {
    if z.im.abs() <= 1e-12 {
        return Err(FmiError::BadPoint(format!(
            "z = {z} lies on the real axis; difference-quotient kernels degenerate"
        )));
    }
    Ok(())
}

/// `(I - zT)^(-1)`; always exists here because the shift is nilpotent.
fn resolvent(t: &CMatrix, z: C64) -> Result<CMatrix> {
    let n = t.nrows();
    inverse(&(CMatrix::identity(n, n) - t * z), "I - zT")
}

/// Resolvent column `B(z) = (I - zT)^(-1) (u w(z) - v)`.
pub fn b_column(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<CMatrix> {
    let r = data.realization();
    let wv = w.eval(z)?;
    b_column_r(&r, wv, z)
}

fn b_column_r(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    let res = resolvent(&r.t, z)?;
    Ok(res * (&r.u * wv - &r.v))
}

/// The resolvent column computed both ways: once through the resolvent and
/// once entry-by-entry from the shifted-value polynomials.
pub fn b_column_paths(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<TwoPath> {
    let wv = w.eval(z)?;
    let direct = CMatrix::from_fn(data.n() + 1, 1, |k, _| {
        b_poly(wv, z, k, data.moments()).expect("enough moments by construction")
    });
    let resolvent_path = b_column_r(&data.realization(), wv, z)?;
    TwoPath::new(direct, resolvent_path)
}

/// The shift applied to the resolvent column, `T B(z)`, computed both ways:
/// by multiplying out and entry-by-entry as `(0, b_0, ..., b_(n-1))`.
pub fn shifted_b_column_paths(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<TwoPath> {
    let wv = w.eval(z)?;
    let r = data.realization();
    let framed = &r.t * b_column_r(&r, wv, z)?;
    let direct = CMatrix::from_fn(data.n() + 1, 1, |k, _| {
        if k == 0 {
            C64::new(0.0, 0.0)
        } else {
            b_poly(wv, z, k - 1, data.moments()).expect("enough moments by construction")
        }
    });
    TwoPath::new(direct, framed)
}

/// Difference-quotient kernel `(w(z) - conj(w(z))) / (z - conj(z))`.
pub fn positivity_kernel(wv: C64, z: C64) -> Result<C64> {
    guard_upper(z)?;
    let dz = z - z.conj();
    Ok((wv - wv.conj()) / dz)
}

/// Assembles the block inequality `[[A, B(z)], [B(z)*, Im w / Im z]]`.
pub fn fmi(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<FmiMatrix> {
    guard_upper(z)?;
    let r = data.realization();
    let wv = w.eval(z)?;
    let b = b_column_r(&r, wv, z)?;
    let c = positivity_kernel(wv, z)?;
    Ok(FmiMatrix {
        z,
        kind: StructureKind::HalfPlane,
        matrix: bordered(&r.a, &b, c),
    })
}

/// Associated matrix function
/// `W(z) = T R A - R u v* R' + w(z) R u u* R'` with `R = (I - zT)^(-1)`,
/// `R' = (I - z T*)^(-1)`. For moment data it is the Hankel matrix of the
/// shifted values `b_(k+l)(z)`.
pub fn w_matrix(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    let res = resolvent(&r.t, z)?;
    let res_adj = resolvent(&r.t.adjoint(), z)?;
    let ru = &res * &r.u;
    Ok(&r.t * &res * &r.a - &ru * r.v.adjoint() * &res_adj + &ru * wv * r.u.adjoint() * &res_adj)
}

/// The associated matrix computed both ways: entrywise as the Hankel matrix
/// of shifted values `b_(k+l)(z)` and from the resolvent closed form.
pub fn w_matrix_paths(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<TwoPath> {
    let wv = w.eval(z)?;
    let framed = w_matrix(&data.realization(), wv, z)?;
    let n = data.n();
    let direct = CMatrix::from_fn(n + 1, n + 1, |k, l| {
        b_poly(wv, z, k + l, data.moments()).expect("enough moments by construction")
    });
    TwoPath::new(direct, framed)
}

/// Residuals of the two recovery relations: the candidate value is the
/// `(0,0)` entry of `W`, and the resolvent column is its first column.
/// Returns `(|w(z) - W_00|, ||B(z) - W e_0||)`.
pub fn recovery_residuals(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<(f64, f64)> {
    let r = data.realization();
    let wv = w.eval(z)?;
    let wm = w_matrix(&r, wv, z)?;
    let b = b_column_r(&r, wv, z)?;
    let value_res = (wm[(0, 0)] - wv).norm();
    let col_res = (b - wm.column(0)).norm();
    Ok((value_res, col_res))
}

/// `|| W(z) - W(conj z)* ||` — the reflection law of the associated matrix.
pub fn w_symmetry_residual(w: &impl Evaluate, data: &MomentData, z: C64) -> Result<f64> {
    let r = data.realization();
    let wm = w_matrix(&r, w.eval(z)?, z)?;
    let wmb = w_matrix(&r, w.eval(z.conj())?, z.conj())?;
    hermitian::residual_norm(&wm, &wmb.adjoint())
}

/// Rank-one column `phi(z) = -T (I - zT)^(-1) (u w(z) - v)` appearing in the
/// commutator of `W` with the shift.
pub fn phi_column(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    Ok(-(&r.t * b_column_r(r, wv, z)?))
}

/// Which derived inequality to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfmiKind {
    /// Same-size inequality whose blocks are difference quotients of `W`,
    /// `B` and `w` between `z` and `conj(z)`.
    One,
    /// Doubled inequality `[[A, W], [W*, (W - W*)/(z - conj z)]]`.
    Two,
    /// `2 x 2` compression carrying the top moment `s_2n` and the shifted
    /// value `b_2n(z)`.
    Truncated,
}

/// Congruence matrix that maps the block inequality onto the derived one.
pub fn framing_matrix(kind: TfmiKind, r: &Realization, z: C64) -> Result<CMatrix> {
    let n1 = r.dim();
    let rzb = resolvent(&r.t, z.conj())?;
    match kind {
        TfmiKind::One => {
            let mut m = CMatrix::zeros(n1 + 1, n1 + 1);
            m.view_mut((0, 0), (n1, n1)).copy_from(&(&r.t * &rzb));
            m.view_mut((0, n1), (n1, 1)).copy_from(&(&rzb * &r.u));
            m[(n1, n1)] = C64::new(1.0, 0.0);
            Ok(m)
        }
        TfmiKind::Two => {
            let mut m = CMatrix::zeros(2 * n1, n1 + 1);
            m.view_mut((0, 0), (n1, n1))
                .copy_from(&CMatrix::identity(n1, n1));
            m.view_mut((n1, 0), (n1, n1)).copy_from(&(&r.t * &rzb));
            m.view_mut((n1, n1), (n1, 1)).copy_from(&(&rzb * &r.u));
            Ok(m)
        }
        TfmiKind::Truncated => {
            let n = n1 - 1;
            let mut m = CMatrix::zeros(2, n1 + 1);
            m[(0, n)] = C64::new(1.0, 0.0);
            let zb = z.conj();
            for j in 0..n {
                m[(1, j)] = zb.powu((n - 1 - j) as u32);
            }
            m[(1, n1)] = zb.powu(n as u32);
            Ok(m)
        }
    }
}

/// Assembles a derived inequality twice: from its closed-form blocks and as a
/// congruence of the block inequality.
pub fn tfmi(kind: TfmiKind, w: &impl Evaluate, data: &MomentData, z: C64) -> Result<TwoPath> {
    tfmi_r(kind, &data.realization(), w, z)
}

fn tfmi_r(kind: TfmiKind, r: &Realization, w: &impl Evaluate, z: C64) -> Result<TwoPath> {
    guard_upper(z)?;
    let wv = w.eval(z)?;
    let wvb = w.eval(z.conj())?;
    let dz = z - z.conj();
    let b = b_column_r(r, wv, z)?;
    let bb = b_column_r(r, wvb, z.conj())?;
    let c = (wv - wv.conj()) / dz;
    let f = bordered(&r.a, &b, c);
    let m = framing_matrix(kind, r, z)?;
    let framed = &m * &f * m.adjoint();
    let direct = match kind {
        TfmiKind::One => {
            let wm = w_matrix(r, wv, z)?;
            let top = (&wm - wm.adjoint()).map(|x| x / dz);
            let col = (&b - &bb).map(|x| x / dz);
            bordered(&top, &col, c)
        }
        TfmiKind::Two => {
            let wm = w_matrix(r, wv, z)?;
            let dq = (&wm - wm.adjoint()).map(|x| x / dz);
            block2(&r.a, &wm, &dq)
        }
        TfmiKind::Truncated => {
            let s = hankel_moments(&r.a);
            let n = r.dim() - 1;
            let b2n = b_poly(wv, z, 2 * n, &s)?;
            let mut d = CMatrix::zeros(2, 2);
            d[(0, 0)] = C64::new(s[2 * n], 0.0);
            d[(0, 1)] = b2n;
            d[(1, 0)] = b2n.conj();
            d[(1, 1)] = (b2n - b2n.conj()) / dz;
            d
        }
    };
    TwoPath::new(direct, framed)
}

/// Algebraic identities satisfied by the realization, its resolvents and the
/// associated matrix function. Each yields a residual that vanishes in exact
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlaneIdentity {
    /// Partial-fraction split of a product of shift resolvents.
    CauchyResolventSplit,
    /// The same split after one extra application of the shift.
    ShiftedResolventSplit,
    /// `T W - W T*` collapses to a rank-two term built from `phi`.
    ShiftCommutator,
    /// Congruence carrying the block inequality to its difference-quotient form.
    TfmiOneFraming,
    /// Congruence carrying the block inequality to its doubled form.
    TfmiTwoFraming,
    /// Two-sided resolvent compression of the data matrix against the
    /// structural rank-two term.
    ResolventSandwich,
    /// Left factor that flattens the compression frame onto a projector.
    ProjectorFrame,
    /// Explicit left inverse of the doubling frame.
    LeftInverseFrame,
    /// Congruence swapping `z` with `conj(z)` in the bordered quadratic form.
    ConjugateCongruence,
    /// The Lyapunov identity rewritten as a shift of the sandwiched data matrix.
    LyapunovShift,
    /// Compression to the top moment and the shifted value `b_2n`.
    TruncatedFraming,
}

impl HalfPlaneIdentity {
    pub const ALL: [Self; 11] = [
        Self::CauchyResolventSplit,
        Self::ShiftedResolventSplit,
        Self::ShiftCommutator,
        Self::TfmiOneFraming,
        Self::TfmiTwoFraming,
        Self::ResolventSandwich,
        Self::ProjectorFrame,
        Self::LeftInverseFrame,
        Self::ConjugateCongruence,
        Self::LyapunovShift,
        Self::TruncatedFraming,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::CauchyResolventSplit => "cauchy_resolvent_split",
            Self::ShiftedResolventSplit => "shifted_resolvent_split",
            Self::ShiftCommutator => "shift_commutator",
            Self::TfmiOneFraming => "tfmi_one_framing",
            Self::TfmiTwoFraming => "tfmi_two_framing",
            Self::ResolventSandwich => "resolvent_sandwich",
            Self::ProjectorFrame => "projector_frame",
            Self::LeftInverseFrame => "left_inverse_frame",
            Self::ConjugateCongruence => "conjugate_congruence",
            Self::LyapunovShift => "lyapunov_shift",
            Self::TruncatedFraming => "truncated_framing",
        }
    }
}

/// Residual of one identity at `z`. `aux` is an extra free point used by the
/// resolvent splits (any value off the spectrum of the shift and distinct
/// from `z`); other identities ignore it.
pub fn identity_residual(
    id: HalfPlaneIdentity,
    r: &Realization,
    w: &impl Evaluate,
    z: C64,
    aux: C64,
) -> Result<f64> {
    let n1 = r.dim();
    let eye = CMatrix::identity(n1, n1);
    match id {
        HalfPlaneIdentity::CauchyResolventSplit => {
            let lam = aux;
            if (lam - z).norm() <= 1e-9 {
                return Err(FmiError::BadPoint("split needs aux distinct from z".into()));
            }
            let rl = resolvent(&r.t, lam)?;
            let rz = resolvent(&r.t, z)?;
            let inv_gap = C64::new(1.0, 0.0) / (lam - z);
            let lhs = &rl * inv_gap;
            let rhs = &rz * (&eye * inv_gap + &r.t * &rl);
            hermitian::residual_norm(&lhs, &rhs)
        }
        HalfPlaneIdentity::ShiftedResolventSplit => {
            let lam = aux;
            if (lam - z).norm() <= 1e-9 {
                return Err(FmiError::BadPoint("split needs aux distinct from z".into()));
            }
            let rl = resolvent(&r.t, lam)?;
            let rz = resolvent(&r.t, z)?;
            let inv_gap = C64::new(1.0, 0.0) / (lam - z);
            let lhs = &r.t * &rz * &rl * &r.u;
            let rhs = (&rl * &r.u - &rz * &r.u) * inv_gap;
            hermitian::residual_norm(&lhs, &rhs)
        }
        HalfPlaneIdentity::ShiftCommutator => {
            guard_upper(z)?;
            let wv = w.eval(z)?;
            let wvb = w.eval(z.conj())?;
            let wm = w_matrix(r, wv, z)?;
            let lhs = &r.t * &wm - &wm * r.t.adjoint();
            let phi_z = phi_column(r, wv, z)?;
            let phi_zb = phi_column(r, wvb, z.conj())?;
            let rhs = &r.u * phi_zb.adjoint() - &phi_z * r.u.adjoint();
            hermitian::residual_norm(&lhs, &rhs)
        }
        HalfPlaneIdentity::TfmiOneFraming => Ok(tfmi_r(TfmiKind::One, r, w, z)?.residual),
        HalfPlaneIdentity::TfmiTwoFraming => Ok(tfmi_r(TfmiKind::Two, r, w, z)?.residual),
        HalfPlaneIdentity::ResolventSandwich => {
            guard_upper(z)?;
            let dz = z - z.conj();
            let rz = resolvent(&r.t, z)?;
            let rtzb = resolvent(&r.t.adjoint(), z.conj())?;
            let lhs = &r.t * &rz * &r.a * &rtzb * r.t.adjoint();
            let rank2 = &r.u * r.v.adjoint() - &r.v * r.u.adjoint();
            let rhs = (&r.t * &rz * &r.a - &r.a * &rtzb * r.t.adjoint()).map(|x| x / dz)
                - (&rz * &rank2 * &rtzb).map(|x| x / dz);
            hermitian::residual_norm(&lhs, &rhs)
        }
        HalfPlaneIdentity::ProjectorFrame => {
            let m1 = framing_matrix(TfmiKind::One, r, z)?;
            let mut left = CMatrix::zeros(n1 + 1, n1 + 1);
            left.view_mut((0, 0), (n1, n1))
                .copy_from(&(r.t.adjoint() * (&eye - &r.t * z.conj())));
            left[(n1, n1)] = C64::new(1.0, 0.0);
            let mut target = CMatrix::identity(n1 + 1, n1 + 1);
            target[(n1 - 1, n1 - 1)] = C64::new(0.0, 0.0);
            hermitian::residual_norm(&(&left * &m1), &target)
        }
        HalfPlaneIdentity::LeftInverseFrame => {
            let m2 = framing_matrix(TfmiKind::Two, r, z)?;
            let mut nmat = CMatrix::zeros(n1 + 1, 2 * n1);
            nmat.view_mut((0, 0), (n1, n1)).copy_from(&eye);
            let row = (&eye - &r.t * z.conj()).row(0).into_owned();
            nmat.view_mut((n1, n1), (1, n1)).copy_from(&row);
            hermitian::residual_norm(&(&nmat * &m2), &CMatrix::identity(n1 + 1, n1 + 1))
        }
        HalfPlaneIdentity::ConjugateCongruence => {
            guard_upper(z)?;
            let wv = w.eval(z)?;
            let wvs = wv.conj();
            let dz = z - z.conj();
            let corner = (wv - wvs) / dz;
            let make = |zz: C64, wval: C64| {
                let left = &eye - &r.t * zz;
                let right = &eye - r.t.adjoint() * zz.conj();
                let block = &left * &r.a * &right;
                let col = &r.u * wval - &r.v;
                bordered(&block, &col, corner)
            };
            let g = make(z, wv);
            let gt = make(z.conj(), wvs);
            let mut l = CMatrix::identity(n1 + 1, n1 + 1);
            l.view_mut((0, n1), (n1, 1))
                .copy_from(&(&r.u * (z.conj() - z)));
            hermitian::residual_norm(&(&l * &g * l.adjoint()), &gt)
        }
        HalfPlaneIdentity::LyapunovShift => {
            guard_upper(z)?;
            let dz = z - z.conj();
            let rank2 = &r.u * r.v.adjoint() - &r.v * r.u.adjoint();
            let lhs = (&eye - &r.t * z.conj()) * &r.a * (&eye - r.t.adjoint() * z) - &rank2 * dz;
            let rhs = (&eye - &r.t * z) * &r.a * (&eye - r.t.adjoint() * z.conj());
            hermitian::residual_norm(&lhs, &rhs)
        }
        HalfPlaneIdentity::TruncatedFraming => Ok(tfmi_r(TfmiKind::Truncated, r, w, z)?.residual),
    }
}

/// Tolerances applied by [`extract_moments`]; all relative except the floors.
#[derive(Debug, Clone, Serialize)]
pub struct ExtractionTolerances {
    /// Relative mismatch allowed between data moments and certificate moments
    /// below the top order.
    pub moment_match: f64,
    /// How negative the recovered top-order mass may be.
    pub mass_floor: f64,
    /// Relative error allowed in the data-matrix limit along the ladder.
    pub data_limit: f64,
    /// Relative error allowed in the asymptotic top-moment estimate.
    pub corner: f64,
    /// Relative slack (times the data scale) for the gap-structure checks.
    pub gap: f64,
}

impl Default for ExtractionTolerances {
    fn default() -> Self {
        Self {
            moment_match: 1e-8,
            mass_floor: -1e-8,
            data_limit: 1e-4,
            corner: 1e-3,
            gap: 1e-8,
        }
    }
}

/// Default ladder of imaginary heights for the asymptotic probes.
pub fn default_height_ladder() -> Vec<f64> {
    vec![1e3, 1e4, 1e5, 1e6]
}

/// Individual verdicts of [`extract_moments`].
#[derive(Debug, Clone, Serialize)]
pub struct ExtractionVerdicts {
    /// Data-minus-certificate gap is positive semidefinite.
    pub gap_psd: bool,
    /// The gap is annihilated by the shift on both sides.
    pub gap_shift_annihilated: bool,
    /// The gap is concentrated in its bottom-right corner.
    pub gap_corner_rank_one: bool,
    /// Certificate moments reproduce the data below the top order.
    pub moments_match: bool,
    /// `-iy W(iy)` approaches the certificate moment matrix along the ladder.
    pub data_limit: bool,
    /// `Re(-iy b_2n(iy))` approaches the certificate's top moment.
    pub corner_limit: bool,
}

/// Everything [`extract_moments`] measured, plus the combined verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ExtractionReport {
    /// Certificate moments of order `0..2n-1`.
    pub recovered_moments: Vec<f64>,
    /// Worst relative mismatch between data and certificate moments below the
    /// top order.
    pub moment_rel_err: f64,
    /// Mass parked at infinity: top data moment minus top certificate moment.
    pub mass_at_infinity: f64,
    /// Relative error of `-iy W(iy)` against the certificate moment matrix,
    /// one entry per ladder height.
    pub data_limit_by_height: Vec<f64>,
    /// Asymptotic estimate of the certificate's top moment at the final
    /// ladder height.
    pub corner_estimate: f64,
    /// Relative error of that estimate.
    pub corner_rel_err: f64,
    pub gap_min_eigenvalue: f64,
    pub gap_shift_norm: f64,
    pub gap_off_corner_norm: f64,
    pub verdicts: ExtractionVerdicts,
    /// Conjunction of all individual verdicts.
    pub verdict: bool,
}

/// Compares moment data against a certificate measure: recovers the moments,
/// the mass at infinity and the data-matrix limit along the imaginary axis,
/// and checks the structure of the data-minus-certificate gap. All asymptotic
/// probes evaluate against the measure itself, which stays numerically exact
/// at large heights.
pub fn extract_moments(
    sigma: &LineMeasure,
    data: &MomentData,
    tols: &ExtractionTolerances,
    ladder: &[f64],
) -> Result<ExtractionReport> {
    if ladder.is_empty() {
        return Err(FmiError::InvalidData("empty height ladder".into()));
    }
    let n = data.n();
    let s = data.moments();

    let recovered: Vec<f64> = (0..2 * n).map(|k| sigma.moment(k)).collect();
    let moment_rel_err = (0..2 * n)
        .map(|k| (s[k] - recovered[k]).abs() / s[k].abs().max(1.0))
        .fold(0.0f64, f64::max);
    let mass_at_infinity = s[2 * n] - sigma.moment(2 * n);

    // Gap between the data matrix and the certificate's moment matrix.
    let a_data = data.realization().a;
    let a_sigma = CMatrix::from_fn(n + 1, n + 1, |k, l| C64::new(sigma.moment(k + l), 0.0));
    let gap = &a_data - &a_sigma;
    let scale = hermitian::scale_of(&a_data);
    let gap_min_eigenvalue = hermitian::min_eigenvalue(&gap)?;
    let t = data.realization().t;
    let gap_shift_norm = (&t * &gap * t.adjoint()).norm();
    let mut off_corner = gap.clone();
    off_corner[(n, n)] = C64::new(0.0, 0.0);
    let gap_off_corner_norm = off_corner.norm();

    // Asymptotic probes, measure side.
    let mut data_limit_by_height = Vec::with_capacity(ladder.len());
    let a_sigma_scale = hermitian::scale_of(&a_sigma);
    for &y in ladder {
        if !(y > 0.0) {
            return Err(FmiError::InvalidData(format!("height {y} must be positive")));
        }
        let z = C64::new(0.0, y);
        let mut worst = 0.0f64;
        for k in 0..=n {
            for l in 0..=n {
                let west = -z * sigma.cauchy_moment(k + l, z)?;
                worst = worst.max((west - a_sigma[(k, l)]).norm());
            }
        }
        data_limit_by_height.push(worst / a_sigma_scale);
    }
    let ytop = *ladder.last().unwrap();
    let ztop = C64::new(0.0, ytop);
    let corner_estimate = (-ztop * sigma.cauchy_moment(2 * n, ztop)?).re;
    let corner_target = sigma.moment(2 * n);
    let corner_rel_err = (corner_estimate - corner_target).abs() / corner_target.abs().max(1.0);

    let verdicts = ExtractionVerdicts {
        gap_psd: gap_min_eigenvalue >= -tols.gap * scale,
        gap_shift_annihilated: gap_shift_norm <= tols.gap * scale,
        gap_corner_rank_one: gap_off_corner_norm <= tols.gap * scale,
        moments_match: moment_rel_err <= tols.moment_match,
        data_limit: *data_limit_by_height.last().unwrap() <= tols.data_limit,
        corner_limit: corner_rel_err <= tols.corner,
    };
    let verdict = verdicts.gap_psd
        && verdicts.gap_shift_annihilated
        && verdicts.gap_corner_rank_one
        && verdicts.moments_match
        && verdicts.data_limit
        && verdicts.corner_limit;

    Ok(ExtractionReport {
        recovered_moments: recovered,
        moment_rel_err,
        mass_at_infinity,
        data_limit_by_height,
        corner_estimate,
        corner_rel_err,
        gap_min_eigenvalue,
        gap_shift_norm,
        gap_off_corner_norm,
        verdicts,
        verdict,
    })
}

/// Gauss-type atomic measure reproducing `s_0, ..., s_(2n-1)` exactly, built
/// from the spectral decomposition of the Jacobi matrix `L^(-1) H' L^(-T)`
/// where `H = L L^T` is the leading moment block. Errors when that block is
/// not positive definite.
pub fn representing_measure(data: &MomentData) -> Result<LineMeasure> {
    let n = data.n();
    let s = data.moments();
    let h = DMatrix::<f64>::from_fn(n, n, |i, j| s[i + j]);
    let hs = DMatrix::<f64>::from_fn(n, n, |i, j| s[i + j + 1]);

    let min_eig = SymmetricEigen::new(h.clone())
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if min_eig <= 1e-10 {
        return Err(FmiError::NotPositiveDefinite(min_eig));
    }
    let chol = Cholesky::new(h).ok_or(FmiError::NotPositiveDefinite(min_eig))?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| FmiError::Singular("Cholesky factor".into()))?;
    let j = &linv * hs * linv.transpose();
    let j = (&j + j.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], s[0] * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    LineMeasure::new(
        pairs.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.1.max(0.0)).collect(),
    )
}
