//! Nevanlinna–Pick interpolation on the unit disk for functions with
//! nonnegative real part.
//!
//! The data is a set of distinct nodes inside the disk with target values.
//! Its realization is the Pick matrix
//! `A_kl = (w_k + conj(w_l)) / (1 - z_k conj(z_l))`, the diagonal shift
//! `T = diag(z_k)`, the all-ones column `u` and the value column `v`, tied by
//! the Stein identity `A - T A T* = u v* + v u*`.
//!
//! A candidate function enters through the column
//! `B(z) = (zI - T)^(-1) (u w(z) - v)`, entrywise the difference quotients
//! `(w(z) - w_k) / (z - z_k)`. The block matrix `[[A, B], [B*, C]]` with the
//! disk kernel `C = 2 Re w(z) / (1 - |z|^2)` is positive semidefinite for
//! every class function through the data, and its congruence transforms give
//! the derived inequalities and the associated matrix function `W` whose
//! Hermitian part is nonnegative exactly when the block inequality holds.

use crate::hermitian::{self, CMatrix, C64};
use crate::measures::Evaluate;
use crate::realization::{
    block2, bordered, inverse, ones_col, FmiMatrix, Realization, StructureKind, TwoPath,
};
use crate::report::CheckReport;
use crate::{FmiError, Result};

/// Validated interpolation data: distinct nodes strictly inside the disk,
/// one target value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct NpData {
    nodes: Vec<C64>,
    values: Vec<C64>,
}

impl NpData {
    pub fn new(nodes: Vec<C64>, values: Vec<C64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(FmiError::InvalidData("need at least one node".into()));
        }
        if nodes.len() != values.len() {
            return Err(FmiError::InvalidData(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        for (k, z) in nodes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(FmiError::InvalidData(format!("node {k} is not finite")));
            }
            if z.norm() > 1.0 - 1e-9 {
                return Err(FmiError::InvalidData(format!(
                    "node {k} has modulus {:.12}; nodes must lie strictly inside the disk",
                    z.norm()
                )));
            }
        }
        for (k, w) in values.iter().enumerate() {
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(FmiError::InvalidData(format!("value {k} is not finite")));
            }
        }
        for i in 0..nodes.len() {
            for j in (i + 1)..nodes.len() {
                if (nodes[i] - nodes[j]).norm() <= 1e-9 {
                    return Err(FmiError::InvalidData(format!(
                        "nodes {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Self { nodes, values })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Pick matrix, diagonal shift and the two structural columns.
    pub fn realization(&self) -> Realization {
        let n = self.n();
        let a = CMatrix::from_fn(n, n, |k, l| {
            (self.values[k] + self.values[l].conj())
                / (C64::new(1.0, 0.0) - self.nodes[k] * self.nodes[l].conj())
        });
        let t = CMatrix::from_fn(n, n, |k, l| {
            if k == l {
                self.nodes[k]
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let v = CMatrix::from_fn(n, 1, |k, _| self.values[k]);
        Realization {
            kind: StructureKind::Disk,
            a,
            t,
            u: ones_col(n),
            v,
        }
    }
}

/// `true` when `z` stays away from the points where the derived objects
/// degenerate: the origin, the nodes and their circle reflections.
pub fn is_nonsingular(data: &NpData, z: C64, margin: f64) -> bool {
    if z.norm() <= margin {
        return false;
    }
    for zk in data.nodes() {
        if (z - zk).norm() <= margin {
            return false;
        }
        if (C64::new(1.0, 0.0) - z * zk.conj()).norm() <= margin {
            return false;
        }
    }
    true
}

fn guard_off_circle(z: C64) -> Result<()> {
    if (1.0 - z.norm_sqr()).abs() <= 1e-12 {
        return Err(FmiError::BadPoint(format!(
            "z = {z} lies on the unit circle; the disk kernel degenerates"
        )));
    }
    Ok(())
}

fn guard_off_nodes(data: &NpData, z: C64) -> Result<()> {
    for (k, zk) in data.nodes().iter().enumerate() {
        if (z - zk).norm() <= 1e-12 {
            return Err(FmiError::BadPoint(format!("z = {z} coincides with node {k}")));
        }
    }
    Ok(())
}

/// `(zI - T)^(-1) (u w(z) - v)`, the resolvent form of the mixing column.
fn b_column_r(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    let n = r.dim();
    let m = CMatrix::identity(n, n) * z - &r.t;
    let inv = inverse(&m, "zI - T")?;
    Ok(inv * (&r.u * wv - &r.v))
}

/// Mixing column computed both ways: entrywise difference quotients
/// `(w(z) - w_k)/(z - z_k)` and the resolvent form.
pub fn b_column_paths(w: &impl Evaluate, data: &NpData, z: C64) -> Result<TwoPath> {
    guard_off_nodes(data, z)?;
    let wv = w.eval(z)?;
    let direct = CMatrix::from_fn(data.n(), 1, |k, _| {
        (wv - data.values[k]) / (z - data.nodes[k])
    });
    let framed = b_column_r(&data.realization(), wv, z)?;
    TwoPath::new(direct, framed)
}

/// Mixing column at `z` (resolvent form).
pub fn b_column(w: &impl Evaluate, data: &NpData, z: C64) -> Result<CMatrix> {
    guard_off_nodes(data, z)?;
    b_column_r(&data.realization(), w.eval(z)?, z)
}

/// Disk positivity kernel `(w(z) + conj(w(z))) / (1 - |z|^2)`.
pub fn positivity_kernel(wv: C64, z: C64) -> Result<C64> {
    guard_off_circle(z)?;
    Ok((wv + wv.conj()) / (1.0 - z.norm_sqr()))
}

/// Assembles the block inequality `[[A, B(z)], [B(z)*, C(z)]]`.
pub fn fmi(w: &impl Evaluate, data: &NpData, z: C64) -> Result<FmiMatrix> {
    guard_off_nodes(data, z)?;
    let r = data.realization();
    let wv = w.eval(z)?;
    let b = b_column_r(&r, wv, z)?;
    let c = positivity_kernel(wv, z)?;
    Ok(FmiMatrix {
        z,
        kind: StructureKind::Disk,
        matrix: bordered(&r.a, &b, c),
    })
}

/// One diagonal 2x2 subinequality `[[A_kk, B_k], [conj(B_k), C]]`, computed
/// directly and as a two-row compression of the full block inequality.
pub fn subinequality(w: &impl Evaluate, data: &NpData, k: usize, z: C64) -> Result<TwoPath> {
    let n = data.n();
    if k >= n {
        return Err(FmiError::InvalidData(format!(
            "index {k} out of range for {n} nodes"
        )));
    }
    let f = fmi(w, data, z)?;
    let mut m = CMatrix::zeros(2, n + 1);
    m[(0, k)] = C64::new(1.0, 0.0);
    m[(1, n)] = C64::new(1.0, 0.0);
    let framed = &m * &f.matrix * m.adjoint();
    let mut direct = CMatrix::zeros(2, 2);
    direct[(0, 0)] = f.matrix[(k, k)];
    direct[(0, 1)] = f.matrix[(k, n)];
    direct[(1, 0)] = f.matrix[(n, k)];
    direct[(1, 1)] = f.matrix[(n, n)];
    TwoPath::new(direct, framed)
}

/// `z (I - z T*)^(-1)`, the reflected resolvent factor shared by the closed
/// forms of `W`. Written this way it is exact at `z = 0`.
fn reflected_factor(r: &Realization, z: C64) -> Result<CMatrix> {
    let n = r.dim();
    let inv = inverse(&(CMatrix::identity(n, n) - r.t.adjoint() * z), "I - zT*")?;
    Ok(inv * z)
}

/// Associated matrix function, resolvent form:
/// `W(z) = (T + zI)(T - zI)^(-1) A / 2 + (zI - T)^(-1) (u v* + w(z) u u*) z (I - z T*)^(-1)`.
///
/// Defined wherever `z` avoids the nodes and the reflected nodes; in
/// particular `W(0) = A/2` exactly when the origin is not a node.
pub fn w_matrix(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    let n = r.dim();
    let eye = CMatrix::identity(n, n);
    let tz = inverse(&(&r.t - &eye * z), "T - zI")?;
    let refl = reflected_factor(r, z)?;
    let zt_inv = -&tz; // (zI - T)^(-1)
    let zu = &zt_inv * &r.u;
    Ok((&r.t + &eye * z) * &tz * &r.a * C64::new(0.5, 0.0)
        + &zu * r.v.adjoint() * &refl
        + &zu * wv * r.u.adjoint() * &refl)
}

/// Alternative closed form with the data matrix on the left:
/// `W(z) = A (I + z T*)(I - z T*)^(-1) / 2 - (zI - T)^(-1) v u* z (I - z T*)^(-1)
///        + (zI - T)^(-1) u w(z) u* z (I - z T*)^(-1)`.
pub fn w_matrix_alt(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    let n = r.dim();
    let eye = CMatrix::identity(n, n);
    let right_inv = inverse(&(&eye - r.t.adjoint() * z), "I - zT*")?;
    let refl = reflected_factor(r, z)?;
    let zt_inv = -inverse(&(&r.t - &eye * z), "T - zI")?;
    Ok(&r.a * (&eye + r.t.adjoint() * z) * &right_inv * C64::new(0.5, 0.0)
        - &zt_inv * &r.v * r.u.adjoint() * &refl
        + &zt_inv * &r.u * wv * r.u.adjoint() * &refl)
}

/// Entrywise closed form of the associated matrix function.
pub fn w_entrywise(w: &impl Evaluate, data: &NpData, z: C64) -> Result<CMatrix> {
    guard_off_nodes(data, z)?;
    let wv = w.eval(z)?;
    let n = data.n();
    let mut out = CMatrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            let zk = data.nodes[k];
            let zl = data.nodes[l];
            let denom_refl = C64::new(1.0, 0.0) - z * zl.conj();
            if denom_refl.norm() <= 1e-12 {
                return Err(FmiError::BadPoint(format!(
                    "z = {z} reflects onto node {l}"
                )));
            }
            let left = (zk + z) / (zk - z) * (data.values[k] - wv);
            let right = (C64::new(1.0, 0.0) + z * zl.conj()) / denom_refl
                * (wv + data.values[l].conj());
            out[(k, l)] =
                (left + right) * C64::new(0.5, 0.0) / (C64::new(1.0, 0.0) - zk * zl.conj());
        }
    }
    Ok(out)
}

/// `|| W(z) + W(1/conj z)* ||` — the reflection law of the associated matrix.
pub fn w_symmetry_residual(w: &impl Evaluate, data: &NpData, z: C64) -> Result<f64> {
    if z.norm() <= 1e-12 {
        return Err(FmiError::BadPoint("reflection of 0 is unbounded".into()));
    }
    let r = data.realization();
    let zr = 1.0 / z.conj();
    let wm = w_matrix(&r, w.eval(z)?, z)?;
    let wr = w_matrix(&r, w.eval(zr)?, zr)?;
    hermitian::residual_norm(&wm, &(-wr.adjoint()))
}

/// Rank-one column `phi(z) = (T + zI)(T - zI)^(-1) (u w(z) - v) / 2` from the
/// shift compression of `W`.
pub fn phi_column(r: &Realization, wv: C64, z: C64) -> Result<CMatrix> {
    let n = r.dim();
    let eye = CMatrix::identity(n, n);
    let tz = inverse(&(&r.t - &eye * z), "T - zI")?;
    Ok((&r.t + &eye * z) * tz * (&r.u * wv - &r.v) * C64::new(0.5, 0.0))
}

/// Which derived inequality to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfmiKind {
    /// Same-size inequality whose blocks are reflected difference quotients
    /// over `1 - |z|^2`.
    One,
    /// Doubled inequality `[[A, W + A/2], [(W + A/2)*, (W + W*)/(1 - |z|^2)]]`.
    Two,
}

/// Congruence matrix that maps the block inequality onto the derived one.
pub fn framing_matrix(kind: TfmiKind, r: &Realization, z: C64) -> Result<CMatrix> {
    let n = r.dim();
    let rzb = inverse(
        &(CMatrix::identity(n, n) - &r.t * z.conj()),
        "I - conj(z) T",
    )?;
    let col = &rzb * &r.u * z.conj();
    match kind {
        TfmiKind::One => {
            let mut m = CMatrix::zeros(n + 1, n + 1);
            m.view_mut((0, 0), (n, n)).copy_from(&rzb);
            m.view_mut((0, n), (n, 1)).copy_from(&col);
            m[(n, n)] = C64::new(1.0, 0.0);
            Ok(m)
        }
        TfmiKind::Two => {
            let mut m = CMatrix::zeros(2 * n, n + 1);
            m.view_mut((0, 0), (n, n))
                .copy_from(&CMatrix::identity(n, n));
            m.view_mut((n, 0), (n, n)).copy_from(&rzb);
            m.view_mut((n, n), (n, 1)).copy_from(&col);
            Ok(m)
        }
    }
}

/// Assembles a derived inequality twice: from its closed-form blocks and as a
/// congruence of the block inequality. The first kind also evaluates the
/// candidate at the reflected point `1/conj(z)`, so it additionally exercises
/// the reflection law of class functions.
pub fn tfmi(kind: TfmiKind, w: &impl Evaluate, data: &NpData, z: C64) -> Result<TwoPath> {
    tfmi_r(kind, &data.realization(), w, z)
}

fn tfmi_r(kind: TfmiKind, r: &Realization, w: &impl Evaluate, z: C64) -> Result<TwoPath> {
    guard_off_circle(z)?;
    if z.norm() <= 1e-12 {
        return Err(FmiError::BadPoint("derived forms need z away from 0".into()));
    }
    let wv = w.eval(z)?;
    let opp = C64::new(1.0 - z.norm_sqr(), 0.0);
    let b = b_column_r(r, wv, z)?;
    let c = (wv + wv.conj()) / opp;
    let f = bordered(&r.a, &b, c);
    let m = framing_matrix(kind, r, z)?;
    let framed = &m * &f * m.adjoint();
    let wm = w_matrix(r, wv, z)?;
    let herm_dq = (&wm + wm.adjoint()).map(|x| x / opp);
    let direct = match kind {
        TfmiKind::One => {
            let zr = 1.0 / z.conj();
            let biz = b_column_r(r, w.eval(zr)?, zr)?;
            let col = (&b - &biz).map(|x| x / opp);
            bordered(&herm_dq, &col, c)
        }
        TfmiKind::Two => {
            let shifted = &wm + &r.a * C64::new(0.5, 0.0);
            block2(&r.a, &shifted, &herm_dq)
        }
    };
    TwoPath::new(direct, framed)
}

/// Algebraic identities satisfied by the realization, its resolvents and the
/// associated matrix function. Each yields a residual that vanishes in exact
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskIdentity {
    /// Partial-fraction split of the Schwarz-kernel factor against a resolvent.
    SchwarzResolventSplit,
    /// `W - T W T*` collapses to a rank-two term built from `phi`.
    ShiftCompression,
    /// Congruence carrying the block inequality to its reflected
    /// difference-quotient form.
    TfmiOneFraming,
    /// Congruence carrying the block inequality to its doubled form.
    TfmiTwoFraming,
    /// Two-sided resolvent compression of the data matrix against the
    /// structural rank-two term.
    ResolventSandwich,
    /// Congruence swapping `z` with its circle reflection in the bordered
    /// quadratic form.
    ReflectionCongruence,
    /// The Stein identity rewritten as a shift of the sandwiched data matrix.
    SteinShift,
}

impl DiskIdentity {
    pub const ALL: [Self; 7] = [
        Self::SchwarzResolventSplit,
        Self::ShiftCompression,
        Self::TfmiOneFraming,
        Self::TfmiTwoFraming,
        Self::ResolventSandwich,
        Self::ReflectionCongruence,
        Self::SteinShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SchwarzResolventSplit => "schwarz_resolvent_split",
            Self::ShiftCompression => "shift_compression",
            Self::TfmiOneFraming => "tfmi_one_framing",
            Self::TfmiTwoFraming => "tfmi_two_framing",
            Self::ResolventSandwich => "resolvent_sandwich",
            Self::ReflectionCongruence => "reflection_congruence",
            Self::SteinShift => "stein_shift",
        }
    }
}

/// Residual of one identity at `z`. `aux` is an extra free point used by the
/// resolvent split (any point distinct from `z` and off the spectrum of the
/// shift); other identities ignore it.
pub fn identity_residual(
    id: DiskIdentity,
    r: &Realization,
    w: &impl Evaluate,
    z: C64,
    aux: C64,
) -> Result<f64> {
    let n = r.dim();
    let eye = CMatrix::identity(n, n);
    match id {
        DiskIdentity::SchwarzResolventSplit => {
            let t = aux;
            if (t - z).norm() <= 1e-9 {
                return Err(FmiError::BadPoint("split needs aux distinct from z".into()));
            }
            let rt = inverse(&(&eye * t - &r.t), "tI - T")?;
            let rz = inverse(&(&eye * z - &r.t), "zI - T")?;
            let tzinv = inverse(&(&r.t - &eye * z), "T - zI")?;
            let lhs = (&r.t + &eye * z) * &tzinv * &rt * C64::new(0.5, 0.0);
            let rhs = &rt * ((t + z) / (t - z) * C64::new(0.5, 0.0)) + &rz * (z / (z - t));
            hermitian::residual_norm(&lhs, &rhs)
        }
        DiskIdentity::ShiftCompression => {
            if z.norm() <= 1e-12 {
                return Err(FmiError::BadPoint("compression needs z away from 0".into()));
            }
            let wv = w.eval(z)?;
            let zr = 1.0 / z.conj();
            let wm = w_matrix(r, wv, z)?;
            let lhs = &wm - &r.t * &wm * r.t.adjoint();
            let phi_z = phi_column(r, wv, z)?;
            let phi_r = phi_column(r, w.eval(zr)?, zr)?;
            let rhs = &r.u * phi_r.adjoint() - &phi_z * r.u.adjoint();
            hermitian::residual_norm(&lhs, &rhs)
        }
        DiskIdentity::TfmiOneFraming => Ok(tfmi_r(TfmiKind::One, r, w, z)?.residual),
        DiskIdentity::TfmiTwoFraming => Ok(tfmi_r(TfmiKind::Two, r, w, z)?.residual),
        DiskIdentity::ResolventSandwich => {
            guard_off_circle(z)?;
            let opp = C64::new(1.0 - z.norm_sqr(), 0.0);
            let rz = inverse(&(&eye * z - &r.t), "zI - T")?;
            let rzb_adj = inverse(&(&eye * z.conj() - r.t.adjoint()), "conj(z) I - T*")?;
            let lhs = &rz * &r.a * &rzb_adj;
            let tzinv = inverse(&(&r.t - &eye * z), "T - zI")?;
            let tzinv_adj = inverse(&(r.t.adjoint() - &eye * z.conj()), "T* - conj(z) I")?;
            let half_left = (&r.t + &eye * z) * &tzinv * &r.a * C64::new(0.5, 0.0);
            let half_right = &r.a * (r.t.adjoint() + &eye * z.conj()) * &tzinv_adj * C64::new(0.5, 0.0);
            let rank2 = &r.u * r.v.adjoint() + &r.v * r.u.adjoint();
            let rhs = (&half_left + &half_right).map(|x| x / opp)
                + (&rz * &rank2 * &rzb_adj).map(|x| x / opp);
            hermitian::residual_norm(&lhs, &rhs)
        }
        DiskIdentity::ReflectionCongruence => {
            guard_off_circle(z)?;
            let wv = w.eval(z)?;
            let wrefl = -wv.conj();
            let corner = (wv + wv.conj()) / C64::new(1.0 - z.norm_sqr(), 0.0);
            let g_block = (&eye * z - &r.t) * &r.a * (&eye * z.conj() - r.t.adjoint());
            let g = bordered(&g_block, &(&r.u * wv - &r.v), corner);
            let gt_block = (&eye - &r.t * z.conj()) * &r.a * (&eye - r.t.adjoint() * z);
            let gt = bordered(&gt_block, &(&r.u * wrefl - &r.v), corner);
            let mut l = CMatrix::identity(n + 1, n + 1);
            l.view_mut((0, n), (n, 1))
                .copy_from(&(&r.u * C64::new(-(1.0 - z.norm_sqr()), 0.0)));
            hermitian::residual_norm(&(&l * &g * l.adjoint()), &gt)
        }
        DiskIdentity::SteinShift => {
            let rank2 = &r.u * r.v.adjoint() + &r.v * r.u.adjoint();
            let lhs = (&eye * z - &r.t) * &r.a * (&eye * z.conj() - r.t.adjoint())
                + &rank2 * C64::new(1.0 - z.norm_sqr(), 0.0);
            let rhs = (&eye - &r.t * z.conj()) * &r.a * (&eye - r.t.adjoint() * z);
            hermitian::residual_norm(&lhs, &rhs)
        }
    }
}

/// Worst deviation of the candidate from the target values at the nodes.
pub fn interpolation_residual(w: &impl Evaluate, data: &NpData) -> Result<f64> {
    let mut worst = 0.0f64;
    for (zk, wk) in data.nodes().iter().zip(data.values()) {
        worst = worst.max((w.eval(*zk)? - wk).norm());
    }
    Ok(worst)
}

/// Probes the equivalence between the doubled derived inequality and the
/// positivity of the Hermitian part of `W` over a set of points: both sides
/// should call the data the same way.
pub fn schwarz_pick_agreement(
    w: &impl Evaluate,
    data: &NpData,
    points: &[C64],
    tol: f64,
) -> Result<CheckReport> {
    let r = data.realization();
    let mut min_w = f64::INFINITY;
    let mut min_derived = f64::INFINITY;
    let mut used = 0usize;
    for &z in points {
        if !is_nonsingular(data, z, 1e-6) || z.norm() >= 1.0 - 1e-6 {
            continue;
        }
        used += 1;
        let wm = w_matrix(&r, w.eval(z)?, z)?;
        min_w = min_w.min(hermitian::min_eigenvalue(&(&wm + wm.adjoint()))?);
        let derived = tfmi_r(TfmiKind::Two, &r, w, z)?;
        min_derived = min_derived.min(hermitian::min_eigenvalue(&derived.direct)?);
    }
    if used == 0 {
        return Err(FmiError::BadPoint(
            "no usable points for the agreement probe".into(),
        ));
    }
    let pass_w = min_w >= -tol;
    let pass_derived = min_derived >= -tol;
    let mut report = CheckReport::new("schwarz_pick_agreement", pass_w == pass_derived);
    report.min_eigenvalue = Some(min_w.min(min_derived));
    report
        .details
        .insert("min_eig_w_hermitian_part".into(), min_w.into());
    report
        .details
        .insert("min_eig_derived_two".into(), min_derived.into());
    report.details.insert("points_used".into(), (used as u64).into());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{CircleMeasure, DiskHerglotz};
    use approx::assert_abs_diff_eq;

    fn circle_atom(theta: f64) -> C64 {
        C64::new(theta.cos(), theta.sin())
    }

    fn fixture() -> (DiskHerglotz, NpData) {
        let sigma = CircleMeasure::new(
            vec![
                circle_atom(0.4),
                circle_atom(1.9),
                circle_atom(3.1),
                circle_atom(4.7),
                circle_atom(5.8),
            ],
            vec![0.5, 1.25, 0.3, 0.8, 0.45],
        )
        .unwrap();
        let w = DiskHerglotz::new(sigma, 0.35);
        let nodes = vec![
            C64::new(0.3, 0.2),
            C64::new(-0.5, 0.1),
            C64::new(0.1, -0.6),
            C64::new(-0.2, -0.3),
        ];
        let values: Vec<C64> = nodes.iter().map(|z| w.eval(*z).unwrap()).collect();
        (w, NpData::new(nodes, values).unwrap())
    }

    fn zpt() -> C64 {
        C64::new(0.4, -0.35)
    }

    #[test]
    fn data_validation() {
        let inside = C64::new(0.5, 0.0);
        assert!(NpData::new(vec![], vec![]).is_err());
        assert!(NpData::new(vec![C64::new(1.0, 0.0)], vec![inside]).is_err());
        assert!(NpData::new(vec![inside, inside], vec![inside, inside]).is_err());
        assert!(NpData::new(vec![inside], vec![inside, inside]).is_err());
        assert!(NpData::new(vec![inside], vec![inside]).is_ok());
    }

    #[test]
    fn realization_satisfies_stein_identity() {
        let (_, data) = fixture();
        assert!(data.realization().fi_residual() < 1e-12);
    }

    #[test]
    fn mixing_column_paths_agree() {
        let (w, data) = fixture();
        let paths = b_column_paths(&w, &data, zpt()).unwrap();
        assert!(paths.residual < 1e-12, "residual {}", paths.residual);
    }

    #[test]
    fn fmi_of_class_function_is_psd() {
        let (w, data) = fixture();
        for z in [zpt(), C64::new(-0.1, 0.7), C64::new(0.6, 0.1)] {
            let f = fmi(&w, &data, z).unwrap();
            let rep = hermitian::check_psd(&f.matrix, 1e-9).unwrap();
            assert!(
                rep.verdict,
                "block inequality violated at {z}: min eig {}",
                rep.min_eigenvalue
            );
        }
    }

    #[test]
    fn fmi_guards() {
        let (w, data) = fixture();
        assert!(fmi(&w, &data, data.nodes()[0]).is_err());
        assert!(fmi(&w, &data, C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn w_forms_agree_and_reflect() {
        let (w, data) = fixture();
        let r = data.realization();
        let z = zpt();
        let wv = w.eval(z).unwrap();
        let w85 = w_matrix(&r, wv, z).unwrap();
        let w87 = w_matrix_alt(&r, wv, z).unwrap();
        let w811 = w_entrywise(&w, &data, z).unwrap();
        assert!(hermitian::residual_norm(&w85, &w87).unwrap() < 1e-12);
        assert!(hermitian::residual_norm(&w85, &w811).unwrap() < 1e-12);
        assert!(w_symmetry_residual(&w, &data, z).unwrap() < 1e-12);
    }

    #[test]
    fn w_at_origin_is_half_data_matrix() {
        let (w, data) = fixture();
        let r = data.realization();
        let w0 = w_matrix(&r, w.eval(C64::new(0.0, 0.0)).unwrap(), C64::new(0.0, 0.0)).unwrap();
        let half = &r.a * C64::new(0.5, 0.0);
        assert!(hermitian::residual_norm(&w0, &half).unwrap() < 1e-13);
    }

    #[test]
    fn derived_inequalities_match_their_framings() {
        let (w, data) = fixture();
        for kind in [TfmiKind::One, TfmiKind::Two] {
            let paths = tfmi(kind, &w, &data, zpt()).unwrap();
            assert!(
                paths.residual < 1e-10,
                "{kind:?} residual {}",
                paths.residual
            );
            let rep = hermitian::check_psd(&paths.direct, 1e-8).unwrap();
            assert!(rep.verdict, "{kind:?} not psd: {}", rep.min_eigenvalue);
        }
    }

    #[test]
    fn identity_catalog_vanishes_on_valid_data() {
        let (w, data) = fixture();
        let r = data.realization();
        let aux = circle_atom(2.2);
        for id in DiskIdentity::ALL {
            let res = identity_residual(id, &r, &w, zpt(), aux).unwrap();
            assert!(res < 1e-9, "{}: residual {res}", id.name());
        }
    }

    #[test]
    fn identity_catalog_holds_for_arbitrary_values() {
        // Arbitrary target values still give a Stein-consistent realization,
        // and the identities are pure algebra on top of it.
        let nodes = vec![C64::new(0.25, 0.4), C64::new(-0.3, -0.2), C64::new(0.6, 0.05)];
        let values = vec![C64::new(1.4, -2.0), C64::new(-0.3, 0.9), C64::new(0.1, 3.2)];
        let data = NpData::new(nodes, values).unwrap();
        let r = data.realization();
        assert!(r.fi_residual() < 1e-12);
        let sigma = CircleMeasure::new(
            vec![circle_atom(0.9), circle_atom(2.8), circle_atom(5.2)],
            vec![0.7, 0.9, 1.2],
        )
        .unwrap();
        let unrelated = DiskHerglotz::new(sigma, -0.4);
        for id in DiskIdentity::ALL {
            let res = identity_residual(id, &r, &unrelated, C64::new(-0.45, 0.3), circle_atom(1.1))
                .unwrap();
            assert!(res < 1e-9, "{}: residual {res}", id.name());
        }
    }

    #[test]
    fn corrupted_data_matrix_breaks_identities() {
        let (w, data) = fixture();
        let mut r = data.realization();
        r.a[(0, 0)] += C64::new(0.37, 0.0);
        let aux = circle_atom(1.1);
        let bad = identity_residual(DiskIdentity::SteinShift, &r, &w, zpt(), aux).unwrap();
        assert!(bad > 1e-3, "corruption went unnoticed: {bad}");
        let bad_framing =
            identity_residual(DiskIdentity::TfmiOneFraming, &r, &w, zpt(), aux).unwrap();
        assert!(bad_framing > 1e-3);
    }

    #[test]
    fn subinequality_is_a_compression() {
        let (w, data) = fixture();
        for k in 0..data.n() {
            let paths = subinequality(&w, &data, k, zpt()).unwrap();
            assert_abs_diff_eq!(paths.residual, 0.0, epsilon = 1e-14);
            assert!(hermitian::min_eigenvalue(&paths.direct).unwrap() >= -1e-10);
        }
        assert!(subinequality(&w, &data, data.n(), zpt()).is_err());
    }

    #[test]
    fn interpolation_residual_vanishes_for_generated_values() {
        let (w, data) = fixture();
        assert!(interpolation_residual(&w, &data).unwrap() < 1e-12);
    }

    #[test]
    fn agreement_probe_consistent_and_corrupted() {
        let (w, data) = fixture();
        let pts: Vec<C64> = (0..24)
            .map(|k| {
                let th = 0.26 * k as f64;
                C64::new(0.55 * th.cos(), 0.55 * th.sin())
            })
            .collect();
        let rep = schwarz_pick_agreement(&w, &data, &pts, 1e-6).unwrap();
        assert!(rep.verdict, "{rep:?}");

        // Push the first target value far into the left half-plane: the Pick
        // matrix corner goes negative and both sides must agree on failure.
        let mut values = data.values().to_vec();
        let shift = 2.0 * values[0].re.max(0.0) + 1.0;
        values[0] -= C64::new(shift, 0.0);
        let bad = NpData::new(data.nodes().to_vec(), values).unwrap();
        let rep = schwarz_pick_agreement(&w, &bad, &pts, 1e-6).unwrap();
        assert!(rep.verdict, "sides disagree: {rep:?}");
        assert!(rep.min_eigenvalue.unwrap() < -1e-3);
    }

    #[test]
    fn nonsingular_predicate() {
        let (_, data) = fixture();
        assert!(!is_nonsingular(&data, C64::new(0.0, 0.0), 1e-6));
        assert!(!is_nonsingular(&data, data.nodes()[1], 1e-6));
        let refl = 1.0 / data.nodes()[1].conj();
        assert!(!is_nonsingular(&data, refl, 1e-6));
        assert!(is_nonsingular(&data, zpt(), 1e-6));
    }

    proptest::proptest! {
        // The data-matrix identity is structural: any node/value assignment
        // satisfies it, whether or not the data is solvable.
        #[test]
        fn any_node_value_data_gives_a_structural_realization(
            raw in proptest::collection::vec(
                (-0.75..0.75f64, -0.75..0.75f64, -2.0..2.0f64, -2.0..2.0f64),
                1..7,
            ),
        ) {
            let nodes: Vec<C64> = raw.iter().map(|t| C64::new(t.0, t.1)).collect();
            let values: Vec<C64> = raw.iter().map(|t| C64::new(t.2, t.3)).collect();
            let usable = nodes.iter().enumerate().all(|(i, z)| {
                z.norm() > 0.01
                    && z.norm() < 0.999
                    && nodes[..i].iter().all(|p| (z - p).norm() > 1e-3)
            });
            proptest::prop_assume!(usable);
            let data = NpData::new(nodes, values).unwrap();
            let r = data.realization();
            proptest::prop_assert!(r.fi_residual() <= 1e-12 * (1.0 + r.a.norm()));
        }
    }
}
