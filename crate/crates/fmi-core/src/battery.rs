//! Full verification runs. Each entry point takes parsed inputs plus a
//! [`RunConfig`] and returns one [`CheckReport`] per named check, in a fixed
//! order, so the CLI and the Python bindings can serialize the result as-is.
//!
//! Residual-style checks report the *scaled* residual `raw / (1 + scale)`
//! where the scale is the norm of the quantity being compared; the raw worst
//! value is kept in the details. Positivity-style checks report the smallest
//! eigenvalue encountered and compare it against a scale-aware tolerance.

use crate::gen::{self, ProblemKind, Sampler};
use crate::hamburger::{self, ExtractionTolerances, HalfPlaneIdentity, MomentData};
use crate::hermitian;
use crate::io::{Certificate, Envelope, ProblemData};
use crate::measures::{self, DiskHerglotz, Evaluate, HalfPlaneNevanlinna, LineMeasure};
use crate::np::{self, DiskIdentity, NpData};
use crate::report::CheckReport;
use crate::{C64, FmiError, Result};

/// Shared knobs for the verification runs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Seed for all probe points and random realizations.
    pub seed: u64,
    /// Base tolerance for scaled residuals and eigenvalue floors.
    pub tol: f64,
    /// Number of probe points per instance.
    pub grid: usize,
    /// Number of random realizations in the identity battery.
    pub trials: usize,
    /// Imaginary heights for the asymptotic extraction probes.
    pub ladder: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: 1e-9,
            grid: 100,
            trials: 10,
            ladder: hamburger::default_height_ladder(),
        }
    }
}

/// Points per realization in the identity battery.
const IDENTITY_POINTS: usize = 10;
/// Fixed relative bound for the structural (shift/data/column) identity.
const STRUCTURAL_TOL: f64 = 1e-10;
/// Absolute bound for re-evaluating a certificate at the prescribed nodes.
const INTERPOLATION_TOL: f64 = 1e-8;

/// Tracks the worst scaled residual over a sweep, with its location.
struct Worst {
    raw: f64,
    scaled: f64,
    at: Option<C64>,
}

impl Worst {
    fn new() -> Self {
        Self {
            raw: 0.0,
            scaled: 0.0,
            at: None,
        }
    }

    fn update(&mut self, raw: f64, scale: f64, z: C64) {
        let scaled = raw / (1.0 + scale);
        if scaled >= self.scaled {
            self.scaled = scaled;
            self.raw = raw;
            self.at = Some(z);
        }
    }

    fn report(&self, name: &str, tol: f64) -> CheckReport {
        let mut r = CheckReport::with_residual(name, self.scaled, tol);
        r.witness = self.at.map(|z| [z.re, z.im]);
        r.details.insert("worst_raw".into(), self.raw.into());
        r
    }
}

/// Tracks the smallest eigenvalue over a sweep, with its location.
struct MinTrack {
    value: f64,
    at: Option<C64>,
}

impl MinTrack {
    fn new() -> Self {
        Self {
            value: f64::INFINITY,
            at: None,
        }
    }

    fn update(&mut self, value: f64, z: C64) {
        if value < self.value {
            self.value = value;
            self.at = Some(z);
        }
    }

    fn report(&self, name: &str, tol: f64) -> CheckReport {
        let mut r = CheckReport::with_min_eigenvalue(name, self.value, tol);
        r.witness = self.at.map(|z| [z.re, z.im]);
        r
    }
}

/// Runs the full check suite for an instance/certificate pair. Errors only on
/// malformed input; mathematical failures come back as `verdict: false`.
pub fn run_check(
    problem: &ProblemData,
    certificate: &Certificate,
    cfg: &RunConfig,
) -> Result<Vec<CheckReport>> {
    match (problem, certificate) {
        (ProblemData::Np(data), Certificate::Disk(w)) => np_check(data, w, cfg),
        (ProblemData::Hamburger(data), Certificate::Line(w)) => hamburger_check(data, w, cfg),
        _ => Err(FmiError::InvalidData(
            "problem kind and certificate kind do not match".into(),
        )),
    }
}

fn np_check(data: &NpData, w: &DiskHerglotz, cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let r = data.realization();
    let a_norm = r.a.norm();
    let mut out = Vec::new();

    let mut structural =
        CheckReport::with_residual("structural_identity", r.fi_residual() / (1.0 + a_norm), STRUCTURAL_TOL);
    structural.details.insert("raw".into(), r.fi_residual().into());
    out.push(structural);

    out.push(CheckReport::with_residual(
        "certificate_interpolates",
        np::interpolation_residual(w, data)?,
        INTERPOLATION_TOL,
    ));

    let mut s = Sampler::new(cfg.seed);
    let pts = gen::disk_points(&mut s, data, cfg.grid);

    let mut symmetry = Worst::new();
    let mut kernel_min = MinTrack::new();
    let mut fmi_min = MinTrack::new();
    let mut fmi_ok = true;
    let mut column = Worst::new();
    let mut one_paths = Worst::new();
    let mut one_min = MinTrack::new();
    let mut two_paths = Worst::new();
    let mut two_min = MinTrack::new();
    let mut closed_forms = Worst::new();
    let mut reflection = Worst::new();
    let mut nodes_paths = Worst::new();
    let mut nodes_min = MinTrack::new();

    for &z in &pts {
        let wv = w.eval(z)?;
        symmetry.update(measures::disk_symmetry_residual(w, z)?, wv.norm(), z);
        kernel_min.update(measures::disk_positivity(w, z)?, z);

        let m = np::fmi(w, data, z)?;
        let psd = hermitian::check_psd(&m.matrix, cfg.tol)?;
        fmi_ok &= psd.verdict;
        fmi_min.update(psd.min_eigenvalue, z);

        let tp = np::b_column_paths(w, data, z)?;
        column.update(tp.residual, tp.direct.norm(), z);

        let one = np::tfmi(np::TfmiKind::One, w, data, z)?;
        one_paths.update(one.residual, one.direct.norm(), z);
        one_min.update(hermitian::min_eigenvalue(&one.direct)?, z);

        let two = np::tfmi(np::TfmiKind::Two, w, data, z)?;
        two_paths.update(two.residual, two.direct.norm(), z);
        two_min.update(hermitian::min_eigenvalue(&two.direct)?, z);

        let wm = np::w_matrix(&r, wv, z)?;
        let wn = wm.norm();
        closed_forms.update(hermitian::residual_norm(&wm, &np::w_matrix_alt(&r, wv, z)?)?, wn, z);
        closed_forms.update(hermitian::residual_norm(&wm, &np::w_entrywise(w, data, z)?)?, wn, z);
        reflection.update(np::w_symmetry_residual(w, data, z)?, wn, z);
    }

    for &z in pts.iter().take(IDENTITY_POINTS) {
        for k in 0..data.n() {
            let sub = np::subinequality(w, data, k, z)?;
            nodes_paths.update(sub.residual, sub.direct.norm(), z);
            nodes_min.update(hermitian::min_eigenvalue(&sub.direct)?, z);
        }
    }

    out.push(symmetry.report("class_symmetry", cfg.tol));
    out.push(kernel_min.report("class_positivity", cfg.tol));
    let mut fmi_rep = fmi_min.report("fmi_psd", cfg.tol);
    fmi_rep.verdict = fmi_ok;
    fmi_rep.details.insert("points".into(), (pts.len() as u64).into());
    out.push(fmi_rep);
    out.push(column.report("mixing_column_paths", cfg.tol));
    out.push(one_paths.report("derived_one_paths", cfg.tol));
    out.push(one_min.report("derived_one_psd", cfg.tol));
    out.push(two_paths.report("derived_two_paths", cfg.tol));
    out.push(two_min.report("derived_two_psd", cfg.tol));
    out.push(nodes_paths.report("node_compression_paths", cfg.tol));
    out.push(nodes_min.report("node_compression_psd", cfg.tol));
    out.push(closed_forms.report("w_closed_forms", cfg.tol));
    out.push(reflection.report("w_reflection", cfg.tol));

    // At the origin the associated matrix collapses to half the data matrix.
    if data.nodes().iter().all(|zk| zk.norm() > 1e-6) {
        let z0 = C64::new(0.0, 0.0);
        let wm0 = np::w_matrix(&r, w.eval(z0)?, z0)?;
        let raw = (&wm0 - r.a.scale(0.5)).norm();
        let mut rep = CheckReport::with_residual("w_origin", raw / (1.0 + a_norm), STRUCTURAL_TOL);
        rep.details.insert("raw".into(), raw.into());
        out.push(rep);
    }

    out.push(np::schwarz_pick_agreement(w, data, &pts, 1e-6)?);
    out.push(identity_catalog_np(&r, w, &pts, &mut s, cfg)?);
    Ok(out)
}

fn identity_catalog_np(
    r: &crate::realization::Realization,
    w: &impl Evaluate,
    pts: &[C64],
    s: &mut Sampler,
    cfg: &RunConfig,
) -> Result<CheckReport> {
    let scale = r.a.norm();
    let mut per_identity: Vec<(&'static str, Worst)> = DiskIdentity::ALL
        .iter()
        .map(|id| (id.name(), Worst::new()))
        .collect();
    for &z in pts.iter().take(IDENTITY_POINTS) {
        for (i, &id) in DiskIdentity::ALL.iter().enumerate() {
            let aux = gen::circle_point(s);
            per_identity[i].1.update(np::identity_residual(id, r, w, z, aux)?, scale, z);
        }
    }
    Ok(catalog_report(per_identity, cfg.tol))
}

fn identity_catalog_hamburger(
    r: &crate::realization::Realization,
    w: &impl Evaluate,
    pts: &[C64],
    s: &mut Sampler,
    cfg: &RunConfig,
) -> Result<CheckReport> {
    let scale = r.a.norm();
    let mut per_identity: Vec<(&'static str, Worst)> = HalfPlaneIdentity::ALL
        .iter()
        .map(|id| (id.name(), Worst::new()))
        .collect();
    for &z in pts.iter().take(IDENTITY_POINTS) {
        for (i, &id) in HalfPlaneIdentity::ALL.iter().enumerate() {
            let aux = C64::new(s.range(-2.0, 2.0), 0.0);
            per_identity[i]
                .1
                .update(hamburger::identity_residual(id, r, w, z, aux)?, scale, z);
        }
    }
    Ok(catalog_report(per_identity, cfg.tol))
}

fn catalog_report(per_identity: Vec<(&'static str, Worst)>, tol: f64) -> CheckReport {
    let mut overall = Worst::new();
    let mut rep = CheckReport::new("identity_catalog", true);
    for (name, w) in per_identity {
        rep.details.insert(name.to_string(), w.scaled.into());
        if w.scaled >= overall.scaled {
            overall = w;
        }
    }
    rep.verdict = overall.scaled <= tol;
    rep.residual = Some(overall.scaled);
    rep.witness = overall.at.map(|z| [z.re, z.im]);
    rep.details.insert("tolerance".into(), tol.into());
    rep
}

fn hamburger_check(
    data: &MomentData,
    w: &HalfPlaneNevanlinna,
    cfg: &RunConfig,
) -> Result<Vec<CheckReport>> {
    let r = data.realization();
    let a_norm = r.a.norm();
    let mut out = Vec::new();

    let mut structural =
        CheckReport::with_residual("structural_identity", r.fi_residual() / (1.0 + a_norm), STRUCTURAL_TOL);
    structural.details.insert("raw".into(), r.fi_residual().into());
    out.push(structural);

    // The certificate must reproduce every moment below the top order and may
    // only exceed the top one (mass parked at infinity must be nonnegative).
    let n = data.n();
    let s_data = data.moments();
    let mut moment_err = 0.0f64;
    for k in 0..2 * n {
        let got = w.sigma.moment(k);
        moment_err = moment_err.max((got - s_data[k]).abs() / s_data[k].abs().max(1.0));
    }
    let mass = s_data[2 * n] - w.sigma.moment(2 * n);
    let mut moments_rep = CheckReport::with_residual(
        "certificate_moments",
        moment_err,
        ExtractionTolerances::default().moment_match,
    );
    moments_rep.verdict &= mass >= ExtractionTolerances::default().mass_floor;
    moments_rep.details.insert("mass_at_infinity".into(), mass.into());
    out.push(moments_rep);

    let bound = measures::growth_bound(w)?;
    let total = w.sigma.total_mass();
    let mut growth = CheckReport::with_residual(
        "growth_bound",
        (bound - total).max(0.0) / (1.0 + total),
        cfg.tol,
    );
    growth.details.insert("bound".into(), bound.into());
    growth.details.insert("total_mass".into(), total.into());
    out.push(growth);

    let mut s = Sampler::new(cfg.seed);
    let pts = gen::halfplane_points(&mut s, cfg.grid);

    let mut symmetry = Worst::new();
    let mut kernel_min = MinTrack::new();
    let mut fmi_min = MinTrack::new();
    let mut fmi_ok = true;
    let mut column = Worst::new();
    let mut shifted = Worst::new();
    let mut one_paths = Worst::new();
    let mut one_min = MinTrack::new();
    let mut two_paths = Worst::new();
    let mut two_min = MinTrack::new();
    let mut trunc_paths = Worst::new();
    let mut trunc_min = MinTrack::new();
    let mut structure = Worst::new();
    let mut recovery = Worst::new();
    let mut reflection = Worst::new();

    for &z in &pts {
        let wv = w.eval(z)?;
        symmetry.update(measures::line_symmetry_residual(w, z)?, wv.norm(), z);
        kernel_min.update(measures::line_positivity(w, z)?, z);

        let m = hamburger::fmi(w, data, z)?;
        let psd = hermitian::check_psd(&m.matrix, cfg.tol)?;
        fmi_ok &= psd.verdict;
        fmi_min.update(psd.min_eigenvalue, z);

        let tp = hamburger::b_column_paths(w, data, z)?;
        column.update(tp.residual, tp.direct.norm(), z);
        let sh = hamburger::shifted_b_column_paths(w, data, z)?;
        shifted.update(sh.residual, sh.direct.norm(), z);

        let one = hamburger::tfmi(hamburger::TfmiKind::One, w, data, z)?;
        one_paths.update(one.residual, one.direct.norm(), z);
        one_min.update(hermitian::min_eigenvalue(&one.direct)?, z);

        let two = hamburger::tfmi(hamburger::TfmiKind::Two, w, data, z)?;
        two_paths.update(two.residual, two.direct.norm(), z);
        two_min.update(hermitian::min_eigenvalue(&two.direct)?, z);

        let trunc = hamburger::tfmi(hamburger::TfmiKind::Truncated, w, data, z)?;
        trunc_paths.update(trunc.residual, trunc.direct.norm(), z);
        trunc_min.update(hermitian::min_eigenvalue(&trunc.direct)?, z);

        let paths = hamburger::w_matrix_paths(w, data, z)?;
        let wn = paths.direct.norm();
        structure.update(paths.residual, wn, z);
        let (val, col) = hamburger::recovery_residuals(w, data, z)?;
        recovery.update(val.max(col), wn, z);
        reflection.update(hamburger::w_symmetry_residual(w, data, z)?, wn, z);
    }

    out.push(symmetry.report("class_symmetry", cfg.tol));
    out.push(kernel_min.report("class_positivity", cfg.tol));
    let mut fmi_rep = fmi_min.report("fmi_psd", cfg.tol);
    fmi_rep.verdict = fmi_ok;
    fmi_rep.details.insert("points".into(), (pts.len() as u64).into());
    out.push(fmi_rep);
    out.push(column.report("mixing_column_paths", cfg.tol));
    out.push(shifted.report("shifted_column_paths", cfg.tol));
    out.push(one_paths.report("derived_one_paths", cfg.tol));
    out.push(one_min.report("derived_one_psd", cfg.tol));
    out.push(two_paths.report("derived_two_paths", cfg.tol));
    out.push(two_min.report("derived_two_psd", cfg.tol));
    out.push(trunc_paths.report("derived_truncated_paths", cfg.tol));
    out.push(trunc_min.report("derived_truncated_psd", cfg.tol));
    out.push(structure.report("w_hankel_structure", cfg.tol));
    out.push(recovery.report("w_recovery", cfg.tol));
    out.push(reflection.report("w_reflection", cfg.tol));
    out.push(identity_catalog_hamburger(&r, w, &pts, &mut s, cfg)?);
    Ok(out)
}

/// Exercises the identity catalog on `cfg.trials` random realizations that
/// satisfy the structural identity by construction, against a certificate
/// function drawn independently of the data. With `break_fi` the data matrix
/// is corrupted in one entry first, which must make part of the catalog fail.
pub fn run_identities(
    kind: ProblemKind,
    cfg: &RunConfig,
    break_fi: bool,
) -> Result<Vec<CheckReport>> {
    if cfg.trials == 0 {
        return Err(FmiError::InvalidData("need at least one trial".into()));
    }
    let mut s = Sampler::new(cfg.seed);
    let mut fi_worst = Worst::new();
    let names: Vec<&'static str> = match kind {
        ProblemKind::Np => DiskIdentity::ALL.iter().map(|id| id.name()).collect(),
        ProblemKind::Hamburger => HalfPlaneIdentity::ALL.iter().map(|id| id.name()).collect(),
    };
    let mut worst: Vec<Worst> = names.iter().map(|_| Worst::new()).collect();

    for trial in 0..cfg.trials.max(1) {
        match kind {
            ProblemKind::Np => {
                let n = 4 + trial % 3;
                let nodes = gen::disk_nodes(&mut s, n);
                let values: Vec<C64> = (0..n).map(|_| s.box_point(1.5)).collect();
                let data = NpData::new(nodes, values)?;
                let mut r = data.realization();
                if break_fi {
                    r.a[(0, 0)] += C64::new(0.37, 0.0);
                }
                fi_worst.update(r.fi_residual(), r.a.norm(), C64::new(0.0, 0.0));
                let wf = DiskHerglotz::new(gen::circle_measure(&mut s, 5)?, s.range(-1.0, 1.0));
                let pts = gen::disk_points(&mut s, &data, IDENTITY_POINTS);
                for &z in &pts {
                    for (i, &id) in DiskIdentity::ALL.iter().enumerate() {
                        let aux = gen::circle_point(&mut s);
                        worst[i].update(np::identity_residual(id, &r, &wf, z, aux)?, r.a.norm(), z);
                    }
                }
            }
            ProblemKind::Hamburger => {
                let n = 3 + trial % 3;
                let moments: Vec<f64> = (0..2 * n + 1).map(|_| s.range(-2.0, 2.0)).collect();
                let data = MomentData::new(moments)?;
                let mut r = data.realization();
                if break_fi {
                    r.a[(0, 0)] += C64::new(0.37, 0.0);
                }
                fi_worst.update(r.fi_residual(), r.a.norm(), C64::new(0.0, 0.0));
                let wf = HalfPlaneNevanlinna::new(gen::line_measure(&mut s, 5, -2.0, 2.0)?);
                // Moderate |z| keeps the resolvent powers inside the identity
                // chains well conditioned, so raw residuals stay near machine
                // precision even for the longest products.
                let pts: Vec<C64> = (0..IDENTITY_POINTS)
                    .map(|_| C64::new(s.range(-1.5, 1.5), s.range(0.3, 1.5)))
                    .collect();
                for &z in &pts {
                    for (i, &id) in HalfPlaneIdentity::ALL.iter().enumerate() {
                        let aux = C64::new(s.range(-2.0, 2.0), 0.0);
                        worst[i].update(
                            hamburger::identity_residual(id, &r, &wf, z, aux)?,
                            r.a.norm(),
                            z,
                        );
                    }
                }
            }
        }
    }

    let mut out = Vec::with_capacity(names.len() + 1);
    let mut structural = fi_worst.report("structural_identity", STRUCTURAL_TOL);
    structural.witness = None;
    out.push(structural);
    for (name, w) in names.iter().zip(worst) {
        out.push(w.report(name, cfg.tol));
    }
    Ok(out)
}

/// Recovers the underlying data from a certificate and verifies it against
/// the instance: moments, mass at infinity and the asymptotic limits on the
/// half-plane side; prescribed values on the disk side.
pub fn run_extract(
    problem: &ProblemData,
    certificate: &Certificate,
    cfg: &RunConfig,
) -> Result<Vec<CheckReport>> {
    match (problem, certificate) {
        (ProblemData::Hamburger(data), Certificate::Line(w)) => {
            hamburger_extract(data, &w.sigma, cfg)
        }
        (ProblemData::Np(data), Certificate::Disk(w)) => np_extract(data, w),
        _ => Err(FmiError::InvalidData(
            "problem kind and certificate kind do not match".into(),
        )),
    }
}

fn hamburger_extract(
    data: &MomentData,
    sigma: &LineMeasure,
    cfg: &RunConfig,
) -> Result<Vec<CheckReport>> {
    let tols = ExtractionTolerances::default();
    let ex = hamburger::extract_moments(sigma, data, &tols, &cfg.ladder)?;
    let mut out = Vec::new();

    let mut moments = CheckReport::with_residual("moment_recovery", ex.moment_rel_err, tols.moment_match);
    moments.verdict = ex.verdicts.moments_match && ex.mass_at_infinity >= tols.mass_floor;
    moments.details.insert(
        "recovered_moments".into(),
        serde_json::to_value(&ex.recovered_moments)?,
    );
    moments
        .details
        .insert("mass_at_infinity".into(), ex.mass_at_infinity.into());
    out.push(moments);

    let mut gap = CheckReport::new(
        "gap_structure",
        ex.verdicts.gap_psd && ex.verdicts.gap_shift_annihilated && ex.verdicts.gap_corner_rank_one,
    );
    gap.min_eigenvalue = Some(ex.gap_min_eigenvalue);
    gap.details.insert("shift_norm".into(), ex.gap_shift_norm.into());
    gap.details
        .insert("off_corner_norm".into(), ex.gap_off_corner_norm.into());
    out.push(gap);

    let mut limit = CheckReport::with_residual(
        "data_matrix_limit",
        *ex.data_limit_by_height.last().unwrap(),
        tols.data_limit,
    );
    limit.details.insert(
        "by_height".into(),
        serde_json::to_value(&ex.data_limit_by_height)?,
    );
    out.push(limit);

    let mut corner = CheckReport::with_residual("top_moment_limit", ex.corner_rel_err, tols.corner);
    corner
        .details
        .insert("estimate".into(), ex.corner_estimate.into());
    out.push(corner);

    out.push(quadrature_roundtrip_report(data));
    Ok(out)
}

/// Builds the Gauss-type measure from the data's own moments and checks that
/// it reproduces every moment below the top order.
fn quadrature_roundtrip_report(data: &MomentData) -> CheckReport {
    let n = data.n();
    let s = data.moments();
    match hamburger::representing_measure(data) {
        Ok(mu) => {
            let mut err = 0.0f64;
            for k in 0..2 * n {
                err = err.max((mu.moment(k) - s[k]).abs() / s[k].abs().max(1.0));
            }
            let mut rep = CheckReport::with_residual("quadrature_roundtrip", err, 1e-8);
            rep.details
                .insert("atoms".into(), serde_json::to_value(mu.atoms()).unwrap_or_default());
            rep
        }
        Err(e) => {
            let mut rep = CheckReport::new("quadrature_roundtrip", false);
            rep.details.insert("error".into(), e.to_string().into());
            rep
        }
    }
}

fn np_extract(data: &NpData, w: &DiskHerglotz) -> Result<Vec<CheckReport>> {
    let mut rep = CheckReport::with_residual(
        "interpolation",
        np::interpolation_residual(w, data)?,
        INTERPOLATION_TOL,
    );
    let recovered: Vec<[f64; 2]> = data
        .nodes()
        .iter()
        .map(|&z| w.eval(z).map(|v| [v.re, v.im]))
        .collect::<Result<_>>()?;
    rep.details
        .insert("recovered_values".into(), serde_json::to_value(recovered)?);
    Ok(vec![rep])
}

/// Generates a seeded solvable instance with its certificate, ready to be
/// serialized. `rho` adds mass at infinity on the half-plane side and is
/// ignored on the disk side.
pub fn generate(kind: ProblemKind, n: usize, seed: u64, rho: f64) -> Result<Envelope> {
    if rho < 0.0 {
        return Err(FmiError::InvalidData(
            "mass at infinity must be nonnegative".into(),
        ));
    }
    let mut s = Sampler::new(seed);
    match kind {
        ProblemKind::Np => {
            let inst = gen::np_instance(&mut s, n)?;
            Ok(Envelope {
                instance: (&ProblemData::Np(inst.data)).into(),
                certificate: (&Certificate::Disk(inst.certificate)).into(),
            })
        }
        ProblemKind::Hamburger => {
            let inst = gen::hamburger_instance(&mut s, n, rho, -3.0, 3.0)?;
            Ok(Envelope {
                instance: (&ProblemData::Hamburger(inst.data)).into(),
                certificate: (&Certificate::Line(inst.certificate)).into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn small_cfg() -> RunConfig {
        RunConfig {
            grid: 25,
            trials: 3,
            ..RunConfig::default()
        }
    }

    #[test]
    fn negative_mass_at_infinity_is_rejected() {
        assert!(generate(ProblemKind::Hamburger, 2, 1, -0.5).is_err());
        assert!(generate(ProblemKind::Hamburger, 2, 1, 0.0).is_ok());
    }

    #[test]
    fn zero_trials_is_rejected() {
        let cfg = RunConfig {
            trials: 0,
            ..RunConfig::default()
        };
        assert!(run_identities(ProblemKind::Np, &cfg, false).is_err());
    }

    fn np_pair(seed: u64, n: usize) -> (ProblemData, Certificate) {
        let mut s = Sampler::new(seed);
        let inst = gen::np_instance(&mut s, n).unwrap();
        (
            ProblemData::Np(inst.data),
            Certificate::Disk(inst.certificate),
        )
    }

    fn hamburger_pair(seed: u64, n: usize, rho: f64) -> (ProblemData, Certificate) {
        let mut s = Sampler::new(seed);
        let inst = gen::hamburger_instance(&mut s, n, rho, -2.0, 2.0).unwrap();
        (
            ProblemData::Hamburger(inst.data),
            Certificate::Line(inst.certificate),
        )
    }

    #[test]
    fn np_suite_passes_on_generated_instance() {
        let (p, c) = np_pair(1, 5);
        let reports = run_check(&p, &c, &small_cfg()).unwrap();
        for r in &reports {
            assert!(r.verdict, "failed: {} {:?}", r.check_name, r);
        }
        assert!(reports.iter().any(|r| r.check_name == "identity_catalog"));
    }

    #[test]
    fn hamburger_suite_passes_on_generated_instance() {
        let (p, c) = hamburger_pair(2, 4, 0.3);
        let reports = run_check(&p, &c, &small_cfg()).unwrap();
        for r in &reports {
            assert!(r.verdict, "failed: {} {:?}", r.check_name, r);
        }
    }

    #[test]
    fn mismatched_kinds_are_rejected() {
        let (p, _) = np_pair(1, 3);
        let (_, c) = hamburger_pair(2, 3, 0.0);
        assert!(run_check(&p, &c, &small_cfg()).is_err());
        assert!(run_extract(&p, &c, &small_cfg()).is_err());
    }

    #[test]
    fn corrupted_np_instance_fails_positivity_but_not_structure() {
        let mut s = Sampler::new(7);
        let inst = gen::np_instance(&mut s, 4).unwrap();
        let bad = gen::np_negative(&inst.data).unwrap();
        let reports = run_check(
            &ProblemData::Np(bad),
            &Certificate::Disk(inst.certificate),
            &small_cfg(),
        )
        .unwrap();
        let by_name = |n: &str| reports.iter().find(|r| r.check_name == n).unwrap();
        assert!(by_name("structural_identity").verdict);
        assert!(!by_name("fmi_psd").verdict);
        assert!(!by_name("certificate_interpolates").verdict);
        assert!(!by_name("derived_two_psd").verdict);
        // the agreement probe must see both sides fail together
        assert!(by_name("schwarz_pick_agreement").verdict);
    }

    #[test]
    fn corrupted_hamburger_top_moment_spares_first_derived_form() {
        let mut s = Sampler::new(8);
        let inst = gen::hamburger_instance(&mut s, 3, 0.2, -2.0, 2.0).unwrap();
        let bad = gen::hamburger_negative(&inst.data).unwrap();
        let reports = run_check(
            &ProblemData::Hamburger(bad),
            &Certificate::Line(inst.certificate),
            &small_cfg(),
        )
        .unwrap();
        let by_name = |n: &str| reports.iter().find(|r| r.check_name == n).unwrap();
        assert!(by_name("structural_identity").verdict);
        assert!(!by_name("fmi_psd").verdict);
        assert!(!by_name("derived_two_psd").verdict);
        // the top moment never enters the first derived form
        assert!(by_name("derived_one_psd").verdict);
        assert!(!by_name("certificate_moments").verdict);
    }

    #[test]
    fn identity_battery_passes_clean_and_fails_corrupted() {
        for kind in [ProblemKind::Np, ProblemKind::Hamburger] {
            let clean = run_identities(kind, &small_cfg(), false).unwrap();
            assert!(all_pass(&clean), "{kind:?} clean run failed");
            let broken = run_identities(kind, &small_cfg(), true).unwrap();
            assert!(!all_pass(&broken), "{kind:?} corrupted run passed");
            assert!(
                !broken.iter().find(|r| r.check_name == "structural_identity").unwrap().verdict
            );
        }
    }

    #[test]
    fn extraction_passes_on_generated_instances() {
        let (p, c) = hamburger_pair(5, 4, 0.4);
        let reports = run_extract(&p, &c, &small_cfg()).unwrap();
        for r in &reports {
            assert!(r.verdict, "failed: {} {:?}", r.check_name, r);
        }
        let (p, c) = np_pair(6, 4);
        assert!(all_pass(&run_extract(&p, &c, &small_cfg()).unwrap()));
    }

    #[test]
    fn generate_is_deterministic() {
        for kind in [ProblemKind::Np, ProblemKind::Hamburger] {
            let a = serde_json::to_string(&generate(kind, 4, 42, 0.1).unwrap()).unwrap();
            let b = serde_json::to_string(&generate(kind, 4, 42, 0.1).unwrap()).unwrap();
            assert_eq!(a, b);
            let c = serde_json::to_string(&generate(kind, 4, 43, 0.1).unwrap()).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn generated_envelope_roundtrips_through_check() {
        let env = generate(ProblemKind::Hamburger, 3, 9, 0.0).unwrap();
        let text = serde_json::to_string(&env).unwrap();
        let back: Envelope = serde_json::from_str(&text).unwrap();
        let problem = back.instance.parse().unwrap();
        let cert = back.certificate.parse().unwrap();
        assert!(all_pass(&run_check(&problem, &cert, &small_cfg()).unwrap()));
    }
}
