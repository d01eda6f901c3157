//! Atomic measures on the unit circle and on the real line, together with the
//! integral transforms that turn them into certificate functions:
//! Herglotz functions (nonnegative real part on the disk) and Nevanlinna
//! functions (nonnegative imaginary part on the upper half-plane, with the
//! sublinear growth that makes them Cauchy transforms of finite measures).

use num_complex::Complex;

use crate::hermitian::C64;
use crate::{FmiError, Result};

/// Minimum pairwise atom separation; closer atoms are rejected rather than
/// merged so that generated instances stay well conditioned.
pub const ATOM_SEPARATION: f64 = 1e-9;

/// How close an evaluation point may come to a singularity or to the unit
/// circle before evaluation is refused.
pub const POINT_GUARD: f64 = 1e-12;

/// Anything whose pointwise values drive the block-matrix machinery.
///
/// Implemented by the measure-backed certificate functions below and by any
/// closure `Fn(C64) -> Result<C64>`, which is how deliberately corrupted or
/// ad-hoc functions enter the test batteries.
pub trait Evaluate {
    fn eval(&self, z: C64) -> Result<C64>;
}

impl<F> Evaluate for F
where
    F: Fn(C64) -> Result<C64>,
{
    fn eval(&self, z: C64) -> Result<C64> {
        self(z)
    }
}

/// Finitely many point masses on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMeasure {
    atoms: Vec<C64>,
    weights: Vec<f64>,
}

impl CircleMeasure {
    /// Validates that atoms sit on the unit circle (within `1e-9` of modulus
    /// one), are pairwise separated, and carry finite nonnegative weights.
    pub fn new(atoms: Vec<C64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.len() != weights.len() {
            return Err(FmiError::InvalidMeasure(format!(
                "{} atoms but {} weights",
                atoms.len(),
                weights.len()
            )));
        }
        for (j, t) in atoms.iter().enumerate() {
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(FmiError::InvalidMeasure(format!("atom {j} is not finite")));
            }
            if (t.norm() - 1.0).abs() > 1e-9 {
                return Err(FmiError::InvalidMeasure(format!(
                    "atom {j} has modulus {:.12}, expected 1",
                    t.norm()
                )));
            }
        }
        for w in &weights {
            if !w.is_finite() || *w < 0.0 {
                return Err(FmiError::InvalidMeasure(format!("weight {w} must be finite and >= 0")));
            }
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if (atoms[i] - atoms[j]).norm() <= ATOM_SEPARATION {
                    return Err(FmiError::InvalidMeasure(format!(
                        "atoms {i} and {j} coincide (separation <= {ATOM_SEPARATION:e})"
                    )));
                }
            }
        }
        Ok(Self { atoms, weights })
    }

    pub fn atoms(&self) -> &[C64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Finitely many point masses on the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineMeasure {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl LineMeasure {
    /// Validates finite, pairwise-separated atoms with nonnegative weights.
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.len() != weights.len() {
            return Err(FmiError::InvalidMeasure(format!(
                "{} atoms but {} weights",
                atoms.len(),
                weights.len()
            )));
        }
        for (j, t) in atoms.iter().enumerate() {
            if !t.is_finite() {
                return Err(FmiError::InvalidMeasure(format!("atom {j} is not finite")));
            }
        }
        for w in &weights {
            if !w.is_finite() || *w < 0.0 {
                return Err(FmiError::InvalidMeasure(format!("weight {w} must be finite and >= 0")));
            }
        }
        let mut sorted: Vec<(f64, usize)> = atoms.iter().cloned().zip(0..).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for pair in sorted.windows(2) {
            if (pair[1].0 - pair[0].0).abs() <= ATOM_SEPARATION {
                return Err(FmiError::InvalidMeasure(format!(
                    "atoms {} and {} coincide (separation <= {ATOM_SEPARATION:e})",
                    pair[0].1, pair[1].1
                )));
            }
        }
        Ok(Self { atoms, weights })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Power moment `sum_j rho_j * lambda_j^k`.
    pub fn moment(&self, k: usize) -> f64 {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(l, r)| r * l.powi(k as i32))
            .sum()
    }

    /// The first `count` power moments, starting at the total mass.
    pub fn moments(&self, count: usize) -> Vec<f64> {
        (0..count).map(|k| self.moment(k)).collect()
    }

    /// Weighted Cauchy transform `sum_j rho_j lambda_j^k / (lambda_j - z)`,
    /// the measure-side value of the k-th resolvent-column entry. Evaluating
    /// against the measure directly keeps large `|z|` probes accurate where
    /// the polynomial form would cancel catastrophically.
    pub fn cauchy_moment(&self, k: usize, z: C64) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (l, rho) in self.atoms.iter().zip(&self.weights) {
            let d = C64::new(*l, 0.0) - z;
            if d.norm() <= POINT_GUARD {
                return Err(FmiError::BadPoint(format!("z = {z} hits an atom")));
            }
            acc += rho * l.powi(k as i32) / d;
        }
        Ok(acc)
    }
}

/// Herglotz function of an atomic circle measure plus imaginary constant:
/// `w(z) = i c + (1/2) sum_j rho_j (t_j + z) / (t_j - z)`.
///
/// Its real part is nonnegative on the open disk and it satisfies the
/// reflection symmetry `w(z) = -conj(w(1/conj(z)))`.
#[derive(Debug, Clone)]
pub struct DiskHerglotz {
    pub sigma: CircleMeasure,
    pub c: f64,
}

impl DiskHerglotz {
    pub fn new(sigma: CircleMeasure, c: f64) -> Self {
        Self { sigma, c }
    }
}

impl Evaluate for DiskHerglotz {
    fn eval(&self, z: C64) -> Result<C64> {
        if (z.norm() - 1.0).abs() <= POINT_GUARD {
            return Err(FmiError::BadPoint(format!(
                "z = {z} lies on the unit circle"
            )));
        }
        let mut acc = C64::new(0.0, self.c);
        for (t, rho) in self.sigma.atoms().iter().zip(self.sigma.weights()) {
            let d = t - z;
            if d.norm() <= POINT_GUARD {
                return Err(FmiError::BadPoint(format!("z = {z} hits an atom")));
            }
            acc += Complex::new(0.5 * rho, 0.0) * (t + z) / d;
        }
        Ok(acc)
    }
}

/// Cauchy transform of an atomic line measure:
/// `w(z) = sum_j rho_j / (lambda_j - z)`.
///
/// A Nevanlinna function with `y * |w(iy)|` bounded (by the total mass), i.e.
/// exactly the class produced by finite moment sequences.
#[derive(Debug, Clone)]
pub struct HalfPlaneNevanlinna {
    pub sigma: LineMeasure,
}

impl HalfPlaneNevanlinna {
    pub fn new(sigma: LineMeasure) -> Self {
        Self { sigma }
    }
}

impl Evaluate for HalfPlaneNevanlinna {
    fn eval(&self, z: C64) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (l, rho) in self.sigma.atoms().iter().zip(self.sigma.weights()) {
            let d = C64::new(*l, 0.0) - z;
            if d.norm() <= POINT_GUARD {
                return Err(FmiError::BadPoint(format!("z = {z} hits an atom")));
            }
            acc += rho / d;
        }
        Ok(acc)
    }
}

/// Moment-shifted value `b_k(z) = z^k w + sum_{j=0}^{k-1} z^(k-1-j) s_j`:
/// the k-th entry of the resolvent column attached to a moment sequence.
/// Requires `moments` to contain at least `k` leading moments.
pub fn b_poly(w_value: C64, z: C64, k: usize, moments: &[f64]) -> Result<C64> {
    if moments.len() < k {
        return Err(FmiError::InvalidData(format!(
            "need {k} leading moments, got {}",
            moments.len()
        )));
    }
    let mut acc = w_value;
    // Horner in z: ((w*z + s_0)*z + s_1)*z + ... picks up z^(k-1-j) s_j.
    for j in 0..k {
        acc = acc * z + moments[j];
    }
    Ok(acc)
}

/// `|w(z) + conj(w(1/conj(z)))|` — deviation from the disk reflection law.
pub fn disk_symmetry_residual(w: &impl Evaluate, z: C64) -> Result<f64> {
    if z.norm() <= POINT_GUARD {
        return Err(FmiError::BadPoint("reflection of 0 is unbounded".into()));
    }
    let reflected = 1.0 / z.conj();
    Ok((w.eval(z)? + w.eval(reflected)?.conj()).norm())
}

/// `|w(z) - conj(w(conj(z)))|` — deviation from the half-plane reflection law.
pub fn line_symmetry_residual(w: &impl Evaluate, z: C64) -> Result<f64> {
    Ok((w.eval(z)? - w.eval(z.conj())?.conj()).norm())
}

/// Disk positivity kernel at a diagonal point: `2 Re w(z) / (1 - |z|^2)`.
pub fn disk_positivity(w: &impl Evaluate, z: C64) -> Result<f64> {
    let denom = 1.0 - z.norm_sqr();
    if denom.abs() <= POINT_GUARD {
        return Err(FmiError::BadPoint(format!("z = {z} lies on the unit circle")));
    }
    Ok(2.0 * w.eval(z)?.re / denom)
}

/// Half-plane positivity kernel at a diagonal point: `Im w(z) / Im z`.
pub fn line_positivity(w: &impl Evaluate, z: C64) -> Result<f64> {
    if z.im.abs() <= POINT_GUARD {
        return Err(FmiError::BadPoint(format!("z = {z} lies on the real axis")));
    }
    Ok(w.eval(z)?.im / z.im)
}

/// Result of the boundary-mass probe [`stieltjes_weight`].
#[derive(Debug, Clone, Copy)]
pub struct WeightEstimate {
    /// Estimate at the smallest epsilon of the schedule.
    pub value: f64,
    /// Whether the last two estimates of the schedule had stabilized.
    pub converged: bool,
}

/// Default epsilon schedule for [`stieltjes_weight`].
pub fn default_epsilon_schedule() -> Vec<f64> {
    (2..=8).map(|k| 10f64.powi(-k)).collect()
}

/// Mass that a Nevanlinna function assigns to the point `lambda0`, probed via
/// `eps * Im w(lambda0 + i eps)` along a decreasing epsilon schedule.
pub fn stieltjes_weight(
    w: &impl Evaluate,
    lambda0: f64,
    schedule: &[f64],
) -> Result<WeightEstimate> {
    if schedule.is_empty() {
        return Err(FmiError::InvalidData("empty epsilon schedule".into()));
    }
    let mut prev: Option<f64> = None;
    let mut value = 0.0;
    let mut converged = false;
    for &eps in schedule {
        if !(eps > 0.0) {
            return Err(FmiError::InvalidData(format!("epsilon {eps} must be positive")));
        }
        let probe = w.eval(C64::new(lambda0, eps))?;
        value = eps * probe.im;
        if let Some(p) = prev {
            converged = (value - p).abs() <= 1e-6 + 1e-3 * value.abs();
        }
        prev = Some(value);
    }
    Ok(WeightEstimate { value, converged })
}

/// Fixed ladder of heights used to probe growth along the imaginary axis.
pub fn growth_ladder() -> Vec<f64> {
    (1..=6).map(|k| 10f64.powi(k)).collect()
}

/// `max_y y * |w(iy)|` over [`growth_ladder`]; finite for Cauchy transforms
/// of finite measures, where it approaches the total mass.
pub fn growth_bound(w: &impl Evaluate) -> Result<f64> {
    let mut worst = 0.0f64;
    for y in growth_ladder() {
        worst = worst.max(y * w.eval(C64::new(0.0, y))?.norm());
    }
    Ok(worst)
}
