//! Seeded random instances: atomic measures, interpolation data sets, and
//! probe points for the checker grids.
//!
//! Everything here is driven by [`Sampler`], a thin counter-based wrapper
//! around ChaCha8 that derives uniform floats from raw 64-bit draws. That
//! keeps the byte stream independent of any distribution-crate internals, so
//! a fixed seed produces identical instances across platforms and releases.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hamburger::MomentData;
use crate::measures::{CircleMeasure, DiskHerglotz, HalfPlaneNevanlinna, LineMeasure};
use crate::np::NpData;
use crate::{C64, Result};

/// Which of the two interpolation problems an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Disk nodes with prescribed function values.
    Np,
    /// Real moment sequences on the upper half-plane.
    Hamburger,
}

impl ProblemKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "np" => Ok(ProblemKind::Np),
            "hamburger" => Ok(ProblemKind::Hamburger),
            other => Err(crate::FmiError::InvalidData(format!(
                "unknown problem kind {other:?}, expected \"np\" or \"hamburger\""
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Np => "np",
            ProblemKind::Hamburger => "hamburger",
        }
    }
}

/// Deterministic uniform sampler with a fixed bit-to-float mapping.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `[0, 1)` using the top 53 bits of one draw.
    pub fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform point in the axis-aligned box `[-half, half]^2`.
    pub fn box_point(&mut self, half: f64) -> C64 {
        C64::new(self.range(-half, half), self.range(-half, half))
    }
}

const MIN_ATOM_GAP_CIRCLE: f64 = 1e-2;
const MIN_ATOM_GAP_LINE: f64 = 1e-2;
const MIN_NODE_GAP: f64 = 0.02;
const WEIGHT_LO: f64 = 0.3;
const WEIGHT_HI: f64 = 1.5;

fn weights(s: &mut Sampler, m: usize) -> Vec<f64> {
    (0..m).map(|_| s.range(WEIGHT_LO, WEIGHT_HI)).collect()
}

/// Atomic measure on the unit circle with well-separated atoms.
pub fn circle_measure(s: &mut Sampler, m: usize) -> Result<CircleMeasure> {
    loop {
        let atoms: Vec<C64> = (0..m)
            .map(|_| C64::from_polar(1.0, s.range(0.0, std::f64::consts::TAU)))
            .collect();
        let separated = atoms
            .iter()
            .enumerate()
            .all(|(i, a)| atoms[..i].iter().all(|b| (a - b).norm() > MIN_ATOM_GAP_CIRCLE));
        if separated {
            return CircleMeasure::new(atoms, weights(s, m));
        }
    }
}

/// Atomic measure on the real interval `[lo, hi]` with well-separated atoms.
pub fn line_measure(s: &mut Sampler, m: usize, lo: f64, hi: f64) -> Result<LineMeasure> {
    loop {
        let atoms: Vec<f64> = (0..m).map(|_| s.range(lo, hi)).collect();
        let separated = atoms
            .iter()
            .enumerate()
            .all(|(i, a)| atoms[..i].iter().all(|b| (a - b).abs() > MIN_ATOM_GAP_LINE));
        if separated {
            return LineMeasure::new(atoms, weights(s, m));
        }
    }
}

/// A disk interpolation instance together with the measure that solves it.
pub struct NpInstance {
    pub data: NpData,
    pub certificate: DiskHerglotz,
}

/// Draw `n` pairwise-separated nodes in the annulus `0.05 <= |z| <= 0.8`.
pub fn disk_nodes(s: &mut Sampler, n: usize) -> Vec<C64> {
    let mut nodes: Vec<C64> = Vec::with_capacity(n);
    while nodes.len() < n {
        let z = s.box_point(0.8);
        let r = z.norm();
        if r < 0.05 || r > 0.8 {
            continue;
        }
        if nodes.iter().any(|p| (z - p).norm() <= MIN_NODE_GAP) {
            continue;
        }
        nodes.push(z);
    }
    nodes
}

/// Draw `n` interior nodes and read the values off a random class function,
/// so the instance is solvable by construction.
pub fn np_instance(s: &mut Sampler, n: usize) -> Result<NpInstance> {
    use crate::measures::Evaluate;
    let sigma = circle_measure(s, n + 3)?;
    let certificate = DiskHerglotz::new(sigma, s.range(-1.0, 1.0));
    let nodes = disk_nodes(s, n);
    let values = nodes
        .iter()
        .map(|&z| certificate.eval(z))
        .collect::<Result<Vec<C64>>>()?;
    Ok(NpInstance {
        data: NpData::new(nodes, values)?,
        certificate,
    })
}

/// Push the first prescribed value far into the left half-plane, so the
/// data matrix acquires a negative diagonal entry and the instance becomes
/// unsolvable while all nodes stay valid.
pub fn np_negative(data: &NpData) -> Result<NpData> {
    let mut values = data.values().to_vec();
    let shift = 2.0 * values[0].re.max(0.0) + 1.0;
    values[0] -= C64::new(shift, 0.0);
    NpData::new(data.nodes().to_vec(), values)
}

/// A moment instance together with its representing measure and the extra
/// point mass `rho` absorbed into the top moment.
pub struct HamburgerInstance {
    pub data: MomentData,
    pub certificate: HalfPlaneNevanlinna,
    pub mass_at_infinity: f64,
}

/// Moments of a random atomic measure supported in `[lo, hi]`, with `rho`
/// added to the final moment (the slack the truncated problem allows).
pub fn hamburger_instance(
    s: &mut Sampler,
    n: usize,
    rho: f64,
    lo: f64,
    hi: f64,
) -> Result<HamburgerInstance> {
    let sigma = line_measure(s, n + 2, lo, hi)?;
    let data = MomentData::from_measure(&sigma, n, rho)?;
    Ok(HamburgerInstance {
        data,
        certificate: HalfPlaneNevanlinna::new(sigma),
        mass_at_infinity: rho,
    })
}

/// Drop the top moment to -1, which no positive measure can match while the
/// lower moments keep their Hankel matrix positive.
pub fn hamburger_negative(data: &MomentData) -> Result<MomentData> {
    let mut s = data.moments().to_vec();
    let last = s.len() - 1;
    s[last] -= s[last] + 1.0;
    MomentData::new(s)
}

/// Probe points for disk instances: inside the disk, away from the origin,
/// the nodes, and the reflected nodes, so every formula in the catalog is
/// well conditioned there.
pub fn disk_points(s: &mut Sampler, data: &NpData, count: usize) -> Vec<C64> {
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let z = s.box_point(0.92);
        let r = z.norm();
        if r < 0.1 || r > 0.92 {
            continue;
        }
        let clear = data.nodes().iter().all(|&zk| {
            (z - zk).norm() >= 0.05 && (C64::new(1.0, 0.0) - z * zk.conj()).norm() >= 0.05
        });
        if clear {
            pts.push(z);
        }
    }
    pts
}

/// Probe points for half-plane instances: bounded real part, safely off the
/// real axis, and moderate height so resolvent powers stay tame.
pub fn halfplane_points(s: &mut Sampler, count: usize) -> Vec<C64> {
    (0..count)
        .map(|_| C64::new(s.range(-3.0, 3.0), s.range(0.3, 3.0)))
        .collect()
}

/// Points on the unit circle, used as the free parameter of the splitting
/// identities on the disk side.
pub fn circle_point(s: &mut Sampler) -> C64 {
    C64::from_polar(1.0, s.range(0.0, std::f64::consts::TAU))
}
