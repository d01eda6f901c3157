//! JSON wire formats for problems, certificate measures and the
//! instance+certificate envelope produced by the generator, together with the
//! conversions into validated domain types.

use serde::{Deserialize, Serialize};

use crate::hamburger::MomentData;
use crate::hermitian::C64;
use crate::measures::{CircleMeasure, DiskHerglotz, HalfPlaneNevanlinna, LineMeasure};
use crate::np::NpData;
use crate::Result;

/// Complex number on the wire: `{"re": ..., "im": ...}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Cx {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Cx> for C64 {
    fn from(z: Cx) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Problem data file, tagged by `"problem"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "problem", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemFile {
    /// Interpolation nodes and target values on the unit disk.
    Np { nodes: Vec<Cx>, values: Vec<Cx> },
    /// Moment sequence `s_0, ..., s_2n` on the real line.
    Hamburger { moments: Vec<f64> },
}

/// Certificate measure file, tagged by `"kind"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeasureFile {
    /// Atomic measure on the unit circle plus an optional imaginary constant.
    Circle {
        atoms: Vec<Cx>,
        weights: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<f64>,
    },
    /// Atomic measure on the real line.
    Line { atoms: Vec<f64>, weights: Vec<f64> },
}

/// What the generator emits and what `check`/`extract` accept on stdin.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub instance: ProblemFile,
    pub certificate: MeasureFile,
}

/// Validated union of the two problem types.
#[derive(Debug, Clone)]
pub enum ProblemData {
    Np(NpData),
    Hamburger(MomentData),
}

/// Validated union of the two certificate types, lifted to their transforms.
#[derive(Debug, Clone)]
pub enum Certificate {
    Disk(DiskHerglotz),
    Line(HalfPlaneNevanlinna),
}

impl ProblemFile {
    pub fn parse(&self) -> Result<ProblemData> {
        match self {
            ProblemFile::Np { nodes, values } => Ok(ProblemData::Np(NpData::new(
                nodes.iter().map(|z| (*z).into()).collect(),
                values.iter().map(|z| (*z).into()).collect(),
            )?)),
            ProblemFile::Hamburger { moments } => {
                Ok(ProblemData::Hamburger(MomentData::new(moments.clone())?))
            }
        }
    }
}

impl From<&ProblemData> for ProblemFile {
    fn from(p: &ProblemData) -> Self {
        match p {
            ProblemData::Np(d) => ProblemFile::Np {
                nodes: d.nodes().iter().map(|z| (*z).into()).collect(),
                values: d.values().iter().map(|z| (*z).into()).collect(),
            },
            ProblemData::Hamburger(d) => ProblemFile::Hamburger {
                moments: d.moments().to_vec(),
            },
        }
    }
}

impl MeasureFile {
    pub fn parse(&self) -> Result<Certificate> {
        match self {
            MeasureFile::Circle { atoms, weights, c } => {
                let sigma = CircleMeasure::new(
                    atoms.iter().map(|z| (*z).into()).collect(),
                    weights.clone(),
                )?;
                Ok(Certificate::Disk(DiskHerglotz::new(sigma, c.unwrap_or(0.0))))
            }
            MeasureFile::Line { atoms, weights } => {
                let sigma = LineMeasure::new(atoms.clone(), weights.clone())?;
                Ok(Certificate::Line(HalfPlaneNevanlinna::new(sigma)))
            }
        }
    }
}

impl From<&Certificate> for MeasureFile {
    fn from(c: &Certificate) -> Self {
        match c {
            Certificate::Disk(w) => MeasureFile::Circle {
                atoms: w.sigma.atoms().iter().map(|z| (*z).into()).collect(),
                weights: w.sigma.weights().to_vec(),
                c: if w.c == 0.0 { None } else { Some(w.c) },
            },
            Certificate::Line(w) => MeasureFile::Line {
                atoms: w.sigma.atoms().to_vec(),
                weights: w.sigma.weights().to_vec(),
            },
        }
    }
}
