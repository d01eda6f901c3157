//! Finite-dimensional machinery for interpolation problems whose solvability is
//! governed by a positive-semidefinite block matrix built from the problem data
//! and a candidate function.
//!
//! Two concrete problems are covered:
//!
//! * Nevanlinna–Pick interpolation on the unit disk for functions with
//!   nonnegative real part (module [`np`]);
//! * the truncated Hamburger moment problem on the real line for Nevanlinna
//!   functions with sublinear growth along the imaginary axis (module
//!   [`hamburger`]).
//!
//! Both problems share a common algebraic backbone: a data matrix `A`, a shift
//! `T`, and two columns `u`, `v` tied together by a Stein or Lyapunov identity
//! (module [`realization`]). From these one assembles the block inequality, the
//! transformed inequalities obtained by congruence, and an associated matrix
//! function `W` whose positivity is equivalent to the original inequality.
//! Module [`battery`] bundles the standard verification suites used by the CLI
//! and the Python bindings.

pub mod battery;
pub mod error;
pub mod gen;
pub mod hamburger;
pub mod hermitian;
pub mod io;
pub mod measures;
pub mod np;
pub mod realization;
pub mod report;

pub use error::FmiError;
pub use hermitian::{CMatrix, C64};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, FmiError>;
