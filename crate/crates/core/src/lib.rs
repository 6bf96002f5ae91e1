//! Galerkin boundary elements for two-dimensional time-harmonic elastic
//! scattering by traction-free obstacles.
//!
//! The exterior Navier problem is solved through the Burton–Miller
//! combination of the displacement and traction boundary integral equations,
//! discretized with continuous piecewise-linear trial functions. The
//! hypersingular operator is used in its regularized (weakly singular) weak
//! form and every same-element integral is evaluated from power/log series
//! of the Hankel functions.

// `!(x > 0.0)` deliberately rejects NaN; index loops mirror the
// block-matrix algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod assembly;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod medium;
pub mod quadrature;
pub mod selftest;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};
pub use linalg::{BlockMatrix, CMat22, CVec2, Vec2, C64};
pub use medium::{medium_wavenumbers, ElasticMedium};
