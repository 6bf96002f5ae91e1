//! Gauss–Legendre rules and the exact moment integrals used by the
//! same-element blocks, each with an independent brute-force oracle.

pub mod dd;
mod gauss;
mod moments;
mod printed;

pub use gauss::{gauss_legendre, GaussRule, MAX_ORDER};
pub use moments::{
    closed_form_moment, oracle_moment, oracle_moments_dd, singular_table, MomentKind, MomentMismatch, SingularTable,
    ORACLE_TOLERANCE,
};
pub use printed::printed_moment;
