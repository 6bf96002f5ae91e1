//! Bessel and Hankel functions of integer order 0, 1, 2 for real positive
//! arguments, the power/log series of the Hankel combinations that appear in
//! the elastic fundamental tensor, and direct evaluations of the same
//! combinations.
//!
//! With `r = |x - y|` the three combinations are
//!
//! ```text
//! F1(r) = ks H1(ks r) - kp H1(kp r)
//! F2(r) = ks^2 H2(ks r) - kp^2 H2(kp r)
//! F3(r) = H0(k r)
//! ```
//!
//! `F1` and `F2` are regular at `r = 0` once the `1/r` and `1/r^2` poles of
//! the individual Hankel functions cancel; the series expose that
//! cancellation analytically and are what the same-element integrals use.

mod printed;
mod series;

use std::f64::consts::PI;

pub use printed::{audit_coefficients, CoefficientAudit, PrintedCoefficients};
pub use series::{coefficients_for, f1_series, f2_series, f3_series, series_coefficients, SeriesCoefficients};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Which Hankel combination to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FKind {
    F1,
    F2,
    F3,
}

fn check_arg(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite and > 0, got {x}"
        )));
    }
    Ok(())
}

/// `(J_n(x), Y_n(x))` for `n` in `{0, 1, 2}` and `x > 0`.
pub fn bessel_jy(n: u32, x: f64) -> Result<(f64, f64)> {
    check_arg(x)?;
    match n {
        0 => Ok((libm::j0(x), libm::y0(x))),
        1 => Ok((libm::j1(x), libm::y1(x))),
        2 => Ok((libm::jn(2, x), libm::yn(2, x))),
        _ => Err(Error::Domain(format!("Bessel order {n} is not supported (0, 1, 2)"))),
    }
}

/// First-kind Hankel function `H_n^(1)(x) = J_n(x) + i Y_n(x)`.
pub fn hankel1(n: u32, x: f64) -> Result<C64> {
    let (j, y) = bessel_jy(n, x)?;
    Ok(C64::new(j, y))
}

/// `(H0(x), H1(x))` without argument checks, for inner quadrature loops.
#[inline]
pub(crate) fn hankel01(x: f64) -> (C64, C64) {
    (C64::new(libm::j0(x), libm::y0(x)), C64::new(libm::j1(x), libm::y1(x)))
}

/// Evaluates `F1`, `F2` (wavenumbers `kp`, `ks`) or `F3 = H0(ks r)` from
/// the Hankel functions themselves.
pub fn f_direct(kind: FKind, kp: f64, ks: f64, r: f64) -> Result<C64> {
    check_arg(r)?;
    match kind {
        FKind::F1 => Ok(hankel1(1, ks * r)? * ks - hankel1(1, kp * r)? * kp),
        FKind::F2 => Ok(hankel1(2, ks * r)? * (ks * ks) - hankel1(2, kp * r)? * (kp * kp)),
        FKind::F3 => hankel1(0, ks * r),
    }
}

/// The constant `-i (ks^2 - kp^2) / pi` left over in `F2` after the
/// `1/r^2` poles cancel.
pub fn f2_constant(kp: f64, ks: f64) -> C64 {
    C64::new(0.0, -(ks * ks - kp * kp) / PI)
}
