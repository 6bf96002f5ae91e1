//! Literal `f64` transcription of a printed set of closed forms for the
//! moment families, kept as a cross-check of [`super::closed_form_moment`].
//! The printed `I2` expression does not reproduce the integral.

use std::f64::consts::LN_2;

use super::MomentKind;

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn sign(l: usize) -> f64 {
    if l.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn printed_moment(m: usize, kind: MomentKind) -> f64 {
    let mf = m as f64;
    let p2 = |e: usize| 2f64.powi(e as i32);
    match kind {
        MomentKind::I1 => (0..=2 * m + 1)
            .map(|l| -sign(l) * binom(2 * m + 1, l) * (1.0 - sign(l)).powi(2) / ((l + 2) * (2 * m + 2 - l)) as f64)
            .sum(),
        MomentKind::I2 => {
            let s: f64 = (0..=2 * m + 2)
                .map(|l| binom(2 * m + 2, l) * (1.0 - sign(l)) / (l + 2) as f64)
                .sum();
            s / (2.0 * (mf + 1.0).powi(2)) + p2(2 * m + 3) * LN_2 / ((mf + 2.0) * (2.0 * mf + 3.0))
                - (6.0 * mf * mf + 18.0 * mf + 13.0) * p2(2 * m + 3)
                    / ((mf + 1.0) * (2.0 * mf + 3.0).powi(2) * (mf + 2.0))
        }
        MomentKind::I3 => p2(2 * m + 2) / ((2.0 * mf + 1.0) * (mf + 1.0)),
        MomentKind::I4 => {
            p2(2 * m + 2) * LN_2 / ((2.0 * mf + 1.0) * (mf + 1.0))
                - (4.0 * mf + 3.0) * p2(2 * m + 1) / ((2.0 * mf + 1.0).powi(2) * (mf + 1.0).powi(2))
        }
        MomentKind::I5 => (0..=2 * m)
            .map(|l| sign(l) * binom(2 * m, l) * (1.0 - sign(l)).powi(2) / ((l + 2) * (2 * m + 2 - l)) as f64)
            .sum(),
        MomentKind::I6 => {
            let a = 2.0 * mf + 1.0;
            let b = mf + 1.0;
            let odd: f64 = (1..=2 * m + 1)
                .step_by(2)
                .map(|l| binom(2 * m + 1, l) * a * a / (l + 2) as f64)
                .sum();
            let even: f64 = (0..=2 * m)
                .step_by(2)
                .map(|l| binom(2 * m + 1, l) * (4.0 * mf + 3.0) / (l + 3) as f64)
                .sum();
            -mf * p2(2 * m + 2) * LN_2 / (a * b * (mf + 2.0))
                - (p2(2 * m + 2) / (mf + 2.0).powi(2) + p2(2 * m + 1) / b - p2(2 * m + 3) / (2.0 * mf + 3.0)) / (a * b)
                + (odd - even) / (b * b * a * a)
        }
    }
}
