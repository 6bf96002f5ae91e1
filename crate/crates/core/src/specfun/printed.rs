//! Literal transcription of a printed closed form of the six series
//! coefficient families. It is kept only to cross-check the derived
//! coefficients: three of the families as printed disagree with the
//! ascending-series derivation (see `audit_coefficients`).

use std::f64::consts::PI;
use std::fmt;

use crate::linalg::C64;

use super::series::SeriesCoefficients;
use super::EULER_GAMMA;

#[derive(Debug, Clone, PartialEq)]
pub struct PrintedCoefficients {
    pub families: [Vec<C64>; 6],
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|l| 1.0 / l as f64).sum()
}

impl PrintedCoefficients {
    pub fn new(kp: f64, ks: f64, m_max: usize) -> Self {
        let i = C64::new(0.0, 1.0);
        let base = C64::new(1.0, 2.0 * EULER_GAMMA / PI);
        let (lks, lkp) = ((ks / 2.0).ln(), (kp / 2.0).ln());
        let mut f: [Vec<C64>; 6] = Default::default();
        for m in 0..=m_max {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let mi = m as i32;
            let hm = harmonic(m);
            let (s2, p2) = (ks.powi(2 * mi + 2), kp.powi(2 * mi + 2));
            let (s4, p4) = (ks.powi(2 * mi + 4), kp.powi(2 * mi + 4));
            let log2 = i * (2.0 / PI) * (s2 * lks - p2 * lkp);
            let log4 = i * (2.0 / PI) * (s4 * lks - p4 * lkp);

            let c1 = if m == 0 {
                (base - i / PI) * ((s2 - p2) / 2.0) + log2
            } else {
                (base - i / PI * (2.0 * hm + 1.0 / (m as f64 + 1.0)))
                    * (sign * (s2 - p2) / (2f64.powi(2 * mi + 1) * fact(m) * fact(m + 1)))
                    + log2
            };
            let c2 = i * (2.0 * sign / (PI * 2f64.powi(2 * mi + 1) * fact(m) * fact(m + 1))) * (s2 - p2);
            let c3 = if m == 0 {
                (base - i * 3.0 / (2.0 * PI)) * ((s4 - p4) / 8.0) + log4
            } else {
                (base - i / PI * (2.0 * hm + 1.0 / (m as f64 + 2.0)))
                    * (sign * (s4 - p4) / (2f64.powi(2 * mi + 2) * fact(m) * fact(m + 2)))
                    + log4
            };
            let c4 = i * (2.0 * sign / (PI * 2f64.powi(2 * mi + 3) * fact(m) * fact(m + 3))) * (s4 - p4);
            let c5 = if m == 0 {
                base
            } else {
                (base - i * (2.0 / PI) * hm) * (sign / (4f64.powi(mi) * fact(m) * fact(m)))
            };
            let c6 = i * (2.0 * sign / (PI * 4f64.powi(mi) * fact(m) * fact(m)));
            for (dst, v) in f.iter_mut().zip([c1, c2, c3, c4, c5, c6]) {
                dst.push(v);
            }
        }
        Self { families: f }
    }
}

/// Per-family agreement between the derived and the printed coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientAudit {
    /// Largest relative deviation over `m` for families `C1..C6`.
    pub max_rel_dev: [f64; 6],
}

pub struct FamilyName(pub usize);

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0 + 1)
    }
}

impl CoefficientAudit {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn matches(&self, family: usize) -> bool {
        self.max_rel_dev[family] <= Self::TOLERANCE
    }

    pub fn mismatched(&self) -> Vec<FamilyName> {
        (0..6).filter(|&k| !self.matches(k)).map(FamilyName).collect()
    }
}

/// Compares derived coefficients with the printed closed forms.
pub fn audit_coefficients(coeffs: &SeriesCoefficients) -> CoefficientAudit {
    let printed = PrintedCoefficients::new(coeffs.kp, coeffs.ks, coeffs.m_max);
    let derived = [&coeffs.c1, &coeffs.c2, &coeffs.c3, &coeffs.c4, &coeffs.c5, &coeffs.c6];
    let mut max_rel_dev = [0.0; 6];
    for (k, (d, p)) in derived.iter().zip(&printed.families).enumerate() {
        max_rel_dev[k] = d
            .iter()
            .zip(p)
            .map(|(a, b)| (a - b).norm() / a.norm().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
    }
    CoefficientAudit { max_rel_dev }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::series::coefficients_for;

    #[test]
    fn printed_forms_agree_on_c2_c5_c6_only() {
        let audit = audit_coefficients(&coefficients_for(0.5, 1.0, 20));
        let names: Vec<String> = audit.mismatched().iter().map(|f| f.to_string()).collect();
        assert_eq!(names, ["C1", "C3", "C4"]);
    }
}
