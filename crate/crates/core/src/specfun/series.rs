use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::medium::ElasticMedium;

use super::{f2_constant, EULER_GAMMA};

/// Coefficients of the power/log expansions
///
/// ```text
/// F1(r) = sum_m (C1[m] + C2[m] ln r) r^(2m+1)
/// F2(r) = sum_m (C3[m] + C4[m] ln r) r^(2m+2) - i (ks^2 - kp^2) / pi
/// H0(k r) = sum_m ((C5[m] + C6[m] ln(k/2)) + C6[m] ln r) k^(2m) r^(2m)
/// ```
///
/// truncated after `m_max + 1` terms. `C5`/`C6` do not depend on the medium.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub m_max: usize,
    pub kp: f64,
    pub ks: f64,
    pub c1: Vec<C64>,
    pub c2: Vec<C64>,
    pub c3: Vec<C64>,
    pub c4: Vec<C64>,
    pub c5: Vec<C64>,
    pub c6: Vec<C64>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|l| 1.0 / l as f64).sum()
}

/// The six coefficient families for wavenumbers `kp`, `ks`.
///
/// Each family is read off the ascending series of `J_n` and `Y_n`: with
/// `psi(m+1) = -gamma + H_m`,
///
/// ```text
/// H_n(z) = (z/2)^n sum_m (-z^2/4)^m / (m! (m+n)!) *
///          [1 + (2i/pi) ln(z/2) - (i/pi)(psi(m+1) + psi(m+n+1))]
///          + (pole terms that cancel in F1, F2)
/// ```
///
/// so `k^n H_n(k r)` contributes `(2i/pi) ln(k/2)` to the regular part and
/// `(2i/pi) ln r` to the log part of every term.
pub fn coefficients_for(kp: f64, ks: f64, m_max: usize) -> SeriesCoefficients {
    let base = C64::new(1.0, 2.0 * EULER_GAMMA / PI);
    let two_i_pi = C64::new(0.0, 2.0 / PI);
    let (lks, lkp) = ((ks / 2.0).ln(), (kp / 2.0).ln());

    let n = m_max + 1;
    let mut out = SeriesCoefficients {
        m_max,
        kp,
        ks,
        c1: Vec::with_capacity(n),
        c2: Vec::with_capacity(n),
        c3: Vec::with_capacity(n),
        c4: Vec::with_capacity(n),
        c5: Vec::with_capacity(n),
        c6: Vec::with_capacity(n),
    };

    for m in 0..n {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let hm = harmonic(m);
        let fm = factorial(m);
        let mf = m as f64;

        // order 1: powers ks^(2m+2)
        let p1 = 2 * m as i32 + 2;
        let (s1, q1) = (ks.powi(p1), kp.powi(p1));
        let pre1 = sign / (2f64.powi(2 * m as i32 + 1) * fm * factorial(m + 1));
        let psi1 = C64::new(0.0, (2.0 * hm + 1.0 / (mf + 1.0)) / PI);
        out.c1
            .push((base - psi1) * (pre1 * (s1 - q1)) + two_i_pi * (pre1 * (s1 * lks - q1 * lkp)));
        out.c2.push(two_i_pi * (pre1 * (s1 - q1)));

        // order 2: powers ks^(2m+4)
        let p2 = 2 * m as i32 + 4;
        let (s2, q2) = (ks.powi(p2), kp.powi(p2));
        let pre2 = sign / (2f64.powi(2 * m as i32 + 2) * fm * factorial(m + 2));
        let psi2 = C64::new(0.0, (2.0 * hm + 1.0 / (mf + 1.0) + 1.0 / (mf + 2.0)) / PI);
        out.c3
            .push((base - psi2) * (pre2 * (s2 - q2)) + two_i_pi * (pre2 * (s2 * lks - q2 * lkp)));
        out.c4.push(two_i_pi * (pre2 * (s2 - q2)));

        // order 0
        let pre0 = sign / (4f64.powi(m as i32) * fm * fm);
        out.c5.push((base - C64::new(0.0, 2.0 * hm / PI)) * pre0);
        out.c6.push(two_i_pi * pre0);
    }
    out
}

/// Series coefficients for a medium, truncated at `m_max`.
pub fn series_coefficients(medium: &ElasticMedium, m_max: i64) -> Result<SeriesCoefficients> {
    medium.validate()?;
    if m_max < 0 {
        return Err(Error::Domain(format!("truncation order must be >= 0, got {m_max}")));
    }
    let coeffs = coefficients_for(medium.kp(), medium.ks(), m_max as usize);
    let audit = super::audit_coefficients(&coeffs);
    for miss in audit.mismatched() {
        log::debug!("printed closed form for {miss} differs from the ascending-series derivation");
    }
    Ok(coeffs)
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("series radius must be finite and > 0, got {r}")));
    }
    Ok(())
}

/// Truncated series for `F1(r)`.
pub fn f1_series(coeffs: &SeriesCoefficients, r: f64) -> Result<C64> {
    check_r(r)?;
    let (r2, lr) = (r * r, r.ln());
    let mut pow = r;
    let mut sum = C64::new(0.0, 0.0);
    for (a, b) in coeffs.c1.iter().zip(&coeffs.c2) {
        sum += (a + b * lr) * pow;
        pow *= r2;
    }
    Ok(sum)
}

/// Truncated series for `F2(r)`, constant term included.
pub fn f2_series(coeffs: &SeriesCoefficients, r: f64) -> Result<C64> {
    check_r(r)?;
    let (r2, lr) = (r * r, r.ln());
    let mut pow = r2;
    let mut sum = C64::new(0.0, 0.0);
    for (a, b) in coeffs.c3.iter().zip(&coeffs.c4) {
        sum += (a + b * lr) * pow;
        pow *= r2;
    }
    Ok(sum + f2_constant(coeffs.kp, coeffs.ks))
}

/// Truncated series for `H0(k r)` with `m_max + 1` terms.
pub fn f3_series(k: f64, m_max: usize, r: f64) -> Result<C64> {
    check_r(r)?;
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be > 0, got {k}")));
    }
    let c = coefficients_for(k, k, m_max);
    let z = k * r;
    let (z2, lz) = (z * z, (z / 2.0).ln());
    let mut pow = 1.0;
    let mut sum = C64::new(0.0, 0.0);
    for (a, b) in c.c5.iter().zip(&c.c6) {
        sum += (a + b * lz) * pow;
        pow *= z2;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{f_direct, FKind};

    fn reference() -> SeriesCoefficients {
        series_coefficients(&ElasticMedium::reference(1.0).unwrap(), 20).unwrap()
    }

    #[test]
    fn leading_coefficients() {
        let c = reference();
        assert!((c.c6[0] - C64::new(0.0, 2.0 / PI)).norm() < 1e-16);
        assert!((c.c2[0] - C64::new(0.0, 0.238_732_414_637_843)).norm() < 1e-14);
        assert_eq!(c.c1.len(), 21);
    }

    #[test]
    fn even_families_are_imaginary() {
        let c = reference();
        for m in 0..=20 {
            assert_eq!(c.c2[m].re, 0.0);
            assert_eq!(c.c4[m].re, 0.0);
            assert_eq!(c.c6[m].re, 0.0);
        }
    }

    #[test]
    fn series_reproduce_direct_at_half_shear_wavelength() {
        let c = reference();
        let r = PI;
        let pairs = [
            (f1_series(&c, r).unwrap(), f_direct(FKind::F1, 0.5, 1.0, r).unwrap()),
            (f2_series(&c, r).unwrap(), f_direct(FKind::F2, 0.5, 1.0, r).unwrap()),
            (
                f3_series(1.0, 20, r).unwrap(),
                f_direct(FKind::F3, 0.5, 1.0, r).unwrap(),
            ),
        ];
        for (s, d) in pairs {
            assert!((s - d).norm() <= 1e-10 * d.norm(), "{s} vs {d}");
        }
    }

    #[test]
    fn f1_vanishes_at_origin() {
        let c = reference();
        assert!(f1_series(&c, 1e-12).unwrap().norm() < 1e-10);
    }

    #[test]
    fn negative_truncation_is_rejected() {
        let m = ElasticMedium::reference(1.0).unwrap();
        assert!(series_coefficients(&m, -1).is_err());
        assert!(f1_series(&reference(), 0.0).is_err());
    }
}
