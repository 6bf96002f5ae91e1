//! Truncated power/log series of the Hankel combinations against direct
//! evaluation at half a shear wavelength, for increasing truncation order
//! and increasing frequency.

use std::f64::consts::PI;

use elastic_bem::specfun::{coefficients_for, f1_series, f2_series, f3_series, f_direct, FKind};
use elastic_bem::ElasticMedium;

fn errors(medium: &ElasticMedium, m_max: usize) -> elastic_bem::Result<[f64; 3]> {
    let (kp, ks) = (medium.kp(), medium.ks());
    let r = PI / ks;
    let coeffs = coefficients_for(kp, ks, m_max);
    let abs = |s: elastic_bem::C64, kind| f_direct(kind, kp, ks, r).map(|d| (s - d).norm());
    Ok([
        abs(f1_series(&coeffs, r)?, FKind::F1)?,
        abs(f2_series(&coeffs, r)?, FKind::F2)?,
        abs(f3_series(ks, m_max, r)?, FKind::F3)?,
    ])
}

fn main() -> elastic_bem::Result<()> {
    let medium = ElasticMedium::reference(1.0)?;
    println!("omega = 1, r = pi/ks: absolute error against direct evaluation");
    println!("{:>4} {:>11} {:>11} {:>11}", "M", "F1", "F2", "F3");
    for m_max in [5, 10, 15, 20, 25] {
        let [e1, e2, e3] = errors(&medium, m_max)?;
        println!("{m_max:>4} {e1:>11.3e} {e2:>11.3e} {e3:>11.3e}");
    }
    println!("\nM = 20, r = pi/ks, growing frequency");
    println!("{:>8} {:>11} {:>11} {:>11}", "omega", "F1", "F2", "F3");
    for k in [1, 5, 9, 13, 17, 21] {
        let omega = k as f64 * PI;
        let [e1, e2, e3] = errors(&medium.with_omega(omega)?, 20)?;
        println!("{omega:>8.3} {e1:>11.3e} {e2:>11.3e} {e3:>11.3e}");
    }
    Ok(())
}
