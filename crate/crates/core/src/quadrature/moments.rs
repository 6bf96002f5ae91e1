use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::dd::{Dd, LN2};
use super::gauss::gauss_legendre_dd;

/// The six moment families over `[-1, 1]^2`, with `d = xi1 - xi2`:
///
/// ```text
/// I1 = ∫∫ d^(2m+1) xi1          I2 = ∫∫ d^(2m+1) xi1 ln|d|
/// I3 = ∫∫ d^(2m)                I4 = ∫∫ d^(2m) ln|d|
/// I5 = ∫∫ d^(2m) xi1 xi2        I6 = ∫∫ d^(2m) xi1 xi2 ln|d|
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
}

impl MomentKind {
    pub const ALL: [MomentKind; 6] = [
        MomentKind::I1,
        MomentKind::I2,
        MomentKind::I3,
        MomentKind::I4,
        MomentKind::I5,
        MomentKind::I6,
    ];

    /// 1-based family number.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(k: usize) -> Result<MomentKind> {
        match k {
            1..=6 => Ok(Self::ALL[k - 1]),
            _ => Err(Error::Domain(format!("moment kind must be in 1..=6, got {k}"))),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I{}", self.number())
    }
}

/// `∫_0^2 u^p du`.
fn pow_int(p: u32) -> Dd {
    Dd::from_f64(2.0).powi(p + 1) / Dd::from_f64(p as f64 + 1.0)
}

/// `∫_0^2 u^p ln u du`.
fn log_int(p: u32) -> Dd {
    let q = Dd::from_f64(p as f64 + 1.0);
    Dd::from_f64(2.0).powi(p + 1) * (LN2 / q - Dd::ONE / (q * q))
}

/// Closed form of one moment in double-double precision.
///
/// Integrating along the lines `xi1 - xi2 = ±u` reduces every family to a
/// one-dimensional integral over `u ∈ [0, 2]` against the line weights
/// `∫ 1 = 2 - u`, `∫ xi1 = ±u (2 - u) / 2` and `∫ xi1 xi2 = 2/3 - u + u^3/6`.
pub fn closed_form_moment(m: usize, kind: MomentKind) -> Dd {
    let p = 2 * m as u32;
    let two = Dd::from_f64(2.0);
    let sixth = Dd::ONE / Dd::from_f64(6.0);
    let two_thirds = two / Dd::from_f64(3.0);
    let odd = |f: fn(u32) -> Dd| two * f(p + 2) - f(p + 3);
    let even = |f: fn(u32) -> Dd| two * (two * f(p) - f(p + 1));
    let prod = |f: fn(u32) -> Dd| two * (two_thirds * f(p) - f(p + 1) + sixth * f(p + 3));
    match kind {
        MomentKind::I1 => odd(pow_int),
        MomentKind::I2 => odd(log_int),
        MomentKind::I3 => even(pow_int),
        MomentKind::I4 => even(log_int),
        MomentKind::I5 => prod(pow_int),
        MomentKind::I6 => prod(log_int),
    }
}

const ORACLE_LEVELS: i32 = 90;
const ORACLE_OUTER: usize = 32;
const ORACLE_INNER: usize = 4;

/// Outer nodes in `u = |xi1 - xi2|` with their weights and `ln u`, graded
/// dyadically toward `u = 0`.
struct OracleGrid {
    u: Vec<Dd>,
    w: Vec<Dd>,
    ln_u: Vec<Dd>,
    inner_x: Vec<Dd>,
    inner_w: Vec<Dd>,
}

fn oracle_grid() -> &'static OracleGrid {
    static GRID: OnceLock<OracleGrid> = OnceLock::new();
    GRID.get_or_init(|| {
        let (gx, gw) = gauss_legendre_dd(ORACLE_OUTER).expect("supported order");
        let (inner_x, inner_w) = gauss_legendre_dd(ORACLE_INNER).expect("supported order");
        let mut panels: Vec<(Dd, Dd)> = (0..ORACLE_LEVELS)
            .map(|j| (Dd::ONE.ldexp(-j), Dd::ONE.ldexp(1 - j)))
            .collect();
        panels.push((Dd::ZERO, Dd::ONE.ldexp(-ORACLE_LEVELS)));
        let mut grid = OracleGrid {
            u: Vec::new(),
            w: Vec::new(),
            ln_u: Vec::new(),
            inner_x,
            inner_w,
        };
        for (a, b) in panels {
            let half = (b - a).ldexp(-1);
            let mid = (a + b).ldexp(-1);
            for (x, w) in gx.iter().zip(&gw) {
                let u = mid + half * *x;
                grid.u.push(u);
                grid.w.push(half * *w);
                grid.ln_u.push(u.ln());
            }
        }
        grid
    })
}

/// Oracle values of all six families for `m = 0..=m_max`, in double-double.
///
/// The square is split along the diagonal; on each half the integral is
/// taken over `(u, s)` with `u = |xi1 - xi2|` on dyadic panels toward the
/// singular line and `s` the free coordinate on `[-1, 1 - u]`.
pub fn oracle_moments_dd(m_max: usize) -> [Vec<Dd>; 6] {
    let grid = oracle_grid();
    let mut out: [Vec<Dd>; 6] = Default::default();
    for v in out.iter_mut() {
        v.resize(m_max + 1, Dd::ZERO);
    }
    for k in 0..grid.u.len() {
        let u = grid.u[k];
        let len = Dd::from_f64(2.0) - u;
        let half = len.ldexp(-1);
        let mid = Dd::from_f64(-1.0) + half;
        // line weights, upper half (xi1 = s + u, xi2 = s) and lower half (xi1 = s, xi2 = s + u)
        let (mut w_one, mut w_odd, mut w_prod) = (Dd::ZERO, Dd::ZERO, Dd::ZERO);
        for (x, w) in grid.inner_x.iter().zip(&grid.inner_w) {
            let s = mid + half * *x;
            let wt = half * *w;
            let t = s + u;
            w_one = w_one + wt + wt;
            // d = +u with xi1 = t, and d = -u with xi1 = s
            w_odd = w_odd + wt * (t - s);
            w_prod = w_prod + (wt * s * t).ldexp(1);
        }
        let (wu, ln_u) = (grid.w[k], grid.ln_u[k]);
        let u2 = u * u;
        let mut even = wu;
        let mut odd = wu * u;
        for m in 0..=m_max {
            let e1 = even * w_one;
            let e5 = even * w_prod;
            let o1 = odd * w_odd;
            out[0][m] = out[0][m] + o1;
            out[1][m] = out[1][m] + o1 * ln_u;
            out[2][m] = out[2][m] + e1;
            out[3][m] = out[3][m] + e1 * ln_u;
            out[4][m] = out[4][m] + e5;
            out[5][m] = out[5][m] + e5 * ln_u;
            even = even * u2;
            odd = odd * u2;
        }
    }
    out
}

/// Oracle value of one moment, rounded to `f64`.
pub fn oracle_moment(m: usize, kind: MomentKind) -> Result<f64> {
    if m > 64 {
        return Err(Error::Domain(format!("oracle supports m <= 64, got {m}")));
    }
    Ok(oracle_moments_dd(m)[kind.index()][m].to_f64())
}

/// A table entry that disagrees with the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMismatch {
    pub kind: MomentKind,
    pub m: usize,
    pub table: f64,
    pub oracle: f64,
}

impl fmt::Display for MomentMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]: table {:.17e} vs oracle {:.17e}",
            self.kind, self.m, self.table, self.oracle
        )
    }
}

/// Moment tables `I1..I6` for `m = 0..=M+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularTable {
    pub m_max: usize,
    pub i1: Vec<f64>,
    pub i2: Vec<f64>,
    pub i3: Vec<f64>,
    pub i4: Vec<f64>,
    pub i5: Vec<f64>,
    pub i6: Vec<f64>,
    exact: [Vec<Dd>; 6],
}

/// Absolute tolerance between table and oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

impl SingularTable {
    pub fn len(&self) -> usize {
        self.i1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i1.is_empty()
    }

    pub fn get(&self, kind: MomentKind, m: usize) -> f64 {
        self.family(kind)[m]
    }

    pub fn family(&self, kind: MomentKind) -> &[f64] {
        match kind {
            MomentKind::I1 => &self.i1,
            MomentKind::I2 => &self.i2,
            MomentKind::I3 => &self.i3,
            MomentKind::I4 => &self.i4,
            MomentKind::I5 => &self.i5,
            MomentKind::I6 => &self.i6,
        }
    }

    fn family_mut(&mut self, kind: MomentKind) -> &mut Vec<f64> {
        match kind {
            MomentKind::I1 => &mut self.i1,
            MomentKind::I2 => &mut self.i2,
            MomentKind::I3 => &mut self.i3,
            MomentKind::I4 => &mut self.i4,
            MomentKind::I5 => &mut self.i5,
            MomentKind::I6 => &mut self.i6,
        }
    }

    /// Entry in double-double precision.
    pub fn exact(&self, kind: MomentKind, m: usize) -> Dd {
        self.exact[kind.index()][m]
    }

    /// Overwrites one entry with `value + delta` (fault injection for the
    /// self-test).
    pub fn perturb(&mut self, kind: MomentKind, m: usize, delta: f64) {
        let e = &mut self.exact[kind.index()][m];
        *e = *e + Dd::from_f64(delta);
        let v = e.to_f64();
        self.family_mut(kind)[m] = v;
    }

    /// Entries whose double-double value is farther than
    /// [`ORACLE_TOLERANCE`] from the oracle, or whose `f64` value is not
    /// the rounded double-double value.
    pub fn verify(&self) -> Vec<MomentMismatch> {
        let oracle = oracle_moments_dd(self.len() - 1);
        let mut bad = Vec::new();
        for kind in MomentKind::ALL {
            for m in 0..self.len() {
                let ex = self.exact(kind, m);
                let or = oracle[kind.index()][m];
                let off = (ex - or).abs().to_f64() > ORACLE_TOLERANCE;
                if off || self.get(kind, m) != ex.to_f64() {
                    bad.push(MomentMismatch {
                        kind,
                        m,
                        table: self.get(kind, m),
                        oracle: or.to_f64(),
                    });
                }
            }
        }
        bad
    }
}

/// Builds the table for truncation order `M` (entries `0..=M+1`) from the
/// closed forms, checks it against the oracle and falls back to oracle
/// values for any entry that disagrees.
pub fn singular_table(m_max: usize) -> SingularTable {
    let n = m_max + 2;
    let mut exact: [Vec<Dd>; 6] = Default::default();
    for kind in MomentKind::ALL {
        exact[kind.index()] = (0..n).map(|m| closed_form_moment(m, kind)).collect();
    }
    let oracle = oracle_moments_dd(n - 1);
    for kind in MomentKind::ALL {
        for m in 0..n {
            let (c, o) = (exact[kind.index()][m], oracle[kind.index()][m]);
            if (c - o).abs().to_f64() > ORACLE_TOLERANCE {
                log::warn!(
                    "{kind}[{m}] closed form {} disagrees with oracle {}",
                    c.to_f64(),
                    o.to_f64()
                );
                exact[kind.index()][m] = o;
            }
        }
    }
    let rounded = |k: usize| exact[k].iter().map(|v| v.to_f64()).collect::<Vec<_>>();
    SingularTable {
        m_max,
        i1: rounded(0),
        i2: rounded(1),
        i3: rounded(2),
        i4: rounded(3),
        i5: rounded(4),
        i6: rounded(5),
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_values() {
        let t = singular_table(20);
        assert_eq!(t.len(), 22);
        assert_eq!(t.i3[0], 4.0);
        assert!((t.i4[0] - (4.0 * std::f64::consts::LN_2 - 6.0)).abs() < 1e-15);
        assert!(t.i5[0].abs() < 1e-30);
        assert!((t.i1[0] - 4.0 / 3.0).abs() < 1e-16);
        assert!((t.i3[1] - 8.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_matches_closed_forms_in_double_double() {
        let t = singular_table(20);
        assert!(t.verify().is_empty());
    }

    #[test]
    fn oracle_single_entries() {
        assert!((oracle_moment(0, MomentKind::I4).unwrap() + 3.227_411_277_760_219).abs() < 1e-15);
        assert!(oracle_moment(0, MomentKind::I5).unwrap().abs() < 1e-25);
        assert!((oracle_moment(1, MomentKind::I3).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert!(MomentKind::from_number(7).is_err());
    }

    #[test]
    fn oracle_converges_with_grading() {
        // the log families are finite: the innermost panel contributes below 1e-25
        let grid = oracle_grid();
        let tail: f64 = grid
            .u
            .iter()
            .zip(&grid.w)
            .zip(&grid.ln_u)
            .filter(|((u, _), _)| u.to_f64() < 2f64.powi(-ORACLE_LEVELS + 1))
            .map(|((_, w), l)| (*w * *l).abs().to_f64())
            .sum();
        assert!(tail < 1e-24, "tail {tail}");
    }

    #[test]
    fn third_family_positive() {
        let t = singular_table(20);
        assert!(t.i3.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn perturbation_is_reported() {
        let mut t = singular_table(5);
        t.perturb(MomentKind::I6, 3, 1e-6);
        let bad = t.verify();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].kind, bad[0].m), (MomentKind::I6, 3));
        assert!(bad[0].to_string().starts_with("I6[3]"));
    }
}
