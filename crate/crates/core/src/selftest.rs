//! Built-in invariant suites: special functions, moment tables, the point
//! kernel and the mass matrices. Failures are collected as report content.

use std::fmt;

use crate::assembly::{assemble_mass, PointKernel};
use crate::geometry::{sample_curve, CurveSpec};
use crate::linalg::{CMat22, Vec2, C64};
use crate::medium::ElasticMedium;
use crate::quadrature::{singular_table, MomentKind, SingularTable};
use crate::specfun::{coefficients_for, f1_series, f2_series, f3_series, f_direct, FKind};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<16} {}/{} checks passed",
            self.name,
            self.checks - self.failures.len(),
            self.checks
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// Fault injection for the moment suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPerturbation {
    pub kind: MomentKind,
    pub m: usize,
    pub delta: f64,
}

/// Extra series check at half a shear wavelength for one medium and
/// truncation order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesCheck {
    pub medium: ElasticMedium,
    pub m_max: usize,
}

impl SeriesCheck {
    /// Relative tolerance expected at this truncation order, if any.
    pub fn tolerance(&self) -> Option<f64> {
        match self.m_max {
            m if m >= 20 => Some(1e-10),
            m if m >= 15 => Some(1e-8),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SelftestOptions {
    pub perturb: Option<MomentPerturbation>,
    pub series: Option<SeriesCheck>,
}

/// Series order used by the suites.
const M_MAX: usize = 20;

pub fn run_selftest(options: &SelftestOptions) -> Vec<SuiteReport> {
    let mut table = singular_table(M_MAX);
    if let Some(p) = options.perturb {
        if p.m < table.len() {
            table.perturb(p.kind, p.m, p.delta);
        }
    }
    vec![
        special_functions(options.series),
        moment_table(&table),
        kernel(),
        mass_matrices(),
    ]
}

fn relative(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn special_functions(extra: Option<SeriesCheck>) -> SuiteReport {
    let mut suite = SuiteReport::new("special-functions");
    if let Some(check) = extra {
        let (kp, ks) = (check.medium.kp(), check.medium.ks());
        let r = std::f64::consts::PI / ks;
        let coeffs = coefficients_for(kp, ks, check.m_max);
        let pairs = [
            (FKind::F1, f1_series(&coeffs, r)),
            (FKind::F2, f2_series(&coeffs, r)),
            (FKind::F3, f3_series(ks, check.m_max, r)),
        ];
        for (kind, series) in pairs {
            let err = match (series, f_direct(kind, kp, ks, r)) {
                (Ok(s), Ok(d)) => relative(s, d),
                _ => f64::INFINITY,
            };
            log::info!("{kind:?} at r = pi/ks, M = {}: relative error {err:.3e}", check.m_max);
            if let Some(tol) = check.tolerance() {
                suite.check(err <= tol, || {
                    format!(
                        "{kind:?} at r=pi/ks with M={}: relative error {err:.2e} above {tol:e}",
                        check.m_max
                    )
                });
            }
        }
    }
    for omega in [0.5, 1.0, 2.0] {
        let m = ElasticMedium::reference(omega).expect("reference medium");
        let (kp, ks) = (m.kp(), m.ks());
        let coeffs = coefficients_for(kp, ks, M_MAX);
        for r in [0.05, 0.5, std::f64::consts::PI / ks] {
            let pairs = [
                (FKind::F1, f1_series(&coeffs, r)),
                (FKind::F2, f2_series(&coeffs, r)),
                (FKind::F3, f3_series(ks, M_MAX, r)),
            ];
            for (kind, series) in pairs {
                let direct = f_direct(kind, kp, ks, r);
                let err = match (series, direct) {
                    (Ok(s), Ok(d)) => relative(s, d),
                    _ => f64::INFINITY,
                };
                suite.check(err <= 1e-10, || {
                    format!("{kind:?} at omega={omega}, r={r:.4}: series vs direct relative error {err:.2e}")
                });
            }
        }
    }
    suite
}

fn moment_table(table: &SingularTable) -> SuiteReport {
    let mut suite = SuiteReport::new("moment-table");
    let bad = table.verify();
    suite.checks += 6 * table.len();
    suite.failures.extend(bad.iter().map(|m| format!("{m}")));
    let forced = [
        (MomentKind::I3, 4.0),
        (MomentKind::I4, 4.0 * std::f64::consts::LN_2 - 6.0),
        (MomentKind::I5, 0.0),
    ];
    for (kind, value) in forced {
        let got = table.get(kind, 0);
        suite.check((got - value).abs() <= 1e-13, || {
            format!("{kind}[0] = {got:.17e}, expected {value:.17e}")
        });
    }
    suite
}

/// Deterministic point pairs spread over `[-2, 2]²` (additive recurrence
/// with irrational steps).
fn sample_pairs(count: usize) -> Vec<(Vec2, Vec2)> {
    let steps = [
        0.754_877_666_246_692_7,
        0.569_840_290_998_053_3,
        0.362_046_445_624_181_5,
        0.183_416_475_716_028_1,
    ];
    (1..=count)
        .map(|k| {
            let c: Vec<f64> = steps.iter().map(|s| 4.0 * ((k as f64 * s).fract()) - 2.0).collect();
            (Vec2::new(c[0], c[1]), Vec2::new(c[2], c[3]))
        })
        .filter(|(x, y)| x.dist(*y) > 1e-3)
        .collect()
}

/// Relative residual of `μΔu + (λ+μ)∇(∇·u) + ρω²u` for the columns of
/// `E(·, y)` at `x`, by central differences of step `h`.
pub fn navier_residual(kernel: &PointKernel, x: Vec2, y: Vec2, h: f64) -> crate::Result<f64> {
    let m = kernel.medium;
    let e = |dx: f64, dy: f64| kernel.tensor(Vec2::new(x.x + dx, x.y + dy), y);
    let c = e(0.0, 0.0)?;
    let (xp, xm, yp, ym) = (e(h, 0.0)?, e(-h, 0.0)?, e(0.0, h)?, e(0.0, -h)?);
    let (pp, pm, mp, mm) = (e(h, h)?, e(h, -h)?, e(-h, h)?, e(-h, -h)?);
    let h2 = h * h;
    let mut worst: f64 = 0.0;
    for col in 0..2 {
        let at = |mat: &CMat22, row: usize| mat.0[row][col];
        let dxx = |r| (at(&xp, r) - at(&c, r) * 2.0 + at(&xm, r)) / h2;
        let dyy = |r| (at(&yp, r) - at(&c, r) * 2.0 + at(&ym, r)) / h2;
        let dxy = |r| (at(&pp, r) - at(&pm, r) - at(&mp, r) + at(&mm, r)) / (4.0 * h2);
        let grad_div = [dxx(0) + dxy(1), dxy(0) + dyy(1)];
        let mut num = 0.0;
        let mut den = 0.0;
        for row in 0..2 {
            let lap = dxx(row) + dyy(row);
            let inertia = at(&c, row) * m.rho_omega2();
            let res = lap * m.mu + grad_div[row] * (m.lambda + m.mu) + inertia;
            num += res.norm_sqr();
            den += inertia.norm_sqr();
        }
        worst = worst.max((num / den).sqrt());
    }
    Ok(worst)
}

fn kernel() -> SuiteReport {
    let mut suite = SuiteReport::new("kernel");
    for (lambda, mu, omega) in [(2.0, 1.0, 1.0), (2.0, 1.0, 3.0), (100.0, 1.0, 3.0)] {
        let medium = ElasticMedium::new(lambda, mu, 1.0, omega).expect("valid medium");
        let kernel = PointKernel::new(medium, &coefficients_for(medium.kp(), medium.ks(), M_MAX));
        for (x, y) in sample_pairs(40) {
            let asym = match (kernel.tensor(x, y), kernel.tensor(y, x)) {
                (Ok(a), Ok(b)) => (a - b.transpose()).max_abs() / a.max_abs(),
                _ => f64::INFINITY,
            };
            suite.check(asym <= 1e-14, || {
                format!("E(x,y) != E(y,x)^T at x={x:?}, y={y:?} (lambda={lambda}, omega={omega}): {asym:.2e}")
            });
        }
        for r in [0.5, 1.0, 2.0] {
            for angle in [0.3, 2.0] {
                let y = Vec2::new(0.1, -0.2);
                let x = Vec2::new(y.x + r * f64::cos(angle), y.y + r * f64::sin(angle));
                let res = navier_residual(&kernel, x, y, 2.5e-4).unwrap_or(f64::INFINITY);
                suite.check(res <= 1e-4, || {
                    format!("Navier residual {res:.2e} at r={r} (lambda={lambda}, omega={omega})")
                });
            }
        }
    }
    suite
}

fn mass_matrices() -> SuiteReport {
    let mut suite = SuiteReport::new("mass-matrices");
    for curve in [
        CurveSpec::Kite,
        CurveSpec::right_triangle(),
        CurveSpec::kite_with_ellipse(),
    ] {
        let mesh = match sample_curve(&curve, 40) {
            Ok(mesh) => mesh,
            Err(e) => {
                suite.check(false, || format!("sampling {curve:?}: {e}"));
                continue;
            }
        };
        let (hat_hat, hat_const) = assemble_mass(&mesh);
        let dim = hat_hat.dim();
        let total =
            |m: &crate::BlockMatrix| -> f64 { (0..dim).map(|i| (0..dim).map(|j| m.get(i, j).re).sum::<f64>()).sum() };
        let perimeter = 2.0 * mesh.perimeter();
        for (name, m) in [("hat-hat", &hat_hat), ("hat-constant", &hat_const)] {
            let sum = total(m);
            suite.check((sum - perimeter).abs() <= 1e-12 * perimeter, || {
                format!("{name} entries sum to {sum}, expected twice the perimeter {perimeter}")
            });
        }
        let symmetric = (0..dim).all(|i| (0..dim).all(|j| hat_hat.get(i, j) == hat_hat.get(j, i)));
        suite.check(symmetric, || "hat-hat mass matrix is not symmetric".into());
    }
    suite
}
