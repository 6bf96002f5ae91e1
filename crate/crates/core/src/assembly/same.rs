//! Same-segment blocks, integrated term by term from the power/log series
//! of the radial factors against the tabulated moments.
//!
//! On one segment `ρ = h |ξ1 - ξ2|` with `h = L/2`, `r = h (ξ1 - ξ2) t`
//! and `r · n = 0`, so only the radial series and three functionals of
//! them are needed:
//!
//! ```text
//! S3(f) = ∫∫ f(ρ),   S5(f) = ∫∫ f(ρ) ξ1 ξ2,   O(f) = ∫∫ f(ρ) (ξ1 - ξ2) ξ1
//! ```

use crate::linalg::{CMat22, C64, I};
use crate::quadrature::{MomentKind, SingularTable};
use crate::specfun::SeriesCoefficients;

use super::kernel::PointKernel;
use super::pairs::{PairBlocks, SIGNS};
use crate::geometry::Segment;

/// `f(ρ) = Σ (a[m] + b[m] ln ρ) ρ^(2m)`.
struct LogSeries {
    a: Vec<C64>,
    b: Vec<C64>,
}

impl LogSeries {
    fn hankel0(coeffs: &SeriesCoefficients, k: f64) -> LogSeries {
        let lk = (k / 2.0).ln();
        let mut pow = 1.0;
        let mut a = Vec::with_capacity(coeffs.c5.len());
        let mut b = Vec::with_capacity(coeffs.c5.len());
        for (c5, c6) in coeffs.c5.iter().zip(&coeffs.c6) {
            a.push((c5 + c6 * lk) * pow);
            b.push(c6 * pow);
            pow *= k * k;
        }
        LogSeries { a, b }
    }

    /// `Σ h^(2m) [(a + b ln h) even[m] + b log[m]]`.
    fn functional(&self, h: f64, table: &SingularTable, even: MomentKind, log: MomentKind) -> C64 {
        let lh = h.ln();
        let mut pow = 1.0;
        let mut sum = C64::new(0.0, 0.0);
        for (m, (a, b)) in self.a.iter().zip(&self.b).enumerate() {
            sum += ((a + b * lh) * table.get(even, m) + b * table.get(log, m)) * pow;
            pow *= h * h;
        }
        sum
    }

    fn s3(&self, h: f64, table: &SingularTable) -> C64 {
        self.functional(h, table, MomentKind::I3, MomentKind::I4)
    }

    fn s5(&self, h: f64, table: &SingularTable) -> C64 {
        self.functional(h, table, MomentKind::I5, MomentKind::I6)
    }

    fn odd(&self, h: f64, table: &SingularTable) -> C64 {
        self.functional(h, table, MomentKind::I1, MomentKind::I2)
    }
}

/// Blocks of the segment paired with itself.
pub(crate) fn same_blocks(
    kernel: &PointKernel,
    coeffs: &SeriesCoefficients,
    table: &SingularTable,
    seg: &Segment,
) -> PairBlocks {
    let m = &kernel.medium;
    let (mu, lambda) = (m.mu, m.lambda);
    let rw2 = m.rho_omega2();
    let q = I * 0.25;
    let len = seg.length;
    let h = len / 2.0;
    let jac = h * h;
    let (t, n) = (seg.tangent, seg.normal);
    let n_rot = CMat22::rot90();
    let eye = CMat22::identity();
    let tt = CMat22::outer(t, t);
    let nn = CMat22::outer(n, n);
    let tn = CMat22::outer(t, n);
    let nt = CMat22::outer(n, t);

    let f1 = LogSeries {
        a: kernel.c1.clone(),
        b: kernel.c2.clone(),
    };
    let f2 = LogSeries {
        a: kernel.c3.clone(),
        b: kernel.c4.clone(),
    };
    let h0s = LogSeries::hankel0(coeffs, kernel.ks);
    let h0p = LogSeries::hankel0(coeffs, kernel.kp);

    let (f1_s3, f1_odd) = (f1.s3(h, table), f1.odd(h, table));
    let f2_s3 = f2.s3(h, table);
    let (gs_s3, gs_s5) = (q * h0s.s3(h, table), q * h0s.s5(h, table));
    let (gp_s3, gp_s5) = (q * h0p.s3(h, table), q * h0p.s5(h, table));

    // ∫∫ E: scalar part α, rank-one part β t tᵀ
    let alpha = gs_s3 / mu - q * f1_s3 / rw2;
    let beta = q * f2_s3 / rw2;
    let e_one = CMat22::diag(alpha) + tt.scale(beta);
    // ∫∫ (2μ E - γ_s I)
    let inner_one = e_one.scale_re(2.0 * mu) - CMat22::diag(gs_s3);
    // g1 r = (i/4) (F1/ρ) h (ξ1 - ξ2) t
    let g1_odd = q * f1_odd * h;

    let mut out = PairBlocks::default();
    for (i1, &k1) in SIGNS.iter().enumerate() {
        out.v[i1] = e_one.scale_re(0.5 * jac);
        out.kp[i1] = (nt.scale(g1_odd * (k1 / 2.0)) - (n_rot * inner_one).scale_re(k1 / len)).scale_re(jac);
        for (i2, &k2) in SIGNS.iter().enumerate() {
            out.k[i1][i2] =
                (tn.scale(-g1_odd * ((k1 - k2) / 4.0)) + (inner_one * n_rot).scale_re(0.5 * k2 / len)).scale_re(jac);
            let mass = ((nn - eye).scale(gs_s3 + gs_s5 * (k1 * k2)) - nn.scale(gp_s3 + gp_s5 * (k1 * k2)))
                .scale_re(0.25 * mu * kernel.ks * kernel.ks);
            let grad = (e_one.scale_re(4.0 * mu * mu) - CMat22::diag(gp_s3 * (4.0 * mu * mu / (lambda + 2.0 * mu))))
                .scale_re(k1 * k2 / (len * len));
            let mixed_x = (nt * n_rot).scale(g1_odd * (-2.0 * mu * (k1 / 2.0) * (k2 / len)));
            let mixed_y = (n_rot * tn).scale(g1_odd * (2.0 * mu * (k2 / 2.0) * (k1 / len)));
            out.w[i1][i2] = (mass + grad + mixed_x + mixed_y).scale_re(jac);
        }
    }
    out
}
