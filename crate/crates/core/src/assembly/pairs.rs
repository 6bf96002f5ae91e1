//! Element-pair integrals of the regularized operators for segments that
//! are not identical, by tensor Gauss quadrature on the reference square.
//!
//! A pair is the test segment `a` (variable `x`, reference `ξ1`, hat sign
//! `k1`) and the trial segment `b` (variable `y`, reference `ξ2`, hat sign
//! `k2`). The hat restricted to a segment is `(1 + kξ)/2`, `k = -1` for the
//! start node and `k = +1` for the end node, so `dφ/ds = k/L`.

use crate::geometry::{BoundaryMesh, Segment};
use crate::linalg::{CMat22, CVec2, Vec2, C64, I};

use super::kernel::PointKernel;

/// Number of kernel quantities accumulated per quadrature point.
const FIELDS: usize = 10;
const ALPHA: usize = 0;
const BXX: usize = 1;
const BXY: usize = 2;
const BYY: usize = 3;
const GS: usize = 4;
const GP: usize = 5;
const DSB: usize = 6;
const DSA: usize = 7;
const G1X: usize = 8;
const G1Y: usize = 9;

/// Weighted sums of the kernel quantities against `1, ξ1, ξ2, ξ1 ξ2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Accumulator {
    s: [[C64; FIELDS]; 4],
}

impl Default for Accumulator {
    fn default() -> Self {
        Accumulator {
            s: [[C64::new(0.0, 0.0); FIELDS]; 4],
        }
    }
}

/// Quadrature points on `[-1, 1]^2` as `(ξ1, ξ2, weight)`.
pub(crate) type SquareRule = Vec<(f64, f64, f64)>;

pub(crate) fn tensor_rule(order: usize) -> SquareRule {
    let g = crate::quadrature::gauss_legendre(order).expect("validated order");
    let mut pts = Vec::with_capacity(order * order);
    for (x1, w1) in g.points() {
        for (x2, w2) in g.points() {
            pts.push((x1, x2, w1 * w2));
        }
    }
    pts
}

/// Rule for a pair of segments meeting at the corner `(c1, c2)` of the
/// square. In corner coordinates `s ∈ [0, 1]^2` each half triangle is
/// mapped by a Duffy substitution (`s = (u, u v)` and `s = (u v, u)`), which
/// absorbs the `1/ρ` behaviour of the double-layer terms into the Jacobian;
/// `u` is graded dyadically over `depth` levels for the remaining `ln u`.
pub(crate) fn corner_rule(order: usize, depth: u32, c1: f64, c2: f64) -> SquareRule {
    let g = crate::quadrature::gauss_legendre(order).expect("validated order");
    let mut panels: Vec<(f64, f64)> = (0..depth)
        .map(|j| (0.5f64.powi(j as i32 + 1), 0.5f64.powi(j as i32)))
        .collect();
    panels.push((0.0, 0.5f64.powi(depth as i32)));
    let mut pts = Vec::with_capacity(2 * panels.len() * order * order);
    for (lo, hi) in panels {
        let hu = (hi - lo) / 2.0;
        for (xu, wu) in g.points() {
            let u = lo + hu * (1.0 + xu);
            for (xv, wv) in g.points() {
                let v = (1.0 + xv) / 2.0;
                // ξ = c (1 - 2s), Jacobian 4; Duffy Jacobian u
                let w = 4.0 * u * hu * wu * 0.5 * wv;
                for (s1, s2) in [(u, u * v), (u * v, u)] {
                    pts.push((c1 * (1.0 - 2.0 * s1), c2 * (1.0 - 2.0 * s2), w));
                }
            }
        }
    }
    pts
}

impl Accumulator {
    /// Integrates the kernel quantities over the segment pair `(a, b)`.
    pub(crate) fn integrate(
        kernel: &PointKernel,
        mesh: &BoundaryMesh,
        a: &Segment,
        b: &Segment,
        rule: &SquareRule,
    ) -> Accumulator {
        let (xa, xb) = (mesh.node(a.start), mesh.node(b.start));
        let (da, db) = (a.tangent.scale(a.length / 2.0), b.tangent.scale(b.length / 2.0));
        let (ca, cb) = (xa + da, xb + db);
        let q = I * 0.25;
        let mut acc = Accumulator::default();
        for &(x1, x2, w) in rule {
            let x = ca + da.scale(x1);
            let y = cb + db.scale(x2);
            let r = x - y;
            let rho = r.norm();
            let rad = kernel.radial(rho);
            let (alpha, beta) = kernel.tensor_parts(&rad);
            let rh = r.scale(1.0 / rho);
            let ds = q * rad.h1s_over;
            let g1 = q * rad.f1_over;
            let vals = [
                alpha,
                beta * (rh.x * rh.x),
                beta * (rh.x * rh.y),
                beta * (rh.y * rh.y),
                q * rad.h0s,
                q * rad.h0p,
                ds * r.dot(b.normal),
                ds * r.dot(a.normal),
                g1 * r.x,
                g1 * r.y,
            ];
            let ws = [w, w * x1, w * x2, w * x1 * x2];
            for (row, &wk) in acc.s.iter_mut().zip(&ws) {
                for (dst, v) in row.iter_mut().zip(&vals) {
                    *dst += v * wk;
                }
            }
        }
        acc
    }

    /// The same integrals with the roles of the two segments exchanged.
    pub(crate) fn swapped(&self) -> Accumulator {
        let mut out = Accumulator {
            s: [self.s[0], self.s[2], self.s[1], self.s[3]],
        };
        for row in out.s.iter_mut() {
            let (dsb, dsa) = (row[DSB], row[DSA]);
            row[DSB] = -dsa;
            row[DSA] = -dsb;
            row[G1X] = -row[G1X];
            row[G1Y] = -row[G1Y];
        }
        out
    }

    fn combine(&self, f: usize, c: [f64; 4]) -> C64 {
        self.s[0][f] * c[0] + self.s[1][f] * c[1] + self.s[2][f] * c[2] + self.s[3][f] * c[3]
    }
}

/// Hat-sign index: 0 for the start node (`k = -1`), 1 for the end node.
pub(crate) const SIGNS: [f64; 2] = [-1.0, 1.0];

/// All Galerkin blocks of one ordered segment pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct PairBlocks {
    /// Single layer, indexed by the test hat sign.
    pub v: [CMat22; 2],
    /// Adjoint double layer, indexed by the test hat sign.
    pub kp: [CMat22; 2],
    /// Double layer, `[test][trial]`.
    pub k: [[CMat22; 2]; 2],
    /// Hypersingular, `[test][trial]`.
    pub w: [[CMat22; 2]; 2],
}

/// `a bᵀ` for a complex `a` and real `b`.
pub(crate) fn outer_cr(a: CVec2, b: Vec2) -> CMat22 {
    CMat22([[a.0[0] * b.x, a.0[0] * b.y], [a.0[1] * b.x, a.0[1] * b.y]])
}

/// `a bᵀ` for a real `a` and complex `b`.
pub(crate) fn outer_rc(a: Vec2, b: CVec2) -> CMat22 {
    CMat22([[b.0[0] * a.x, b.0[1] * a.x], [b.0[0] * a.y, b.0[1] * a.y]])
}

/// Assembles the blocks of the ordered pair from its accumulator.
pub(crate) fn pair_blocks(kernel: &PointKernel, a: &Segment, b: &Segment, acc: &Accumulator) -> PairBlocks {
    let m = &kernel.medium;
    let (mu, lambda) = (m.mu, m.lambda);
    let ks2 = kernel.ks * kernel.ks;
    let jac = a.length * b.length / 4.0;
    let n_rot = CMat22::rot90();
    let eye = CMat22::identity();
    let (na, nb, tb) = (a.normal, b.normal, b.tangent);
    let nanb = CMat22::outer(na, nb);
    let frame = nanb - eye.scale_re(na.dot(nb)) + n_rot.scale_re(na.dot(tb));

    let tensor = |c: [f64; 4]| {
        let alpha = acc.combine(ALPHA, c);
        let xy = acc.combine(BXY, c);
        CMat22([[alpha + acc.combine(BXX, c), xy], [xy, alpha + acc.combine(BYY, c)]])
    };
    let vec_g1 = |c: [f64; 4]| CVec2::new(acc.combine(G1X, c), acc.combine(G1Y, c));

    let one = [1.0, 0.0, 0.0, 0.0];
    let e_one = tensor(one);
    let gs_one = acc.combine(GS, one);
    let gp_one = acc.combine(GP, one);
    let inner_one = e_one.scale_re(2.0 * mu) - CMat22::diag(gs_one);

    let mut out = PairBlocks::default();
    for (i1, &k1) in SIGNS.iter().enumerate() {
        let phi_i = [0.5, 0.5 * k1, 0.0, 0.0];
        let e_i = tensor(phi_i);
        let gs_i = acc.combine(GS, phi_i);
        let g1_i = vec_g1(phi_i);
        out.v[i1] = e_i.scale_re(jac);
        out.kp[i1] = (CMat22::diag(-acc.combine(DSA, phi_i)) + outer_rc(na, g1_i)
            - (n_rot * inner_one).scale_re(k1 / a.length))
        .scale_re(jac);
        let inner_i = e_i.scale_re(2.0 * mu) - CMat22::diag(gs_i);
        for (i2, &k2) in SIGNS.iter().enumerate() {
            let phi_ij = [0.25, 0.25 * k1, 0.25 * k2, 0.25 * k1 * k2];
            let phi_j = [0.5, 0.0, 0.5 * k2, 0.0];
            let g1_ij = vec_g1(phi_ij);
            out.k[i1][i2] = (CMat22::diag(acc.combine(DSB, phi_ij)) - outer_cr(g1_ij, nb)
                + (inner_i * n_rot).scale_re(k2 / b.length))
            .scale_re(jac);
            let mass = (frame.scale(acc.combine(GS, phi_ij)) - nanb.scale(acc.combine(GP, phi_ij))).scale_re(mu * ks2);
            let grad = (e_one.scale_re(4.0 * mu * mu) - CMat22::diag(gp_one * (4.0 * mu * mu / (lambda + 2.0 * mu))))
                .scale_re(k1 * k2 / (a.length * b.length));
            let mixed_x = (outer_rc(na, g1_i) * n_rot).scale_re(-2.0 * mu * k2 / b.length);
            let mixed_y = (n_rot * outer_cr(vec_g1(phi_j), nb)).scale_re(-2.0 * mu * k1 / a.length);
            out.w[i1][i2] = (mass + grad + mixed_x + mixed_y).scale_re(jac);
        }
    }
    out
}
