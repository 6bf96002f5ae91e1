//! Pointwise evaluation of the elastic fundamental tensor and its
//! tractions.
//!
//! With `r = x - y`, `ρ = |r|`, `γ_k = (i/4) H0(k ρ)` and `R = γ_s - γ_p`,
//!
//! ```text
//! E(x, y) = γ_s/μ I + ∇∇ᵀR / (ρ ω²)
//!         = (i/4μ) H0(k_s ρ) I - (i/4ρω²) F1/ρ I + (i/4ρω²) F2/ρ² r rᵀ
//! ```

use crate::error::{Error, Result};
use crate::linalg::{CMat22, Vec2, C64, I};
use crate::medium::ElasticMedium;
use crate::specfun::{hankel01, SeriesCoefficients};

/// Below this value of `k_s ρ` the combinations `F1` and `F2` are summed
/// from their power/log series instead of differencing Hankel functions.
pub const SERIES_SWITCH: f64 = 1.0;

/// Radial factors of the kernel at one distance.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Radial {
    /// `H0(k_s ρ)`
    pub h0s: C64,
    /// `H0(k_p ρ)`
    pub h0p: C64,
    /// `k_s H1(k_s ρ) / ρ`
    pub h1s_over: C64,
    /// `F1(ρ) / ρ`
    pub f1_over: C64,
    /// `F2(ρ)`
    pub f2: C64,
}

/// Everything needed to evaluate the kernel for one medium.
#[derive(Debug, Clone)]
pub struct PointKernel {
    pub medium: ElasticMedium,
    pub kp: f64,
    pub ks: f64,
    /// `F1/ρ = Σ (c1[m] + c2[m] ln ρ) ρ^(2m)`
    pub(crate) c1: Vec<C64>,
    pub(crate) c2: Vec<C64>,
    /// `F2 = Σ (c3[m] + c4[m] ln ρ) ρ^(2m)` with the constant term folded in.
    pub(crate) c3: Vec<C64>,
    pub(crate) c4: Vec<C64>,
}

impl PointKernel {
    pub fn new(medium: ElasticMedium, coeffs: &SeriesCoefficients) -> PointKernel {
        let mut c3 = vec![crate::specfun::f2_constant(coeffs.kp, coeffs.ks)];
        c3.extend_from_slice(&coeffs.c3);
        let mut c4 = vec![C64::new(0.0, 0.0)];
        c4.extend_from_slice(&coeffs.c4);
        PointKernel {
            medium,
            kp: coeffs.kp,
            ks: coeffs.ks,
            c1: coeffs.c1.clone(),
            c2: coeffs.c2.clone(),
            c3,
            c4,
        }
    }

    pub(crate) fn radial(&self, rho: f64) -> Radial {
        let (h0s, h1s) = hankel01(self.ks * rho);
        let (h0p, h1p) = hankel01(self.kp * rho);
        let h1s_over = h1s * (self.ks / rho);
        let (f1_over, f2) = if self.ks * rho < SERIES_SWITCH {
            let (r2, lr) = (rho * rho, rho.ln());
            let mut pow = 1.0;
            let mut f1 = C64::new(0.0, 0.0);
            for (a, b) in self.c1.iter().zip(&self.c2) {
                f1 += (a + b * lr) * pow;
                pow *= r2;
            }
            pow = 1.0;
            let mut f2 = C64::new(0.0, 0.0);
            for (a, b) in self.c3.iter().zip(&self.c4) {
                f2 += (a + b * lr) * pow;
                pow *= r2;
            }
            (f1, f2)
        } else {
            let f1 = (h1s * self.ks - h1p * self.kp) / rho;
            // k² H2(kρ) = 2k H1(kρ)/ρ - k² H0(kρ)
            let f2 = f1 * 2.0 - (h0s * (self.ks * self.ks) - h0p * (self.kp * self.kp));
            (f1, f2)
        };
        Radial {
            h0s,
            h0p,
            h1s_over,
            f1_over,
            f2,
        }
    }

    /// Scalar and rank-one parts `(α, β)` of `E = α I + β r̂ r̂ᵀ`.
    pub(crate) fn tensor_parts(&self, rad: &Radial) -> (C64, C64) {
        let rw2 = self.medium.rho_omega2();
        let q = I * 0.25;
        (q * rad.h0s / self.medium.mu - q * rad.f1_over / rw2, q * rad.f2 / rw2)
    }

    fn check(x: Vec2, y: Vec2) -> Result<(Vec2, f64)> {
        let r = x - y;
        let rho = r.norm();
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::CoincidentPoints { x: x.x, y: x.y });
        }
        Ok((r, rho))
    }

    /// The fundamental tensor `E(x, y)`.
    pub fn tensor(&self, x: Vec2, y: Vec2) -> Result<CMat22> {
        let (r, rho) = Self::check(x, y)?;
        let (alpha, beta) = self.tensor_parts(&self.radial(rho));
        let rh = r.scale(1.0 / rho);
        Ok(CMat22::diag(alpha) + CMat22::outer(rh, rh).scale(beta))
    }

    /// `∂E_ab/∂r_c` for `r = x - y`.
    fn gradient(&self, r: Vec2, rho: f64) -> [[[C64; 2]; 2]; 2] {
        let (kp, ks) = (self.kp, self.ks);
        let (mu, rw2) = (self.medium.mu, self.medium.rho_omega2());
        let (h0s, h1s) = hankel01(ks * rho);
        let (h0p, h1p) = hankel01(kp * rho);
        let q = I * 0.25;
        let f1 = h1s * ks - h1p * kp;
        let f2 = f1 * (2.0 / rho) - (h0s * (ks * ks) - h0p * (kp * kp));
        // d/dρ of F1 and F2
        let df1 = h0s * (ks * ks) - h0p * (kp * kp) - f1 / rho;
        let df2 = h1s * ks.powi(3) - h1p * kp.powi(3) - f2 * (2.0 / rho);
        // E = A(ρ) I + B(ρ) r rᵀ
        let da = q * (-h1s * ks) / mu - q / rw2 * (df1 / rho - f1 / (rho * rho));
        let b = q * f2 / (rw2 * rho * rho);
        let db = q / rw2 * (df2 / (rho * rho) - f2 * (2.0 / rho.powi(3)));
        let rv = [r.x, r.y];
        let mut g = [[[C64::new(0.0, 0.0); 2]; 2]; 2];
        for a in 0..2 {
            for bb in 0..2 {
                for c in 0..2 {
                    let mut v = db * (rv[c] * rv[a] * rv[bb] / rho);
                    if a == bb {
                        v += da * (rv[c] / rho);
                    }
                    if a == c {
                        v += b * rv[bb];
                    }
                    if bb == c {
                        v += b * rv[a];
                    }
                    g[a][bb][c] = v;
                }
            }
        }
        g
    }

    /// `T_y E(x, y)`: the traction, with respect to `y` and normal `n_y`,
    /// of each column of `E(x, ·)`.
    pub fn traction_y(&self, x: Vec2, y: Vec2, n_y: Vec2) -> Result<CMat22> {
        let (r, rho) = Self::check(x, y)?;
        // ∂/∂y = -∂/∂r
        let g = self.gradient(r, rho);
        Ok(self.traction_from_gradient(&g, n_y).scale(C64::new(-1.0, 0.0)))
    }

    /// `T_x E(x, y)`: the traction, with respect to `x` and normal `n_x`,
    /// of each column of `E(·, y)`.
    pub fn traction_x(&self, x: Vec2, y: Vec2, n_x: Vec2) -> Result<CMat22> {
        let (r, rho) = Self::check(x, y)?;
        let g = self.gradient(r, rho);
        Ok(self.traction_from_gradient(&g, n_x))
    }

    /// Column `j` of the result is `λ div(v) n + μ (∇v + ∇vᵀ) n` for the
    /// field `v_a = E_aj` with `∂v_a/∂z_c = g[a][j][c]`.
    fn traction_from_gradient(&self, g: &[[[C64; 2]; 2]; 2], n: Vec2) -> CMat22 {
        let (lambda, mu) = (self.medium.lambda, self.medium.mu);
        let nv = [n.x, n.y];
        let mut t = CMat22::ZERO;
        for j in 0..2 {
            let div = g[0][j][0] + g[1][j][1];
            for a in 0..2 {
                let mut v = div * (lambda * nv[a]);
                for c in 0..2 {
                    v += (g[a][j][c] + g[c][j][a]) * (mu * nv[c]);
                }
                t.0[a][j] = v;
            }
        }
        t
    }
}
