//! Dense LU with partial pivoting (backed by `faer`), with a pivot floor and
//! a Hager-type 1-norm condition estimate.

use faer::prelude::Solve;
use faer::Mat;

use crate::error::{Error, Result};
use crate::linalg::{BlockMatrix, C64};

/// Pivots smaller than this multiple of `‖A‖₁` are treated as singular.
pub const PIVOT_FLOOR: f64 = 1e-13;

/// Factorization of a block matrix.
pub struct LuFactors {
    lu: faer::linalg::solvers::PartialPivLu<C64>,
    dim: usize,
    norm_one: f64,
}

impl std::fmt::Debug for LuFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LuFactors")
            .field("dim", &self.dim)
            .field("norm_one", &self.norm_one)
            .finish()
    }
}

fn to_column(v: &[C64]) -> Mat<C64> {
    Mat::from_fn(v.len(), 1, |i, _| v[i])
}

fn from_column(m: &Mat<C64>) -> Vec<C64> {
    (0..m.nrows()).map(|i| m[(i, 0)]).collect()
}

impl LuFactors {
    pub fn factor(a: &BlockMatrix) -> Result<LuFactors> {
        if !a.is_finite() {
            return Err(Error::Domain("system matrix has non-finite entries".into()));
        }
        let dim = a.dim();
        let data = a.as_slice();
        let mat = Mat::from_fn(dim, dim, |i, j| data[i * dim + j]);
        let lu = mat.partial_piv_lu();
        let norm_one = a.norm_one();
        let threshold = PIVOT_FLOOR * norm_one;
        let u = lu.U();
        for k in 0..dim {
            let pivot = u[(k, k)].norm();
            if !(pivot >= threshold) || dim == 0 {
                return Err(Error::SingularMatrix {
                    column: k,
                    pivot,
                    threshold,
                });
            }
        }
        Ok(LuFactors { lu, dim, norm_one })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        self.check(b)?;
        Ok(from_column(&self.lu.solve(to_column(b))))
    }

    /// Solves `Aᴴ x = b`.
    pub fn solve_adjoint(&self, b: &[C64]) -> Result<Vec<C64>> {
        self.check(b)?;
        Ok(from_column(&self.lu.solve_adjoint(to_column(b))))
    }

    fn check(&self, b: &[C64]) -> Result<()> {
        if b.len() != self.dim {
            return Err(Error::Dimension(format!(
                "rhs of length {} for order {}",
                b.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Estimate of `κ₁(A) = ‖A‖₁ ‖A⁻¹‖₁` (Hager's method, at most five
    /// iterations).
    pub fn condition_estimate(&self) -> Result<f64> {
        let n = self.dim;
        if n == 0 {
            return Ok(0.0);
        }
        let mut x = vec![C64::new(1.0 / n as f64, 0.0); n];
        let mut estimate = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve(&x)?;
            estimate = y.iter().map(|v| v.norm()).sum::<f64>();
            let xi: Vec<C64> = y
                .iter()
                .map(|v| {
                    if v.norm() > 0.0 {
                        v / v.norm()
                    } else {
                        C64::new(1.0, 0.0)
                    }
                })
                .collect();
            let z = self.solve_adjoint(&xi)?;
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, v)| (j, v.norm()))
                .fold((0, 0.0), |acc, p| if p.1 > acc.1 { p } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= ztx || j == last_j {
                break;
            }
            last_j = j;
            x = vec![C64::new(0.0, 0.0); n];
            x[j] = C64::new(1.0, 0.0);
        }
        Ok(estimate * self.norm_one)
    }
}

/// Relative residual `‖A x − b‖₂ / ‖b‖₂` (absolute when `b = 0`).
pub fn relative_residual(a: &BlockMatrix, x: &[C64], b: &[C64]) -> Result<f64> {
    let ax = a.matvec(x)?;
    let num = ax.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
    let den = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    Ok(if den > 0.0 { num / den } else { num })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pseudo_random(n_nodes: usize, seed: u64) -> BlockMatrix {
        let mut a = BlockMatrix::zeros(n_nodes);
        let dim = a.dim();
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..dim {
            for j in 0..dim {
                let diag = if i == j { dim as f64 } else { 0.0 };
                a.set(i, j, C64::new(next() + diag, next()));
            }
        }
        a
    }

    #[test]
    fn random_system_residual() {
        let a = pseudo_random(32, 7);
        let b: Vec<C64> = (0..64).map(|k| C64::new(k as f64, 1.0)).collect();
        let lu = LuFactors::factor(&a).unwrap();
        let x = lu.solve(&b).unwrap();
        assert!(relative_residual(&a, &x, &b).unwrap() < 1e-14);
        let xa = lu.solve_adjoint(&b).unwrap();
        // Aᴴ xa = b  ⇔  conj(b)ᵀ = xaᴴ A
        for j in 0..64 {
            let s: C64 = (0..64).map(|i| a.get(i, j).conj() * xa[i]).sum();
            assert!((s - b[j]).norm() < 1e-12 * (1.0 + b[j].norm()));
        }
    }

    #[test]
    fn mass_like_identity_solve() {
        let mut a = BlockMatrix::zeros(4);
        for i in 0..8 {
            a.set(i, i, C64::new(0.5, 0.0));
        }
        let b = vec![C64::new(1.0, -2.0); 8];
        let x = LuFactors::factor(&a).unwrap().solve(&b).unwrap();
        assert!(x.iter().all(|v| (v - C64::new(2.0, -4.0)).norm() < 1e-15));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let mut a = pseudo_random(3, 1);
        for j in 0..6 {
            let v = a.get(0, j);
            a.set(1, j, v * 2.0);
        }
        assert!(matches!(LuFactors::factor(&a), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn condition_estimate_of_diagonal() {
        let mut a = BlockMatrix::zeros(2);
        for (i, d) in [1.0, 10.0, 100.0, 0.5].iter().enumerate() {
            a.set(i, i, C64::new(*d, 0.0));
        }
        let c = LuFactors::factor(&a).unwrap().condition_estimate().unwrap();
        assert!((c - 200.0).abs() < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn row_permutation_leaves_solution_unchanged(seed in 0u64..1000, swap in 0usize..8) {
            let a = pseudo_random(4, seed);
            let b: Vec<C64> = (0..8).map(|k| C64::new(1.0 + k as f64, -(k as f64))).collect();
            let x = LuFactors::factor(&a).unwrap().solve(&b).unwrap();
            let mut pa = a.clone();
            let mut pb = b.clone();
            for j in 0..8 {
                let (u, v) = (a.get(0, j), a.get(swap, j));
                pa.set(0, j, v);
                pa.set(swap, j, u);
            }
            pb.swap(0, swap);
            let y = LuFactors::factor(&pa).unwrap().solve(&pb).unwrap();
            for (p, q) in x.iter().zip(&y) {
                prop_assert!((p - q).norm() < 1e-12);
            }
        }
    }
}
