use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::dd::Dd;

pub const MAX_ORDER: usize = 64;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `(node, weight)` pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (half, mid) = ((b - a) / 2.0, (a + b) / 2.0);
        self.points().map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn build(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// The `n`-point rule, `1 <= n <= 64`, built once and cached.
pub fn gauss_legendre(n: usize) -> Result<&'static GaussRule> {
    static REGISTRY: [OnceLock<GaussRule>; MAX_ORDER] = [const { OnceLock::new() }; MAX_ORDER];
    if n == 0 || n > MAX_ORDER {
        return Err(Error::QuadratureOrder(n));
    }
    Ok(REGISTRY[n - 1].get_or_init(|| build(n)))
}

/// The `n`-point rule in double-double precision, refined by Newton steps
/// from the `f64` rule.
pub(crate) fn gauss_legendre_dd(n: usize) -> Result<(Vec<Dd>, Vec<Dd>)> {
    let rule = gauss_legendre(n)?;
    let one = Dd::ONE;
    let eval = |x: Dd| {
        let (mut p0, mut p1) = (one, x);
        for k in 2..=n {
            let kf = Dd::from_f64(k as f64);
            let a = Dd::from_f64((2 * k - 1) as f64);
            let b = Dd::from_f64((k - 1) as f64);
            let p2 = (a * x * p1 - b * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = Dd::from_f64(n as f64) * (x * p1 - p0) / (x * x - one);
        (p1, dp)
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in &rule.nodes {
        let mut x = Dd::from_f64(x0);
        if x0 != 0.0 {
            for _ in 0..2 {
                let (p, dp) = eval(x);
                x = x - p / dp;
            }
        }
        let (_, dp) = if n == 1 { (one, one) } else { eval(x) };
        let w = Dd::from_f64(2.0) / ((one - x * x) * dp * dp);
        nodes.push(x);
        weights.push(w);
    }
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes, [0.0]);
        assert_eq!(r1.weights, [2.0]);
        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        assert!((r2.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_unsupported_orders() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(65).is_err());
    }

    #[test]
    fn eight_points_integrate_degree_fourteen() {
        let v = gauss_legendre(8).unwrap().integrate(-1.0, 1.0, |x| x.powi(14));
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn exact_at_top_degree() {
        for n in [2, 4, 8, 16] {
            let d = 2 * n as i32 - 2; // highest even degree <= 2n-1
            let v = gauss_legendre(n)
                .unwrap()
                .integrate(-1.0, 1.0, |x| x.powi(d) + x.powi(d + 1));
            assert!((v - 2.0 / (d as f64 + 1.0)).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn dd_rule_refines_f64_rule() {
        let (x, w) = gauss_legendre_dd(16).unwrap();
        let total = w.iter().fold(Dd::ZERO, |a, &b| a + b);
        assert!((total - Dd::from_f64(2.0)).abs().to_f64() < 1e-30);
        // x^30 is integrated exactly
        let v = x.iter().zip(&w).fold(Dd::ZERO, |a, (&xi, &wi)| a + wi * xi.powi(30));
        let exact = Dd::from_f64(2.0) / Dd::from_f64(31.0);
        assert!((v - exact).abs().to_f64() < 1e-30);
    }

    proptest! {
        #[test]
        fn rules_are_symmetric_and_sum_to_two(n in 1usize..=64) {
            let r = gauss_legendre(n).unwrap();
            let sum: f64 = r.weights.iter().sum();
            prop_assert!((sum - 2.0).abs() < 1e-13);
            for i in 0..n {
                prop_assert!(r.weights[i] > 0.0);
                prop_assert!((r.nodes[i] + r.nodes[n - 1 - i]).abs() < 1e-15);
                prop_assert!((r.weights[i] - r.weights[n - 1 - i]).abs() < 1e-14);
            }
        }
    }
}
