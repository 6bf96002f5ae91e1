//! Geometric invariances of the assembled operators.

use elastic_bem::assembly::{assemble_operators, KernelContext, OperatorSet, QuadratureOptions};
use elastic_bem::geometry::BoundaryMesh;
use elastic_bem::{BlockMatrix, CMat22, ElasticMedium, Vec2};
use proptest::prelude::*;

/// Perturbed ellipse: irregular node spacing and a tilt, so no symmetry of
/// the sampled loop can hide index errors.
fn wobbly_loop(n: usize, a: f64, b: f64, tilt: f64, jitter: f64) -> Vec<Vec2> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + jitter * (3.0 * k as f64).sin()) / n as f64;
            let (x, y) = (a * t.cos(), b * t.sin() + 0.2 * (2.0 * t).cos());
            Vec2::new(x * tilt.cos() - y * tilt.sin(), x * tilt.sin() + y * tilt.cos())
        })
        .collect()
}

fn operators(pts: Vec<Vec2>, medium: ElasticMedium) -> OperatorSet {
    let mesh = BoundaryMesh::from_loops(vec![pts]).unwrap();
    let ctx = KernelContext::new(medium, QuadratureOptions::default()).unwrap();
    assemble_operators(&ctx, &mesh)
}

fn relative_gap(
    a: &BlockMatrix,
    b: &BlockMatrix,
    row: impl Fn(usize) -> usize,
    col: impl Fn(usize) -> usize,
    r: CMat22,
) -> f64 {
    let n = a.n_nodes();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mapped = r * a.block(row(i), col(j)) * r;
            worst = worst.max((b.block(i, j) - mapped).max_abs());
        }
    }
    worst / a.max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Mirroring the loop in the x-axis and reversing its node order (to
    /// keep it counter-clockwise) maps node k to node (n-k) mod n and
    /// segment k to segment (n-k-1) mod n. Every operator must transform
    /// with the mirror matrix on both sides.
    #[test]
    fn mirrored_loop_gives_mirrored_operators(
        a in 0.8f64..2.0, b in 0.6f64..1.5, tilt in 0.0f64..3.0, jitter in 0.0f64..0.3, omega in 0.5f64..4.0,
    ) {
        let n = 20;
        let pts = wobbly_loop(n, a, b, tilt, jitter);
        let mirrored: Vec<Vec2> = (0..n).map(|k| {
            let p = pts[(n - k) % n];
            Vec2::new(p.x, -p.y)
        }).collect();
        let medium = ElasticMedium::reference(omega).unwrap();
        let (o, m) = (operators(pts, medium), operators(mirrored, medium));
        let node = |k: usize| (n - k) % n;
        let seg = |k: usize| (2 * n - k - 1) % n;
        let flip = CMat22::from_real([[1.0, 0.0], [0.0, -1.0]]);
        prop_assert!(relative_gap(&o.single_layer, &m.single_layer, node, seg, flip) < 1e-11);
        prop_assert!(relative_gap(&o.adjoint_double_layer, &m.adjoint_double_layer, node, seg, flip) < 1e-11);
        prop_assert!(relative_gap(&o.double_layer, &m.double_layer, node, node, flip) < 1e-11);
        prop_assert!(relative_gap(&o.hypersingular, &m.hypersingular, node, node, flip) < 1e-11);
    }

    /// Rotating the loop rotates every block: `O' = Q O Qᵀ`.
    #[test]
    fn rotated_loop_gives_rotated_operators(angle in 0.0f64..std::f64::consts::TAU, omega in 0.5f64..4.0) {
        let n = 16;
        let pts = wobbly_loop(n, 1.3, 0.9, 0.4, 0.2);
        let (c, s) = (angle.cos(), angle.sin());
        let rotated: Vec<Vec2> = pts.iter().map(|p| Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y)).collect();
        let medium = ElasticMedium::reference(omega).unwrap();
        let (o, r) = (operators(pts, medium), operators(rotated, medium));
        let q = CMat22::from_real([[c, -s], [s, c]]);
        let qt = q.transpose();
        for (a, b) in [
            (&o.single_layer, &r.single_layer),
            (&o.double_layer, &r.double_layer),
            (&o.adjoint_double_layer, &r.adjoint_double_layer),
            (&o.hypersingular, &r.hypersingular),
        ] {
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((b.block(i, j) - q * a.block(i, j) * qt).max_abs());
                }
            }
            prop_assert!(worst < 1e-11 * a.max_abs());
        }
    }
}

/// The single layer and hypersingular forms are symmetric bilinear forms,
/// so the hat-hat hypersingular matrix must be (block-)symmetric.
#[test]
fn hypersingular_matrix_is_symmetric() {
    let o = operators(
        wobbly_loop(24, 1.5, 1.0, 0.3, 0.25),
        ElasticMedium::reference(2.0).unwrap(),
    );
    let w = &o.hypersingular;
    let n = w.n_nodes();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((w.block(i, j) - w.block(j, i).transpose()).max_abs());
        }
    }
    assert!(worst < 1e-10 * w.max_abs(), "asymmetry {worst:e}");
}
