//! End-to-end properties of the closed-form point-source problem.

use elastic_bem::assembly::KernelContext;
use elastic_bem::geometry::{sample_curve, BoundaryMesh, CurveSpec};
use elastic_bem::solver::{boundary_errors, represent_field, solve, solve_with_context, IncidentField, SolverConfig};
use elastic_bem::{CMat22, CVec2, ElasticMedium, Vec2};
use proptest::prelude::*;

fn l2_error(mesh: &BoundaryMesh, medium: ElasticMedium, config: &SolverConfig, field: &IncidentField) -> f64 {
    let sol = solve(mesh, medium, config, field).unwrap();
    boundary_errors(mesh, &sol, |p| field.exact_scattered(&medium, p).unwrap(), 8)
        .unwrap()
        .l2
}

#[test]
fn coupling_parameter_does_not_change_the_discretization_error() {
    let medium = ElasticMedium::reference(3.0).unwrap();
    let field = IncidentField::manufactured([0.0, 0.0]);
    for curve in [CurveSpec::Kite, CurveSpec::RoundedTriangle] {
        let mesh = sample_curve(&curve, 96).unwrap();
        let e1 = l2_error(&mesh, medium, &SolverConfig::default(), &field);
        let e2 = l2_error(
            &mesh,
            medium,
            &SolverConfig {
                eta: 2.0,
                ..Default::default()
            },
            &field,
        );
        let ratio = e1.max(e2) / e1.min(e2);
        assert!(ratio <= 3.0, "{curve:?}: eta=1 {e1:e}, eta=2 {e2:e}");
    }
}

#[test]
fn exterior_field_converges_at_a_far_point() {
    let medium = ElasticMedium::reference(1.0).unwrap();
    let field = IncidentField::manufactured([0.0, 0.0]);
    let config = SolverConfig::default();
    let x = Vec2::new(5.0, 5.0);
    let exact = field.exact_scattered(&medium, x).unwrap().unwrap();
    let errors: Vec<f64> = [64, 128]
        .iter()
        .map(|&n| {
            let mesh = sample_curve(&CurveSpec::RoundedTriangle, n).unwrap();
            let ctx = KernelContext::new(medium, config.quadrature()).unwrap();
            let sol = solve_with_context(&ctx, &mesh, &config, &field).unwrap();
            let u = represent_field(&ctx, &mesh, &sol, &[x], 8).unwrap()[0];
            (u - exact).norm() / exact.norm()
        })
        .collect();
    assert!(errors[0] < 2e-2, "{errors:?}");
    assert!(errors[1] <= 0.7 * errors[0], "{errors:?}");
}

#[test]
fn two_obstacle_scene_converges() {
    let medium = ElasticMedium::reference(2.0).unwrap();
    let field = IncidentField::manufactured([0.0, 0.0]);
    let scene = CurveSpec::kite_with_ellipse();
    let e: Vec<f64> = [64, 128]
        .iter()
        .map(|&n| {
            l2_error(
                &sample_curve(&scene, n).unwrap(),
                medium,
                &SolverConfig::default(),
                &field,
            )
        })
        .collect();
    assert!(e[1] < 0.5 * e[0], "{e:?}");
}

#[test]
fn sources_outside_every_obstacle_are_rejected() {
    let mesh = sample_curve(&CurveSpec::right_triangle(), 48).unwrap();
    let medium = ElasticMedium::reference(1.0).unwrap();
    let on_hypotenuse = IncidentField::manufactured([0.0, 0.0]);
    assert!(solve(&mesh, medium, &SolverConfig::default(), &on_hypotenuse).is_err());
    let centroid = IncidentField::manufactured([-1.0 / 3.0, -1.0 / 3.0]);
    assert!(solve(&mesh, medium, &SolverConfig::default(), &centroid).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// A rotated obstacle with the source at the (fixed) origin gives the
    /// rotated boundary solution.
    #[test]
    fn solution_is_rotation_equivariant(angle in 0.0f64..std::f64::consts::TAU) {
        let n = 40;
        let base = sample_curve(&CurveSpec::Kite, n).unwrap();
        let (c, s) = (angle.cos(), angle.sin());
        let rotated = BoundaryMesh::from_loops(vec![base
            .nodes()
            .iter()
            .map(|p| Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y))
            .collect()])
        .unwrap();
        let medium = ElasticMedium::reference(2.0).unwrap();
        let field = IncidentField::manufactured([0.0, 0.0]);
        let config = SolverConfig::default();
        let u = solve(&base, medium, &config, &field).unwrap().displacement;
        let v = solve(&rotated, medium, &config, &field).unwrap().displacement;
        let q = CMat22::from_real([[c, -s], [s, c]]);
        let scale = u.iter().map(|w| w.norm()).fold(0.0, f64::max);
        for (a, b) in u.iter().zip(&v) {
            let diff: CVec2 = q.mul_vec(*a) - *b;
            prop_assert!(diff.norm() < 1e-10 * scale);
        }
    }
}
