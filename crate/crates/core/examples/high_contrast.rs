//! Closed-form problem on the kite for a soft shear modulus and for a
//! nearly incompressible material.

use elastic_bem::geometry::{sample_curve, CurveSpec};
use elastic_bem::solver::{boundary_errors, solve, IncidentField, SolverConfig};
use elastic_bem::ElasticMedium;

fn main() -> elastic_bem::Result<()> {
    let mesh = sample_curve(&CurveSpec::Kite, 64)?;
    let field = IncidentField::manufactured([0.0, 0.0]);
    for (lambda, mu) in [(2.0, 1.0), (2.0, 0.1), (100.0, 1.0)] {
        let medium = ElasticMedium::new(lambda, mu, 1.0, 3.0)?;
        let sol = solve(&mesh, medium, &SolverConfig::default(), &field)?;
        let err = boundary_errors(&mesh, &sol, |p| field.exact_scattered(&medium, p).unwrap(), 8)?;
        println!(
            "lambda {lambda:>5}, mu {mu:>4}: residual {:.2e}, condition {:.2e}, L2 error {:.3e}",
            sol.residual,
            sol.condition.unwrap_or(f64::NAN),
            err.l2
        );
    }
    Ok(())
}
