//! Point source inside a kite, with and without a small ellipse next to
//! it: the ellipse's footprint in the scattered field.

use elastic_bem::assembly::KernelContext;
use elastic_bem::geometry::{sample_curve, CurveSpec};
use elastic_bem::solver::{represent_field, solve_with_context, IncidentField, SolverConfig};
use elastic_bem::{CVec2, ElasticMedium, Vec2};

fn field(curve: &CurveSpec, points: &[Vec2]) -> elastic_bem::Result<Vec<CVec2>> {
    let medium = ElasticMedium::reference(5.0)?;
    let config = SolverConfig::default();
    let mesh = sample_curve(curve, 192)?;
    let ctx = KernelContext::new(medium, config.quadrature())?;
    let incident = IncidentField::PointSourceP {
        source: [0.0, 0.0],
        amplitude: 1.0,
    };
    let sol = solve_with_context(&ctx, &mesh, &config, &incident)?;
    represent_field(&ctx, &mesh, &sol, points, config.field_order)
}

fn main() -> elastic_bem::Result<()> {
    let points: Vec<Vec2> = [[3.5, 0.0], [2.5, 1.0], [-2.5, 0.0], [0.0, 2.5]]
        .iter()
        .map(|&[x, y]| Vec2::new(x, y))
        .collect();
    let with = field(&CurveSpec::kite_with_ellipse(), &points)?;
    let without = field(&CurveSpec::Kite, &points)?;
    println!("{:>6} {:>6} {:>13} {:>13}", "x", "y", "|u| kite", "|difference|");
    for ((p, a), b) in points.iter().zip(&with).zip(&without) {
        println!(
            "{:>6.2} {:>6.2} {:>13.4e} {:>13.4e}",
            p.x,
            p.y,
            b.norm(),
            (*a - *b).norm()
        );
    }
    Ok(())
}
