//! Total field of a compressional plane wave around the star-shaped
//! obstacle, sampled along the negative x-axis, which runs into one of its concavities.

use elastic_bem::assembly::KernelContext;
use elastic_bem::geometry::{sample_curve, CurveSpec};
use elastic_bem::solver::{represent_field, solve_with_context, IncidentField, SolverConfig};
use elastic_bem::{ElasticMedium, Vec2};

fn main() -> elastic_bem::Result<()> {
    let medium = ElasticMedium::reference(5.0)?;
    let mesh = sample_curve(&CurveSpec::Star, 200)?;
    let config = SolverConfig::default();
    let incident = IncidentField::plane([1.0, 0.0]);
    let ctx = KernelContext::new(medium, config.quadrature())?;
    let sol = solve_with_context(&ctx, &mesh, &config, &incident)?;
    println!("N = {}, residual {:.2e}", mesh.n_nodes(), sol.residual);
    let points: Vec<Vec2> = (0..9).map(|k| Vec2::new(-3.0 + 0.25 * k as f64, 0.0)).collect();
    let scattered = represent_field(&ctx, &mesh, &sol, &points, config.field_order)?;
    println!(
        "{:>6} {:>6} {:>11} {:>11} {:>11}",
        "x", "y", "Re u1", "Im u1", "|u_total|"
    );
    for (p, u) in points.iter().zip(scattered) {
        let total = u + incident.displacement(&medium, *p)?;
        println!(
            "{:>6.2} {:>6.2} {:>11.4e} {:>11.4e} {:>11.4e}",
            p.x,
            p.y,
            total.0[0].re,
            total.0[0].im,
            total.norm()
        );
    }
    Ok(())
}
