//! Boundary error of the closed-form point-source problem on the kite as
//! the mesh is refined.

use elastic_bem::geometry::CurveSpec;
use elastic_bem::solver::{convergence_study, IncidentField, SolverConfig};
use elastic_bem::ElasticMedium;

fn main() -> elastic_bem::Result<()> {
    let rows = convergence_study(
        &CurveSpec::Kite,
        &[ElasticMedium::reference(3.0)?],
        &[32, 64, 128, 256],
        &IncidentField::manufactured([0.0, 0.0]),
        &SolverConfig::default(),
    )?;
    println!("{:>5} {:>11} {:>11} {:>6}", "N", "L2 error", "max nodal", "order");
    for r in rows {
        let order = r.order.map(|o| format!("{o:.2}")).unwrap_or_default();
        println!("{:>5} {:>11.3e} {:>11.3e} {order:>6}", r.n, r.l2, r.linf);
    }
    Ok(())
}
