//! Galerkin matrices of the four boundary operators and the mass matrix
//! on a sampled unit circle.

use elastic_bem::assembly::{assemble_mass, assemble_operators, KernelContext, QuadratureOptions};
use elastic_bem::geometry::{sample_curve, CurveSpec};
use elastic_bem::ElasticMedium;

fn main() -> elastic_bem::Result<()> {
    let mesh = sample_curve(&CurveSpec::by_name("unit_circle")?, 64)?;
    let ctx = KernelContext::new(ElasticMedium::reference(1.0)?, QuadratureOptions::default())?;
    let ops = assemble_operators(&ctx, &mesh);
    let (hat_hat, _) = assemble_mass(&mesh);
    for (name, m) in [
        ("V  (single layer)", &ops.single_layer),
        ("K  (double layer)", &ops.double_layer),
        ("K' (adjoint double layer)", &ops.adjoint_double_layer),
        ("W  (hypersingular)", &ops.hypersingular),
        ("M  (mass)", &hat_hat),
    ] {
        println!("{name:<28} order {:>4}  max |entry| {:.4e}", m.dim(), m.max_abs());
    }
    Ok(())
}
