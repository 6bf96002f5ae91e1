//! Reciprocity and the Navier equation for the elastic fundamental tensor.

use elastic_bem::assembly::PointKernel;
use elastic_bem::selftest::navier_residual;
use elastic_bem::specfun::series_coefficients;
use elastic_bem::{ElasticMedium, Vec2};

fn main() -> elastic_bem::Result<()> {
    let medium = ElasticMedium::reference(2.0)?;
    let kernel = PointKernel::new(medium, &series_coefficients(&medium, 20)?);
    let (x, y) = (Vec2::new(0.7, -0.2), Vec2::new(-0.4, 0.9));
    let (exy, eyx) = (kernel.tensor(x, y)?, kernel.tensor(y, x)?);
    println!("E(x,y)          = {:?}", exy.0);
    println!("|E(x,y)-E(y,x)^T| = {:.2e}", (exy - eyx.transpose()).max_abs());
    for r in [0.5, 1.0, 1.5, 2.0] {
        let p = Vec2::new(y.x + r, y.y);
        println!(
            "r = {r:.1}: finite-difference Navier residual {:.2e}",
            navier_residual(&kernel, p, y, 2.5e-4)?
        );
    }
    Ok(())
}
