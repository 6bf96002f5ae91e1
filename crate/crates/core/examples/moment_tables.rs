//! Exact moment integrals used by the same-segment blocks, compared with
//! the brute-force graded quadrature oracle.

use elastic_bem::quadrature::{oracle_moment, singular_table, MomentKind};

fn main() -> elastic_bem::Result<()> {
    let table = singular_table(20);
    println!("{:>3} {:>22} {:>22} {:>22}", "m", "I3", "I4", "I5");
    for m in [0, 1, 2, 5, 10, 20] {
        println!(
            "{m:>3} {:>22.15e} {:>22.15e} {:>22.15e}",
            table.get(MomentKind::I3, m),
            table.get(MomentKind::I4, m),
            table.get(MomentKind::I5, m)
        );
    }
    let mut worst: f64 = 0.0;
    for kind in MomentKind::ALL {
        for m in 0..=20 {
            worst = worst.max((table.get(kind, m) - oracle_moment(m, kind)?).abs());
        }
    }
    println!("largest table/oracle difference over I1..I6, m <= 20: {worst:.2e}");
    println!("table entries failing verification: {}", table.verify().len());
    Ok(())
}
