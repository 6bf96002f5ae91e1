//! Samples the two-loop scene, writes the node list as CSV and reads it
//! back.

use elastic_bem::geometry::{sample_curve, BoundaryMesh, CurveSpec};

fn main() -> elastic_bem::Result<()> {
    let mesh = sample_curve(&CurveSpec::kite_with_ellipse(), 96)?;
    let path = std::env::temp_dir().join("elastic_bem_scene.csv");
    mesh.write_csv(&path)?;
    let back = BoundaryMesh::read_csv(&path)?;
    for (l, range) in back.loops().iter().enumerate() {
        println!("loop {l}: {} nodes", range.len());
    }
    println!(
        "perimeter {:.6} (written) vs {:.6} (read)",
        mesh.perimeter(),
        back.perimeter()
    );
    println!("longest segment {:.4}", back.max_segment_length());
    println!("wrote {}", path.display());
    Ok(())
}
