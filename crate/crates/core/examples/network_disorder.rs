//! Turning disorders of a random Voronoi network, with the faces that sit
//! farthest from a regular hexagon.

use turning_disorder::network::{disorder_report, DisorderOptions};
use turning_disorder::sim::voronoi_init;

fn main() -> turning_disorder::Result<()> {
    let net = voronoi_init(300, 42)?;
    for interior_only in [false, true] {
        let r = disorder_report(&net, &DisorderOptions { interior_only, per_face: false })?;
        println!(
            "interior_only={interior_only:<5} faces={:>3}  D={:.4} D_w={:.4} D6={:.4} D6_w={:.4} Dc={:.4} Dc_w={:.4}",
            r.faces, r.d, r.d_w, r.d6, r.d6_w, r.dc, r.dc_w
        );
    }

    let full = disorder_report(&net, &DisorderOptions { interior_only: true, per_face: true })?;
    let mut rows = full.per_face.unwrap_or_default();
    rows.sort_by(|a, b| b.hexagon.total_cmp(&a.hexagon));
    println!("\nleast hexagonal faces:");
    for r in rows.iter().take(5) {
        println!("  face {:>3}: {} sides, area {:.5}, d2 to hexagon {:.4}", r.face, r.sides, r.area, r.hexagon);
    }
    Ok(())
}
