//! Finite patches of the Archimedean lattices approach their closed-form
//! limiting disorders as the window grows.

use turning_disorder::lattice::{exact_disorder, generate_lattice, Lattice};
use turning_disorder::network::{disorder_report, DisorderOptions, OrderedShape};

fn main() -> turning_disorder::Result<()> {
    let opts = DisorderOptions { interior_only: true, per_face: false };
    for lattice in Lattice::ALL {
        let d6 = exact_disorder(lattice, OrderedShape::Hexagon, false)?;
        let dc_w = exact_disorder(lattice, OrderedShape::Circle, true)?;
        println!("{lattice}: limit D6 = {d6:.4}, Dc_w = {dc_w:.4}");
        for size in [10, 40, 160] {
            let r = disorder_report(&generate_lattice(lattice, size)?, &opts)?;
            println!("  half-width {size:>3}: {:>6} faces, D6 = {:.4}, Dc_w = {:.4}", r.faces, r.d6, r.dc_w);
        }
    }
    Ok(())
}
