//! Stretches a rectangle from a square to a 20:1 sliver and reports where
//! the nearest of square, hexagon, and circle changes.

use turning_disorder::sweep::{crossovers, rectangle_sweep};

fn main() -> turning_disorder::Result<()> {
    let rows = rectangle_sweep(1.0, 20.0, 0.01)?;
    for c in crossovers(&rows) {
        println!("{:>6.2} -> {:>6.2}: {} becomes {}", c.before, c.after, c.from, c.to);
    }
    let last = rows.last().expect("non-empty sweep");
    println!(
        "at aspect {}: square {:.4}, hexagon {:.4}, circle {:.4}",
        last.aspect, last.d_square, last.d_hexagon, last.d_circle
    );
    Ok(())
}
