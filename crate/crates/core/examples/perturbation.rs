//! How distances respond to small shape changes: moving one vertex moves
//! the 1-distance linearly, while stretching a leg of a right triangle moves
//! the 2-distance like the square root of the stretch.

use turning_disorder::distance::{d2_general, dp_general};
use turning_disorder::geometry::Point;
use turning_disorder::polygon::{normalize_polygon, perturb_vertex, Polygon};

fn main() -> turning_disorder::Result<()> {
    let triangle = normalize_polygon(&Polygon::right_triangle(4.0)?);
    for eps in [1e-2, 1e-3, 1e-4] {
        let moved = perturb_vertex(&triangle, 1, Point::new(0.6 * eps, 0.8 * eps))?;
        let d1 = dp_general(&triangle, &moved, 1.0)?.distance;
        println!("eps {eps:.0e}: d1 = {d1:.3e}, d1/eps = {:.4}", d1 / eps);
    }

    println!();
    let base = Polygon::right_triangle(4.0)?;
    for eps in [1e-1, 1e-2, 1e-3, 1e-4, 1e-5] {
        let d2 = d2_general(&base, &Polygon::right_triangle(4.0 + eps)?).distance;
        println!("eps {eps:.0e}: d2 = {d2:.3e}, d2/sqrt(eps) = {:.4}", d2 / eps.sqrt());
    }
    Ok(())
}
