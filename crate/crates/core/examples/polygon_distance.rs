//! Distances between two hand-made polygons for a few exponents, plus the
//! shift and rotation that realize the 2-distance.

use turning_disorder::distance::{d2_general, dp_general};
use turning_disorder::geometry::Point;
use turning_disorder::polygon::Polygon;

fn main() -> turning_disorder::Result<()> {
    let l_shape = Polygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(2.0, 0.0),
        Point::new(2.0, 1.0),
        Point::new(1.0, 1.0),
        Point::new(1.0, 2.0),
        Point::new(0.0, 2.0),
    ])?;
    let square = Polygon::regular(4)?;

    let best = d2_general(&l_shape, &square);
    println!("d2(L, square) = {:.6}", best.distance);
    println!("  starting-point shift t = {:.6}", best.optimal_shift_t);
    println!("  rotation theta         = {:.6}", best.optimal_rotation_theta);

    for p in [1.0, 1.5, 3.0] {
        let d = dp_general(&l_shape, &square, p)?;
        println!("d{p}(L, square) = {:.6}", d.distance);
    }

    // moving, scaling, or rotating a shape does not change its distances
    let moved = l_shape.transformed(0.4, 7.0, Point::new(-3.0, 10.0));
    println!("after a similarity: {:.6}", d2_general(&moved, &square).distance);
    Ok(())
}
