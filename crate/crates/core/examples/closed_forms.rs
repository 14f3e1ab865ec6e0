//! Regular polygon, circle, and segment distances from their closed forms,
//! each checked against the general algorithm.

use turning_disorder::distance::d2_turning;
use turning_disorder::regular::{d2_circle_regular, d2_regular_closed, d2_segment_vs, OrderedTarget};
use turning_disorder::turning::TurningFunction;

fn main() -> turning_disorder::Result<()> {
    println!("{:>4} {:>4} {:>10} {:>10}  formula", "n", "k", "closed", "general");
    for (n, k) in [(3, 6), (4, 6), (5, 6), (8, 6), (6, 12), (10, 15), (7, 9)] {
        let closed = d2_regular_closed(n, k)?;
        let general = d2_turning(&TurningFunction::regular(n)?, &TurningFunction::regular(k)?)?;
        println!("{n:>4} {k:>4} {:>10.6} {:>10.6}  {}", closed.distance, general.distance, closed.tag());
    }

    println!();
    for n in [3, 4, 6, 12, 100] {
        println!("d2(C, R{n}) = {:.6}", d2_circle_regular(n)?);
    }
    println!("d2(R2, R6) = {:.6}", d2_segment_vs(OrderedTarget::Regular(6))?);
    println!("d2(R2, C)  = {:.6}", d2_segment_vs(OrderedTarget::Circle)?);
    Ok(())
}
