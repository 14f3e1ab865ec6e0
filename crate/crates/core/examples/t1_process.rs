//! A short T1 run on a small Voronoi network. The full-size run (1000 cells,
//! 3000 moves) takes under a minute in release mode.

use turning_disorder::sim::{run_t1, T1Config};

fn main() -> turning_disorder::Result<()> {
    let mut config = T1Config::new(200, 600, 7);
    config.trace_stride = 100;
    let trace = run_t1(&config)?;
    println!("step      D    D_w     D6   D6_w     Dc   Dc_w");
    for r in &trace.records {
        let v = r.values;
        println!("{:>4} {:.4} {:.4} {:.4} {:.4} {:.4} {:.4}", r.step, v[0], v[1], v[2], v[3], v[4], v[5]);
    }
    println!("rejected draws: {:?}", trace.metadata.rejected);
    Ok(())
}
