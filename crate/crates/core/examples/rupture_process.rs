//! Ruptures edges of a hexagonal patch until 167 cells remain and plots the
//! disorder trace to an SVG file in the temp directory.

use turning_disorder::plot::{trace_svg, Table, DEFAULT_COLUMNS};
use turning_disorder::sim::rupture::{run_rupture, RuptureConfig};

fn main() -> turning_disorder::Result<()> {
    let trace = run_rupture(&RuptureConfig::new(1067, 900, 3))?;
    let (first, last) = (trace.first().expect("rows"), trace.last().expect("rows"));
    println!("faces {} -> {}", first.faces, last.faces);
    for (name, (a, b)) in DEFAULT_COLUMNS.iter().zip(first.values.iter().zip(last.values)) {
        println!("{name:>5}: {a:.4} -> {b:.4}");
    }

    let table = Table::parse(&trace.to_csv())?;
    let columns: Vec<String> = DEFAULT_COLUMNS.iter().map(|c| c.to_string()).collect();
    let svg = trace_svg(&table, &columns, "rupture, seed 3")?;
    let path = std::env::temp_dir().join("rupture_trace.svg");
    std::fs::write(&path, svg).map_err(|e| turning_disorder::Error::Io(e.to_string()))?;
    println!("plot written to {}", path.display());
    Ok(())
}
