//! Distances from rectangles of growing aspect ratio to the square, the
//! hexagon, and the circle, plus detection of where their ordering changes.

use crate::distance::d2_turning;
use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::regular::{d2_circle_polygon, PolygonTrace};
use crate::turning::TurningFunction;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub aspect: f64,
    pub d_square: f64,
    pub d_hexagon: f64,
    pub d_circle: f64,
}

impl SweepRow {
    /// Targets sorted from nearest to farthest, as letters: `S` square,
    /// `H` hexagon, `C` circle.
    pub fn ordering(&self) -> String {
        let mut v = [('S', self.d_square), ('H', self.d_hexagon), ('C', self.d_circle)];
        v.sort_by(|a, b| a.1.total_cmp(&b.1));
        v.iter().map(|x| x.0).collect()
    }
}

pub fn rectangle_row(aspect: f64) -> Result<SweepRow> {
    let rect = TurningFunction::from_polygon(&Polygon::rectangle(aspect)?);
    let d_square = d2_turning(&TurningFunction::regular(4)?, &rect)?.distance;
    let d_hexagon = d2_turning(&TurningFunction::regular(6)?, &rect)?.distance;
    let d_circle = d2_circle_polygon(&PolygonTrace::from_turning(&rect)?);
    Ok(SweepRow { aspect, d_square, d_hexagon, d_circle })
}

/// Rows for `start, start + step, ...` up to and including `end`.
pub fn rectangle_sweep(start: f64, end: f64, step: f64) -> Result<Vec<SweepRow>> {
    if !(start >= 1.0 && end >= start && step > 0.0) {
        return Err(Error::InvalidConfig(format!("bad sweep range {start}:{end}:{step}")));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|i| rectangle_row(start + i as f64 * step))
        .collect()
}

/// A change of ordering between two consecutive sweep rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossover {
    pub before: f64,
    pub after: f64,
    pub from: String,
    pub to: String,
}

pub fn crossovers(rows: &[SweepRow]) -> Vec<Crossover> {
    rows.windows(2)
        .filter_map(|w| {
            let (a, b) = (w[0].ordering(), w[1].ordering());
            (a != b).then(|| Crossover { before: w[0].aspect, after: w[1].aspect, from: a, to: b })
        })
        .collect()
}

/// Parses `start:end:step`.
pub fn parse_range(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("expected start:end:step, got '{spec}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Ok((nums[0], nums[1], nums[2]))
}
