//! Turning disorders: per-face 2-turning distances to an ordered shape,
//! averaged with or without area weights.

use super::PlanarNetwork;
use crate::distance::d2_turning;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::polygon::Polygon;
use crate::regular::{d2_circle_polygon, d2_circle_regular, d2_regular_closed, d2_segment_vs, OrderedTarget, PolygonTrace};
use crate::turning::TurningFunction;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Reference shape each face is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderedShape {
    /// The regular polygon with the face's own side count.
    Regular,
    Hexagon,
    Circle,
}

/// Geometry of one face as seen by the disorder computation. Collapsed
/// faces keep the side count they had before collapsing.
#[derive(Debug, Clone)]
pub enum FaceShape {
    Polygon { polygon: Polygon, sides: usize },
    Segment { original_sides: usize },
    Point { original_sides: usize },
}

impl FaceShape {
    pub fn area(&self) -> f64 {
        match self {
            FaceShape::Polygon { polygon, .. } => polygon.area(),
            _ => 0.0,
        }
    }

    pub fn sides(&self) -> usize {
        match self {
            FaceShape::Polygon { sides, .. } => *sides,
            FaceShape::Segment { original_sides } | FaceShape::Point { original_sides } => *original_sides,
        }
    }

    /// Classifies a cycle of points, dropping consecutive duplicates.
    /// `original_sides` is used only when the cycle has collapsed.
    pub fn from_points(points: &[Point], original_sides: usize) -> Result<FaceShape> {
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for &p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        let mut distinct = pts.clone();
        distinct.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        distinct.dedup();
        match distinct.len() {
            0 | 1 => Ok(FaceShape::Point { original_sides }),
            2 => Ok(FaceShape::Segment { original_sides }),
            _ => {
                let sides = pts.len();
                let (polygon, _) = Polygon::from_any_orientation(pts)?;
                Ok(FaceShape::Polygon { polygon, sides })
            }
        }
    }
}

/// Distances from one face to the three ordered shapes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FaceDistances {
    pub face: usize,
    pub sides: usize,
    pub area: f64,
    pub regular: f64,
    pub hexagon: f64,
    pub circle: f64,
}

impl FaceDistances {
    pub fn get(&self, shape: OrderedShape) -> f64 {
        match shape {
            OrderedShape::Regular => self.regular,
            OrderedShape::Hexagon => self.hexagon,
            OrderedShape::Circle => self.circle,
        }
    }
}

fn polygon_distances(polygon: &Polygon, sides: usize) -> Result<[f64; 3]> {
    let f = TurningFunction::from_polygon(polygon);
    let regular = d2_turning(&TurningFunction::regular(sides as u64)?, &f)?.distance;
    let hexagon = d2_turning(&TurningFunction::regular(6)?, &f)?.distance;
    let circle = d2_circle_polygon(&PolygonTrace::from_turning(&f)?);
    Ok([regular, hexagon, circle])
}

/// Distances for a single face shape, using the collapsed-face conventions
/// for segments and points.
pub fn face_distances(shape: &FaceShape) -> Result<[f64; 3]> {
    match shape {
        FaceShape::Polygon { polygon, sides } => polygon_distances(polygon, *sides),
        FaceShape::Segment { original_sides } => {
            let n = (*original_sides).max(2) as u64;
            Ok([
                d2_segment_vs(OrderedTarget::Regular(n))?,
                d2_segment_vs(OrderedTarget::Regular(6))?,
                d2_segment_vs(OrderedTarget::Circle)?,
            ])
        }
        FaceShape::Point { original_sides } => {
            let n = (*original_sides).max(3) as u64;
            Ok([0.0, d2_regular_closed(n, 6)?.distance, d2_circle_regular(n)?])
        }
    }
}

/// The six disorder values, optionally with the per-face table behind them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisorderReport {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "D_w")]
    pub d_w: f64,
    #[serde(rename = "D6")]
    pub d6: f64,
    #[serde(rename = "D6_w")]
    pub d6_w: f64,
    #[serde(rename = "Dc")]
    pub dc: f64,
    #[serde(rename = "Dc_w")]
    pub dc_w: f64,
    pub faces: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_face: Option<Vec<FaceDistances>>,
}

impl DisorderReport {
    /// Aggregates a per-face table. Weighted values use areas normalized by
    /// their total; a table with zero total area gets weighted values of 0.
    pub fn from_rows(rows: Vec<FaceDistances>, keep_rows: bool) -> DisorderReport {
        let n = rows.len() as f64;
        let total: f64 = rows.iter().map(|r| r.area).sum();
        let mean = |s: OrderedShape| if rows.is_empty() { 0.0 } else { rows.iter().map(|r| r.get(s)).sum::<f64>() / n };
        let weighted = |s: OrderedShape| {
            if total > 0.0 {
                rows.iter().map(|r| r.area / total * r.get(s)).sum()
            } else {
                0.0
            }
        };
        DisorderReport {
            d: mean(OrderedShape::Regular),
            d_w: weighted(OrderedShape::Regular),
            d6: mean(OrderedShape::Hexagon),
            d6_w: weighted(OrderedShape::Hexagon),
            dc: mean(OrderedShape::Circle),
            dc_w: weighted(OrderedShape::Circle),
            faces: rows.len(),
            per_face: keep_rows.then_some(rows),
        }
    }

    pub fn value(&self, shape: OrderedShape, weighted: bool) -> f64 {
        match (shape, weighted) {
            (OrderedShape::Regular, false) => self.d,
            (OrderedShape::Regular, true) => self.d_w,
            (OrderedShape::Hexagon, false) => self.d6,
            (OrderedShape::Hexagon, true) => self.d6_w,
            (OrderedShape::Circle, false) => self.dc,
            (OrderedShape::Circle, true) => self.dc_w,
        }
    }

    /// `[D, D_w, D6, D6_w, Dc, Dc_w]`.
    pub fn values(&self) -> [f64; 6] {
        [self.d, self.d_w, self.d6, self.d6_w, self.dc, self.dc_w]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DisorderOptions {
    /// Skip faces that touch a boundary vertex.
    pub interior_only: bool,
    /// Keep the per-face table in the report.
    pub per_face: bool,
}

/// Per-face distances for every face of the network (or only interior ones).
pub fn per_face_distances(network: &PlanarNetwork, interior_only: bool) -> Result<Vec<FaceDistances>> {
    let ids: Vec<usize> = if interior_only {
        network.interior_faces()
    } else {
        (0..network.face_count()).collect()
    };
    ids.par_iter()
        .map(|&face| {
            let wrap = |e: Error| Error::InvalidFace { face, source: Box::new(e) };
            let polygon = Polygon::new(network.face_points(face)).map_err(wrap)?;
            let sides = network.face_sides(face);
            let [regular, hexagon, circle] = polygon_distances(&polygon, sides).map_err(wrap)?;
            Ok(FaceDistances { face, sides, area: polygon.area(), regular, hexagon, circle })
        })
        .collect()
}

pub fn disorder_report(network: &PlanarNetwork, options: &DisorderOptions) -> Result<DisorderReport> {
    let rows = per_face_distances(network, options.interior_only)?;
    Ok(DisorderReport::from_rows(rows, options.per_face))
}

/// A single disorder value over all faces.
pub fn disorder(network: &PlanarNetwork, shape: OrderedShape, weighted: bool) -> Result<f64> {
    Ok(disorder_report(network, &DisorderOptions::default())?.value(shape, weighted))
}
