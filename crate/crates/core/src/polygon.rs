//! Simple polygons: validation, normalization, perturbation, and the JSON
//! polygon file format.

use crate::error::{Error, Result};
use crate::geometry::{orient, segments_intersect, signed_area, Point};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates and wraps a counterclockwise vertex list.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        validate_simple(&vertices)?;
        let area = signed_area(&vertices);
        if area <= 0.0 {
            return Err(Error::NotCounterclockwise(area));
        }
        Ok(Polygon { vertices })
    }

    /// Accepts either orientation; clockwise input is reversed. The flag
    /// reports whether a reversal happened.
    pub fn from_any_orientation(mut vertices: Vec<Point>) -> Result<(Self, bool)> {
        validate_simple(&vertices)?;
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::NotCounterclockwise(area));
        }
        let reversed = area < 0.0;
        if reversed {
            // keep vertex 0 as the starting corner
            vertices[1..].reverse();
        }
        Ok((Polygon { vertices }, reversed))
    }

    /// Regular `n`-gon with unit side, first edge along the positive x-axis
    /// starting at the origin.
    pub fn regular(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let mut p = Point::new(0.0, 0.0);
        let mut vertices = Vec::with_capacity(n);
        for i in 0..n {
            vertices.push(p);
            p = p + Point::polar(1.0, 2.0 * PI * i as f64 / n as f64);
        }
        Polygon::new(vertices)
    }

    /// Axis-aligned rectangle of width `aspect` and height 1.
    pub fn rectangle(aspect: f64) -> Result<Self> {
        Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(aspect, 0.0),
            Point::new(aspect, 1.0),
            Point::new(0.0, 1.0),
        ])
    }

    /// Right triangle with a horizontal leg of length 3 and a vertical leg of
    /// length `a`.
    pub fn right_triangle(a: f64) -> Result<Self> {
        Polygon::new(vec![Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(3.0, a)])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Lengths of the edges `v[i] -> v[i+1]`.
    pub fn side_lengths(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    /// Same polygon with vertex `start` relabeled as vertex 0.
    pub fn relabeled(&self, start: usize) -> Polygon {
        let n = self.vertices.len();
        let vertices = (0..n).map(|i| self.vertices[(start + i) % n]).collect();
        Polygon { vertices }
    }

    /// Applies a similarity transform; `scale` must be positive.
    pub fn transformed(&self, angle: f64, scale: f64, offset: Point) -> Polygon {
        let vertices = self
            .vertices
            .iter()
            .map(|&p| p.rotate(angle) * scale + offset)
            .collect();
        Polygon { vertices }
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient(self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]) >= 0.0
        })
    }

    pub fn to_file(&self) -> PolygonFile {
        PolygonFile {
            vertices: self.vertices.iter().map(|&p| p.into()).collect(),
        }
    }
}

/// Unit perimeter, vertex 0 at the origin, first edge along the positive x-axis.
pub fn normalize_polygon(polygon: &Polygon) -> Polygon {
    let origin = polygon.vertices[0];
    let angle = (polygon.vertices[1] - origin).angle();
    let scale = 1.0 / polygon.perimeter();
    let vertices = polygon
        .vertices
        .iter()
        .map(|&p| (p - origin).rotate(-angle) * scale)
        .collect();
    Polygon { vertices }
}

/// Moves one vertex by `delta`, revalidating the result.
pub fn perturb_vertex(polygon: &Polygon, index: usize, delta: Point) -> Result<Polygon> {
    let len = polygon.len();
    if index >= len {
        return Err(Error::VertexOutOfRange { index, len });
    }
    let mut vertices = polygon.vertices.clone();
    vertices[index] = vertices[index] + delta;
    Polygon::new(vertices)
}

/// Checks vertex count, finiteness, edge lengths, and simplicity of the
/// closed polyline. Orientation is not checked.
pub fn validate_simple(vertices: &[Point]) -> Result<()> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    for (i, p) in vertices.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    for i in 0..n {
        if vertices[i] == vertices[(i + 1) % n] {
            return Err(Error::ZeroLengthEdge(i));
        }
    }
    // adjacent edges only overlap when the boundary doubles back
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n];
        let cur = vertices[i];
        let next = vertices[(i + 1) % n];
        if orient(prev, cur, next) == 0.0 && (cur - prev).dot(next - cur) < 0.0 {
            return Err(Error::Foldback(i));
        }
    }
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (vertices[j], vertices[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return Err(Error::SelfIntersection { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// On-disk polygon: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolygonFile {
    pub vertices: Vec<[f64; 2]>,
}

/// A polygon read from JSON, with a note of whether its vertex order was
/// reversed to make it counterclockwise.
#[derive(Debug, Clone)]
pub struct LoadedPolygon {
    pub polygon: Polygon,
    pub reversed: bool,
}

impl PolygonFile {
    pub fn into_polygon(self) -> Result<LoadedPolygon> {
        let vertices = self.vertices.into_iter().map(Point::from).collect();
        let (polygon, reversed) = Polygon::from_any_orientation(vertices)?;
        Ok(LoadedPolygon { polygon, reversed })
    }
}

pub fn parse_polygon_json(text: &str) -> Result<LoadedPolygon> {
    let file: PolygonFile = serde_json::from_str(text)?;
    file.into_polygon()
}

pub fn read_polygon(path: &Path) -> Result<LoadedPolygon> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_polygon_json(&text)
}
