//! Archimedean lattices built from regular polygons of unit side: patch
//! generation, fundamental-region proportions, and limiting disorders.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::network::{OrderedShape, PlanarNetwork};
use crate::regular::{d2_circle_regular, d2_regular_closed, regular_area_unit_side};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Lattice {
    #[serde(rename = "hex")]
    Hexagonal,
    #[serde(rename = "4.8.8")]
    SquareOctagon,
    #[serde(rename = "3.12.12")]
    TriangleDodecagon,
    #[serde(rename = "4.6.12")]
    SquareHexagonDodecagon,
}

impl Lattice {
    pub const ALL: [Lattice; 4] = [
        Lattice::Hexagonal,
        Lattice::SquareOctagon,
        Lattice::TriangleDodecagon,
        Lattice::SquareHexagonDodecagon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lattice::Hexagonal => "hex",
            Lattice::SquareOctagon => "4.8.8",
            Lattice::TriangleDodecagon => "3.12.12",
            Lattice::SquareHexagonDodecagon => "4.6.12",
        }
    }

    /// Side counts of the faces around any vertex, in cyclic order.
    pub fn vertex_type(self) -> &'static [usize] {
        match self {
            Lattice::Hexagonal => &[6, 6, 6],
            Lattice::SquareOctagon => &[4, 8, 8],
            Lattice::TriangleDodecagon => &[3, 12, 12],
            Lattice::SquareHexagonDodecagon => &[4, 6, 12],
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hex" | "hexagonal" | "6.6.6" => Ok(Lattice::Hexagonal),
            "4.8.8" => Ok(Lattice::SquareOctagon),
            "3.12.12" => Ok(Lattice::TriangleDodecagon),
            "4.6.12" => Ok(Lattice::SquareHexagonDodecagon),
            other => Err(Error::UnknownLattice(other.to_string())),
        }
    }
}

/// A tile of the periodic motif: regular `sides`-gon centered at `center`
/// with a vertex at angle `phase`.
#[derive(Debug, Clone, Copy)]
struct Tile {
    center: Point,
    sides: usize,
    phase: f64,
}

fn circumradius(sides: usize) -> f64 {
    0.5 / (PI / sides as f64).sin()
}

fn deg(d: f64) -> f64 {
    d.to_radians()
}

/// Translation vectors and the motif of one period.
fn motif(lattice: Lattice) -> (Point, Point, Vec<Tile>) {
    let s3 = 3f64.sqrt();
    let tri = |a: f64| (Point::new(a, 0.0), Point::new(a / 2.0, a * s3 / 2.0));
    match lattice {
        Lattice::Hexagonal => {
            let (a1, a2) = tri(s3);
            (a1, a2, vec![Tile { center: Point::default(), sides: 6, phase: deg(30.0) }])
        }
        Lattice::SquareOctagon => {
            let a = 1.0 + 2f64.sqrt();
            let tiles = vec![
                Tile { center: Point::default(), sides: 8, phase: deg(22.5) },
                Tile { center: Point::new(a / 2.0, a / 2.0), sides: 4, phase: 0.0 },
            ];
            (Point::new(a, 0.0), Point::new(0.0, a), tiles)
        }
        Lattice::TriangleDodecagon => {
            let (a1, a2) = tri(2.0 + s3);
            let c = (a1 + a2) * (1.0 / 3.0);
            let tiles = vec![
                Tile { center: Point::default(), sides: 12, phase: deg(15.0) },
                Tile { center: c, sides: 3, phase: deg(30.0) },
                Tile { center: c * 2.0, sides: 3, phase: deg(90.0) },
            ];
            (a1, a2, tiles)
        }
        Lattice::SquareHexagonDodecagon => {
            let (a1, a2) = tri(3.0 + s3);
            let c = (a1 + a2) * (1.0 / 3.0);
            let mut tiles = vec![
                Tile { center: Point::default(), sides: 12, phase: deg(15.0) },
                Tile { center: c, sides: 6, phase: 0.0 },
                Tile { center: c * 2.0, sides: 6, phase: 0.0 },
            ];
            for (mid, dir) in [(a1 * 0.5, 0.0), (a2 * 0.5, 60.0), ((a2 - a1) * 0.5, 120.0)] {
                tiles.push(Tile { center: mid, sides: 4, phase: deg(dir + 45.0) });
            }
            (a1, a2, tiles)
        }
    }
}

/// Merges vertices that agree to within about 1e-7.
#[derive(Default)]
pub(crate) struct VertexPool {
    pub points: Vec<Point>,
    index: HashMap<(i64, i64), usize>,
}

impl VertexPool {
    const SCALE: f64 = 1e7;

    fn key(p: Point) -> (i64, i64) {
        ((p.x * Self::SCALE).round() as i64, (p.y * Self::SCALE).round() as i64)
    }

    pub fn insert(&mut self, p: Point) -> usize {
        let (kx, ky) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(&i) = self.index.get(&(kx + dx, ky + dy)) {
                    return i;
                }
            }
        }
        let i = self.points.len();
        self.points.push(p);
        self.index.insert((kx, ky), i);
        i
    }
}

/// The lattice restricted to the square `[-n, n]^2`; only tiles lying
/// entirely inside the square are kept.
pub fn generate_lattice(lattice: Lattice, half_width: u32) -> Result<PlanarNetwork> {
    if half_width < 1 {
        return Err(Error::InvalidConfig("lattice half-width must be at least 1".into()));
    }
    let n = half_width as f64;
    let (a1, a2, tiles) = motif(lattice);
    let limit = n + 1e-9;
    let inside = |p: Point| p.x.abs() <= limit && p.y.abs() <= limit;
    // a1 is horizontal and a2 has positive height, so rows are indexed by j
    let rows = (2.0 * n / a2.y).ceil() as i64 + 2;
    let mut pool = VertexPool::default();
    let mut faces = Vec::new();
    for j in -rows..=rows {
        let shift = j as f64 * a2.x / a1.x;
        let cols = (2.0 * n / a1.x).ceil() as i64 + 2;
        for i in (-cols - shift.ceil() as i64)..=(cols - shift.floor() as i64) {
            let origin = a1 * i as f64 + a2 * j as f64;
            for tile in &tiles {
                let r = circumradius(tile.sides);
                let center = origin + tile.center;
                let pts: Vec<Point> = (0..tile.sides)
                    .map(|k| center + Point::polar(r, tile.phase + 2.0 * PI * k as f64 / tile.sides as f64))
                    .collect();
                if pts.iter().all(|&p| inside(p)) {
                    faces.push(pts.into_iter().map(|p| pool.insert(p)).collect::<Vec<usize>>());
                }
            }
        }
    }
    if faces.is_empty() {
        return Err(Error::InvalidConfig(format!(
            "half-width {half_width} is too small to hold a whole {lattice} tile"
        )));
    }
    let mut edges = Vec::new();
    for face in &faces {
        for k in 0..face.len() {
            edges.push([face[k], face[(k + 1) % face.len()]]);
        }
    }
    PlanarNetwork::from_parts(pool.points, edges, faces, None)
}

/// Tile-count (`q`) and area (`p`) proportions per polygon side count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FundamentalRegion {
    pub lattice: Lattice,
    /// `(sides, q_k, p_k)` in increasing order of sides.
    pub proportions: Vec<(usize, f64, f64)>,
}

impl FundamentalRegion {
    pub fn q(&self, sides: usize) -> f64 {
        self.proportions.iter().find(|r| r.0 == sides).map_or(0.0, |r| r.1)
    }

    pub fn p(&self, sides: usize) -> f64 {
        self.proportions.iter().find(|r| r.0 == sides).map_or(0.0, |r| r.2)
    }
}

pub fn fundamental_region(lattice: Lattice) -> FundamentalRegion {
    // tile counts per period
    let counts: &[(usize, f64)] = match lattice {
        Lattice::Hexagonal => &[(6, 1.0)],
        Lattice::SquareOctagon => &[(4, 1.0), (8, 1.0)],
        Lattice::TriangleDodecagon => &[(3, 2.0), (12, 1.0)],
        Lattice::SquareHexagonDodecagon => &[(4, 3.0), (6, 2.0), (12, 1.0)],
    };
    let tiles: f64 = counts.iter().map(|c| c.1).sum();
    let area: f64 = counts.iter().map(|&(k, c)| c * regular_area_unit_side(k as u64)).sum();
    let proportions = counts
        .iter()
        .map(|&(k, c)| (k, c / tiles, c * regular_area_unit_side(k as u64) / area))
        .collect();
    FundamentalRegion { lattice, proportions }
}

/// Limiting disorder of the infinite lattice.
pub fn exact_disorder(lattice: Lattice, shape: OrderedShape, weighted: bool) -> Result<f64> {
    let region = fundamental_region(lattice);
    let mut total = 0.0;
    for &(k, q, p) in &region.proportions {
        let d = match shape {
            OrderedShape::Regular => 0.0,
            OrderedShape::Hexagon => d2_regular_closed(k as u64, 6)?.distance,
            OrderedShape::Circle => d2_circle_regular(k as u64)?,
        };
        total += if weighted { p } else { q } * d;
    }
    Ok(total)
}

/// One limiting disorder in closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactEntry {
    pub measure: &'static str,
    pub expression: &'static str,
    pub value: f64,
}

/// Closed-form radical expressions for the hexagonal and circular
/// disorders, with values from [`exact_disorder`].
pub fn exact_table(lattice: Lattice) -> Result<Vec<ExactEntry>> {
    let exprs: [&'static str; 4] = match lattice {
        Lattice::Hexagonal => ["0", "0", "sqrt(3)*pi/18", "sqrt(3)*pi/18"],
        Lattice::SquareOctagon => [
            "pi/144*(2*sqrt(33)+sqrt(69))",
            "pi/36*(3*sqrt(33)+sqrt(138)-2*sqrt(66)-sqrt(69))",
            "sqrt(3)*pi/16",
            "pi/12*(2*sqrt(3)-sqrt(6))",
        ],
        Lattice::TriangleDodecagon => [
            "5*pi/36",
            "pi/3*(2-sqrt(3))",
            "sqrt(3)*pi/12",
            "pi/18*(11*sqrt(3)-18)",
        ],
        Lattice::SquareHexagonDodecagon => [
            "pi/72*(sqrt(33)+1)",
            "pi/36*(2*sqrt(11)+sqrt(3)-sqrt(33))",
            "7*sqrt(3)*pi/108",
            "pi/36*(1+sqrt(3))",
        ],
    };
    let measures = [
        ("D", OrderedShape::Regular, false, "0"),
        ("D_w", OrderedShape::Regular, true, "0"),
        ("D6", OrderedShape::Hexagon, false, exprs[0]),
        ("D6_w", OrderedShape::Hexagon, true, exprs[1]),
        ("Dc", OrderedShape::Circle, false, exprs[2]),
        ("Dc_w", OrderedShape::Circle, true, exprs[3]),
    ];
    measures
        .iter()
        .map(|&(measure, shape, weighted, expression)| {
            Ok(ExactEntry { measure, expression, value: exact_disorder(lattice, shape, weighted)? })
        })
        .collect()
}

/// For each interior vertex, whether the side counts of its incident faces,
/// read in angular order, match the lattice's vertex type up to rotation and
/// reflection. Returns the number of interior vertices checked.
pub fn check_vertex_types(network: &PlanarNetwork, lattice: Lattice) -> Result<usize> {
    let target = lattice.vertex_type();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); network.vertices().len()];
    for (f, face) in network.faces().iter().enumerate() {
        for &v in face {
            incident[v].push(f);
        }
    }
    let centroid = |f: usize| {
        let pts = network.face_points(f);
        pts.iter().fold(Point::default(), |acc, &p| acc + p) * (1.0 / pts.len() as f64)
    };
    let mut checked = 0;
    for (v, faces) in incident.iter().enumerate() {
        if network.is_boundary(v) {
            continue;
        }
        let o = network.vertices()[v];
        let mut around: Vec<(f64, usize)> = faces
            .iter()
            .map(|&f| ((centroid(f) - o).angle(), network.face_sides(f)))
            .collect();
        around.sort_by(|a, b| a.0.total_cmp(&b.0));
        let seq: Vec<usize> = around.into_iter().map(|x| x.1).collect();
        if !cyclic_match(&seq, target) {
            return Err(Error::InvalidNetwork(format!("vertex {v} has face sequence {seq:?}")));
        }
        checked += 1;
    }
    Ok(checked)
}

fn cyclic_match(seq: &[usize], target: &[usize]) -> bool {
    if seq.len() != target.len() {
        return false;
    }
    let n = seq.len();
    let rev: Vec<usize> = target.iter().rev().copied().collect();
    (0..n).any(|r| {
        (0..n).all(|i| seq[(i + r) % n] == target[i]) || (0..n).all(|i| seq[(i + r) % n] == rev[i])
    })
}
