//! Voronoi diagrams of random sites clipped to the unit square, built by
//! half-plane clipping one cell at a time.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::network::PlanarNetwork;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

const MAX_RETRIES: usize = 16;
const JITTER: f64 = 1e-9;

/// Voronoi network of `num_sites` uniform sites in the unit square, with the
/// square's boundary vertices flagged.
pub fn voronoi_init(num_sites: usize, seed: u64) -> Result<PlanarNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(voronoi_with_rng(num_sites, &mut rng)?.0)
}

/// Like [`voronoi_init`] but drawing from an existing generator. Also
/// returns how many times the sites had to be jittered.
pub(crate) fn voronoi_with_rng(num_sites: usize, rng: &mut ChaCha8Rng) -> Result<(PlanarNetwork, usize)> {
    if num_sites < 4 {
        return Err(Error::InvalidConfig(format!("need at least 4 sites, got {num_sites}")));
    }
    let mut sites: Vec<Point> = (0..num_sites).map(|_| Point::new(rng.gen(), rng.gen())).collect();
    jittered_voronoi(&mut sites, rng)
}

fn jittered_voronoi(sites: &mut [Point], rng: &mut ChaCha8Rng) -> Result<(PlanarNetwork, usize)> {
    for retry in 0..=MAX_RETRIES {
        if let Some(net) = voronoi_from_sites(sites)? {
            return Ok((net, retry));
        }
        for s in sites.iter_mut() {
            let dx = rng.gen_range(-JITTER..JITTER);
            let dy = rng.gen_range(-JITTER..JITTER);
            *s = Point::new((s.x + dx).clamp(0.0, 1.0), (s.y + dy).clamp(0.0, 1.0));
        }
    }
    Err(Error::InvalidConfig("sites stayed degenerate after jittering".into()))
}

/// Voronoi network for explicit sites (jittered if needed, with a fixed
/// generator).
pub fn voronoi_network(sites: &[Point]) -> Result<PlanarNetwork> {
    if sites.len() < 4 {
        return Err(Error::InvalidConfig(format!("need at least 4 sites, got {}", sites.len())));
    }
    if let Some(s) = sites.iter().find(|s| !(0.0..=1.0).contains(&s.x) || !(0.0..=1.0).contains(&s.y)) {
        return Err(Error::InvalidConfig(format!("site ({}, {}) lies outside the unit square", s.x, s.y)));
    }
    let mut sites = sites.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    Ok(jittered_voronoi(&mut sites, &mut rng)?.0)
}

fn clip(cell: &[Point], p: Point, q: Point) -> Vec<Point> {
    let m = (p + q) * 0.5;
    let d = q - p;
    let side = |v: Point| (v - m).dot(d);
    let mut out = Vec::with_capacity(cell.len() + 1);
    for i in 0..cell.len() {
        let (a, b) = (cell[i], cell[(i + 1) % cell.len()]);
        let (sa, sb) = (side(a), side(b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa <= 0.0) != (sb <= 0.0) {
            out.push(a + (b - a) * (sa / (sa - sb)));
        }
    }
    out.dedup_by(|x, y| x.dist(*y) < 1e-14);
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) < 1e-14 {
        out.pop();
    }
    out
}

fn cell_of(sites: &[Point], i: usize, order: &mut Vec<(f64, usize)>) -> Vec<Point> {
    let p = sites[i];
    let mut cell = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
    order.clear();
    order.extend(sites.iter().enumerate().filter(|&(j, _)| j != i).map(|(j, &q)| (p.dist(q), j)));
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(d, j) in order.iter() {
        let reach = cell.iter().map(|&v| v.dist(p)).fold(0.0, f64::max);
        if d > 2.0 * reach {
            break;
        }
        cell = clip(&cell, p, sites[j]);
    }
    cell
}

/// `None` when the diagram has a vertex of degree above 3 (cocircular sites).
fn voronoi_from_sites(sites: &[Point]) -> Result<Option<PlanarNetwork>> {
    let mut order = Vec::new();
    let mut points: Vec<Point> = Vec::new();
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut faces = Vec::with_capacity(sites.len());
    for i in 0..sites.len() {
        let cell = cell_of(sites, i, &mut order);
        let mut face: Vec<usize> = Vec::with_capacity(cell.len());
        for p in cell {
            let p = snap(p);
            let (kx, ky) = ((p.x * 1e10).round() as i64, (p.y * 1e10).round() as i64);
            let mut found = None;
            'search: for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(&v) = index.get(&(kx + dx, ky + dy)) {
                        found = Some(v);
                        break 'search;
                    }
                }
            }
            let v = found.unwrap_or_else(|| {
                points.push(p);
                index.insert((kx, ky), points.len() - 1);
                points.len() - 1
            });
            if face.last() != Some(&v) {
                face.push(v);
            }
        }
        while face.len() > 1 && face.first() == face.last() {
            face.pop();
        }
        if face.len() < 3 {
            return Ok(None);
        }
        faces.push(face);
    }
    let mut edges = Vec::new();
    for face in &faces {
        for k in 0..face.len() {
            let (a, b) = (face[k], face[(k + 1) % face.len()]);
            edges.push([a.min(b), a.max(b)]);
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut degree = vec![0usize; points.len()];
    for &[a, b] in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    if degree.iter().any(|&d| d > 3) {
        return Ok(None);
    }
    let on_square = |p: Point| p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
    let boundary: Vec<bool> = points.iter().map(|&p| on_square(p)).collect();
    let net = PlanarNetwork::from_parts(points, edges, faces, Some(boundary))?;
    if net.euler_characteristic() != 1 {
        return Ok(None);
    }
    Ok(Some(net))
}

fn snap(p: Point) -> Point {
    let s = |x: f64| {
        if x.abs() < 1e-12 {
            0.0
        } else if (x - 1.0).abs() < 1e-12 {
            1.0
        } else {
            x
        }
    };
    Point::new(s(p.x), s(p.y))
}
