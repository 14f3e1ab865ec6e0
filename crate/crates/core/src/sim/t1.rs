//! Random T1 rewiring of a Voronoi network, re-embedded with Tutte's method
//! after every accepted move.

use super::mesh::Mesh;
use super::{bump, measure, tutte, voronoi, Observer, RecordContext, SimulationTrace, TraceMetadata, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::network::{face_distances, FaceShape, OrderedShape, PlanarNetwork};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Draws rejected in a row before the run is abandoned.
const MAX_CONSECUTIVE_REJECTIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct T1Config {
    pub num_sites: usize,
    pub num_moves: usize,
    pub seed: u64,
    #[serde(default = "default_merge_tolerance")]
    pub merge_tolerance: f64,
    #[serde(default = "default_stride")]
    pub trace_stride: usize,
}

fn default_merge_tolerance() -> f64 {
    1e-6
}

fn default_stride() -> usize {
    10
}

impl T1Config {
    pub fn new(num_sites: usize, num_moves: usize, seed: u64) -> Self {
        T1Config {
            num_sites,
            num_moves,
            seed,
            merge_tolerance: default_merge_tolerance(),
            trace_stride: default_stride(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_sites < 4 {
            return Err(Error::InvalidConfig(format!("need at least 4 sites, got {}", self.num_sites)));
        }
        if !(self.merge_tolerance > 0.0) {
            return Err(Error::InvalidConfig("merge tolerance must be positive".into()));
        }
        if self.trace_stride == 0 {
            return Err(Error::InvalidConfig("trace stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// Why a T1 move was not applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum T1Rejection {
    /// Not an edge between two free trivalent vertices.
    NotInterior,
    /// One of the faces sharing the edge is a triangle.
    TriangleFace,
    /// The rewiring would duplicate an existing edge.
    DuplicateEdge,
    /// The four faces around the edge are not distinct.
    SharedFace,
}

impl T1Rejection {
    pub fn code(self) -> &'static str {
        match self {
            T1Rejection::NotInterior => "not_interior",
            T1Rejection::TriangleFace => "triangle_face",
            T1Rejection::DuplicateEdge => "duplicate_edge",
            T1Rejection::SharedFace => "shared_face",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum T1Outcome {
    Applied,
    Rejected(T1Rejection),
}

/// Applies a T1 move to the edge `(u, v)` in place. Coordinates of `u` and
/// `v` are moved to rough positions only; re-embed afterwards.
pub fn t1_move(network: &mut PlanarNetwork, u: usize, v: usize) -> T1Outcome {
    let mut mesh = Mesh::from_network(network);
    let outcome = apply(&mut mesh, u, v);
    if outcome == T1Outcome::Applied {
        *network = mesh.to_network();
    }
    outcome
}

pub(crate) fn apply(mesh: &mut Mesh, u: usize, v: usize) -> T1Outcome {
    use T1Rejection::*;
    let n = mesh.pos.len();
    let free = |w: usize| w < n && mesh.alive[w] && !mesh.pinned[w] && mesh.adj[w].len() == 3;
    if u == v || !free(u) || !free(v) || !mesh.connected(u, v) {
        return T1Outcome::Rejected(NotInterior);
    }
    let (Some((top, iu)), Some((bottom, iv))) = (mesh.face_with(u, v), mesh.face_with(v, u)) else {
        return T1Outcome::Rejected(NotInterior);
    };
    let (t, b) = (mesh.face(top), mesh.face(bottom));
    if t.len() == 3 || b.len() == 3 {
        return T1Outcome::Rejected(TriangleFace);
    }
    let a1 = t[(iu + t.len() - 1) % t.len()];
    let b1 = t[(iu + 2) % t.len()];
    let b2 = b[(iv + b.len() - 1) % b.len()];
    let a2 = b[(iv + 2) % b.len()];
    let (Some((left, _)), Some((right, _))) = (mesh.face_with(a2, u), mesh.face_with(b1, v)) else {
        return T1Outcome::Rejected(NotInterior);
    };
    let ids = [top, bottom, left, right];
    if (0..4).any(|i| (i + 1..4).any(|j| ids[i] == ids[j])) {
        return T1Outcome::Rejected(SharedFace);
    }
    if mesh.connected(u, b1) || mesh.connected(v, a2) {
        return T1Outcome::Rejected(DuplicateEdge);
    }

    mesh.remove_edge(u, a2);
    mesh.remove_edge(v, b1);
    mesh.add_edge(u, b1);
    mesh.add_edge(v, a2);
    let edit = |mesh: &mut Mesh, f: usize, op: &dyn Fn(&mut Vec<usize>)| {
        let face = mesh.faces[f].as_mut().expect("live face");
        op(face);
    };
    edit(mesh, top, &|f| f.retain(|&w| w != v));
    edit(mesh, bottom, &|f| f.retain(|&w| w != u));
    edit(mesh, left, &|f| {
        let i = f.iter().position(|&w| w == u).expect("u on left face");
        f.insert(i, v);
    });
    edit(mesh, right, &|f| {
        let i = f.iter().position(|&w| w == v).expect("v on right face");
        f.insert(i, u);
    });
    mesh.detach_face(v, top);
    mesh.attach_face(v, left);
    mesh.detach_face(u, bottom);
    mesh.attach_face(u, right);

    let mid = (mesh.pos[u] + mesh.pos[v]) * 0.5;
    mesh.pos[u] = (mesh.pos[a1] + mesh.pos[b1] + mid) * (1.0 / 3.0);
    mesh.pos[v] = (mesh.pos[a2] + mesh.pos[b2] + mid) * (1.0 / 3.0);
    T1Outcome::Applied
}

/// Distance from a collapsed face to an ordered shape; `None` for a face
/// that is still a proper polygon.
pub fn degenerate_face_distance(face: &FaceShape, shape: OrderedShape) -> Option<f64> {
    if matches!(face, FaceShape::Polygon { .. }) {
        return None;
    }
    let [regular, hexagon, circle] = face_distances(face).ok()?;
    Some(match shape {
        OrderedShape::Regular => regular,
        OrderedShape::Hexagon => hexagon,
        OrderedShape::Circle => circle,
    })
}

/// Tallies from building the measurement copy.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct MergeStats {
    pub merged_vertices: usize,
    pub segments: usize,
    pub points: usize,
    pub fallbacks: usize,
}

/// Face shapes after identifying vertices joined by edges shorter than
/// `tolerance`. The mesh itself is left alone.
pub(crate) fn measured_shapes(mesh: &Mesh, tolerance: f64) -> (Vec<FaceShape>, MergeStats) {
    let n = mesh.pos.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut sum = mesh.pos.clone();
    let mut count = vec![1usize; n];
    let edges = mesh.edge_list();
    let mut stats = MergeStats::default();
    loop {
        let mut changed = false;
        for &[a, b] in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            let pa = sum[ra] * (1.0 / count[ra] as f64);
            let pb = sum[rb] * (1.0 / count[rb] as f64);
            if pa.dist(pb) < tolerance {
                let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[gone] = keep;
                sum[keep] = sum[keep] + sum[gone];
                count[keep] += count[gone];
                stats.merged_vertices += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut shapes = Vec::with_capacity(mesh.faces.len());
    for face in mesh.faces.iter().flatten() {
        let pts: Vec<Point> = face
            .iter()
            .map(|&v| {
                let r = find(&mut parent, v);
                if count[r] == 1 {
                    mesh.pos[v]
                } else {
                    sum[r] * (1.0 / count[r] as f64)
                }
            })
            .collect();
        let shape = FaceShape::from_points(&pts, face.len()).unwrap_or_else(|_| {
            stats.fallbacks += 1;
            FaceShape::Segment { original_sides: face.len() }
        });
        match shape {
            FaceShape::Segment { .. } => stats.segments += 1,
            FaceShape::Point { .. } => stats.points += 1,
            FaceShape::Polygon { .. } => {}
        }
        shapes.push(shape);
    }
    (shapes, stats)
}

pub fn run_t1(config: &T1Config) -> Result<SimulationTrace> {
    run_t1_observed(config, &mut |_, _| Ok(()))
}

/// Runs the T1 process, handing each record to `observer` as soon as it is
/// measured.
pub fn run_t1_observed(config: &T1Config, observer: &mut Observer<'_>) -> Result<SimulationTrace> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (net, retries) = voronoi::voronoi_with_rng(config.num_sites, &mut rng)?;
    let mut mesh = Mesh::from_network(&net);
    let mut meta = TraceMetadata::new("t1", serde_json::to_value(config).expect("config serializes"));
    let mut worst_residual: f64 = 0.0;
    let mut worst_iterations = 0;
    let mut peak = MergeStats::default();
    let mut records = Vec::new();

    let mut embed = |mesh: &mut Mesh| -> Result<()> {
        let r = tutte::solve(mesh)?;
        worst_residual = worst_residual.max(r.residual);
        worst_iterations = worst_iterations.max(r.iterations);
        Ok(())
    };
    let mut record = |mesh: &Mesh, step: usize, records: &mut Vec<TraceRecord>| -> Result<()> {
        let (shapes, stats) = measured_shapes(mesh, config.merge_tolerance);
        peak.merged_vertices = peak.merged_vertices.max(stats.merged_vertices);
        peak.segments = peak.segments.max(stats.segments);
        peak.points = peak.points.max(stats.points);
        peak.fallbacks = peak.fallbacks.max(stats.fallbacks);
        let rec = measure(step, &shapes)?;
        observer(&rec, &RecordContext { mesh })?;
        records.push(rec);
        Ok(())
    };

    embed(&mut mesh)?;
    record(&mesh, 0, &mut records)?;
    let mut accepted = 0;
    let mut streak = 0;
    while accepted < config.num_moves {
        let edges = mesh.interior_edges();
        if edges.is_empty() {
            return Err(Error::InvalidConfig("network has no interior edges".into()));
        }
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        match apply(&mut mesh, u, v) {
            T1Outcome::Rejected(reason) => {
                bump(&mut meta.rejected, reason.code());
                streak += 1;
                if streak >= MAX_CONSECUTIVE_REJECTIONS {
                    return Err(Error::InvalidConfig(format!("{streak} consecutive T1 draws were rejected")));
                }
                continue;
            }
            T1Outcome::Applied => {
                streak = 0;
                accepted += 1;
            }
        }
        embed(&mut mesh)?;
        if accepted % config.trace_stride == 0 || accepted == config.num_moves {
            record(&mesh, accepted, &mut records)?;
        }
    }

    meta.accepted = accepted;
    let d = &mut meta.details;
    d.insert("jitter_retries".into(), retries.into());
    d.insert("max_tutte_residual".into(), worst_residual.into());
    d.insert("max_solver_iterations".into(), worst_iterations.into());
    d.insert("peak_merged_vertices".into(), peak.merged_vertices.into());
    d.insert("peak_segment_faces".into(), peak.segments.into());
    d.insert("peak_point_faces".into(), peak.points.into());
    d.insert("peak_fallback_faces".into(), peak.fallbacks.into());
    d.insert(
        "merging".into(),
        "vertices joined by edges shorter than merge_tolerance are identified in the measured copy only; \
         the simulated network keeps its topology"
            .into(),
    );
    Ok(SimulationTrace { records, metadata: meta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{generate_lattice, Lattice};

    fn side_census(net: &PlanarNetwork) -> Vec<usize> {
        (0..net.face_count()).map(|f| net.face_sides(f)).collect()
    }

    fn interior_edge(net: &PlanarNetwork) -> (usize, usize) {
        Mesh::from_network(net).interior_edges()[0]
    }

    #[test]
    fn hexagonal_reaction() {
        let mut net = generate_lattice(Lattice::Hexagonal, 6).unwrap();
        let before = side_census(&net);
        let (u, v) = interior_edge(&net);
        assert_eq!(t1_move(&mut net, u, v), T1Outcome::Applied);
        let after = side_census(&net);
        let mut changed: Vec<(usize, usize)> =
            before.iter().zip(&after).filter(|(a, b)| a != b).map(|(&a, &b)| (a, b)).collect();
        changed.sort_unstable();
        assert_eq!(changed, vec![(6, 5), (6, 5), (6, 7), (6, 7)]);
        assert_eq!(net.euler_characteristic(), 1);
        assert_eq!(t1_move(&mut net, u, v), T1Outcome::Applied);
        assert_eq!(side_census(&net), before);
    }

    #[test]
    fn triangle_blocks_the_move() {
        let mut net = generate_lattice(Lattice::TriangleDodecagon, 8).unwrap();
        let mesh = Mesh::from_network(&net);
        let edge = mesh
            .interior_edges()
            .into_iter()
            .find(|&(u, v)| mesh.face_with(u, v).map_or(false, |(f, _)| mesh.face(f).len() == 3))
            .unwrap();
        assert_eq!(t1_move(&mut net, edge.0, edge.1), T1Outcome::Rejected(T1Rejection::TriangleFace));
    }

    #[test]
    fn boundary_edge_is_rejected() {
        let mut net = generate_lattice(Lattice::Hexagonal, 3).unwrap();
        let [a, b] = *net.edges().iter().find(|e| net.is_boundary(e[0])).unwrap();
        assert_eq!(t1_move(&mut net, a, b), T1Outcome::Rejected(T1Rejection::NotInterior));
    }

    #[test]
    fn collapsed_face_distances() {
        let seg = FaceShape::Segment { original_sides: 5 };
        let h = degenerate_face_distance(&seg, OrderedShape::Hexagon).unwrap();
        assert!((h - 6f64.sqrt() * std::f64::consts::PI / 9.0).abs() < 1e-12);
        let pt = FaceShape::Point { original_sides: 6 };
        assert_eq!(degenerate_face_distance(&pt, OrderedShape::Hexagon), Some(0.0));
    }

    #[test]
    fn short_run_is_deterministic() {
        let mut cfg = T1Config::new(60, 40, 11);
        cfg.trace_stride = 10;
        let a = run_t1(&cfg).unwrap();
        let b = run_t1(&cfg).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.records.len(), 5);
        assert!(a.records.iter().all(|r| r.faces == 60));
        assert!(a.metadata.details["max_tutte_residual"].as_f64().unwrap() <= 1e-9);
    }

    #[test]
    fn zero_moves_gives_one_record() {
        let t = run_t1(&T1Config::new(30, 0, 2)).unwrap();
        assert_eq!(t.records.len(), 1);
        assert_eq!(t.records[0].step, 0);
    }
}
