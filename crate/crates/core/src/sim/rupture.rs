//! Edge rupture on a fixed-geometry hexagonal patch: an edge and its two
//! endpoints vanish, the two faces beside it merge, and straight chords close
//! the two flanking faces.

use super::mesh::Mesh;
use super::{bump, measure, Observer, RecordContext, SimulationTrace, TraceMetadata, TraceRecord};
use crate::error::{Error, Result};
use crate::geometry::{orient, segments_intersect, Point};
use crate::lattice::VertexPool;
use crate::network::{FaceShape, PlanarNetwork};
use crate::polygon::{validate_simple, Polygon};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const MAX_CONSECUTIVE_REJECTIONS: usize = 100_000;

/// Patch size: a target cell count, or explicit rows and columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatchSize {
    Cells(usize),
    Grid { rows: usize, cols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuptureConfig {
    pub patch: PatchSize,
    pub num_ruptures: usize,
    pub seed: u64,
    #[serde(default = "default_stride")]
    pub trace_stride: usize,
}

fn default_stride() -> usize {
    10
}

impl RuptureConfig {
    pub fn new(cells: usize, num_ruptures: usize, seed: u64) -> Self {
        RuptureConfig { patch: PatchSize::Cells(cells), num_ruptures, seed, trace_stride: default_stride() }
    }

    pub fn validate(&self) -> Result<()> {
        match self.patch {
            PatchSize::Cells(c) if c < 1 => return Err(Error::InvalidConfig("patch needs at least one cell".into())),
            PatchSize::Grid { rows, cols } if rows < 1 || cols < 1 => {
                return Err(Error::InvalidConfig("patch needs at least 1 row and 1 column".into()))
            }
            _ => {}
        }
        if self.trace_stride == 0 {
            return Err(Error::InvalidConfig("trace stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// Patch of whole unit-side hexagons in offset rows: even rows hold
/// `cols + 1` cells, odd rows `cols` cells shifted half a cell to the right.
/// Every vertex on the outer face is pinned.
#[derive(Debug, Clone)]
pub struct HexPatch {
    pub rows: usize,
    pub cols: usize,
    pub network: PlanarNetwork,
}

fn patch_cells(rows: usize, cols: usize) -> usize {
    rows.div_ceil(2) * (cols + 1) + rows / 2 * cols
}

/// Rows and columns whose cell count is closest to `target`, preferring a
/// patch that is close to square.
pub fn patch_dimensions(target: usize) -> (usize, usize) {
    let mut best = (usize::MAX, f64::INFINITY, 1, 1);
    for rows in 1..=target.max(1) {
        let guess = target / rows;
        for cols in guess.saturating_sub(1).max(1)..=guess + 1 {
            let miss = patch_cells(rows, cols).abs_diff(target);
            let skew = ((3f64.sqrt() * (cols as f64 + 0.5)) / (1.5 * rows as f64 + 0.5)).ln().abs();
            if (miss, skew) < (best.0, best.1) {
                best = (miss, skew, rows, cols);
            }
        }
    }
    (best.2, best.3)
}

pub fn hex_patch(size: PatchSize) -> Result<HexPatch> {
    let (rows, cols) = match size {
        PatchSize::Cells(c) => patch_dimensions(c),
        PatchSize::Grid { rows, cols } => (rows, cols),
    };
    if rows < 1 || cols < 1 {
        return Err(Error::InvalidConfig(format!("bad patch {rows}x{cols}")));
    }
    let s3 = 3f64.sqrt();
    let mut pool = VertexPool::default();
    let mut faces = Vec::with_capacity(patch_cells(rows, cols));
    for r in 0..rows {
        let (count, shift) = if r % 2 == 0 { (cols + 1, 0.0) } else { (cols, s3 / 2.0) };
        for i in 0..count {
            let center = Point::new(s3 * i as f64 + shift, 1.5 * r as f64);
            let face = (0..6).map(|k| pool.insert(center + Point::polar(1.0, PI / 6.0 + PI / 3.0 * k as f64)));
            faces.push(face.collect::<Vec<usize>>());
        }
    }
    let mut edges = Vec::new();
    for face in &faces {
        for k in 0..face.len() {
            edges.push([face[k], face[(k + 1) % face.len()]]);
        }
    }
    let network = PlanarNetwork::from_parts(pool.points, edges, faces, None)?;
    Ok(HexPatch { rows, cols, network })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuptureRejection {
    NotInterior,
    /// A flanking face is a triangle and would be left with two sides.
    TriangleFace,
    /// The faces around the edge are not all distinct.
    SharedFace,
    /// A closing chord would duplicate an existing edge.
    DuplicateEdge,
    /// A closing chord would cross or touch another edge.
    ChordCrossing,
    /// The merged face would not be a simple polygon.
    NonSimpleMerge,
}

impl RuptureRejection {
    pub fn code(self) -> &'static str {
        match self {
            RuptureRejection::NotInterior => "not_interior",
            RuptureRejection::TriangleFace => "triangle_face",
            RuptureRejection::SharedFace => "shared_face",
            RuptureRejection::DuplicateEdge => "duplicate_edge",
            RuptureRejection::ChordCrossing => "chord_crossing",
            RuptureRejection::NonSimpleMerge => "non_simple_merge",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuptureOutcome {
    Applied { merged_sides: usize },
    Rejected(RuptureRejection),
}

/// Ruptures the edge `(u, v)` in place. Vertex indices are compacted when
/// the move is applied.
pub fn rupture_move(network: &mut PlanarNetwork, u: usize, v: usize) -> RuptureOutcome {
    let mut mesh = Mesh::from_network(network);
    let outcome = apply(&mut mesh, u, v);
    if matches!(outcome, RuptureOutcome::Applied { .. }) {
        *network = mesh.to_network();
    }
    outcome
}

/// Whether the chord `p-q` meets any edge other than those in `skip`.
fn chord_blocked(mesh: &Mesh, p: usize, q: usize, skip: &[usize]) -> bool {
    let (a, b) = (mesh.pos[p], mesh.pos[q]);
    let (lo, hi) = (Point::new(a.x.min(b.x), a.y.min(b.y)), Point::new(a.x.max(b.x), a.y.max(b.y)));
    for (x, nb) in mesh.adj.iter().enumerate() {
        if !mesh.alive[x] || skip.contains(&x) {
            continue;
        }
        for &y in nb {
            if x > y || skip.contains(&y) {
                continue;
            }
            let (c, d) = (mesh.pos[x], mesh.pos[y]);
            if c.x.max(d.x) < lo.x || c.x.min(d.x) > hi.x || c.y.max(d.y) < lo.y || c.y.min(d.y) > hi.y {
                continue;
            }
            let shared = [x, y].into_iter().find(|w| *w == p || *w == q);
            let hit = match shared {
                None => segments_intersect(a, b, c, d),
                Some(s) => {
                    let o = mesh.pos[s];
                    let far_chord = if s == p { b } else { a };
                    let far_edge = if s == x { d } else { c };
                    orient(o, far_chord, far_edge) == 0.0 && (far_chord - o).dot(far_edge - o) > 0.0
                }
            };
            if hit {
                return true;
            }
        }
    }
    false
}

pub(crate) fn apply(mesh: &mut Mesh, u: usize, v: usize) -> RuptureOutcome {
    use RuptureRejection::*;
    let n = mesh.pos.len();
    let free = |w: usize| w < n && mesh.alive[w] && !mesh.pinned[w] && mesh.adj[w].len() == 3;
    if u == v || !free(u) || !free(v) || !mesh.connected(u, v) {
        return RuptureOutcome::Rejected(NotInterior);
    }
    let (Some((top, iu)), Some((bottom, iv))) = (mesh.face_with(u, v), mesh.face_with(v, u)) else {
        return RuptureOutcome::Rejected(NotInterior);
    };
    let (t, b) = (mesh.face(top).to_vec(), mesh.face(bottom).to_vec());
    let a1 = t[(iu + t.len() - 1) % t.len()];
    let b1 = t[(iu + 2) % t.len()];
    let b2 = b[(iv + b.len() - 1) % b.len()];
    let a2 = b[(iv + 2) % b.len()];
    let (Some((left, _)), Some((right, _))) = (mesh.face_with(a2, u), mesh.face_with(b1, v)) else {
        return RuptureOutcome::Rejected(NotInterior);
    };
    let ids = [top, bottom, left, right];
    if (0..ids.len()).any(|i| (i + 1..ids.len()).any(|j| ids[i] == ids[j])) {
        return RuptureOutcome::Rejected(SharedFace);
    }
    if ids[2..].iter().any(|&f| mesh.face(f).len() == 3) {
        return RuptureOutcome::Rejected(TriangleFace);
    }
    if t.iter().any(|w| *w != u && *w != v && b.contains(w)) {
        return RuptureOutcome::Rejected(NonSimpleMerge);
    }
    if mesh.connected(a1, a2) || mesh.connected(b1, b2) {
        return RuptureOutcome::Rejected(DuplicateEdge);
    }
    let skip = [u, v];
    // the two chords are both sides of the merged face, so a crossing
    // between them is caught by the simplicity check below
    if chord_blocked(mesh, a1, a2, &skip) || chord_blocked(mesh, b1, b2, &skip) {
        return RuptureOutcome::Rejected(ChordCrossing);
    }
    // T from b1 around to a1, then B from a2 around to b2
    let mut merged: Vec<usize> = (0..t.len() - 2).map(|k| t[(iu + 2 + k) % t.len()]).collect();
    merged.extend((0..b.len() - 2).map(|k| b[(iv + 2 + k) % b.len()]));
    let pts: Vec<Point> = merged.iter().map(|&w| mesh.pos[w]).collect();
    if validate_simple(&pts).is_err() {
        return RuptureOutcome::Rejected(NonSimpleMerge);
    }

    for w in [a1, a2, v] {
        mesh.remove_edge(u, w);
    }
    for w in [b1, b2] {
        mesh.remove_edge(v, w);
    }
    mesh.add_edge(a1, a2);
    mesh.add_edge(b1, b2);
    mesh.alive[u] = false;
    mesh.alive[v] = false;
    for &w in &b {
        mesh.detach_face(w, bottom);
        mesh.attach_face(w, top);
    }
    mesh.vertex_faces[u].clear();
    mesh.vertex_faces[v].clear();
    let merged_sides = merged.len();
    mesh.faces[top] = Some(merged);
    mesh.faces[bottom] = None;
    for (f, w) in [(left, u), (right, v)] {
        if let Some(face) = mesh.faces[f].as_mut() {
            face.retain(|&x| x != w);
        }
    }
    RuptureOutcome::Applied { merged_sides }
}

fn shapes(mesh: &Mesh) -> Result<Vec<FaceShape>> {
    mesh.faces
        .iter()
        .flatten()
        .enumerate()
        .map(|(face, cycle)| {
            let pts = cycle.iter().map(|&w| mesh.pos[w]).collect();
            let polygon = Polygon::new(pts).map_err(|e| Error::InvalidFace { face, source: Box::new(e) })?;
            Ok(FaceShape::Polygon { polygon, sides: cycle.len() })
        })
        .collect()
}

pub fn run_rupture(config: &RuptureConfig) -> Result<SimulationTrace> {
    run_rupture_observed(config, &mut |_, _| Ok(()))
}

/// Runs the rupture process, handing each record to `observer` as soon as
/// it is measured.
pub fn run_rupture_observed(config: &RuptureConfig, observer: &mut Observer<'_>) -> Result<SimulationTrace> {
    config.validate()?;
    let patch = hex_patch(config.patch)?;
    let mut mesh = Mesh::from_network(&patch.network);
    let initial_positions = mesh.pos.clone();
    let initial_faces = mesh.face_count();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut meta = TraceMetadata::new("rupture", serde_json::to_value(config).expect("config serializes"));
    let mut records: Vec<TraceRecord> = Vec::new();
    let mut record = |mesh: &Mesh, step: usize, records: &mut Vec<TraceRecord>| -> Result<()> {
        let rec = measure(step, &shapes(mesh)?)?;
        observer(&rec, &RecordContext { mesh })?;
        records.push(rec);
        Ok(())
    };
    let initial_area: f64 = patch.network.total_area();

    record(&mesh, 0, &mut records)?;
    let mut accepted = 0;
    let mut streak = 0;
    while accepted < config.num_ruptures {
        let edges = mesh.interior_edges();
        if edges.is_empty() {
            return Err(Error::InvalidConfig(format!("no interior edges left after {accepted} ruptures")));
        }
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        match apply(&mut mesh, u, v) {
            RuptureOutcome::Rejected(reason) => {
                bump(&mut meta.rejected, reason.code());
                streak += 1;
                if streak >= MAX_CONSECUTIVE_REJECTIONS {
                    return Err(Error::InvalidConfig(format!(
                        "{streak} consecutive rupture draws were rejected after {accepted} ruptures ({:?})",
                        meta.rejected
                    )));
                }
                continue;
            }
            RuptureOutcome::Applied { .. } => {
                streak = 0;
                accepted += 1;
            }
        }
        if accepted % config.trace_stride == 0 || accepted == config.num_ruptures {
            record(&mesh, accepted, &mut records)?;
        }
    }

    let final_area: f64 = mesh
        .faces
        .iter()
        .flatten()
        .map(|f| crate::geometry::signed_area(&f.iter().map(|&w| mesh.pos[w]).collect::<Vec<_>>()))
        .sum();
    let moved = (0..mesh.pos.len()).filter(|&w| mesh.alive[w] && mesh.pos[w] != initial_positions[w]).count();
    meta.accepted = accepted;
    let d = &mut meta.details;
    d.insert("patch_rows".into(), patch.rows.into());
    d.insert("patch_cols".into(), patch.cols.into());
    d.insert("initial_faces".into(), initial_faces.into());
    d.insert("initial_area".into(), initial_area.into());
    d.insert("final_area".into(), final_area.into());
    d.insert("moved_vertices".into(), moved.into());
    Ok(SimulationTrace { records, metadata: meta })
}
