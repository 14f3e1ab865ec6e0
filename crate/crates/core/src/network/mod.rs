//! Planar straight-line networks: face extraction, validation, geometry, and
//! the JSON network file format.

mod disorder;

pub use disorder::{
    disorder, disorder_report, face_distances, per_face_distances, DisorderOptions, DisorderReport,
    FaceDistances, FaceShape, OrderedShape,
};

use crate::error::{Error, Result};
use crate::geometry::{orient, segments_intersect, signed_area, Point};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path;

/// A planar polygonal network. Faces are the bounded faces only, each a
/// counterclockwise cycle of vertex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarNetwork {
    vertices: Vec<Point>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    boundary: Vec<bool>,
}

impl PlanarNetwork {
    /// Builds a network from vertices and edges, recovering the faces.
    pub fn from_edges(vertices: Vec<Point>, edges: Vec<[usize; 2]>) -> Result<Self> {
        let edges = normalize_edges(vertices.len(), edges)?;
        check_vertices(&vertices)?;
        check_planar(&vertices, &edges)?;
        let faces = trace_faces(&vertices, &edges)?;
        let mut net = PlanarNetwork { vertices, edges, faces, boundary: Vec::new() };
        net.boundary = net.outer_vertices();
        Ok(net)
    }

    /// Builds a network with caller-supplied faces, which are checked against
    /// the edge set and reoriented counterclockwise where needed. Missing
    /// boundary flags are derived from the edges that border a single face.
    pub fn from_parts(
        vertices: Vec<Point>,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<usize>>,
        boundary: Option<Vec<bool>>,
    ) -> Result<Self> {
        let edges = normalize_edges(vertices.len(), edges)?;
        check_vertices(&vertices)?;
        check_planar(&vertices, &edges)?;
        let edge_set: std::collections::HashSet<[usize; 2]> = edges.iter().copied().collect();
        let mut uses: HashMap<[usize; 2], usize> = HashMap::new();
        let mut oriented = Vec::with_capacity(faces.len());
        for (id, mut face) in faces.into_iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::InvalidNetwork(format!("face {id} has {} vertices", face.len())));
            }
            for i in 0..face.len() {
                let (a, b) = (face[i], face[(i + 1) % face.len()]);
                if a >= vertices.len() || b >= vertices.len() {
                    return Err(Error::InvalidNetwork(format!("face {id} references a missing vertex")));
                }
                let key = [a.min(b), a.max(b)];
                if !edge_set.contains(&key) {
                    return Err(Error::InvalidNetwork(format!("face {id} uses {a}-{b}, which is not an edge")));
                }
                *uses.entry(key).or_default() += 1;
            }
            let pts: Vec<Point> = face.iter().map(|&v| vertices[v]).collect();
            if signed_area(&pts) < 0.0 {
                face.reverse();
            }
            oriented.push(face);
        }
        if let Some((e, _)) = uses.iter().find(|(_, &c)| c > 2) {
            return Err(Error::InvalidNetwork(format!("edge {}-{} borders more than two faces", e[0], e[1])));
        }
        let mut net = PlanarNetwork { vertices, edges, faces: oriented, boundary: Vec::new() };
        net.boundary = match boundary {
            Some(b) if b.len() == net.vertices.len() => b,
            Some(b) => {
                return Err(Error::InvalidNetwork(format!(
                    "{} boundary flags for {} vertices",
                    b.len(),
                    net.vertices.len()
                )))
            }
            None => net.outer_vertices(),
        };
        Ok(net)
    }

    /// Trusted constructor for internal producers that maintain the
    /// invariants themselves.
    pub(crate) fn from_raw(
        vertices: Vec<Point>,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<usize>>,
        boundary: Vec<bool>,
    ) -> Self {
        PlanarNetwork { vertices, edges, faces, boundary }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_points(&self, face: usize) -> Vec<Point> {
        self.faces[face].iter().map(|&v| self.vertices[v]).collect()
    }

    /// Shoelace area of a face.
    pub fn face_area(&self, face: usize) -> f64 {
        signed_area(&self.face_points(face))
    }

    /// Number of vertices on the face boundary, collinear ones included.
    pub fn face_sides(&self, face: usize) -> usize {
        self.faces[face].len()
    }

    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    /// `V - E + F` over the bounded faces; 1 for a disk-like network.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Number of faces bordering each edge, keyed by `[min, max]`.
    pub fn edge_face_counts(&self) -> HashMap<[usize; 2], usize> {
        let mut counts: HashMap<[usize; 2], usize> = self.edges.iter().map(|&e| (e, 0)).collect();
        for face in &self.faces {
            for i in 0..face.len() {
                let (a, b) = (face[i], face[(i + 1) % face.len()]);
                *counts.entry([a.min(b), a.max(b)]).or_default() += 1;
            }
        }
        counts
    }

    /// Faces that touch no boundary vertex.
    pub fn interior_faces(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].iter().all(|&v| !self.boundary[v]))
            .collect()
    }

    /// Re-runs the structural checks: planarity, face/edge incidence, and
    /// positive face areas.
    pub fn validate(&self) -> Result<()> {
        check_vertices(&self.vertices)?;
        check_planar(&self.vertices, &self.edges)?;
        for (e, c) in self.edge_face_counts() {
            if c == 0 || c > 2 {
                return Err(Error::InvalidNetwork(format!("edge {}-{} borders {c} faces", e[0], e[1])));
            }
        }
        for f in 0..self.faces.len() {
            if self.face_area(f) <= 0.0 {
                return Err(Error::InvalidNetwork(format!("face {f} has non-positive area")));
            }
        }
        Ok(())
    }

    /// Applies a similarity transform to every vertex.
    pub fn transformed(&self, angle: f64, scale: f64, offset: Point) -> PlanarNetwork {
        let mut out = self.clone();
        for p in &mut out.vertices {
            *p = p.rotate(angle) * scale + offset;
        }
        out
    }

    fn outer_vertices(&self) -> Vec<bool> {
        let mut flags = vec![false; self.vertices.len()];
        for (e, c) in self.edge_face_counts() {
            if c < 2 {
                flags[e[0]] = true;
                flags[e[1]] = true;
            }
        }
        flags
    }

    pub fn to_file(&self) -> NetworkFile {
        NetworkFile {
            vertices: self.vertices.iter().map(|&p| p.into()).collect(),
            edges: self.edges.clone(),
            faces: Some(self.faces.clone()),
            boundary: (0..self.vertices.len()).filter(|&v| self.boundary[v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("network serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// Convenience wrapper over [`PlanarNetwork::from_edges`].
pub fn extract_faces(vertices: Vec<Point>, edges: Vec<[usize; 2]>) -> Result<PlanarNetwork> {
    PlanarNetwork::from_edges(vertices, edges)
}

/// On-disk network layout.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NetworkFile {
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub boundary: Vec<usize>,
}

impl NetworkFile {
    pub fn into_network(self) -> Result<PlanarNetwork> {
        let vertices: Vec<Point> = self.vertices.into_iter().map(Point::from).collect();
        let n = vertices.len();
        let net = match self.faces {
            Some(faces) => {
                let boundary = if self.boundary.is_empty() {
                    None
                } else {
                    let mut flags = vec![false; n];
                    for &v in &self.boundary {
                        if v >= n {
                            return Err(Error::InvalidNetwork(format!("boundary vertex {v} out of range")));
                        }
                        flags[v] = true;
                    }
                    Some(flags)
                };
                PlanarNetwork::from_parts(vertices, self.edges, faces, boundary)?
            }
            None => {
                let mut net = PlanarNetwork::from_edges(vertices, self.edges)?;
                for &v in &self.boundary {
                    if v >= n {
                        return Err(Error::InvalidNetwork(format!("boundary vertex {v} out of range")));
                    }
                    net.boundary[v] = true;
                }
                net
            }
        };
        Ok(net)
    }
}

pub fn parse_network_json(text: &str) -> Result<PlanarNetwork> {
    let file: NetworkFile = serde_json::from_str(text)?;
    file.into_network()
}

pub fn read_network(path: &Path) -> Result<PlanarNetwork> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_network_json(&text)
}

fn check_vertices(vertices: &[Point]) -> Result<()> {
    match vertices.iter().position(|p| !p.is_finite()) {
        Some(i) => Err(Error::InvalidNetwork(format!("vertex {i} has a non-finite coordinate"))),
        None => Ok(()),
    }
}

fn normalize_edges(n: usize, edges: Vec<[usize; 2]>) -> Result<Vec<[usize; 2]>> {
    let mut out = Vec::with_capacity(edges.len());
    for [a, b] in edges {
        if a >= n || b >= n {
            return Err(Error::InvalidNetwork(format!("edge {a}-{b} references a missing vertex")));
        }
        if a == b {
            return Err(Error::InvalidNetwork(format!("self-loop at vertex {a}")));
        }
        out.push([a.min(b), a.max(b)]);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Edges may only meet at shared endpoints. Candidate pairs come from a
/// uniform grid over edge bounding boxes.
fn check_planar(vertices: &[Point], edges: &[[usize; 2]]) -> Result<()> {
    if edges.len() < 2 {
        return Ok(());
    }
    let (mut lo, mut hi) = (vertices[edges[0][0]], vertices[edges[0][0]]);
    for e in edges {
        for &v in e {
            let p = vertices[v];
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
    }
    let side = ((edges.len() as f64).sqrt().ceil() as usize).clamp(1, 512);
    let w = ((hi.x - lo.x) / side as f64).max(f64::MIN_POSITIVE);
    let h = ((hi.y - lo.y) / side as f64).max(f64::MIN_POSITIVE);
    let cell = |p: Point| {
        let i = (((p.x - lo.x) / w) as usize).min(side - 1);
        let j = (((p.y - lo.y) / h) as usize).min(side - 1);
        (i, j)
    };
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); side * side];
    for (k, e) in edges.iter().enumerate() {
        let (a, b) = (vertices[e[0]], vertices[e[1]]);
        let (i0, j0) = cell(Point::new(a.x.min(b.x), a.y.min(b.y)));
        let (i1, j1) = cell(Point::new(a.x.max(b.x), a.y.max(b.y)));
        for i in i0..=i1 {
            for j in j0..=j1 {
                buckets[i * side + j].push(k);
            }
        }
    }
    for bucket in &buckets {
        for (x, &e1) in bucket.iter().enumerate() {
            for &e2 in &bucket[x + 1..] {
                if edges_conflict(vertices, edges[e1], edges[e2]) {
                    let (p, q) = (edges[e1], edges[e2]);
                    return Err(Error::InvalidNetwork(format!(
                        "edges {}-{} and {}-{} cross",
                        p[0], p[1], q[0], q[1]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn edges_conflict(vertices: &[Point], e: [usize; 2], f: [usize; 2]) -> bool {
    let shared = [e[0], e[1]].into_iter().find(|v| f.contains(v));
    let (a, b, c, d) = (vertices[e[0]], vertices[e[1]], vertices[f[0]], vertices[f[1]]);
    match shared {
        None => segments_intersect(a, b, c, d),
        Some(s) => {
            // two edges from a common vertex overlap only if they leave in the same direction
            let p = if e[0] == s { b } else { a };
            let q = if f[0] == s { d } else { c };
            let o = vertices[s];
            orient(o, p, q) == 0.0 && (p - o).dot(q - o) > 0.0
        }
    }
}

/// Walks every half-edge, turning clockwise-most at each vertex, which traces
/// bounded faces counterclockwise and the outer face clockwise.
fn trace_faces(vertices: &[Point], edges: &[[usize; 2]]) -> Result<Vec<Vec<usize>>> {
    let n = vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &[a, b] in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for (v, nb) in adj.iter_mut().enumerate() {
        match nb.len() {
            0 => return Err(Error::InvalidNetwork(format!("vertex {v} is isolated"))),
            1 => return Err(Error::InvalidNetwork(format!("dangling edge at vertex {v}"))),
            _ => {}
        }
        let o = vertices[v];
        nb.sort_by(|&p, &q| (vertices[p] - o).angle().total_cmp(&(vertices[q] - o).angle()));
    }
    let offset: Vec<usize> = adj
        .iter()
        .scan(0, |acc, nb| {
            let start = *acc;
            *acc += nb.len();
            Some(start)
        })
        .collect();
    // position of u within adj[v]
    let slot = |v: usize, u: usize| adj[v].iter().position(|&w| w == u).expect("symmetric adjacency");
    let mut seen = vec![false; 2 * edges.len()];
    let mut faces = Vec::new();
    let mut outer = 0;
    for start_v in 0..n {
        for k in 0..adj[start_v].len() {
            if seen[offset[start_v] + k] {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut u, mut i) = (start_v, k);
            while !seen[offset[u] + i] {
                seen[offset[u] + i] = true;
                cycle.push(u);
                let v = adj[u][i];
                let deg = adj[v].len();
                let j = (slot(v, u) + deg - 1) % deg;
                u = v;
                i = j;
            }
            let pts: Vec<Point> = cycle.iter().map(|&v| vertices[v]).collect();
            if signed_area(&pts) > 0.0 {
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidNetwork(format!(
                        "face through vertex {} revisits a vertex (bridge edge)",
                        cycle[0]
                    )));
                }
                faces.push(cycle);
            } else {
                outer += 1;
            }
        }
    }
    if outer != 1 {
        return Err(Error::InvalidNetwork(format!(
            "expected one connected outer boundary, found {outer}"
        )));
    }
    Ok(faces)
}
