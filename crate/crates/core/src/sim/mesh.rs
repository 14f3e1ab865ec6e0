//! Mutable trivalent mesh shared by the simulations.

use crate::geometry::Point;
use crate::network::PlanarNetwork;

#[derive(Debug, Clone)]
pub(crate) struct Mesh {
    pub pos: Vec<Point>,
    pub adj: Vec<Vec<usize>>,
    /// `None` once a face has been merged away.
    pub faces: Vec<Option<Vec<usize>>>,
    pub vertex_faces: Vec<Vec<usize>>,
    pub pinned: Vec<bool>,
    pub alive: Vec<bool>,
}

impl Mesh {
    pub fn from_network(net: &PlanarNetwork) -> Mesh {
        let n = net.vertices().len();
        let mut adj = vec![Vec::new(); n];
        for &[a, b] in net.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut vertex_faces = vec![Vec::new(); n];
        for (f, face) in net.faces().iter().enumerate() {
            for &v in face {
                vertex_faces[v].push(f);
            }
        }
        Mesh {
            pos: net.vertices().to_vec(),
            adj,
            faces: net.faces().iter().cloned().map(Some).collect(),
            vertex_faces,
            pinned: net.boundary_flags().to_vec(),
            alive: vec![true; n],
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().flatten().count()
    }

    pub fn face(&self, f: usize) -> &[usize] {
        self.faces[f].as_deref().expect("live face")
    }

    /// Edges with both endpoints free and trivalent, as `(min, max)` pairs in
    /// sorted order.
    pub fn interior_edges(&self) -> Vec<(usize, usize)> {
        let free = |v: usize| self.alive[v] && !self.pinned[v] && self.adj[v].len() == 3;
        let mut out = Vec::new();
        for u in 0..self.adj.len() {
            if !free(u) {
                continue;
            }
            for &v in &self.adj[u] {
                if u < v && free(v) {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The live face whose counterclockwise cycle walks `u -> v`, and the
    /// position of `u` in it.
    pub fn face_with(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        self.vertex_faces[u].iter().find_map(|&f| {
            let face = self.faces[f].as_ref()?;
            let n = face.len();
            let i = face.iter().position(|&w| w == u)?;
            (face[(i + 1) % n] == v).then_some((f, i))
        })
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&w| w != b);
        self.adj[b].retain(|&w| w != a);
    }

    pub fn detach_face(&mut self, v: usize, f: usize) {
        self.vertex_faces[v].retain(|&g| g != f);
    }

    pub fn attach_face(&mut self, v: usize, f: usize) {
        if !self.vertex_faces[v].contains(&f) {
            self.vertex_faces[v].push(f);
        }
    }

    /// Edges as `[min, max]` pairs, sorted.
    pub fn edge_list(&self) -> Vec<[usize; 2]> {
        let mut edges = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    edges.push([u, v]);
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Snapshot with dead vertices and faces dropped and indices compacted.
    pub fn to_network(&self) -> PlanarNetwork {
        let mut map = vec![usize::MAX; self.pos.len()];
        let mut vertices = Vec::new();
        let mut boundary = Vec::new();
        for v in 0..self.pos.len() {
            if self.alive[v] {
                map[v] = vertices.len();
                vertices.push(self.pos[v]);
                boundary.push(self.pinned[v]);
            }
        }
        let edges = self.edge_list().into_iter().map(|[a, b]| [map[a], map[b]]).collect();
        let faces = self
            .faces
            .iter()
            .flatten()
            .map(|f| f.iter().map(|&v| map[v]).collect())
            .collect();
        PlanarNetwork::from_raw(vertices, edges, faces, boundary)
    }
}
