//! Tutte (barycentric) embedding: every free vertex sits at the mean of its
//! neighbors while pinned vertices stay put.

use super::mesh::Mesh;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::network::PlanarNetwork;
use serde::Serialize;

/// Target for the scaled residual; the hard limit is [`RESIDUAL_LIMIT`].
const SOLVE_TOLERANCE: f64 = 1e-13;
pub const RESIDUAL_LIMIT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TutteReport {
    pub iterations: usize,
    /// Largest coordinate gap between a free vertex and its neighbor mean.
    pub residual: f64,
}

/// Re-embeds the free vertices of a network whose boundary flags mark the
/// pinned vertices.
pub fn tutte_embed(network: &PlanarNetwork) -> Result<(PlanarNetwork, TutteReport)> {
    let mut mesh = Mesh::from_network(network);
    let report = solve(&mut mesh)?;
    let out = PlanarNetwork::from_raw(
        mesh.pos,
        network.edges().to_vec(),
        network.faces().to_vec(),
        network.boundary_flags().to_vec(),
    );
    Ok((out, report))
}

/// Max-norm gap between each free vertex and the mean of its neighbors.
pub(crate) fn residual(mesh: &Mesh) -> f64 {
    let mut worst: f64 = 0.0;
    for v in 0..mesh.pos.len() {
        if !mesh.alive[v] || mesh.pinned[v] || mesh.adj[v].is_empty() {
            continue;
        }
        let sum = mesh.adj[v].iter().fold(Point::default(), |acc, &w| acc + mesh.pos[w]);
        let gap = mesh.pos[v] - sum * (1.0 / mesh.adj[v].len() as f64);
        worst = worst.max(gap.x.abs()).max(gap.y.abs());
    }
    worst
}

/// Solves the Laplacian system in place by Jacobi-preconditioned conjugate
/// gradients, warm-started from the current coordinates.
pub(crate) fn solve(mesh: &mut Mesh) -> Result<TutteReport> {
    let n = mesh.pos.len();
    let free: Vec<usize> = (0..n).filter(|&v| mesh.alive[v] && !mesh.pinned[v]).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    check_anchored(mesh, &free)?;
    let m = free.len();
    let deg: Vec<f64> = free.iter().map(|&v| mesh.adj[v].len() as f64).collect();
    let mut iterations = 0;
    for coord in 0..2 {
        let get = |p: Point| if coord == 0 { p.x } else { p.y };
        let b: Vec<f64> = free
            .iter()
            .map(|&v| mesh.adj[v].iter().filter(|&&w| mesh.pinned[w]).map(|&w| get(mesh.pos[w])).sum())
            .collect();
        let mut x: Vec<f64> = free.iter().map(|&v| get(mesh.pos[v])).collect();
        let apply = |x: &[f64], out: &mut [f64]| {
            for (i, &v) in free.iter().enumerate() {
                let mut s = deg[i] * x[i];
                for &w in &mesh.adj[v] {
                    if slot[w] != usize::MAX {
                        s -= x[slot[w]];
                    }
                }
                out[i] = s;
            }
        };
        let mut ax = vec![0.0; m];
        apply(&x, &mut ax);
        let mut r: Vec<f64> = (0..m).map(|i| b[i] - ax[i]).collect();
        let scaled = |r: &[f64]| (0..m).map(|i| (r[i] / deg[i]).abs()).fold(0.0, f64::max);
        let mut z: Vec<f64> = (0..m).map(|i| r[i] / deg[i]).collect();
        let mut p = z.clone();
        let mut rz: f64 = (0..m).map(|i| r[i] * z[i]).sum();
        let mut ap = vec![0.0; m];
        let max_iter = 20 * m + 1000;
        let mut k = 0;
        while scaled(&r) > SOLVE_TOLERANCE && k < max_iter {
            apply(&p, &mut ap);
            let pap: f64 = (0..m).map(|i| p[i] * ap[i]).sum();
            if pap <= 0.0 {
                break;
            }
            let alpha = rz / pap;
            for i in 0..m {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            // refresh the residual now and then to shed drift
            if k % 50 == 49 {
                apply(&x, &mut ax);
                for i in 0..m {
                    r[i] = b[i] - ax[i];
                }
            }
            for i in 0..m {
                z[i] = r[i] / deg[i];
            }
            let rz_new: f64 = (0..m).map(|i| r[i] * z[i]).sum();
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..m {
                p[i] = z[i] + beta * p[i];
            }
            k += 1;
        }
        iterations = iterations.max(k);
        for (i, &v) in free.iter().enumerate() {
            if coord == 0 {
                mesh.pos[v].x = x[i];
            } else {
                mesh.pos[v].y = x[i];
            }
        }
    }
    let res = residual(mesh);
    if !(res <= RESIDUAL_LIMIT) {
        return Err(Error::Solver(format!("residual {res:e} after {iterations} iterations")));
    }
    Ok(TutteReport { iterations, residual: res })
}

/// Every free vertex must reach a pinned vertex, or the system is singular.
fn check_anchored(mesh: &Mesh, free: &[usize]) -> Result<()> {
    let n = mesh.pos.len();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| mesh.alive[v] && mesh.pinned[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &mesh.adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    match free.iter().find(|&&v| !seen[v]) {
        Some(&v) => Err(Error::Solver(format!(
            "component containing vertex {v} has no pinned vertex"
        ))),
        None => Ok(()),
    }
}
