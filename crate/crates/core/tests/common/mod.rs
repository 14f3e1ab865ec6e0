//! Independent reference computations shared by the integration tests. None
//! of this calls the library's distance code.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use turning_disorder::geometry::Point;
use turning_disorder::polygon::Polygon;

/// Step turning function on [0, 1): piece `i` starts at `starts[i]`.
#[derive(Debug, Clone)]
pub struct Steps {
    pub starts: Vec<f64>,
    pub values: Vec<f64>,
}

impl Steps {
    /// Built directly from the vertex list: edge directions accumulated with
    /// signed exterior angles, arc length normalized to one.
    pub fn from_vertices(v: &[Point]) -> Steps {
        let n = v.len();
        let lens: Vec<f64> = (0..n).map(|i| v[i].dist(v[(i + 1) % n])).collect();
        let per: f64 = lens.iter().sum();
        let dir = |i: usize| v[(i + 1) % n] - v[i];
        let mut values = vec![dir(0).y.atan2(dir(0).x)];
        let mut starts = vec![0.0];
        for i in 1..n {
            let (a, b) = (dir(i - 1), dir(i));
            let turn = (a.x * b.y - a.y * b.x).atan2(a.x * b.x + a.y * b.y);
            values.push(values[i - 1] + turn);
            starts.push(starts[i - 1] + lens[i - 1] / per);
        }
        Steps { starts, values }
    }

    pub fn regular(n: usize) -> Steps {
        Steps {
            starts: (0..n).map(|i| i as f64 / n as f64).collect(),
            values: (0..n).map(|i| TAU * i as f64 / n as f64).collect(),
        }
    }

    /// Value at any real `x`, using `f(x + 1) = f(x) + 2 pi`.
    pub fn eval(&self, x: f64) -> f64 {
        let k = x.floor();
        let r = x - k;
        let i = self.starts.partition_point(|&s| s <= r).max(1) - 1;
        self.values[i] + TAU * k
    }
}

/// `(integral of (f(s + t) - g(s))^2, integral of (f(s + t) - g(s)))` over
/// [0, 1), exact for step functions.
pub fn moments(f: &Steps, g: &Steps, t: f64) -> (f64, f64) {
    let mut cuts: Vec<f64> = g.starts.clone();
    cuts.extend(f.starts.iter().map(|&b| (b - t).rem_euclid(1.0)));
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    let (mut sq, mut lin) = (0.0, 0.0);
    for w in cuts.windows(2) {
        let len = w[1] - w[0];
        if len <= 0.0 {
            continue;
        }
        let m = 0.5 * (w[0] + w[1]);
        let d = f.eval(m + t) - g.eval(m);
        sq += len * d * d;
        lin += len * d;
    }
    (sq, lin)
}

/// Squared 2-distance at a fixed shift, minimized over the rotation (the
/// least-squares offset is minus the mean difference).
pub fn dist2_at(f: &Steps, g: &Steps, t: f64) -> f64 {
    let (sq, lin) = moments(f, g, t);
    (sq - lin * lin).max(0.0)
}

/// Squared 2-distance at a fixed shift and rotation.
pub fn dist2_at_theta(f: &Steps, g: &Steps, t: f64, theta: f64) -> f64 {
    let (sq, lin) = moments(f, g, t);
    sq + 2.0 * theta * lin + theta * theta
}

/// Brute-force 2-turning distance: a coarse scan over the shift, then a
/// fine scan around every coarse local minimum that could still be the
/// global one. Always an upper bound on the true distance.
pub fn grid_oracle(f: &Steps, g: &Steps, coarse: usize, fine: usize) -> f64 {
    let h: Vec<f64> = (0..coarse).map(|i| dist2_at(f, g, i as f64 / coarse as f64)).collect();
    let best = h.iter().copied().fold(f64::INFINITY, f64::min);
    // h is Lipschitz in t with constant at most 2 * (2 pi)^2 * 2, so a coarse
    // point more than that times the spacing above `best` cannot hide a minimum
    let margin = 32.0 * PI * PI / coarse as f64;
    let mut result = best;
    for i in 0..coarse {
        let (prev, next) = (h[(i + coarse - 1) % coarse], h[(i + 1) % coarse]);
        if h[i] > best + margin || h[i] > prev.max(next) {
            continue;
        }
        let center = i as f64 / coarse as f64;
        let span = 1.0 / coarse as f64;
        for j in 0..=fine {
            let t = center - span + 2.0 * span * j as f64 / fine as f64;
            result = result.min(dist2_at(f, g, t));
        }
    }
    result.sqrt()
}

/// Star-shaped (hence simple) counterclockwise polygon with `n` vertices.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Polygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = (0..n).all(|i| {
            let next = if i + 1 < n { angles[i + 1] } else { angles[0] + TAU };
            next - angles[i] > 0.05 && next - angles[i] < PI - 0.05
        });
        if !gaps_ok {
            continue;
        }
        let pts = angles.iter().map(|&a| Point::polar(rng.gen_range(0.4..1.6), a)).collect();
        if let Ok(p) = Polygon::new(pts) {
            return p;
        }
    }
}
