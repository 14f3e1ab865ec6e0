//! Exact p-turning distances between turning functions.
//!
//! For two step functions the minimizing circular shift lies on a critical
//! event, a shift at which a jump of one function lines up with a jump of the
//! other. At each event the optimal rotation is found exactly: the mean of the
//! difference for p = 2, a weighted median for p = 1, and golden-section
//! search on the convex rotation objective for other p.

use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::turning::TurningFunction;
use serde::Serialize;
use std::f64::consts::TAU;

/// De-duplication tolerance for critical events.
pub const EVENT_TOLERANCE: f64 = 1e-12;

/// Tolerance on the rotation for the golden-section search.
pub const THETA_TOLERANCE: f64 = 1e-10;

/// Sorted, de-duplicated circular shifts in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalEventSet {
    events: Vec<f64>,
}

impl CriticalEventSet {
    pub fn events(&self) -> &[f64] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceResult {
    pub distance: f64,
    pub optimal_shift_t: f64,
    pub optimal_rotation_theta: f64,
    pub p: f64,
}

/// A maximal interval on which `f(s + t) - g(s)` is affine.
#[derive(Debug, Clone, Copy)]
struct DiffSegment {
    len: f64,
    value: f64,
    slope: f64,
}

/// Splits `[0, 1)` into intervals where both `f(s + t)` and `g(s)` are a
/// single piece and returns `f(s + t) - g(s)` on each.
fn difference_segments(f: &TurningFunction, g: &TurningFunction, t: f64) -> Vec<DiffSegment> {
    let shift_k = t.floor();
    let mut tt = t - shift_k;
    let mut wraps = shift_k;
    if tt >= 1.0 {
        tt -= 1.0;
        wraps += 1.0;
    }

    // breakpoints of f(. + tt) inside [0, 1), as a rotation of f's sorted list
    let fb = f.breakpoints();
    let split = fb.partition_point(|&b| b < tt);
    let shifted = fb[split..]
        .iter()
        .map(|&b| b - tt)
        .chain(fb[..split].iter().map(|&b| b - tt + 1.0));

    let mut cuts: Vec<f64> = Vec::with_capacity(fb.len() + g.len() + 2);
    let mut gb = g.breakpoints().iter().copied().peekable();
    let mut sh = shifted.peekable();
    loop {
        let next = match (sh.peek(), gb.peek()) {
            (Some(&a), Some(&b)) => {
                if a <= b {
                    sh.next()
                } else {
                    gb.next()
                }
            }
            (Some(_), None) => sh.next(),
            (None, Some(_)) => gb.next(),
            (None, None) => break,
        };
        cuts.extend(next);
    }
    cuts.push(1.0);

    let mut out: Vec<DiffSegment> = Vec::with_capacity(cuts.len());
    let mut left = 0.0;
    for (i, &right) in cuts.iter().enumerate() {
        // slivers from breakpoints that coincide up to rounding are folded
        // into the next segment; otherwise equal shapes sit at sqrt(eps)
        if right - left <= EVENT_TOLERANCE {
            if i + 1 == cuts.len() {
                if let Some(prev) = out.last_mut() {
                    prev.len += right - left;
                    continue;
                }
            } else {
                continue;
            }
        }
        let mid = 0.5 * (left + right);
        let mut u = mid + tt;
        let mut extra = wraps;
        if u >= 1.0 {
            u -= 1.0;
            extra += 1.0;
        }
        let fp = f.piece(f.piece_index(u));
        let u_left = left + tt - (extra - wraps);
        let f_left = fp.value + fp.slope * (u_left - fp.start) + extra * f.total_turn();
        let gp = g.piece(g.piece_index(mid));
        let g_left = gp.value + gp.slope * (left - gp.start);
        out.push(DiffSegment {
            len: right - left,
            value: f_left - g_left,
            slope: fp.slope - gp.slope,
        });
        left = right;
    }
    out
}

fn mean_of(segments: &[DiffSegment]) -> f64 {
    segments.iter().map(|s| s.len * (s.value + 0.5 * s.slope * s.len)).sum()
}

/// Exact `\int_0^1 |h(s) + theta|^p ds` over the difference segments.
fn power_integral(segments: &[DiffSegment], theta: f64, p: f64) -> f64 {
    segments
        .iter()
        .map(|s| {
            let a = s.value + theta;
            if p == 2.0 {
                let (b, l) = (s.slope, s.len);
                l * (a * a + a * b * l + b * b * l * l / 3.0)
            } else if s.slope == 0.0 {
                a.abs().powf(p) * s.len
            } else {
                let anti = |u: f64| u.signum() * u.abs().powf(p + 1.0) / (p + 1.0);
                (anti(a + s.slope * s.len) - anti(a)) / s.slope
            }
        })
        .sum()
}

/// All pairwise breakpoint differences `b_f - b_g (mod 1)`, sorted and
/// de-duplicated within [`EVENT_TOLERANCE`].
pub fn critical_events(f: &TurningFunction, g: &TurningFunction) -> CriticalEventSet {
    let mut events = Vec::with_capacity(f.len() * g.len());
    for &a in f.breakpoints() {
        for &b in g.breakpoints() {
            let mut t = a - b;
            if t < 0.0 {
                t += 1.0;
            }
            if t >= 1.0 - EVENT_TOLERANCE {
                t = 0.0;
            }
            events.push(t);
        }
    }
    events.sort_by(f64::total_cmp);
    events.dedup_by(|later, kept| *later - *kept <= EVENT_TOLERANCE);
    CriticalEventSet { events }
}

/// `\int_0^1 |f(s + t) - g(s) + theta|^p ds`, evaluated exactly piece by piece.
pub fn integral_at(f: &TurningFunction, g: &TurningFunction, t: f64, theta: f64, p: f64) -> f64 {
    power_integral(&difference_segments(f, g, t), theta, p)
}

/// Rotation minimizing the p = 2 integral at shift `t`:
/// `\int_0^1 g(s) - f(s + t) ds`.
pub fn optimal_theta(f: &TurningFunction, g: &TurningFunction, t: f64) -> f64 {
    -mean_of(&difference_segments(f, g, t))
}

/// Squared 2-distance at a fixed shift, with the rotation optimized out.
fn d2_squared_at(f: &TurningFunction, g: &TurningFunction, t: f64) -> (f64, f64) {
    let segs = difference_segments(f, g, t);
    let mean = mean_of(&segs);
    // centered second pass: the one-pass E[h^2] - E[h]^2 loses everything
    // below sqrt(eps) when the two shapes nearly coincide
    (power_integral(&segs, -mean, 2.0).max(0.0), -mean)
}

// Near-ties keep the earlier (smaller) shift.
fn better(candidate: f64, best: f64) -> bool {
    if best.is_infinite() {
        return candidate.is_finite();
    }
    candidate < best - 1e-13 * best.abs()
}

/// Exact 2-turning distance between two turning functions.
///
/// Step functions are minimized over their critical events. When either side
/// is the circle the shift is irrelevant and `t = 0` is used. Other affine
/// pairs are rejected.
pub fn d2_turning(f: &TurningFunction, g: &TurningFunction) -> Result<DistanceResult> {
    if f.is_shift_invariant() || g.is_shift_invariant() {
        let (sq, theta) = d2_squared_at(f, g, 0.0);
        return Ok(DistanceResult { distance: sq.sqrt(), optimal_shift_t: 0.0, optimal_rotation_theta: theta, p: 2.0 });
    }
    if !(f.is_step() && g.is_step()) {
        return Err(Error::UnsupportedPair("non-step functions other than the circle"));
    }
    let events = critical_events(f, g);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &t in events.events() {
        let (sq, theta) = d2_squared_at(f, g, t);
        if better(sq, best.0) {
            best = (sq, t, theta);
        }
    }
    Ok(DistanceResult { distance: best.0.sqrt(), optimal_shift_t: best.1, optimal_rotation_theta: best.2, p: 2.0 })
}

/// Exact 2-turning distance between two polygons.
pub fn d2_general(a: &Polygon, b: &Polygon) -> DistanceResult {
    let f = TurningFunction::from_polygon(a);
    let g = TurningFunction::from_polygon(b);
    d2_turning(&f, &g).expect("polygon turning functions are step functions")
}

/// Minimizes `\sum len_i |v_i + theta|` exactly: theta is minus a weighted
/// median of the piece values.
fn weighted_median_theta(segments: &[DiffSegment]) -> f64 {
    let mut items: Vec<(f64, f64)> = segments.iter().map(|s| (s.value, s.len)).collect();
    items.sort_by(|x, y| x.0.total_cmp(&y.0));
    let total: f64 = items.iter().map(|x| x.1).sum();
    let mut acc = 0.0;
    for &(v, w) in &items {
        acc += w;
        if acc >= 0.5 * total {
            return -v;
        }
    }
    -items.last().map(|x| x.0).unwrap_or(0.0)
}

fn golden_section(mut lo: f64, mut hi: f64, tol: f64, objective: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    0.5 * (lo + hi)
}

fn best_theta_at(segments: &[DiffSegment], p: f64) -> (f64, f64) {
    let theta = if p == 2.0 {
        -mean_of(segments)
    } else if p == 1.0 {
        weighted_median_theta(segments)
    } else {
        let lo = segments.iter().map(|s| -s.value).fold(f64::INFINITY, f64::min);
        let hi = segments.iter().map(|s| -s.value).fold(f64::NEG_INFINITY, f64::max);
        golden_section(lo, hi, THETA_TOLERANCE, |th| power_integral(segments, th, p))
    };
    (power_integral(segments, theta, p), theta)
}

/// Exact p-turning distance between two step functions, `p >= 1`.
pub fn dp_turning(f: &TurningFunction, g: &TurningFunction, p: f64) -> Result<DistanceResult> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::UnsupportedExponent(p));
    }
    if p == 2.0 {
        return d2_turning(f, g);
    }
    if !(f.is_step() && g.is_step()) {
        return Err(Error::UnsupportedPair("p != 2 requires step functions"));
    }
    let events = critical_events(f, g);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &t in events.events() {
        let segs = difference_segments(f, g, t);
        let (value, theta) = best_theta_at(&segs, p);
        if better(value, best.0) {
            best = (value, t, theta);
        }
    }
    Ok(DistanceResult {
        distance: best.0.max(0.0).powf(1.0 / p),
        optimal_shift_t: best.1,
        optimal_rotation_theta: best.2,
        p,
    })
}

/// Exact p-turning distance between two polygons, `p >= 1`.
pub fn dp_general(a: &Polygon, b: &Polygon, p: f64) -> Result<DistanceResult> {
    dp_turning(&TurningFunction::from_polygon(a), &TurningFunction::from_polygon(b), p)
}

/// Upper bound on the distance between convex shapes.
pub const CONVEX_BOUND: f64 = TAU;
