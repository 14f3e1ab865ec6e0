//! Turning functions: the cumulative tangent angle of a unit-perimeter closed
//! curve as a function of arc length.
//!
//! A [`TurningFunction`] is stored over one period `[0, 1)` as a list of
//! affine pieces. Polygons produce pure step functions (every slope zero);
//! the circle and the spiral family carry nonzero slopes. Evaluation is
//! right-continuous at breakpoints and extends to the whole real line through
//! `f(s + k) = f(s) + 2 pi k` for integer `k`.

use crate::error::{Error, Result};
use crate::geometry::turn_angle;
use crate::polygon::Polygon;
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, PartialEq)]
pub struct TurningFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    total_turn: f64,
}

/// One affine piece `value + slope * (s - start)` on `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub value: f64,
    pub slope: f64,
}

impl TurningFunction {
    /// Builds a function from affine pieces. `breakpoints` must start at 0,
    /// increase strictly, and stay below 1.
    pub fn from_pieces(breakpoints: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        let n = breakpoints.len();
        if n == 0 || values.len() != n || slopes.len() != n {
            return Err(Error::InvalidTrace("piece arrays must be non-empty and equally long".into()));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidTrace("first breakpoint must be 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) || breakpoints[n - 1] >= 1.0 {
            return Err(Error::InvalidTrace("breakpoints must increase strictly within [0, 1)".into()));
        }
        if values.iter().chain(&slopes).any(|v| !v.is_finite()) {
            return Err(Error::InvalidTrace("non-finite piece value".into()));
        }
        Ok(TurningFunction { breakpoints, values, slopes, total_turn: TAU })
    }

    /// Step function with the given breakpoints and piece values.
    pub fn from_steps(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let slopes = vec![0.0; breakpoints.len()];
        Self::from_pieces(breakpoints, values, slopes)
    }

    /// Turning function of a polygon, traced from vertex 0 along the edge to
    /// vertex 1. Angles are unwrapped along the traversal.
    pub fn from_polygon(polygon: &Polygon) -> Self {
        let v = polygon.vertices();
        let n = v.len();
        let sides = polygon.side_lengths();
        let perimeter: f64 = sides.iter().sum();
        let mut breakpoints = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        let mut position = 0.0;
        let mut angle = (v[1] - v[0]).angle();
        for i in 0..n {
            if i > 0 {
                let prev = v[i] - v[i - 1];
                let next = v[(i + 1) % n] - v[i];
                angle += turn_angle(prev, next);
            }
            breakpoints.push(position / perimeter);
            values.push(angle);
            position += sides[i];
        }
        let slopes = vec![0.0; n];
        TurningFunction { breakpoints, values, slopes, total_turn: TAU }
    }

    /// Step function of the regular `n`-gon in the normalized position:
    /// value `2 pi i / n` on `[i/n, (i+1)/n)`. `n = 2` gives the segment.
    pub fn regular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewSides(n));
        }
        let breakpoints = (0..n).map(|i| i as f64 / n as f64).collect();
        let values = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        Self::from_steps(breakpoints, values)
    }

    /// The degenerate "2-gon": 0 on `[0, 1/2)` and pi on `[1/2, 1)`.
    pub fn segment() -> Self {
        TurningFunction {
            breakpoints: vec![0.0, 0.5],
            values: vec![0.0, PI],
            slopes: vec![0.0, 0.0],
            total_turn: TAU,
        }
    }

    /// The unit-perimeter circle, `2 pi s`.
    pub fn circle() -> Self {
        TurningFunction {
            breakpoints: vec![0.0],
            values: vec![0.0],
            slopes: vec![TAU],
            total_turn: TAU,
        }
    }

    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Right limits at each breakpoint.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn total_turn(&self) -> f64 {
        self.total_turn
    }

    pub fn is_step(&self) -> bool {
        self.slopes.iter().all(|&s| s == 0.0)
    }

    /// True when shifting the argument is the same as adding a constant,
    /// which only holds for the single linear piece `2 pi s`.
    pub fn is_shift_invariant(&self) -> bool {
        self.len() == 1 && self.slopes[0] == self.total_turn
    }

    pub fn piece(&self, i: usize) -> Piece {
        let end = self.breakpoints.get(i + 1).copied().unwrap_or(1.0);
        Piece {
            start: self.breakpoints[i],
            end,
            value: self.values[i],
            slope: self.slopes[i],
        }
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        (0..self.len()).map(|i| self.piece(i))
    }

    /// Index of the piece containing `s` in `[0, 1)`.
    pub fn piece_index(&self, s: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= s).max(1) - 1
    }

    /// Value at `s` in `[0, 1)`.
    pub fn eval(&self, s: f64) -> f64 {
        let p = self.piece(self.piece_index(s));
        p.value + p.slope * (s - p.start)
    }

    /// Value anywhere on the real line via `f(s + k) = f(s) + 2 pi k`.
    pub fn eval_extended(&self, s: f64) -> f64 {
        let mut k = s.floor();
        let mut r = s - k;
        if r >= 1.0 {
            r -= 1.0;
            k += 1.0;
        }
        self.eval(r) + k * self.total_turn
    }

    /// Integral over one period.
    pub fn integral(&self) -> f64 {
        self.pieces()
            .map(|p| {
                let len = p.end - p.start;
                len * (p.value + 0.5 * p.slope * len)
            })
            .sum()
    }
}

/// Turning function of a polygon; see [`TurningFunction::from_polygon`].
pub fn turning_function(polygon: &Polygon) -> TurningFunction {
    TurningFunction::from_polygon(polygon)
}

/// Limit turning function of a spiral with `n` windings: rises as `4 pi n s`
/// on the first half, then unwinds linearly back down to `pi`, closing with
/// a final jump to `2 pi`.
pub fn spiral_turning_function(n: u32) -> Result<TurningFunction> {
    if n < 2 {
        return Err(Error::SpiralWindings(n));
    }
    let n = n as f64;
    let rise = 4.0 * PI * n;
    let fall = 4.0 * (1.0 - n) * PI;
    let mid_value = fall * 0.5 + (4.0 * n - 3.0) * PI;
    TurningFunction::from_pieces(vec![0.0, 0.5], vec![0.0, mid_value], vec![rise, fall])
}
