//! Closed-form and near-linear-time 2-turning distances involving regular
//! polygons, the segment `R_2`, and the circle.
//!
//! Distances are reported as `d_2`; internally several formulas work with
//! the normalized square `D_2 = (d_2 / pi)^2`.

use crate::error::{Error, Result};
use crate::turning::TurningFunction;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

/// A regular polygon by side count; `n = 2` stands for the segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegularPolygonSpec {
    n: u64,
}

impl RegularPolygonSpec {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewSides(n));
        }
        Ok(RegularPolygonSpec { n })
    }

    pub fn sides(self) -> u64 {
        self.n
    }

    pub fn turning_function(self) -> TurningFunction {
        TurningFunction::regular(self.n).expect("n >= 2")
    }
}

fn check_sides(n: u64) -> Result<()> {
    RegularPolygonSpec::new(n).map(|_| ())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact numerator of `D_2(R_n, R_k) * (nk)^3`, or `None` on overflow.
///
/// Walks the merged jump lists `{l/n}` and `{m/k}` in order. Every jump sits
/// on the grid `1/(nk)`, so gap lengths and step heights are integers in
/// units of `1/(nk)` and the whole sum is exact in 128-bit arithmetic.
fn regular_sum_numerator(n: u64, k: u64) -> Option<i128> {
    let (n128, k128) = (n as i128, k as i128);
    let nk = n128.checked_mul(k128)?;
    // positions in units of 1/(nk): l/n -> l*k, m/k -> m*n
    let (mut l, mut m) = (0i128, 0i128);
    let mut pos = 0i128;
    let mut sum: i128 = 0;
    while pos < nk {
        // steps currently active: f_n = 2 pi l/n, f_k = 2 pi m/k (l, m are the
        // counts of jumps passed, minus one)
        let next_n = (l + 1) * k128;
        let next_k = (m + 1) * n128;
        let next = next_n.min(next_k);
        let gap = next - pos;
        // (f_n - f_k)/(2 pi) = l/n - m/k = (l k - m n)/(nk)
        let height = l * k128 - m * n128;
        sum = sum.checked_add(gap.checked_mul(height.checked_mul(height)?)?)?;
        if next_n == next {
            l += 1;
        }
        if next_k == next {
            m += 1;
        }
        pos = next;
    }
    // D_2 = 4 sum/(nk)^3 - (1/n - 1/k)^2 = [4 sum - (k - n)^2 nk] / (nk)^3
    let diff = k128 - n128;
    sum.checked_mul(4)?.checked_sub(diff.checked_mul(diff)?.checked_mul(nk)?)
}

/// `D_2(R_n, R_k)` from the merged jump lists, exact up to one final rounding.
pub fn normalized_regular_sum(n: u64, k: u64) -> Result<f64> {
    check_sides(n)?;
    check_sides(k)?;
    if let Some(num) = regular_sum_numerator(n, k) {
        let nk = n as f64 * k as f64;
        return Ok((num as f64 / nk / nk / nk).max(0.0));
    }
    Ok(regular_sum_float(n, k))
}

// Same walk in floating point, for sizes whose exact numerator overflows.
fn regular_sum_float(n: u64, k: u64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let (mut l, mut m) = (0u64, 0u64);
    let mut pos = 0.0f64;
    let mut sum = 0.0;
    while l < n || m < k {
        let next_n = (l + 1) as f64 / nf;
        let next_k = (m + 1) as f64 / kf;
        let next = next_n.min(next_k);
        let height = 2.0 * (l as f64 / nf - m as f64 / kf);
        sum += (next - pos) * height * height;
        let a = (l + 1) as u128 * k as u128;
        let b = (m + 1) as u128 * n as u128;
        if a <= b {
            l += 1;
        }
        if b <= a {
            m += 1;
        }
        pos = next;
    }
    let rot = 1.0 / nf - 1.0 / kf;
    (sum - rot * rot).max(0.0)
}

/// `d_2(R_n, R_k)` in `O(n + k)` steps over the merged jump lists.
pub fn d2_regular_sum(n: u64, k: u64) -> Result<f64> {
    Ok(PI * normalized_regular_sum(n, k)?.sqrt())
}

/// `d_2(R_n, R_k)` by the floor-function sum over all `nk` equal subintervals.
/// Quadratic cost; kept as an independent cross-check. `include_last` adds
/// the `i = nk` term, which vanishes identically.
pub fn d2_regular_direct(n: u64, k: u64, include_last: bool) -> Result<f64> {
    check_sides(n)?;
    check_sides(k)?;
    let (nf, kf) = (n as f64, k as f64);
    let upper = if include_last { n * k } else { n * k - 1 };
    let mut sum = 0.0;
    for i in 0..=upper {
        let term = (i / n) as f64 / kf - (i / k) as f64 / nf;
        sum += term * term;
    }
    let rot = 1.0 / nf - 1.0 / kf;
    let d = (4.0 / (nf * kf) * sum - rot * rot).max(0.0);
    Ok(PI * d.sqrt())
}

/// Which closed form produced a regular-pair distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormulaKind {
    /// `n = k`.
    Identical,
    /// One side count is `a` times the other.
    Multiple { a: u64 },
    /// After dividing by the gcd, the pair is `(m, m + 1)`.
    Consecutive { m: u64 },
    /// No closed form; merged-list summation on the reduced pair.
    Sum { reduced_n: u64, reduced_k: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormResult {
    pub distance: f64,
    pub formula: FormulaKind,
    /// `gcd(n, k)` divided out before applying the formula (1 if none).
    pub gcd_factor: u64,
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaKind::Identical => write!(f, "identical"),
            FormulaKind::Multiple { a } => write!(f, "multiple(a={a})"),
            FormulaKind::Consecutive { m } => write!(f, "consecutive(m={m})"),
            FormulaKind::Sum { .. } => write!(f, "sum"),
        }
    }
}

impl ClosedFormResult {
    /// Short tag such as `"gcd+consecutive"` or `"sum"`.
    pub fn tag(&self) -> String {
        let base = match self.formula {
            FormulaKind::Identical => "identical",
            FormulaKind::Multiple { .. } => "multiple",
            FormulaKind::Consecutive { .. } => "consecutive",
            FormulaKind::Sum { .. } => "sum",
        };
        if self.gcd_factor > 1 {
            format!("gcd+{base}")
        } else {
            base.to_string()
        }
    }
}

/// `d_2(R_{an}, R_n)`.
pub fn d2_multiple(a: u64, n: u64) -> f64 {
    let (a, n) = (a as f64, n as f64);
    PI / (a * n) * ((a * a - 1.0) / 3.0).sqrt()
}

/// `D_2(R_m, R_{m+1})`.
pub fn normalized_consecutive(m: u64) -> f64 {
    let m = m as f64;
    (2.0 * m * m + 2.0 * m - 1.0) / (3.0 * m * m * (m + 1.0) * (m + 1.0))
}

/// `d_2(R_n, R_k)` through the cheapest exact path: identical, multiples,
/// gcd reduction, consecutive side counts, then summation.
pub fn d2_regular_closed(n: u64, k: u64) -> Result<ClosedFormResult> {
    check_sides(n)?;
    check_sides(k)?;
    let (lo, hi) = (n.min(k), n.max(k));
    if lo == hi {
        return Ok(ClosedFormResult { distance: 0.0, formula: FormulaKind::Identical, gcd_factor: 1 });
    }
    if hi % lo == 0 {
        let a = hi / lo;
        return Ok(ClosedFormResult { distance: d2_multiple(a, lo), formula: FormulaKind::Multiple { a }, gcd_factor: 1 });
    }
    let q = gcd(lo, hi);
    let (rl, rh) = (lo / q, hi / q);
    let scale = 1.0 / q as f64;
    if rh == rl + 1 && rl >= 2 {
        let d = PI * normalized_consecutive(rl).sqrt();
        return Ok(ClosedFormResult { distance: scale * d, formula: FormulaKind::Consecutive { m: rl }, gcd_factor: q });
    }
    let d = d2_regular_sum(rl, rh)?;
    Ok(ClosedFormResult {
        distance: scale * d,
        formula: FormulaKind::Sum { reduced_n: rl, reduced_k: rh },
        gcd_factor: q,
    })
}

/// Cumulative perimeters and corner turning angles of a polygon, as used by
/// the circle formula.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonTrace {
    cumulative: Vec<f64>,
    angles: Vec<f64>,
}

impl PolygonTrace {
    /// `cumulative = [x_0 = 0, ..., x_n = 1]`, `angles = [theta_0, ..., theta_n]`
    /// with `theta_n = theta_0 + 2 pi`.
    pub fn new(cumulative: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if cumulative.len() < 3 || cumulative.len() != angles.len() {
            return Err(Error::InvalidTrace("need n+1 >= 3 perimeters and as many angles".into()));
        }
        if cumulative[0] != 0.0 || (cumulative[cumulative.len() - 1] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidTrace("cumulative perimeters must run from 0 to 1".into()));
        }
        if let Some(i) = cumulative.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTrace(format!("cumulative perimeter not increasing at index {}", i + 1)));
        }
        Ok(PolygonTrace { cumulative, angles })
    }

    /// Trace of a step turning function.
    pub fn from_turning(f: &TurningFunction) -> Result<Self> {
        if !f.is_step() {
            return Err(Error::InvalidTrace("turning function is not a step function".into()));
        }
        let mut cumulative = f.breakpoints().to_vec();
        cumulative.push(1.0);
        let mut angles = f.values().to_vec();
        angles.push(f.values()[0] + f.total_turn());
        PolygonTrace::new(cumulative, angles)
    }

    pub fn regular(n: u64) -> Result<Self> {
        Self::from_turning(&TurningFunction::regular(n)?)
    }

    pub fn cumulative_perimeters(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn corner_angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn sides(&self) -> usize {
        self.cumulative.len() - 1
    }
}

/// `d_2(C, P)` from the cubic-difference sum minus the squared mean rotation.
pub fn d2_circle_polygon(trace: &PolygonTrace) -> f64 {
    let x = &trace.cumulative;
    let th = &trace.angles;
    let n = trace.sides();
    let mut cubic = 0.0;
    let mut weighted = 0.0;
    for i in 1..=n {
        let c = th[i - 1] / PI;
        let hi = 2.0 * x[i] - c;
        let lo = 2.0 * x[i - 1] - c;
        cubic += hi * hi * hi - lo * lo * lo;
        weighted += c * (x[i] - x[i - 1]);
    }
    let rot = 1.0 - weighted;
    let d = (cubic / 6.0 - rot * rot).max(0.0);
    PI * d.sqrt()
}

/// `d_2(C, R_n) = sqrt(3) pi / (3n)`.
pub fn d2_circle_regular(n: u64) -> Result<f64> {
    check_sides(n)?;
    Ok(3f64.sqrt() * PI / (3.0 * n as f64))
}

/// Target shape for comparisons against the segment `R_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderedTarget {
    Regular(u64),
    Circle,
}

/// `d_2(R_2, target)`.
pub fn d2_segment_vs(target: OrderedTarget) -> Result<f64> {
    match target {
        OrderedTarget::Regular(n) => d2_regular_sum(2, n),
        OrderedTarget::Circle => d2_circle_regular(2),
    }
}

/// Area of a regular `n`-gon with unit side.
pub fn regular_area_unit_side(n: u64) -> f64 {
    let n = n as f64;
    n / (4.0 * (PI / n).tan())
}

/// Mean of the regular step function, `pi (1 - 1/n)`.
pub fn regular_mean(n: u64) -> f64 {
    PI * (1.0 - 1.0 / n as f64)
}
