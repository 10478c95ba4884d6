use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{canonicalize, PillowcaseError, PillowcasePoint, ANGLE_TOL, TWO_PI};

// Pieces longer than this are subdivided when a planar path is folded back
// into canonical vertices.
const MAX_PIECE: f64 = PI / 8.0;

/// A planar lift of one polyline segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: (f64, f64),
    pub end: (f64, f64),
}

impl Segment {
    pub fn new(start: (f64, f64), end: (f64, f64)) -> Self {
        Segment { start, end }
    }

    pub fn delta(&self) -> (f64, f64) {
        (self.end.0 - self.start.0, self.end.1 - self.start.1)
    }

    pub fn length(&self) -> f64 {
        let (dx, dy) = self.delta();
        dx.hypot(dy)
    }

    pub fn at(&self, t: f64) -> (f64, f64) {
        let (dx, dy) = self.delta();
        (self.start.0 + t * dx, self.start.1 + t * dy)
    }

    fn bbox(&self) -> [f64; 4] {
        [
            self.start.0.min(self.end.0),
            self.start.0.max(self.end.0),
            self.start.1.min(self.end.1),
            self.start.1.max(self.end.1),
        ]
    }

    fn image(&self, sign: f64, k: i64, l: i64) -> Segment {
        let (tx, ty) = (TWO_PI * k as f64, TWO_PI * l as f64);
        Segment {
            start: (sign * self.start.0 + tx, sign * self.start.1 + ty),
            end: (sign * self.end.0 + tx, sign * self.end.1 + ty),
        }
    }

    /// Distance from the segment to a planar point.
    pub fn distance_to(&self, q: (f64, f64)) -> f64 {
        let (dx, dy) = self.delta();
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((q.0 - self.start.0) * dx + (q.1 - self.start.1) * dy) / len2).clamp(0.0, 1.0)
        };
        let (x, y) = self.at(t);
        (x - q.0).hypot(y - q.1)
    }
}

/// A polyline whose consecutive vertices are joined by short geodesics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PillowcasePolyline {
    pub vertices: Vec<PillowcasePoint>,
    pub closed: bool,
}

impl PillowcasePolyline {
    pub fn new(vertices: Vec<PillowcasePoint>, closed: bool) -> Self {
        PillowcasePolyline { vertices, closed }
    }

    /// Folds a planar path into canonical vertices, subdividing long pieces.
    /// A closed path returns to the lift of its first point nearest the last.
    pub fn from_lifted_path(path: &[(f64, f64)], closed: bool) -> Self {
        let mut vertices = Vec::with_capacity(path.len());
        let n = path.len();
        let pieces = if closed { n } else { n.saturating_sub(1) };
        if n > 0 {
            vertices.push(canonicalize(path[0].0, path[0].1));
        }
        for i in 0..pieces {
            let a = path[i];
            let b = if i + 1 == n {
                canonicalize(path[0].0, path[0].1).nearest_lift(a.0, a.1)
            } else {
                path[i + 1]
            };
            let len = (b.0 - a.0).hypot(b.1 - a.1);
            let steps = ((len / MAX_PIECE).ceil() as usize).max(1);
            let last = if closed && i + 1 == n { steps - 1 } else { steps };
            for s in 1..=last {
                let t = s as f64 / steps as f64;
                vertices.push(canonicalize(a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        PillowcasePolyline { vertices, closed }
    }

    /// Samples a parametrized planar curve at `n` points of `[0, 1)` (closed)
    /// or `[0, 1]` (open).
    pub fn from_parametric(n: usize, closed: bool, f: impl Fn(f64) -> (f64, f64)) -> Self {
        let denom = if closed { n as f64 } else { (n.max(2) - 1) as f64 };
        let path: Vec<_> = (0..n).map(|i| f(i as f64 / denom)).collect();
        Self::from_lifted_path(&path, closed)
    }

    /// The loop `{α = alpha}` traversed with increasing `β`.
    pub fn vertical_loop(alpha: f64, n: usize) -> Self {
        Self::from_parametric(n, true, |t| (alpha, TWO_PI * t))
    }

    /// The arc `{β = beta, 0 ≤ α ≤ π}`.
    pub fn horizontal_arc(beta: f64, n: usize) -> Self {
        Self::from_parametric(n, false, |t| (PI * t, beta))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Planar lifts of the segments; each starts at the canonical coordinates
    /// of its first vertex and ends at the nearest lift of the next.
    pub fn segments(&self) -> Vec<Segment> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        let count = if self.closed { n } else { n - 1 };
        (0..count)
            .map(|i| {
                let a = self.vertices[i].coords();
                let b = self.vertices[(i + 1) % n].nearest_lift(a.0, a.1);
                Segment::new(a, b)
            })
            .collect()
    }

    /// A continuous planar lift of the whole polyline.
    pub fn lifted_path(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        let Some(first) = self.vertices.first() else {
            return out;
        };
        let mut cur = first.coords();
        out.push(cur);
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        for i in 1..=count {
            cur = self.vertices[i % n].nearest_lift(cur.0, cur.1);
            out.push(cur);
        }
        out
    }

    pub fn length(&self) -> f64 {
        self.segments().iter().map(Segment::length).sum()
    }

    /// Image under an integer matrix applied to the planar lift.
    pub fn transformed(&self, m: [[i64; 2]; 2]) -> Self {
        let path: Vec<(f64, f64)> = self
            .lifted_path()
            .into_iter()
            .map(|(x, y)| {
                (
                    m[0][0] as f64 * x + m[0][1] as f64 * y,
                    m[1][0] as f64 * x + m[1][1] as f64 * y,
                )
            })
            .collect();
        if self.closed {
            let trimmed = &path[..path.len().saturating_sub(1)];
            let mut out = Self::from_lifted_path(trimmed, false);
            // close through the transformed closing segment
            if let (Some(a), Some(b)) = (trimmed.last(), path.last()) {
                let len = (b.0 - a.0).hypot(b.1 - a.1);
                let steps = ((len / MAX_PIECE).ceil() as usize).max(1);
                for s in 1..steps {
                    let t = s as f64 / steps as f64;
                    out.vertices.push(canonicalize(a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
                }
            }
            out.closed = true;
            out
        } else {
            Self::from_lifted_path(&path, false)
        }
    }
}

// Lifts of P and Q are the points (kπ, π + 2πl); even k is P, odd k is Q.
fn check_marked_points(seg: &Segment, tol: f64) -> Result<(), PillowcaseError> {
    let [x0, x1, y0, y1] = seg.bbox();
    let k_lo = ((x0 - tol) / PI).ceil() as i64;
    let k_hi = ((x1 + tol) / PI).floor() as i64;
    let l_lo = ((y0 - tol - PI) / TWO_PI).ceil() as i64;
    let l_hi = ((y1 + tol - PI) / TWO_PI).floor() as i64;
    for k in k_lo..=k_hi {
        for l in l_lo..=l_hi {
            let q = (PI * k as f64, PI + TWO_PI * l as f64);
            if seg.distance_to(q) < tol {
                return Err(PillowcaseError::DegenerateCurve(if k.rem_euclid(2) == 0 { "P" } else { "Q" }));
            }
        }
    }
    Ok(())
}

// Lifting a vertex on `β ≡ π` can move it off the level by an ulp; snapping
// keeps the half-open rule consistent between segments.
fn snap_to_level(y: f64) -> f64 {
    let level = PI + TWO_PI * ((y - PI) / TWO_PI).round();
    if (y - level).abs() <= 1e-12 * (1.0 + y.abs()) {
        level
    } else {
        y
    }
}

/// Signed crossings of one segment with the arc `Lπ` from `P` to `Q`.
///
/// A crossing in the strip `α ∈ (0, π)` counts `sign(dβ)`, one in
/// `α ∈ (π, 2π)` counts `−sign(dβ)`. A vertex lying exactly on `β ≡ π`
/// counts as below the arc.
pub fn segment_lpi_crossings(seg: &Segment) -> Result<i64, PillowcaseError> {
    check_marked_points(seg, ANGLE_TOL)?;
    let (y0, y1) = (snap_to_level(seg.start.1), snap_to_level(seg.end.1));
    if y0 == y1 {
        return Ok(0);
    }
    let (lo, hi, dir) = if y1 > y0 { (y0, y1, 1) } else { (y1, y0, -1) };
    let l_first = ((lo - PI) / TWO_PI).ceil() as i64;
    let l_end = ((hi - PI) / TWO_PI).ceil() as i64;
    let mut total = 0;
    for l in l_first..l_end {
        let level = PI + TWO_PI * l as f64;
        let t = (level - y0) / (y1 - y0);
        let x = seg.start.0 + t * (seg.end.0 - seg.start.0);
        let strip = if x.rem_euclid(TWO_PI) < PI { 1 } else { -1 };
        total += dir * strip;
    }
    Ok(total)
}

/// Class of a closed curve in `H1(pillowcase ∖ {P, Q}) ≅ Z`: the signed
/// number of crossings with `Lπ`, upward crossings counting `+1`.
pub fn essential_class(curve: &PillowcasePolyline) -> Result<i64, PillowcaseError> {
    if !curve.closed {
        return Err(PillowcaseError::OpenCurve);
    }
    if curve.vertices.len() < 2 {
        return Err(PillowcaseError::TooFewVertices(2));
    }
    let mut total = 0;
    for seg in curve.segments() {
        total += segment_lpi_crossings(&seg)?;
    }
    Ok(total)
}

/// One intersection point of two polylines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    pub point: PillowcasePoint,
    pub transversal: bool,
    /// Parameter along the segment of the first curve.
    #[serde(skip)]
    pub first: (usize, f64),
    /// Parameter along the segment of the second curve.
    #[serde(skip)]
    pub second: (usize, f64),
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

// Intersection of two planar segments as parameters on each, with a
// transversality flag.
fn planar_intersection(s1: &Segment, s2: &Segment) -> Option<(f64, f64, bool)> {
    let r = s1.delta();
    let s = s2.delta();
    let lr = r.0.hypot(r.1);
    let ls = s.0.hypot(s.1);
    if lr == 0.0 || ls == 0.0 {
        return None;
    }
    let qp = (s2.start.0 - s1.start.0, s2.start.1 - s1.start.1);
    let denom = cross(r, s);
    let eps = 1e-12;
    if denom.abs() > 1e-12 * lr * ls {
        let t = cross(qp, s) / denom;
        let u = cross(qp, r) / denom;
        if t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps {
            return None;
        }
        let transversal = denom.abs() / (lr * ls) > ANGLE_TOL;
        return Some((t.clamp(0.0, 1.0), u.clamp(0.0, 1.0), transversal));
    }
    if cross(qp, r).abs() / lr > ANGLE_TOL {
        return None;
    }
    let r2 = lr * lr;
    let t0 = dot(qp, r) / r2;
    let t1 = dot((qp.0 + s.0, qp.1 + s.1), r) / r2;
    let lo = t0.min(t1).max(0.0);
    let hi = t0.max(t1).min(1.0);
    if lo > hi + eps {
        return None;
    }
    let t = 0.5 * (lo + hi);
    let (x, y) = s1.at(t);
    let u = dot((x - s2.start.0, y - s2.start.1), s) / (ls * ls);
    Some((t, u.clamp(0.0, 1.0), false))
}

/// All intersections between two sets of planar segment lifts, taken modulo
/// the orbifold group. `second[j]` is matched against every image
/// `±second[j] + 2π(k, l)`.
pub fn segment_intersections(first: &[Segment], second: &[Segment]) -> Vec<Intersection> {
    let mut out: Vec<Intersection> = Vec::new();
    if first.is_empty() || second.is_empty() {
        return out;
    }
    const CELL: f64 = 0.25;
    let mut region = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
    for s in first {
        let b = s.bbox();
        region[0] = region[0].min(b[0]);
        region[1] = region[1].max(b[1]);
        region[2] = region[2].min(b[2]);
        region[3] = region[3].max(b[3]);
    }
    let nx = (((region[1] - region[0]) / CELL).floor() as usize) + 1;
    let ny = (((region[3] - region[2]) / CELL).floor() as usize) + 1;
    let cell = |x: f64, origin: f64, n: usize| -> usize { (((x - origin) / CELL).floor().max(0.0) as usize).min(n - 1) };
    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); nx * ny];
    for (i, s) in first.iter().enumerate() {
        let b = s.bbox();
        for cx in cell(b[0], region[0], nx)..=cell(b[1], region[0], nx) {
            for cy in cell(b[2], region[2], ny)..=cell(b[3], region[2], ny) {
                grid[cx * ny + cy].push(i);
            }
        }
    }
    let mut candidates: Vec<usize> = Vec::new();
    for (j, s2) in second.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let base = s2.image(sign, 0, 0);
            let b = base.bbox();
            let k_lo = ((region[0] - b[1]) / TWO_PI).floor() as i64;
            let k_hi = ((region[1] - b[0]) / TWO_PI).ceil() as i64;
            let l_lo = ((region[2] - b[3]) / TWO_PI).floor() as i64;
            let l_hi = ((region[3] - b[2]) / TWO_PI).ceil() as i64;
            for k in k_lo..=k_hi {
                for l in l_lo..=l_hi {
                    let img = s2.image(sign, k, l);
                    let ib = img.bbox();
                    if ib[1] < region[0] || ib[0] > region[1] || ib[3] < region[2] || ib[2] > region[3] {
                        continue;
                    }
                    candidates.clear();
                    for cx in cell(ib[0], region[0], nx)..=cell(ib[1], region[0], nx) {
                        for cy in cell(ib[2], region[2], ny)..=cell(ib[3], region[2], ny) {
                            candidates.extend_from_slice(&grid[cx * ny + cy]);
                        }
                    }
                    candidates.sort_unstable();
                    candidates.dedup();
                    for &i in &candidates {
                        let s1 = &first[i];
                        let fb = s1.bbox();
                        if fb[1] + ANGLE_TOL < ib[0] || ib[1] + ANGLE_TOL < fb[0] || fb[3] + ANGLE_TOL < ib[2] || ib[3] + ANGLE_TOL < fb[2] {
                            continue;
                        }
                        if let Some((t, u, transversal)) = planar_intersection(s1, &img) {
                            let (x, y) = s1.at(t);
                            out.push(Intersection {
                                point: canonicalize(x, y),
                                transversal,
                                first: (i, t),
                                second: (j, u),
                            });
                        }
                    }
                }
            }
        }
    }
    dedup_intersections(out)
}

fn dedup_intersections(mut pts: Vec<Intersection>) -> Vec<Intersection> {
    pts.sort_by(|a, b| {
        (a.point.alpha(), a.point.beta())
            .partial_cmp(&(b.point.alpha(), b.point.beta()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<Intersection> = Vec::with_capacity(pts.len());
    for p in pts {
        if let Some(q) = out.iter_mut().rev().take(8).find(|q| q.point.distance(&p.point) < 10.0 * ANGLE_TOL) {
            q.transversal &= p.transversal;
            continue;
        }
        if let Some(q) = out.iter_mut().find(|q| q.point.distance(&p.point) < 10.0 * ANGLE_TOL) {
            q.transversal &= p.transversal;
            continue;
        }
        out.push(p);
    }
    out
}

/// Intersection points of two polylines with transversality flags.
/// Collinear overlaps are reported as non-transversal points at the middle
/// of each overlapping segment pair.
pub fn polyline_intersections(c1: &PillowcasePolyline, c2: &PillowcasePolyline) -> Vec<Intersection> {
    segment_intersections(&c1.segments(), &c2.segments())
}
