use std::f64::consts::PI;

use pillowcase_core::{
    essential_class, polyline_intersections, GluingMatrix, Involution, PillowcasePoint, PillowcasePolyline, Segment, P, Q,
    TWO_PI,
};
use serde::Serialize;
use surep::{EdgeKind, PillowcaseImage};

use crate::GluerError;

/// Distance below which a curve is taken to touch a point or a line.
const TOUCH_TOL: f64 = 1e-6;
/// Sampled points further apart than this many grid steps are disconnected.
const CONNECT_STEPS: f64 = 3.0;

/// Parameters `t` at which `seg` meets `{f = offset + k·period}` for the
/// linear form `f = cx·x + cy·y`. A segment lying on a level yields both ends.
fn level_crossings(seg: &Segment, (cx, cy): (f64, f64), offset: f64, period: f64) -> Vec<f64> {
    let f = |(x, y): (f64, f64)| cx * x + cy * y;
    let (fa, fb) = (f(seg.start), f(seg.end));
    let d = fb - fa;
    let eps = 1e-12 * (1.0 + fa.abs().max(fb.abs()));
    if d.abs() <= eps {
        let r = (fa - offset).rem_euclid(period);
        return if r.min(period - r) <= eps { vec![0.0, 1.0] } else { Vec::new() };
    }
    let (lo, hi) = (fa.min(fb), fa.max(fb));
    let k0 = ((lo - eps - offset) / period).ceil() as i64;
    let k1 = ((hi + eps - offset) / period).floor() as i64;
    (k0..=k1).map(|k| ((offset + k as f64 * period - fa) / d).clamp(0.0, 1.0)).collect()
}

fn point_at(seg: &Segment, t: f64) -> PillowcasePoint {
    seg.at(t).into()
}

fn segment_distance(seg: &Segment, c: &PillowcasePoint) -> f64 {
    let (a, b) = (c.nearest_lift(seg.start.0, seg.start.1), c.nearest_lift(seg.end.0, seg.end.1));
    seg.distance_to(a).min(seg.distance_to(b))
}

/// Groups points into chains whose consecutive members are closer than `r`.
fn clusters(points: &[PillowcasePoint], r: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    for s in 0..n {
        if label[s].is_some() {
            continue;
        }
        let id = out.len();
        label[s] = Some(id);
        let mut members = vec![s];
        let mut k = 0;
        while k < members.len() {
            let u = members[k];
            for v in 0..n {
                if label[v].is_none() && points[u].distance(&points[v]) < r {
                    label[v] = Some(id);
                    members.push(v);
                }
            }
            k += 1;
        }
        out.push(members);
    }
    out
}

fn sort_points(points: &mut [PillowcasePoint]) {
    points.sort_by(|a, b| a.alpha().total_cmp(&b.alpha()).then(a.beta().total_cmp(&b.beta())));
}

/// Points of the image on `pα + β ≡ 0 (mod 2π)` off `β = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineCheck {
    pub pass: bool,
    /// One representative per cluster of offending points.
    pub witnesses: Vec<PillowcasePoint>,
}

/// Connectivity of the image's intersection with `pα + β ≡ π (mod 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectivityCheck {
    pub pass: bool,
    /// Number of clusters at the sampling scale.
    pub components: usize,
    /// One representative per cluster.
    pub representatives: Vec<PillowcasePoint>,
    /// Points further apart than this are counted as disconnected.
    pub link_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub p: i64,
    pub resolution: usize,
    /// No image point on `pα + β ≡ 0` except on `β = 0`.
    pub avoids_zero_line: LineCheck,
    /// The intersection with `pα + β ≡ π` is a single cluster.
    pub half_line_connected: ConnectivityCheck,
    /// Whether `(π/2, 0)` is in the image; only evaluated for `p = 2`.
    pub contains_half_pi: Option<bool>,
    pub touches_p: bool,
    pub touches_q: bool,
}

impl CertificateReport {
    pub fn pass(&self) -> bool {
        self.avoids_zero_line.pass && self.half_line_connected.pass && self.contains_half_pi.unwrap_or(true)
    }
}

fn image_segments(img: &PillowcaseImage) -> Vec<Segment> {
    img.edges
        .iter()
        .filter(|e| e.kind != EdgeKind::Proximity)
        .map(|e| {
            let a = img.points[e.from].point.coords();
            Segment::new(a, img.points[e.to].point.nearest_lift(a.0, a.1))
        })
        .collect()
}

fn line_points(img: &PillowcaseImage, segments: &[Segment], p: i64, offset: f64, tol: f64) -> Vec<PillowcasePoint> {
    let form = (p as f64, 1.0);
    let mut out: Vec<PillowcasePoint> = segments
        .iter()
        .flat_map(|s| level_crossings(s, form, offset, TWO_PI).into_iter().map(move |t| point_at(s, t)))
        .collect();
    for &i in &img.isolated {
        let (x, y) = img.points[i].point.coords();
        if pillowcase_core::wrap_pi(p as f64 * x + y - offset).abs() < tol {
            out.push(img.points[i].point);
        }
    }
    out
}

fn image_contains(img: &PillowcaseImage, segments: &[Segment], c: &PillowcasePoint, tol: f64) -> bool {
    segments.iter().any(|s| segment_distance(s, c) < tol) || img.isolated.iter().any(|&i| img.points[i].point.distance(c) < tol)
}

/// Slope-line conditions for the sampled image, at the sampling tolerance of
/// one grid step.
pub fn slope_line_certificates(img: &PillowcaseImage, p: i64) -> CertificateReport {
    let h = img.step();
    let link = CONNECT_STEPS * h;
    let segments = image_segments(img);

    let mut zero: Vec<PillowcasePoint> =
        line_points(img, &segments, p, 0.0, h).into_iter().filter(|x| !x.on_l0(h)).collect();
    sort_points(&mut zero);
    let witnesses: Vec<PillowcasePoint> = clusters(&zero, link).into_iter().map(|c| zero[c[0]]).collect();

    let mut half = line_points(img, &segments, p, PI, h);
    sort_points(&mut half);
    let comps = clusters(&half, link);
    let representatives: Vec<PillowcasePoint> = comps.iter().map(|c| half[c[0]]).collect();

    CertificateReport {
        p,
        resolution: img.resolution,
        avoids_zero_line: LineCheck { pass: witnesses.is_empty(), witnesses },
        half_line_connected: ConnectivityCheck {
            pass: comps.len() <= 1,
            components: comps.len(),
            representatives,
            link_distance: link,
        },
        contains_half_pi: (p == 2).then(|| image_contains(img, &segments, &PillowcasePoint::new(PI / 2.0, 0.0), h)),
        touches_p: image_contains(img, &segments, &P, h),
        touches_q: image_contains(img, &segments, &Q, h),
    }
}

/// A point where the curve meets `pα + β ∈ πZ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TouchPoint {
    pub point: PillowcasePoint,
    /// Whether the point is some `A_k = (kπ/p, 0)` with `0 < k < p`.
    pub allowed: bool,
}

/// Transversality of the curve and `σ_p` of a second curve at some `A_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransversalityCheck {
    pub k: i64,
    pub point: PillowcasePoint,
    pub transversal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PAvoidingReport {
    pub p: i64,
    /// `None` when the curve passes through `P` or `Q`.
    pub essential_class: Option<i64>,
    pub avoids_corners: bool,
    pub meets_l0: bool,
    pub meets_lpi: bool,
    pub touch_points: Vec<TouchPoint>,
    pub transversality: Vec<TransversalityCheck>,
    pub pass: bool,
}

fn allowed_index(pt: &PillowcasePoint, p: i64) -> Option<i64> {
    if !pt.on_l0(TOUCH_TOL) {
        return None;
    }
    let k = (pt.alpha() * p as f64 / PI).round() as i64;
    ((1..p).contains(&k) && (pt.alpha() - k as f64 * PI / p as f64).abs() < TOUCH_TOL).then_some(k)
}

fn meets_level(segments: &[Segment], offset: f64) -> bool {
    segments.iter().any(|s| !level_crossings(s, (0.0, 1.0), offset, TWO_PI).is_empty())
}

/// Checks that a closed curve is `p`-avoiding: essential, away from `(0, 0)`
/// and `(π, 0)`, meeting `L0` and `Lπ`, and touching the lines
/// `pα + β ∈ πZ` only at the points `A_k`. With `second`, also checks that the
/// curve crosses `σ_p(second)` transversally at every shared `A_k`.
pub fn p_avoiding_certificate(
    curve: &PillowcasePolyline,
    p: i64,
    second: Option<&PillowcasePolyline>,
) -> Result<PAvoidingReport, GluerError> {
    if !curve.closed {
        return Err(GluerError::OpenCurve);
    }
    Involution::sigma_p(p)?;
    let segments = curve.segments();
    let class = essential_class(curve).ok();
    let corners = [PillowcasePoint::new(0.0, 0.0), PillowcasePoint::new(PI, 0.0)];
    let avoids_corners = corners.iter().all(|c| segments.iter().all(|s| segment_distance(s, c) > TOUCH_TOL));

    let mut touches: Vec<PillowcasePoint> = segments
        .iter()
        .flat_map(|s| level_crossings(s, (p as f64, 1.0), 0.0, PI).into_iter().map(move |t| point_at(s, t)))
        .collect();
    sort_points(&mut touches);
    let touch_points: Vec<TouchPoint> = clusters(&touches, TOUCH_TOL)
        .into_iter()
        .map(|c| {
            let point = touches[c[0]];
            TouchPoint { point, allowed: allowed_index(&point, p).is_some() }
        })
        .collect();

    let mut transversality = Vec::new();
    if let Some(other) = second {
        let image = other.transformed(GluingMatrix::sigma(p).matrix());
        for x in polyline_intersections(curve, &image) {
            if let Some(k) = allowed_index(&x.point, p) {
                transversality.push(TransversalityCheck { k, point: x.point, transversal: x.transversal });
            }
        }
        transversality.sort_by(|a, b| a.k.cmp(&b.k).then(a.point.beta().total_cmp(&b.point.beta())));
    }

    let meets_l0 = meets_level(&segments, 0.0);
    let meets_lpi = meets_level(&segments, PI);
    let pass = class.is_some_and(|c| c != 0)
        && avoids_corners
        && meets_l0
        && meets_lpi
        && touch_points.iter().all(|t| t.allowed)
        && transversality.iter().all(|t| t.transversal);
    Ok(PAvoidingReport { p, essential_class: class, avoids_corners, meets_l0, meets_lpi, touch_points, transversality, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossings_of_a_diagonal() {
        let s = Segment::new((0.0, 0.0), (PI, PI));
        // α + β = 2πk meets at t = 0 and t = 1
        assert_eq!(level_crossings(&s, (1.0, 1.0), 0.0, TWO_PI), vec![0.0, 1.0]);
        let t = level_crossings(&s, (1.0, 1.0), PI, TWO_PI);
        assert_eq!(t.len(), 1);
        assert!((t[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn segment_on_a_level() {
        let s = Segment::new((0.0, PI), (1.0, PI - 2.0));
        assert_eq!(level_crossings(&s, (2.0, 1.0), PI, TWO_PI), vec![0.0, 1.0]);
        assert!(level_crossings(&s, (2.0, 1.0), 0.0, TWO_PI).is_empty());
    }

    #[test]
    fn clusters_chain_points() {
        let pts: Vec<PillowcasePoint> = [0.5, 0.6, 0.7, 2.0].iter().map(|&a| PillowcasePoint::new(a, 1.0)).collect();
        let c = clusters(&pts, 0.15);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], vec![0, 1, 2]);
    }

    #[test]
    fn allowed_touch_points() {
        assert_eq!(allowed_index(&PillowcasePoint::new(PI / 3.0, 0.0), 3), Some(1));
        assert_eq!(allowed_index(&PillowcasePoint::new(2.0 * PI / 3.0, 0.0), 3), Some(2));
        assert_eq!(allowed_index(&PillowcasePoint::new(PI / 3.0, PI), 3), None);
        assert_eq!(allowed_index(&PillowcasePoint::new(0.0, 0.0), 3), None);
    }
}
