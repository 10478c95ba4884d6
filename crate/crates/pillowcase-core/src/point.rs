use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const TWO_PI: f64 = 2.0 * PI;

/// Absolute tolerance for comparisons of canonical points.
pub const ANGLE_TOL: f64 = 1e-9;

// Angles this close to an edge of the domain are snapped onto it.
const EDGE_SNAP: f64 = 1e-13;

/// The marked corner `(0, π)`.
pub const P: PillowcasePoint = PillowcasePoint { alpha: 0.0, beta: PI };
/// The marked corner `(π, π)`.
pub const Q: PillowcasePoint = PillowcasePoint { alpha: PI, beta: PI };

/// A canonical point of the pillowcase.
///
/// `alpha ∈ [0, π]`, `beta ∈ [0, 2π)`, and `beta ∈ [0, π]` on the edges
/// `alpha ∈ {0, π}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "(f64, f64)", from = "(f64, f64)")]
pub struct PillowcasePoint {
    alpha: f64,
    beta: f64,
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = x.rem_euclid(TWO_PI);
    if r > PI {
        r - TWO_PI
    } else {
        r
    }
}

fn reduce(x: f64) -> f64 {
    let r = x.rem_euclid(TWO_PI);
    if r >= TWO_PI {
        0.0
    } else {
        r
    }
}

/// Returns the canonical representative of `(alpha, beta)`.
pub fn canonicalize(alpha: f64, beta: f64) -> PillowcasePoint {
    debug_assert!(alpha.is_finite() && beta.is_finite());
    let mut a = reduce(alpha);
    let mut b = reduce(beta);
    if a > PI {
        a = TWO_PI - a;
        b = reduce(-b);
    }
    if a < EDGE_SNAP {
        a = 0.0;
    } else if (PI - a).abs() < EDGE_SNAP {
        a = PI;
    }
    if (a == 0.0 || a == PI) && b > PI {
        b = reduce(-b);
    }
    PillowcasePoint { alpha: a, beta: b }
}

impl PillowcasePoint {
    pub fn new(alpha: f64, beta: f64) -> Self {
        canonicalize(alpha, beta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn coords(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    /// Distance in the flat orbifold metric.
    pub fn distance(&self, other: &PillowcasePoint) -> f64 {
        let da = self.alpha - other.alpha;
        let db = self.beta - other.beta;
        let sa = self.alpha + other.alpha;
        let sb = self.beta + other.beta;
        wrap_pi(da).hypot(wrap_pi(db)).min(wrap_pi(sa).hypot(wrap_pi(sb)))
    }

    pub fn approx_eq(&self, other: &PillowcasePoint, tol: f64) -> bool {
        self.distance(other) < tol
    }

    /// The lift of `self` nearest to the planar point `(x, y)`.
    pub fn nearest_lift(&self, x: f64, y: f64) -> (f64, f64) {
        let plus = (x + wrap_pi(self.alpha - x), y + wrap_pi(self.beta - y));
        let minus = (x + wrap_pi(-self.alpha - x), y + wrap_pi(-self.beta - y));
        let dp = (plus.0 - x).hypot(plus.1 - y);
        let dm = (minus.0 - x).hypot(minus.1 - y);
        if dm < dp {
            minus
        } else {
            plus
        }
    }

    /// Whether `beta ≡ 0 (mod 2π)` within `tol`.
    pub fn on_l0(&self, tol: f64) -> bool {
        wrap_pi(self.beta).abs() < tol
    }

    /// Whether `beta ≡ π (mod 2π)` within `tol`.
    pub fn on_lpi(&self, tol: f64) -> bool {
        wrap_pi(self.beta - PI).abs() < tol
    }

    /// Whether the point lies on an edge `alpha ∈ {0, π}` within `tol`.
    pub fn on_edge(&self, tol: f64) -> bool {
        self.alpha < tol || PI - self.alpha < tol
    }
}

impl From<(f64, f64)> for PillowcasePoint {
    fn from((a, b): (f64, f64)) -> Self {
        canonicalize(a, b)
    }
}

impl From<PillowcasePoint> for (f64, f64) {
    fn from(p: PillowcasePoint) -> Self {
        (p.alpha, p.beta)
    }
}

impl fmt::Display for PillowcasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.alpha, self.beta)
    }
}
