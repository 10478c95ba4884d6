use serde::{Deserialize, Serialize};

use crate::{canonicalize, PillowcaseError, PillowcasePoint};

/// An orientation-reversing identification of two boundary tori:
/// `μ1 = a·μ2 + b·λ2`, `λ1 = p·μ2 + c·λ2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGluing", into = "RawGluing")]
pub struct GluingMatrix {
    a: i64,
    b: i64,
    p: i64,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct RawGluing {
    a: i64,
    b: i64,
    p: i64,
    c: i64,
}

impl TryFrom<RawGluing> for GluingMatrix {
    type Error = PillowcaseError;
    fn try_from(r: RawGluing) -> Result<Self, Self::Error> {
        GluingMatrix::new(r.a, r.b, r.p, r.c)
    }
}

impl From<GluingMatrix> for RawGluing {
    fn from(g: GluingMatrix) -> Self {
        RawGluing { a: g.a, b: g.b, p: g.p, c: g.c }
    }
}

impl GluingMatrix {
    pub fn new(a: i64, b: i64, p: i64, c: i64) -> Result<Self, PillowcaseError> {
        let det = a * c - b * p;
        if det != -1 {
            return Err(PillowcaseError::BadDeterminant { a, b, p, c, det });
        }
        Ok(GluingMatrix { a, b, p, c })
    }

    /// `μ1 ↔ λ2`, `λ1 ↔ μ2`.
    pub fn swap() -> Self {
        GluingMatrix { a: 0, b: 1, p: 1, c: 0 }
    }

    /// `μ1 ∼ μ2⁻¹`, `λ1 ∼ μ2^p λ2`.
    pub fn sigma(p: i64) -> Self {
        GluingMatrix { a: -1, b: 0, p, c: 1 }
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.p, self.c]]
    }

    /// The gluing seen from side 2: expresses `(μ2, λ2)` in `(μ1, λ1)`.
    pub fn inverse(&self) -> Self {
        GluingMatrix { a: -self.c, b: self.b, p: self.p, c: -self.a }
    }

    /// Maps side-2 holonomy angles to side-1 angles.
    pub fn transform(&self, pt: PillowcasePoint) -> PillowcasePoint {
        transform_by_matrix(self.matrix(), pt)
    }

    /// Side-1 coordinates of a planar (lifted) side-2 point.
    pub fn apply_lifted(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a as f64 * x + self.b as f64 * y, self.p as f64 * x + self.c as f64 * y)
    }
}

/// Applies an arbitrary integer matrix to holonomy angles.
pub fn transform_by_matrix(m: [[i64; 2]; 2], pt: PillowcasePoint) -> PillowcasePoint {
    let (x, y) = pt.coords();
    canonicalize(
        m[0][0] as f64 * x + m[0][1] as f64 * y,
        m[1][0] as f64 * x + m[1][1] as f64 * y,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{apply_involution, Involution, P};
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_determinant() {
        assert!(GluingMatrix::new(1, 0, 0, 1).is_err());
        assert!(GluingMatrix::new(-6, 1, 37, -6).is_ok());
    }

    #[test]
    fn sigma_specialization() {
        let pt = PillowcasePoint::new(PI / 5.0, PI / 7.0);
        let g = GluingMatrix::new(-1, 0, 2, 1).unwrap();
        let s = apply_involution(Involution::Sigma, pt).unwrap();
        assert!(g.transform(pt).approx_eq(&s, 1e-12));
    }

    #[test]
    fn swap_exchanges_coordinates() {
        let out = GluingMatrix::swap().transform(PillowcasePoint::new(PI / 3.0, PI / 4.0));
        assert!(out.approx_eq(&PillowcasePoint::new(PI / 4.0, PI / 3.0), 1e-12));
    }

    #[test]
    fn sigma3_fixes_p() {
        let g = GluingMatrix::new(-1, 0, 3, 1).unwrap();
        assert!(g.transform(P).approx_eq(&P, 1e-12));
    }

    #[test]
    fn inverse_undoes_transform() {
        let g = GluingMatrix::new(-6, 1, 37, -6).unwrap();
        let pt = PillowcasePoint::new(0.3, 1.1);
        assert!(g.inverse().transform(g.transform(pt)).approx_eq(&pt, 1e-9));
        assert_eq!(GluingMatrix::new(g.inverse().a, g.inverse().b, g.inverse().p, g.inverse().c).unwrap(), g.inverse());
    }

    #[test]
    fn raw_conversion_validates() {
        assert!(GluingMatrix::try_from(RawGluing { a: 1, b: 1, p: 1, c: 1 }).is_err());
        assert_eq!(GluingMatrix::try_from(RawGluing { a: 0, b: 1, p: 1, c: 0 }).unwrap(), GluingMatrix::swap());
    }
}
