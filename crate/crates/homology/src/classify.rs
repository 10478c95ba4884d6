use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use pillowcase_core::GluingMatrix;
use serde::Serialize;

use crate::abelian::CokernelCoordinates;
use crate::{
    abelianization, glue_homology, is_prime, rational_longitude, standard_form_reduce, HomologyError, InvariantFactors,
    KnotExteriorModel, RationalLongitude, StandardFormResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GluingCase {
    /// Both longitudes nullhomologous and dual to each other.
    #[serde(rename = "1a")]
    DualLongitudes,
    /// Both longitudes nullhomologous, pairing `±p`.
    #[serde(rename = "1b")]
    StandardForm,
    /// Exactly one longitude essential, of order `p`.
    #[serde(rename = "2")]
    Essential,
}

impl fmt::Display for GluingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GluingCase::DualLongitudes => "1a",
            GluingCase::StandardForm => "1b",
            GluingCase::Essential => "2",
        })
    }
}

/// Image of a boundary class in `H1(M) ≅ ⊕ Z/d_i ⊕ Z^f`: torsion coordinates
/// and free coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryImage {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

/// Coordinates of the two rational longitudes in both sides' `H1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialEvidence {
    pub essential_side: u8,
    pub order: i64,
    /// Invariant factors of `H1` of the essential side.
    pub essential_h1: InvariantFactors,
    pub essential_free_rank: usize,
    /// `(i_e)_*(λ_e)`, torsion of order `p`.
    pub essential_of_essential: BoundaryImage,
    /// `(i_e)_*(λ_o)`, equal to `((0, …, 0), ±p)`.
    pub essential_of_other: BoundaryImage,
    /// `(i_o)_*(λ_e)`, free coordinate `±1`.
    pub other_of_essential: BoundaryImage,
    /// `(i_o)_*(λ_o)`, zero.
    pub other_of_other: BoundaryImage,
    /// `det[λ_e; λ_o]` in the essential side's boundary basis.
    pub pairing: i64,
    /// Whether every listed condition holds.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: GluingCase,
    pub p: i64,
    pub homology: InvariantFactors,
    pub longitude1: RationalLongitude,
    pub longitude2: RationalLongitude,
    /// `det[λ1; λ2]` in side-2 boundary coordinates.
    pub pairing: i64,
    /// Gluing `(a, b, p, c)` in the bases (dual, longitude) on both sides.
    pub longitude_gluing: Option<[i64; 4]>,
    pub standard_form: Option<StandardFormResult>,
    pub essential: Option<EssentialEvidence>,
}

fn mat(g: &GluingMatrix) -> [[i64; 2]; 2] {
    g.matrix()
}

fn row_times(v: (i64, i64), m: [[i64; 2]; 2]) -> (i64, i64) {
    (v.0 * m[0][0] + v.1 * m[1][0], v.0 * m[0][1] + v.1 * m[1][1])
}

fn mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn det(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Basis `(dual, ℓ)` of determinant +1 for a primitive `ℓ`, as rows.
fn dual_basis(l: (i64, i64)) -> [[i64; 2]; 2] {
    let e = l.1.extended_gcd(&(-l.0));
    // e.x·l.1 − e.y·l.0 = ±1
    let (u, v) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    debug_assert_eq!(u * l.1 - v * l.0, 1);
    [[u, v], [l.0, l.1]]
}

fn inverse_unimodular(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]]
}

struct Side {
    coords: CokernelCoordinates,
    meridian: Vec<i64>,
    longitude: Vec<i64>,
}

impl Side {
    fn new(model: &KnotExteriorModel) -> Self {
        let ab = abelianization(&model.presentation);
        Side { coords: ab.presentation.coordinates(), meridian: ab.meridian, longitude: ab.longitude }
    }

    fn image(&self, v: (i64, i64)) -> BoundaryImage {
        let x: Vec<i64> = self.meridian.iter().zip(&self.longitude).map(|(m, l)| v.0 * m + v.1 * l).collect();
        let conv = |b: num_bigint::BigInt| b.to_i64().unwrap_or(i64::MAX);
        BoundaryImage {
            torsion: self.coords.torsion_part(&x).into_iter().map(|(y, _)| conv(y)).collect(),
            free: self.coords.free_part(&x).into_iter().map(conv).collect(),
        }
    }
}

fn is_zero(b: &BoundaryImage) -> bool {
    b.torsion.iter().chain(&b.free).all(|&x| x == 0)
}

/// Decides which structural case a `p`-torsion torus gluing falls into.
pub fn classify_gluing(
    m1: &KnotExteriorModel,
    m2: &KnotExteriorModel,
    g: &GluingMatrix,
    p: i64,
) -> Result<CaseReport, HomologyError> {
    if !is_prime(p) {
        return Err(HomologyError::NotPrime(p));
    }
    let homology = glue_homology(m1, m2, g);
    if homology.0.iter().any(|d| *d != p.into()) {
        return Err(HomologyError::NotPTorsion(homology.to_string(), p));
    }
    let l1 = rational_longitude(m1)?;
    let l2 = rational_longitude(m2)?;
    let gm = mat(g);
    let pairing = det(row_times(l1.class, gm), l2.class);
    let mut report = CaseReport {
        case: GluingCase::DualLongitudes,
        p,
        homology,
        longitude1: l1.clone(),
        longitude2: l2.clone(),
        pairing,
        longitude_gluing: None,
        standard_form: None,
        essential: None,
    };
    match (l1.order == 1, l2.order == 1) {
        (true, true) => {
            let b1 = dual_basis(l1.class);
            let mut b2 = dual_basis(l2.class);
            let mut gp = mul(mul(b1, gm), inverse_unimodular(b2));
            if gp[1][0] < 0 {
                b2 = [[-b2[0][0], -b2[0][1]], [-b2[1][0], -b2[1][1]]];
                gp = mul(mul(b1, gm), inverse_unimodular(b2));
            }
            report.longitude_gluing = Some([gp[0][0], gp[0][1], gp[1][0], gp[1][1]]);
            match pairing.abs() {
                1 => report.case = GluingCase::DualLongitudes,
                d if d == p => {
                    report.case = GluingCase::StandardForm;
                    report.standard_form = Some(standard_form_reduce(gp[0][0], gp[0][1], gp[1][1], p, false)?);
                }
                d => {
                    return Err(HomologyError::Unsupported(format!(
                        "longitudes pair to {d}, expected 1 or {p}"
                    )))
                }
            }
        }
        (false, true) | (true, false) => {
            let essential_side = if l1.order != 1 { 1 } else { 2 };
            let (se, so) = (Side::new(m1), Side::new(m2));
            let (se, so) = if essential_side == 1 { (se, so) } else { (so, se) };
            // boundary classes in each side's own basis; v2 = v1·G
            let (le_e, lo_e, le_o, lo_o) = if essential_side == 1 {
                (l1.class, row_times(l2.class, mat(&g.inverse())), row_times(l1.class, gm), l2.class)
            } else {
                (l2.class, row_times(l1.class, gm), row_times(l2.class, mat(&g.inverse())), l1.class)
            };
            let order = if essential_side == 1 { l1.order } else { l2.order };
            let essential_h1 = se.coords.invariant_factors();
            let essential_free_rank = essential_h1.free_rank();
            let ee = se.image(le_e);
            let eo = se.image(lo_e);
            let oe = so.image(le_o);
            let oo = so.image(lo_o);
            let pair = det(le_e, lo_e);
            let verified = order == p
                && essential_free_rank == 1
                && essential_h1.torsion().iter().all(|d| *d == p.into())
                && ee.free.iter().all(Zero::is_zero)
                && eo.torsion.iter().all(Zero::is_zero)
                && eo.free.first().map(|x| x.abs()) == Some(p)
                && oe.free.first().map(|x| x.abs()) == Some(1)
                && is_zero(&oo)
                && pair.abs() == 1;
            report.case = GluingCase::Essential;
            report.essential = Some(EssentialEvidence {
                essential_side,
                order,
                essential_h1,
                essential_free_rank,
                essential_of_essential: ee,
                essential_of_other: eo,
                other_of_essential: oe,
                other_of_other: oo,
                pairing: pair,
                verified,
            });
        }
        (false, false) => {
            return Err(HomologyError::Unsupported("both rational longitudes are essential".into()));
        }
    }
    Ok(report)
}
