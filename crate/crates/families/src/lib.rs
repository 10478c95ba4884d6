//! Built-in knot-exterior models with known representation varieties.

use std::f64::consts::PI;

use homology::{HomologyError, InvariantFactors};
use num_integer::Integer;
use pillowcase_core::GluingMatrix;
use serde::Serialize;
use surep::{GroupPresentation, KnotExteriorModel, Representation, UnitQuaternion, Word};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamiliesError {
    #[error("torus knot T({0},{1}) needs |p|, |q| ≥ 2 and gcd(p, q) = 1")]
    InvalidTorusKnot(i64, i64),
    #[error("slope ({0},{1}) needs gcd 1 and q ≥ 0")]
    InvalidSlope(i64, i64),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// The canonical meridian exponents `(s, r)` with `sq + rp = 1` and
/// `0 ≤ s < |p|`.
pub fn torus_meridian_exponents(p: i64, q: i64) -> (i64, i64) {
    let m = p.abs();
    let s = (0..m).find(|s| (s * q - 1).rem_euclid(m) == 0).expect("q is invertible mod p");
    (s, (1 - s * q) / p)
}

/// `⟨u, v | u^p v^{−q}⟩` with `μ = u^s v^r`, `λ = u^p μ^{−pq}` and fiber
/// word `u^p` (equal to `λ μ^{pq}`).
pub fn torus_knot_model(p: i64, q: i64) -> Result<KnotExteriorModel, FamiliesError> {
    if p.abs() < 2 || q.abs() < 2 || p.gcd(&q) != 1 {
        return Err(FamiliesError::InvalidTorusKnot(p, q));
    }
    let (s, r) = torus_meridian_exponents(p, q);
    let relator = Word::generator_power(0, p).concat(&Word::generator_power(1, -q));
    let mu = Word::generator_power(0, s).concat(&Word::generator_power(1, r)).reduced();
    let lambda = Word::generator_power(0, p).concat(&mu.pow(-p * q)).reduced();
    let fiber = lambda.concat(&mu.pow(p * q)).reduced();
    let pres = GroupPresentation::new(vec!["u".into(), "v".into()], vec![relator], mu, lambda)?;
    Ok(KnotExteriorModel::new(format!("T({p},{q})"), pres, Some(fiber), true)?)
}

/// `⟨a, b | a b a⁻¹ b⟩` with `μ0 = a²`, `λ0 = b`.
pub fn klein_bottle_model() -> KnotExteriorModel {
    let pres = GroupPresentation::new(
        vec!["a".into(), "b".into()],
        vec![Word::new(vec![1, 2, -1, 2])],
        Word::new(vec![1, 1]),
        Word::new(vec![2]),
    )
    .expect("valid words");
    KnotExteriorModel::new("klein", pres, None, false).expect("valid model")
}

/// `⟨x | ⟩` with `μ = x` and trivial longitude.
pub fn unknot_model() -> KnotExteriorModel {
    let pres = GroupPresentation::new(vec!["x".into()], vec![], Word::new(vec![1]), Word::empty()).expect("valid words");
    KnotExteriorModel::new("unknot", pres, None, true).expect("valid model")
}

/// Looks up `trefoil`, `trefoil-neg`, `klein`, `unknot` or `T(p,q)`.
pub fn builtin_model(name: &str) -> Result<KnotExteriorModel, FamiliesError> {
    let unknown = || FamiliesError::UnknownModel(name.to_string());
    match name {
        "trefoil" => torus_knot_model(2, 3),
        "trefoil-neg" => torus_knot_model(-2, 3),
        "klein" => Ok(klein_bottle_model()),
        "unknot" => Ok(unknot_model()),
        _ => {
            let inner = name.strip_prefix("T(").and_then(|s| s.strip_suffix(')')).ok_or_else(unknown)?;
            let (p, q) = inner.split_once(',').ok_or_else(unknown)?;
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| unknown());
            torus_knot_model(parse(p)?, parse(q)?)
        }
    }
}

/// Gluing of two torus-knot exteriors sending each meridian to the other
/// side's regular fiber: `μ1 = n2 μ2 + λ2` and `n1 μ1 + λ1 = μ2`, where
/// `n_i = p_i q_i`.
pub fn fiber_swap_gluing(k1: (i64, i64), k2: (i64, i64)) -> GluingMatrix {
    let (n1, n2) = (k1.0 * k1.1, k2.0 * k2.1);
    GluingMatrix::new(n2, 1, 1 - n1 * n2, -n1).expect("determinant is −1")
}

/// `a ↦ j`, `b ↦ e^{it}`.
pub fn klein_rep(t: f64) -> Representation {
    Representation::new(vec![UnitQuaternion::J, UnitQuaternion::exp_i(t)])
}

/// Fundamental group of the Dehn filling of the Klein-bottle model along
/// `μ0^p λ0^q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FillingReport {
    /// `Z/order`.
    Cyclic { order: i64 },
    /// `Z`, the filling being `S¹ × S²`.
    InfiniteCyclic,
    /// A non-abelian representation with its residuals on the knot relator
    /// and the filling relator.
    NonabelianWitness { rep: Representation, relator_residual: f64, filling_residual: f64, gap: f64 },
    /// `Z/2 * Z/2`, the filling being `RP³ # RP³`.
    FreeProductZ2Z2,
}

pub fn klein_filling_analysis(p: i64, q: i64) -> Result<FillingReport, FamiliesError> {
    if q < 0 || p.gcd(&q) != 1 {
        return Err(FamiliesError::InvalidSlope(p, q));
    }
    Ok(match q {
        0 => FillingReport::FreeProductZ2Z2,
        1 if p == 0 => FillingReport::InfiniteCyclic,
        1 => FillingReport::Cyclic { order: 4 * p.abs() },
        _ => {
            let t = if p % 2 != 0 { PI / q as f64 } else { 2.0 * PI / q as f64 };
            let rep = klein_rep(t);
            let model = klein_bottle_model();
            let pres = &model.presentation;
            let filling = pres.meridian.pow(p).concat(&pres.longitude.pow(q));
            let relator_residual = surep::relator_residual(&rep, pres).expect("shapes match");
            let filling_residual = surep::evaluate_word(&rep, &filling).expect("valid word").dist_to_one();
            let gap = surep::irreducibility_gap(&rep, pres).expect("shapes match");
            FillingReport::NonabelianWitness { rep, relator_residual, filling_residual, gap }
        }
    })
}

/// `H1` of the filled Klein-bottle model, from the Smith normal form.
pub fn klein_filling_homology(p: i64, q: i64) -> Result<InvariantFactors, FamiliesError> {
    Ok(homology::filling_homology(&klein_bottle_model(), (p, q))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meridian_exponents() {
        assert_eq!(torus_meridian_exponents(2, 3), (1, -1));
        assert_eq!(torus_meridian_exponents(-2, 3), (1, 1));
        assert_eq!(torus_meridian_exponents(3, 5), (2, -3));
    }

    #[test]
    fn rejects_bad_torus_data() {
        assert_eq!(torus_knot_model(2, 4).unwrap_err(), FamiliesError::InvalidTorusKnot(2, 4));
        assert_eq!(torus_knot_model(1, 3).unwrap_err(), FamiliesError::InvalidTorusKnot(1, 3));
    }

    #[test]
    fn fiber_swap_trefoils() {
        assert_eq!(fiber_swap_gluing((2, 3), (-2, 3)), GluingMatrix::new(-6, 1, 37, -6).unwrap());
    }

    #[test]
    fn names() {
        assert_eq!(builtin_model("T(2,3)").unwrap(), torus_knot_model(2, 3).unwrap());
        assert_eq!(builtin_model("T(-2, 3)").unwrap().name, "T(-2,3)");
        assert!(builtin_model("figure-eight").is_err());
    }
}
