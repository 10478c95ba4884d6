use pillowcase_core::{canonicalize, PillowcasePoint};
use serde::{Deserialize, Serialize};

use crate::quaternion::dot3;
use crate::{GroupPresentation, SurepError, UnitQuaternion, Word};

/// Tolerance on `‖[ρ(μ), ρ(λ)] − 1‖` for reading boundary angles.
pub const PERIPHERAL_TOL: f64 = 1e-6;

// Holonomies whose vector part is below this are read as exactly ±1.
const CENTRAL_SNAP: f64 = 1e-12;

/// A homomorphism candidate: one unit quaternion per generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub images: Vec<UnitQuaternion>,
}

impl Representation {
    pub fn new(images: Vec<UnitQuaternion>) -> Self {
        Representation { images }
    }

    pub fn trivial(n: usize) -> Self {
        Representation { images: vec![UnitQuaternion::ONE; n] }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `g ρ g⁻¹`.
    pub fn conjugated(&self, g: UnitQuaternion) -> Self {
        Representation { images: self.images.iter().map(|&q| g.conjugate(q)).collect() }
    }

    /// Multiplies each image by the sign `signs[i] ∈ {±1}`.
    pub fn twisted(&self, signs: &[i8]) -> Self {
        Representation {
            images: self.images.iter().zip(signs).map(|(&q, &s)| if s < 0 { -q } else { q }).collect(),
        }
    }

    /// Restriction to the generators `range`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Self {
        Representation { images: self.images[range].to_vec() }
    }

    /// Concatenation of two representations on disjoint generator sets.
    pub fn join(&self, other: &Representation) -> Self {
        let mut images = self.images.clone();
        images.extend_from_slice(&other.images);
        Representation { images }
    }

    fn check(&self, word: &Word) -> Result<(), SurepError> {
        word.check(self.images.len()).map_err(|_| {
            let letter = *word
                .letters()
                .iter()
                .find(|l| l.unsigned_abs() as usize > self.images.len())
                .unwrap_or(&0);
            SurepError::LetterOutOfRange { letter, generators: self.images.len() }
        })
    }
}

pub(crate) fn letter_image(rep: &[UnitQuaternion], letter: i32) -> UnitQuaternion {
    let (g, pos) = Word::decode(letter);
    if pos {
        rep[g]
    } else {
        rep[g].inverse()
    }
}

pub(crate) fn eval_unchecked(rep: &[UnitQuaternion], word: &Word) -> UnitQuaternion {
    let mut acc = UnitQuaternion::ONE;
    for &l in word.letters() {
        acc = acc.mul_raw(letter_image(rep, l));
    }
    acc.normalized()
}

/// Image of `word` under `rep`.
pub fn evaluate_word(rep: &Representation, word: &Word) -> Result<UnitQuaternion, SurepError> {
    rep.check(word)?;
    Ok(eval_unchecked(&rep.images, word))
}

fn check_shape(rep: &Representation, pres: &GroupPresentation) -> Result<(), SurepError> {
    if rep.len() != pres.generator_count() {
        return Err(SurepError::ShapeMismatch { expected: pres.generator_count(), got: rep.len() });
    }
    Ok(())
}

/// `max_r ‖ρ(r) − 1‖` over the relators.
pub fn relator_residual(rep: &Representation, pres: &GroupPresentation) -> Result<f64, SurepError> {
    check_shape(rep, pres)?;
    Ok(relators_residual(rep, &pres.relators))
}

pub(crate) fn relators_residual(rep: &Representation, relators: &[Word]) -> f64 {
    relators.iter().map(|r| eval_unchecked(&rep.images, r).dist_to_one()).fold(0.0, f64::max)
}

/// `max_{g,h} ‖[ρ(g), ρ(h)] − 1‖` over generator pairs; zero exactly when the
/// image is abelian.
pub fn irreducibility_gap(rep: &Representation, pres: &GroupPresentation) -> Result<f64, SurepError> {
    check_shape(rep, pres)?;
    Ok(commutator_gap(&rep.images))
}

pub(crate) fn commutator_gap(images: &[UnitQuaternion]) -> f64 {
    let mut gap: f64 = 0.0;
    for (i, &a) in images.iter().enumerate() {
        for &b in &images[i + 1..] {
            gap = gap.max(a.commutator(b).dist_to_one());
        }
    }
    gap
}

/// Signed angles of `m` and `l` about a common axis `n`, with `m = e^{αn}`
/// and `l = e^{βn}`.
pub fn common_axis_angles(m: UnitQuaternion, l: UnitQuaternion) -> ([f64; 3], f64, f64) {
    let (nm, nl) = (m.vector_norm(), l.vector_norm());
    let base = if nm >= nl { m } else { l };
    let nb = base.vector_norm();
    let axis = if nb < CENTRAL_SNAP { [1.0, 0.0, 0.0] } else { base.vector().map(|c| c / nb) };
    let read = |q: UnitQuaternion, nq: f64| {
        if nq < CENTRAL_SNAP {
            if q.w > 0.0 {
                0.0
            } else {
                std::f64::consts::PI
            }
        } else {
            dot3(q.vector(), axis).atan2(q.w)
        }
    };
    (axis, read(m, nm), read(l, nl))
}

/// The pillowcase point of `rep` restricted to the boundary torus.
pub fn boundary_angles(rep: &Representation, pres: &GroupPresentation) -> Result<PillowcasePoint, SurepError> {
    check_shape(rep, pres)?;
    peripheral_point(rep, &pres.meridian, &pres.longitude)
}

pub(crate) fn peripheral_point(rep: &Representation, meridian: &Word, longitude: &Word) -> Result<PillowcasePoint, SurepError> {
    rep.check(meridian)?;
    rep.check(longitude)?;
    let m = eval_unchecked(&rep.images, meridian);
    let l = eval_unchecked(&rep.images, longitude);
    let c = m.commutator(l).dist_to_one();
    if c > PERIPHERAL_TOL {
        return Err(SurepError::NonCommutingPeripheral(c));
    }
    let (_, a, b) = common_axis_angles(m, l);
    Ok(canonicalize(a, b))
}

/// Conjugates `rep` so that the peripheral axis is `+i`, returning the
/// signed angles `(α, β)` read on that axis.
pub fn align_boundary(rep: &Representation, meridian: &Word, longitude: &Word) -> (Representation, f64, f64) {
    let m = eval_unchecked(&rep.images, meridian);
    let l = eval_unchecked(&rep.images, longitude);
    let (axis, a, b) = common_axis_angles(m, l);
    let r = UnitQuaternion::rotation_between(axis, [1.0, 0.0, 0.0]);
    (rep.conjugated(r), a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pres(gens: usize, rels: Vec<Vec<i32>>, m: Vec<i32>, l: Vec<i32>) -> GroupPresentation {
        GroupPresentation::new(
            (0..gens).map(|i| format!("g{i}")).collect(),
            rels.into_iter().map(Word::new).collect(),
            Word::new(m),
            Word::new(l),
        )
        .unwrap()
    }

    #[test]
    fn word_evaluation() {
        let rep = Representation::new(vec![UnitQuaternion::J, UnitQuaternion::exp_i(0.7)]);
        let a2 = evaluate_word(&rep, &Word::new(vec![1, 1])).unwrap();
        assert!(a2.dist(-UnitQuaternion::ONE) < 1e-15);
        let rel = evaluate_word(&rep, &Word::new(vec![1, 2, -1, 2])).unwrap();
        assert!(rel.dist_to_one() < 1e-15);
        assert_eq!(evaluate_word(&rep, &Word::empty()).unwrap(), UnitQuaternion::ONE);
        assert!(matches!(evaluate_word(&rep, &Word::new(vec![3])), Err(SurepError::LetterOutOfRange { letter: 3, .. })));
    }

    #[test]
    fn residual_and_gap_examples() {
        let klein = pres(2, vec![vec![1, 2, -1, 2]], vec![1, 1], vec![2]);
        let rep = Representation::new(vec![UnitQuaternion::J, UnitQuaternion::exp_i(PI / 5.0)]);
        assert!(relator_residual(&rep, &klein).unwrap() < 1e-15);
        assert_eq!(relator_residual(&Representation::trivial(2), &klein).unwrap(), 0.0);
        let comm = pres(2, vec![vec![1, 2, -1, -2]], vec![1], vec![2]);
        let jk = Representation::new(vec![UnitQuaternion::J, UnitQuaternion::K]);
        assert!((relator_residual(&jk, &comm).unwrap() - 2.0).abs() < 1e-15);
        let ji = Representation::new(vec![UnitQuaternion::J, UnitQuaternion::I]);
        assert!((irreducibility_gap(&ji, &comm).unwrap() - 2.0).abs() < 1e-15);
        let diag = Representation::new(vec![UnitQuaternion::exp_i(0.3), UnitQuaternion::exp_i(1.1)]);
        assert!(irreducibility_gap(&diag, &comm).unwrap() < 1e-15);
        let central = Representation::new(vec![-UnitQuaternion::ONE, UnitQuaternion::ONE]);
        assert_eq!(irreducibility_gap(&central, &comm).unwrap(), 0.0);
    }

    #[test]
    fn boundary_angle_examples() {
        let p = pres(2, vec![], vec![1], vec![2]);
        let pt = boundary_angles(&Representation::trivial(2), &p).unwrap();
        assert_eq!(pt.coords(), (0.0, 0.0));
        let j = [0.0, 1.0, 0.0];
        let rep = Representation::new(vec![
            UnitQuaternion::from_axis_angle(j, PI / 3.0),
            UnitQuaternion::from_axis_angle(j, PI / 4.0),
        ]);
        let pt = boundary_angles(&rep, &p).unwrap();
        assert!(pt.distance(&PillowcasePoint::new(PI / 3.0, PI / 4.0)) < 1e-14);
        let klein = pres(2, vec![vec![1, 2, -1, 2]], vec![1, 1], vec![2]);
        let rep = Representation::new(vec![UnitQuaternion::J, UnitQuaternion::exp_i(2.0)]);
        let pt = boundary_angles(&rep, &klein).unwrap();
        assert!(pt.distance(&PillowcasePoint::new(PI, 2.0)) < 1e-14);
        let bad = Representation::new(vec![UnitQuaternion::J, UnitQuaternion::K]);
        assert!(matches!(boundary_angles(&bad, &p), Err(SurepError::NonCommutingPeripheral(_))));
    }
}
