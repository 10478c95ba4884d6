use homology::{abelianization, glue_homology, GroupPresentation, KnotExteriorModel, Word};
use pillowcase_core::GluingMatrix;
use serde::Serialize;

use crate::GluerError;

/// Two knot exteriors glued by `μ1 = aμ2 + bλ2`, `λ1 = pμ2 + cλ2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplicedManifold {
    pub model1: KnotExteriorModel,
    pub model2: KnotExteriorModel,
    pub gluing: GluingMatrix,
    /// Generators of side 1 followed by those of side 2; relators of both
    /// sides, then the meridian and longitude identifications. The peripheral
    /// words are those of side 1.
    pub amalgamated: GroupPresentation,
}

#[derive(Serialize)]
struct Summary<'a> {
    model1: &'a str,
    model2: &'a str,
    gluing: GluingMatrix,
    generators: &'a [String],
    relators: Vec<String>,
}

impl Serialize for SplicedManifold {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Summary {
            model1: &self.model1.name,
            model2: &self.model2.name,
            gluing: self.gluing,
            generators: &self.amalgamated.generators,
            relators: self.amalgamated.relators.iter().map(|w| w.to_string()).collect(),
        }
        .serialize(s)
    }
}

fn shift(w: &Word, n: usize) -> Word {
    let n = n as i32;
    Word::new(w.letters().iter().map(|&l| if l > 0 { l + n } else { l - n }).collect())
}

impl SplicedManifold {
    pub fn side1_generators(&self) -> std::ops::Range<usize> {
        0..self.model1.presentation.generator_count()
    }

    pub fn side2_generators(&self) -> std::ops::Range<usize> {
        let n1 = self.model1.presentation.generator_count();
        n1..n1 + self.model2.presentation.generator_count()
    }

    /// Relators of side 1, side 2 and the two identifications, in this order.
    pub fn relator_blocks(&self) -> [std::ops::Range<usize>; 3] {
        let r1 = self.model1.presentation.relators.len();
        let r2 = self.model2.presentation.relators.len();
        [0..r1, r1..r1 + r2, r1 + r2..r1 + r2 + 2]
    }

    /// Side-2 meridian and longitude in amalgamated generators.
    pub fn side2_peripheral(&self) -> (Word, Word) {
        let n1 = self.model1.presentation.generator_count();
        let p = &self.model2.presentation;
        (shift(&p.meridian, n1), shift(&p.longitude, n1))
    }
}

/// Glues `model2` to `model1` along `gluing`, checking that the
/// abelianization of the amalgamated presentation matches the homology
/// computed from the gluing matrix.
pub fn splice(model1: &KnotExteriorModel, model2: &KnotExteriorModel, gluing: GluingMatrix) -> Result<SplicedManifold, GluerError> {
    model1.validate()?;
    model2.validate()?;
    let (p1, p2) = (&model1.presentation, &model2.presentation);
    let n1 = p1.generator_count();
    let mut generators: Vec<String> = p1.generators.iter().map(|s| format!("{s}₁")).collect();
    generators.extend(p2.generators.iter().map(|s| format!("{s}₂")));
    let mut relators = p1.relators.clone();
    relators.extend(p2.relators.iter().map(|w| shift(w, n1)));
    let (m2, l2) = (shift(&p2.meridian, n1), shift(&p2.longitude, n1));
    let image = |s: i64, t: i64| m2.pow(s).concat(&l2.pow(t));
    relators.push(p1.meridian.concat(&image(gluing.a(), gluing.b()).inverse()).reduced());
    relators.push(p1.longitude.concat(&image(gluing.p(), gluing.c()).inverse()).reduced());
    let amalgamated = GroupPresentation::new(generators, relators, p1.meridian.clone(), p1.longitude.clone())?;
    let ab = abelianization(&amalgamated).presentation.invariant_factors();
    let glued = glue_homology(model1, model2, &gluing);
    if ab != glued {
        return Err(GluerError::HomologyMismatch { abelianization: ab.pretty(), glued: glued.pretty() });
    }
    Ok(SplicedManifold { model1: model1.clone(), model2: model2.clone(), gluing, amalgamated })
}
