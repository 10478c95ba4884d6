//! Finitely presented groups with a distinguished peripheral pair.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::HomologyError;

/// A word in the generators: letter `k > 0` is generator `k − 1`, letter
/// `−k` its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "letter 0 is not a generator");
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `g^e` for the 0-based generator `g`.
    pub fn generator_power(g: usize, e: i64) -> Self {
        let l = g as i32 + 1;
        let letter = if e >= 0 { l } else { -l };
        Word(vec![letter; e.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based generator index and exponent sign of a letter.
    pub fn decode(letter: i32) -> (usize, bool) {
        ((letter.unsigned_abs() - 1) as usize, letter > 0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// `self^n`, freely reduced.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v).reduced()
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Exponent sums per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for &l in &self.0 {
            let (g, pos) = Self::decode(l);
            v[g] += if pos { 1 } else { -1 };
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&l| Self::decode(l).0).max()
    }

    pub fn check(&self, generators: usize) -> Result<(), HomologyError> {
        match self.0.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > generators) {
            Some(&letter) => Err(HomologyError::LetterOutOfRange { letter, generators }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A group presentation with a meridian and longitude word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub meridian: Word,
    pub longitude: Word,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        meridian: Word,
        longitude: Word,
    ) -> Result<Self, HomologyError> {
        let p = GroupPresentation { generators, relators, meridian, longitude };
        p.validate()?;
        Ok(p)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn validate(&self) -> Result<(), HomologyError> {
        let n = self.generator_count();
        for w in self.relators.iter().chain([&self.meridian, &self.longitude]) {
            w.check(n)?;
        }
        Ok(())
    }
}

/// A knot exterior: presentation plus metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotExteriorModel {
    pub name: String,
    pub presentation: GroupPresentation,
    /// A word for the regular Seifert fiber, when the exterior has one.
    pub fiber: Option<Word>,
    /// Whether the longitude is declared nullhomologous.
    pub nullhomologous_longitude: bool,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    name: String,
    generators: Vec<String>,
    relators: Vec<Vec<i32>>,
    meridian: Vec<i32>,
    longitude: Vec<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fiber: Option<Vec<i32>>,
    #[serde(default)]
    nullhomologous_longitude: bool,
}

impl KnotExteriorModel {
    /// Builds a model, checking words and, when declared, that the longitude
    /// abelianizes to zero.
    pub fn new(
        name: impl Into<String>,
        presentation: GroupPresentation,
        fiber: Option<Word>,
        nullhomologous_longitude: bool,
    ) -> Result<Self, HomologyError> {
        let model = KnotExteriorModel { name: name.into(), presentation, fiber, nullhomologous_longitude };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), HomologyError> {
        let p = &self.presentation;
        p.validate()?;
        if let Some(f) = &self.fiber {
            f.check(p.generator_count())?;
        }
        if self.nullhomologous_longitude {
            let ab = crate::abelianization(p);
            let coords = ab.presentation.coordinates();
            if !coords.is_zero(&ab.longitude) {
                return Err(HomologyError::ModelInvalid(format!(
                    "longitude of {} is declared nullhomologous but abelianizes to {:?}",
                    self.name, ab.longitude
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        let raw: ModelJson = serde_json::from_str(text).map_err(|e| HomologyError::Parse(e.to_string()))?;
        let word = |v: Vec<i32>| -> Result<Word, HomologyError> {
            if v.contains(&0) {
                return Err(HomologyError::Parse("letter 0 is not a generator".into()));
            }
            Ok(Word::new(v))
        };
        let relators = raw.relators.into_iter().map(word).collect::<Result<Vec<_>, _>>()?;
        let presentation = GroupPresentation::new(raw.generators, relators, word(raw.meridian)?, word(raw.longitude)?)?;
        let fiber = raw.fiber.map(word).transpose()?;
        KnotExteriorModel::new(raw.name, presentation, fiber, raw.nullhomologous_longitude)
    }

    pub fn to_json(&self) -> String {
        let p = &self.presentation;
        let raw = ModelJson {
            name: self.name.clone(),
            generators: p.generators.clone(),
            relators: p.relators.iter().map(|w| w.letters().to_vec()).collect(),
            meridian: p.meridian.letters().to_vec(),
            longitude: p.longitude.letters().to_vec(),
            fiber: self.fiber.as_ref().map(|w| w.letters().to_vec()),
            nullhomologous_longitude: self.nullhomologous_longitude,
        };
        serde_json::to_string_pretty(&raw).expect("model serializes")
    }
}
