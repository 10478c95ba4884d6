use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use pillowcase_core::GluingMatrix;
use serde::{Deserialize, Serialize, Serializer};

use crate::{smith_normal_form, GroupPresentation, HomologyError, IntMatrix, KnotExteriorModel, SmithForm};

/// Presents `coker(Z^cols → Z^rows)`; rows are generators, columns relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrixPresentation {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
    pub generator_labels: Vec<String>,
}

impl IntegerMatrixPresentation {
    /// Builds from relation columns, each of length `labels.len()`.
    pub fn from_columns(labels: Vec<String>, columns: &[Vec<i64>]) -> Self {
        let rows = labels.len();
        let cols = columns.len();
        let mut entries = vec![vec![0i64; cols]; rows];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "relation column has the wrong length");
            for i in 0..rows {
                entries[i][j] = col[i];
            }
        }
        IntegerMatrixPresentation { rows, cols, entries, generator_labels: labels }
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// A copy with one more relation.
    pub fn with_column(&self, col: &[i64]) -> Self {
        let mut cols = self.columns();
        cols.push(col.to_vec());
        Self::from_columns(self.generator_labels.clone(), &cols)
    }

    pub fn matrix(&self) -> IntMatrix {
        if self.cols == 0 {
            return IntMatrix::zeros(self.rows, 0);
        }
        IntMatrix::from_rows(&self.entries)
    }

    pub fn smith(&self) -> SmithForm {
        smith_normal_form(&self.matrix())
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        self.coordinates().invariant_factors()
    }

    pub fn coordinates(&self) -> CokernelCoordinates {
        let snf = self.smith();
        let diag = snf.diagonal();
        let mut factors = Vec::new();
        let mut basis = Vec::new();
        for i in 0..self.rows {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            factors.push(d);
            basis.push(snf.u.row(i).to_vec());
        }
        CokernelCoordinates { factors, basis }
    }
}

/// Invariant factors of a finitely generated abelian group: torsion orders
/// `d_1 | d_2 | …` followed by one `0` per free summand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvariantFactors(pub Vec<BigInt>);

impl InvariantFactors {
    pub fn torsion(&self) -> Vec<BigInt> {
        self.0.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.0.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            None
        } else {
            Some(self.0.iter().fold(BigInt::one(), |acc, d| acc * d))
        }
    }

    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// `d1 | d2 | …`, or `1` for the trivial group.
    pub fn pretty(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.0.iter().map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") }).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Serialize for InvariantFactors {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for d in &self.0 {
            match d.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }
}

/// Coordinates on a cokernel from its Smith form: component `i` lives in
/// `Z/factors[i]` (`Z` when the factor is 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelCoordinates {
    pub factors: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
}

impl CokernelCoordinates {
    pub fn invariant_factors(&self) -> InvariantFactors {
        let mut t: Vec<BigInt> = self.factors.iter().filter(|d| !d.is_zero()).cloned().collect();
        let free = self.factors.len() - t.len();
        t.extend(std::iter::repeat(BigInt::zero()).take(free));
        InvariantFactors(t)
    }

    /// Coordinates of a generator-space vector, torsion entries reduced to
    /// `[0, d)`.
    pub fn project(&self, x: &[i64]) -> Vec<BigInt> {
        self.basis
            .iter()
            .zip(&self.factors)
            .map(|(row, d)| {
                let y: BigInt = row.iter().zip(x).map(|(r, &v)| r * BigInt::from(v)).sum();
                if d.is_zero() {
                    y
                } else {
                    y.mod_floor(d)
                }
            })
            .collect()
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        self.project(x).iter().all(Zero::is_zero)
    }

    pub fn free_part(&self, x: &[i64]) -> Vec<BigInt> {
        self.project(x).into_iter().zip(&self.factors).filter(|(_, d)| d.is_zero()).map(|(y, _)| y).collect()
    }

    /// `(value, modulus)` for each torsion coordinate.
    pub fn torsion_part(&self, x: &[i64]) -> Vec<(BigInt, BigInt)> {
        self.project(x).into_iter().zip(&self.factors).filter(|(_, d)| !d.is_zero()).map(|(y, d)| (y, d.clone())).collect()
    }

    /// Order of the class of `x`, `None` when it has infinite order.
    pub fn element_order(&self, x: &[i64]) -> Option<BigInt> {
        if self.free_part(x).iter().any(|y| !y.is_zero()) {
            return None;
        }
        Some(self.torsion_part(x).iter().fold(BigInt::one(), |acc, (y, d)| acc.lcm(&(d / y.gcd(d)))))
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }
}

/// Exponent-sum data of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub presentation: IntegerMatrixPresentation,
    pub meridian: Vec<i64>,
    pub longitude: Vec<i64>,
}

pub fn abelianization(pres: &GroupPresentation) -> Abelianization {
    let n = pres.generator_count();
    let cols: Vec<Vec<i64>> = pres.relators.iter().map(|r| r.exponent_sums(n)).collect();
    Abelianization {
        presentation: IntegerMatrixPresentation::from_columns(pres.generators.clone(), &cols),
        meridian: pres.meridian.exponent_sums(n),
        longitude: pres.longitude.exponent_sums(n),
    }
}

/// The rational longitude as a primitive class `x·μ + y·λ` and the order
/// of its image in `H1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalLongitude {
    pub class: (i64, i64),
    pub order: i64,
}

fn to_i64(v: &BigInt) -> Result<i64, HomologyError> {
    v.to_i64().ok_or_else(|| HomologyError::ModelInvalid("coordinate exceeds 64 bits".into()))
}

pub fn rational_longitude(model: &KnotExteriorModel) -> Result<RationalLongitude, HomologyError> {
    let ab = abelianization(&model.presentation);
    let coords = ab.presentation.coordinates();
    let fm = coords.free_part(&ab.meridian);
    let fl = coords.free_part(&ab.longitude);
    let invalid = |why: &str| HomologyError::ModelInvalid(format!("{}: {why}", model.name));
    let Some(k) = (0..fm.len()).find(|&i| !fm[i].is_zero() || !fl[i].is_zero()) else {
        return Err(invalid("boundary maps to torsion, kernel has rank 2"));
    };
    let g = fm[k].gcd(&fl[k]);
    let mut x = to_i64(&(&fl[k] / &g))?;
    let mut y = to_i64(&(-&fm[k] / &g))?;
    for i in 0..fm.len() {
        if !(&fm[i] * BigInt::from(x) + &fl[i] * BigInt::from(y)).is_zero() {
            return Err(invalid("boundary injects rationally, kernel is trivial"));
        }
    }
    if y < 0 || (y == 0 && x < 0) {
        x = -x;
        y = -y;
    }
    let class_vec: Vec<i64> = ab.meridian.iter().zip(&ab.longitude).map(|(m, l)| x * m + y * l).collect();
    let order = coords.element_order(&class_vec).expect("kernel class is torsion");
    Ok(RationalLongitude { class: (x, y), order: to_i64(&order)? })
}

/// `H1` of the Dehn filling along `μ^p λ^q`.
pub fn filling_homology(model: &KnotExteriorModel, slope: (i64, i64)) -> Result<InvariantFactors, HomologyError> {
    let (p, q) = slope;
    if p.gcd(&q) != 1 {
        return Err(HomologyError::InvalidSlope(p, q));
    }
    let ab = abelianization(&model.presentation);
    let col: Vec<i64> = ab.meridian.iter().zip(&ab.longitude).map(|(m, l)| p * m + q * l).collect();
    Ok(ab.presentation.with_column(&col).invariant_factors())
}

/// Relation matrix of `M1 ∪ M2` glued along `G`.
pub fn glue_presentation(m1: &KnotExteriorModel, m2: &KnotExteriorModel, g: &GluingMatrix) -> IntegerMatrixPresentation {
    let a1 = abelianization(&m1.presentation);
    let a2 = abelianization(&m2.presentation);
    let n1 = m1.presentation.generator_count();
    let n2 = m2.presentation.generator_count();
    let mut labels: Vec<String> = m1.presentation.generators.iter().map(|s| format!("{s}₁")).collect();
    labels.extend(m2.presentation.generators.iter().map(|s| format!("{s}₂")));
    let mut cols = Vec::new();
    for c in a1.presentation.columns() {
        let mut v = c;
        v.resize(n1 + n2, 0);
        cols.push(v);
    }
    for c in a2.presentation.columns() {
        let mut v = vec![0; n1];
        v.extend(c);
        cols.push(v);
    }
    let side2 = |s: i64, t: i64| -> Vec<i64> { a2.meridian.iter().zip(&a2.longitude).map(|(m, l)| s * m + t * l).collect() };
    for (lhs, rhs) in [(&a1.meridian, side2(g.a(), g.b())), (&a1.longitude, side2(g.p(), g.c()))] {
        let mut v = lhs.clone();
        v.extend(rhs.iter().map(|x| -x));
        cols.push(v);
    }
    IntegerMatrixPresentation::from_columns(labels, &cols)
}

/// Invariant factors of `H1` of the glued manifold.
pub fn glue_homology(m1: &KnotExteriorModel, m2: &KnotExteriorModel, g: &GluingMatrix) -> InvariantFactors {
    glue_presentation(m1, m2, g).invariant_factors()
}
