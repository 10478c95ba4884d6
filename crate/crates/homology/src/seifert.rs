use serde::Serialize;

use crate::{HomologyError, IntegerMatrixPresentation, InvariantFactors};

/// `H1` of a Seifert fibered space over `S²` with three exceptional fibers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertH1 {
    pub factors: InvariantFactors,
    /// `|α1α2β3 + α1β2α3 + β1α2α3|`.
    pub order_formula: i64,
}

/// Relation matrix with generators `x, y, z, w`: `α_i e_i + β_i w` for each
/// fiber and `x + y + z`.
pub fn seifert_presentation(data: &[(i64, i64)]) -> Result<IntegerMatrixPresentation, HomologyError> {
    if data.len() != 3 || data.iter().any(|&(a, _)| a < 2) {
        return Err(HomologyError::SeifertData);
    }
    let mut cols = Vec::new();
    for (i, &(a, b)) in data.iter().enumerate() {
        let mut c = vec![0; 4];
        c[i] = a;
        c[3] = b;
        cols.push(c);
    }
    cols.push(vec![1, 1, 1, 0]);
    let labels = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    Ok(IntegerMatrixPresentation::from_columns(labels, &cols))
}

pub fn seifert_h1(data: &[(i64, i64)]) -> Result<SeifertH1, HomologyError> {
    let pres = seifert_presentation(data)?;
    let [(a1, b1), (a2, b2), (a3, b3)] = [data[0], data[1], data[2]];
    let order_formula = (a1 * a2 * b3 + a1 * b2 * a3 + b1 * a2 * a3).abs();
    let factors = pres.invariant_factors();
    if order_formula == 0 {
        return Err(HomologyError::PositiveBetti(factors.free_rank()));
    }
    Ok(SeifertH1 { factors, order_formula })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn poincare_sphere_is_trivial() {
        let h = seifert_h1(&[(2, 1), (3, 1), (5, -4)]).unwrap();
        assert!(h.factors.is_trivial());
        assert_eq!(h.order_formula, 1);
    }

    #[test]
    fn two_four_four() {
        let h = seifert_h1(&[(2, 1), (4, 1), (4, 1)]).unwrap();
        assert_eq!(h.order_formula, 32);
        assert_eq!(h.factors.order(), Some(BigInt::from(32)));
        assert!(h.factors.0.iter().any(|d| d % 4 == BigInt::from(0)));
    }

    #[test]
    fn errors() {
        assert_eq!(seifert_h1(&[(2, 1), (3, 1)]), Err(HomologyError::SeifertData));
        assert_eq!(seifert_h1(&[(1, 1), (3, 1), (5, 1)]), Err(HomologyError::SeifertData));
        assert_eq!(seifert_h1(&[(2, 1), (2, 1), (2, -2)]), Err(HomologyError::PositiveBetti(1)));
    }
}
