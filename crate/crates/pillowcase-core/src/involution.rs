use std::f64::consts::PI;

use crate::{canonicalize, PillowcaseError, PillowcasePoint, TWO_PI};

/// Involutions of the pillowcase arising from gluing symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// `(α, β) ↦ (−α, 2α + β)`.
    Sigma,
    /// `(α, β) ↦ (π − α, 2π − β)`.
    Tau,
    /// `(α, β) ↦ (−α, pα + β)` for an odd prime `p`.
    SigmaP(u32),
}

/// Trial-division primality test.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Involution {
    pub fn sigma_p(p: i64) -> Result<Self, PillowcaseError> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(PillowcaseError::NotOddPrime(p));
        }
        Ok(Involution::SigmaP(p as u32))
    }
}

pub fn apply_involution(kind: Involution, pt: PillowcasePoint) -> Result<PillowcasePoint, PillowcaseError> {
    let (a, b) = pt.coords();
    Ok(match kind {
        Involution::Sigma => canonicalize(-a, 2.0 * a + b),
        Involution::Tau => canonicalize(PI - a, TWO_PI - b),
        Involution::SigmaP(p) => {
            Involution::sigma_p(p as i64)?;
            canonicalize(-a, p as f64 * a + b)
        }
    })
}
