#![allow(dead_code)]

use surep::{GroupPresentation, Word};

/// ⟨u, v | u² v⁻³⟩ with μ = u v⁻¹, λ = u² μ⁻⁶.
pub fn trefoil() -> GroupPresentation {
    let mu = Word::new(vec![1, -2]);
    let lambda = Word::new(vec![1, 1]).concat(&mu.pow(-6));
    GroupPresentation::new(vec!["u".into(), "v".into()], vec![Word::new(vec![1, 1, -2, -2, -2])], mu, lambda).unwrap()
}

/// ⟨a, b | a b a⁻¹ b⟩ with μ = a², λ = b.
pub fn klein() -> GroupPresentation {
    GroupPresentation::new(
        vec!["a".into(), "b".into()],
        vec![Word::new(vec![1, 2, -1, 2])],
        Word::new(vec![1, 1]),
        Word::new(vec![2]),
    )
    .unwrap()
}

/// ⟨x | ⟩ with μ = x and trivial λ.
pub fn unknot() -> GroupPresentation {
    GroupPresentation::new(vec!["x".into()], vec![], Word::new(vec![1]), Word::empty()).unwrap()
}

/// Distance of `(α, β)` from the line `6α + β ≡ π (mod 2π)`, measured in β.
pub fn trefoil_line_defect(alpha: f64, beta: f64) -> f64 {
    let r = (6.0 * alpha + beta - std::f64::consts::PI).rem_euclid(std::f64::consts::TAU);
    r.min(std::f64::consts::TAU - r)
}
