use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PillowcaseError {
    #[error("σ_p requires an odd prime, got {0}")]
    NotOddPrime(i64),
    #[error("gluing matrix ({a}, {b}, {p}, {c}) has determinant {det}, expected -1")]
    BadDeterminant { a: i64, b: i64, p: i64, c: i64, det: i64 },
    #[error("curve passes within tolerance of the marked point {0}")]
    DegenerateCurve(&'static str),
    #[error("curve must be closed")]
    OpenCurve,
    #[error("curve needs at least {0} vertices")]
    TooFewVertices(usize),
}
