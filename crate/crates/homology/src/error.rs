use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomologyError {
    #[error("word letter {letter} is out of range for {generators} generators")]
    LetterOutOfRange { letter: i32, generators: usize },
    #[error("model invalid: {0}")]
    ModelInvalid(String),
    #[error("slope ({0}, {1}) is not primitive")]
    InvalidSlope(i64, i64),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("determinant a·c − b·p = {0}, expected -1")]
    Determinant(i128),
    #[error("Seifert data needs exactly three fibers with alpha ≥ 2")]
    SeifertData,
    #[error("H1 is infinite (first Betti number {0})")]
    PositiveBetti(usize),
    #[error("H1 = {0} is not p-torsion for p = {1}")]
    NotPTorsion(String, i64),
    #[error("unsupported gluing: {0}")]
    Unsupported(String),
    #[error("malformed model JSON: {0}")]
    Parse(String),
}
