use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurepError {
    #[error("word letter {letter} is out of range for {generators} generators")]
    LetterOutOfRange { letter: i32, generators: usize },
    #[error("representation has {got} images, presentation has {expected} generators")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("peripheral holonomies do not commute (‖[ρ(μ), ρ(λ)] − 1‖ = {0:.3e})")]
    NonCommutingPeripheral(f64),
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("slope ({0}, {1}) is not primitive")]
    InvalidSlope(i64, i64),
    #[error("grid resolution must be at least 2, got {0}")]
    Resolution(usize),
}
