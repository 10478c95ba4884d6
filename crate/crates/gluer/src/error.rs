use homology::HomologyError;
use pillowcase_core::PillowcaseError;
use surep::SurepError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GluerError {
    #[error(transparent)]
    Pillowcase(#[from] PillowcaseError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Surep(#[from] SurepError),
    #[error("curve must be closed")]
    OpenCurve,
    #[error("abelianization {abelianization} disagrees with glued homology {glued}")]
    HomologyMismatch { abelianization: String, glued: String },
}
