//! Integer homology of knot exteriors, Dehn fillings and torus gluings.
//!
//! Every group is presented as the cokernel of an integer matrix whose rows
//! are generators and whose columns are relations. Computations go through
//! an exact Smith normal form over arbitrary-precision integers.

mod abelian;
mod classify;
mod error;
mod matrix;
pub mod presentation;
mod seifert;
mod snf;
mod standard_form;

pub use abelian::{
    abelianization, filling_homology, glue_homology, glue_presentation, rational_longitude, Abelianization, CokernelCoordinates,
    IntegerMatrixPresentation, InvariantFactors, RationalLongitude,
};
pub use classify::{classify_gluing, BoundaryImage, CaseReport, EssentialEvidence, GluingCase};
pub use error::HomologyError;
pub use matrix::IntMatrix;
pub use presentation::{GroupPresentation, KnotExteriorModel, Word};
pub use seifert::{seifert_h1, seifert_presentation, SeifertH1};
pub use snf::{smith_normal_form, SmithForm};
pub use standard_form::{enumerate_standard_tuples, is_prime, standard_form_reduce, StandardFormResult, TwistMove};
