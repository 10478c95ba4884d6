//! SU(2) representations of finitely presented groups: word evaluation,
//! constrained solving, pillowcase image sweeps and curve extraction.

mod curve;
mod error;
mod image;
mod index;
mod quaternion;
mod reducible;
mod rep;
mod solver;

pub use error::SurepError;
pub use homology::{GroupPresentation, KnotExteriorModel, Word};
pub use quaternion::UnitQuaternion;
pub use rep::{
    align_boundary, boundary_angles, common_axis_angles, evaluate_word, irreducibility_gap, relator_residual,
    Representation, PERIPHERAL_TOL,
};
pub use solver::{refine, solve_at_meridian_angle, solve_with_constraints, Constraint, EquationSystem, Solution, SolverConfig};
pub use image::{lift_to_cut_open, sample_pillowcase_image, EdgeKind, ImageDiagnostics, ImageEdge, ImagePoint, LiftViolation, LiftedImage, PillowcaseImage, LIFT_TOL};
pub use index::PointIndex;
pub use reducible::{reducible_curves, ReducibleCurve};
pub use curve::{extract_essential_curve, filling_relator, find_surgery_representation, surgery_representations, SurgeryWitness};
