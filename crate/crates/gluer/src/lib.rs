//! Splices of two knot exteriors along their boundary tori.
//!
//! [`splice`] builds the amalgamated presentation, [`search_nonabelian_rep`]
//! intersects the two pillowcase images and refines each crossing into a
//! representation of the glued manifold, and the certificate functions check
//! slope-line and `p`-avoiding conditions on sampled images and curves.

mod certificate;
mod error;
mod search;
mod splice;

pub use certificate::{
    p_avoiding_certificate, slope_line_certificates, CertificateReport, ConnectivityCheck, LineCheck, PAvoidingReport,
    TouchPoint, TransversalityCheck,
};
pub use error::GluerError;
pub use search::{
    search_nonabelian_rep, search_with_images, CandidateRecord, GluedRepresentation, SearchDiagnostics, SearchOutcome,
};
pub use splice::{splice, SplicedManifold};
