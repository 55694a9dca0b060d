//! Exact computation of toric ideals and two-piece semi-stable
//! degenerations of smooth lattice polytopes.

pub mod error;
pub mod exact_linalg;
pub mod ideal;
pub mod lifting;
pub mod par;
pub mod pipeline;
pub mod polytope;
pub mod samples;

pub use error::{IdealError, LiftingError, LinalgError, PipelineError, PolytopeError};
pub use ideal::{degeneration_ideal, ideal_equal, specialize_eta, toric_ideal, IdealGB, OrderChoice};
pub use pipeline::{degenerate, Certificates, Degeneration};
