//! Affine inequality systems over named variables: Fourier-Motzkin elimination,
//! LP-certified redundancy removal, projection and vertex enumeration.
//!
//! Arithmetic is floating point with every constraint normalised to unit
//! max-|coefficient|; comparisons use [`TOL`].

mod lp;
mod system;
mod vertices;

pub use system::{Constraint, LinearSystem, Membership, Relation, DEFAULT_BLOWUP_CAP, TOL};
pub use vertices::{vertex_enumeration, Polytope, VertexSet};
