//! Affine monoids and the convex geometry of their cones: membership,
//! faces, Hilbert bases, normality, section polytopes, complexity and
//! pyramidal decompositions.

mod hilbert;
mod monoid;
mod normality;
mod polytope;

use thiserror::Error;

pub use hilbert::{hilbert_basis, RationalCone};
pub use monoid::AffineMonoid;
pub use normality::{is_normal, is_phi_simplicial, is_seminormal, SeminormalStatus};
pub use polytope::{
    complexity, default_section, extremal_generators, pyramidal_decomposition, section_polytope,
    star_submonoid, submonoid_of_polytope, MembershipPredicate, PolytopeSubmonoid,
    PyramidalDecomposition, SectionPolytope, StarSubmonoid,
};

/// Largest rank handled by the enumeration-based algorithms.
pub const MAX_DESK_RANK: usize = 4;
/// Largest number of lattice points a single enumeration may visit.
pub const MAX_ENUMERATION: u64 = 4_000_000;
/// Largest vertex count for the exhaustive complexity search.
pub const MAX_COMPLEXITY_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a positive monoid (pointed cone)")]
    PositivityRequired,
    #[error("desk-scale limit exceeded: {0}")]
    DeskScale(String),
    #[error("functional is not in the interior of the dual cone")]
    NotInteriorDual,
    #[error("polytope is not contained in the section polytope")]
    Containment,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate decomposition: {0}")]
    Degenerate(String),
}
