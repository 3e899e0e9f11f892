//! Unimodularity witnesses and the reduction procedures that carry a
//! unimodular row to `e_1`, each producing a replayable transcript.

mod descent;
mod lift;
mod local;
mod monic;
mod radical;
mod relative;
mod row;
mod search;
mod semilocal;
mod transcript;

use thiserror::Error;

use crate::groups::GroupError;
use crate::monoid_ring::MonoidRingError;
use crate::ring::RingError;

pub use descent::{stabilization_descent, Descent};
pub use lift::{lift_word, project_word, residue_lift};
pub use local::{pivot_reduce, reduce_over_field, reduce_with_unit_entry, Corner};
pub use monic::{monic_then_reduce, t1_weight, try_monic_twist, MonicOutcome, C_MAX};
pub use radical::{radical_script, reduce_mod_radical, ScriptStep};
pub use relative::reduce_relative;
pub use row::{check_unimodular, UnimodularRow, WitnessSearch};
pub use search::{bounded_orbit_search, monomial_pool, poly_cost, scalar_cost, SearchBudget, SearchOutcome};
pub use semilocal::reduce_semilocal;
pub use transcript::{replay_states, Procedure, ReductionTranscript, ReplayVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("isotropy violated: orthogonal rows need q(u) = 0")]
    Isotropy,
    #[error("zero row")]
    ZeroRow,
    #[error("row has no unit entry")]
    NoUnitEntry,
    #[error("row is not unimodular")]
    NotUnimodular,
    #[error("form size 2n must be at least 4, got {0}")]
    TooSmall(usize),
    #[error("unsupported carrier: {0}")]
    Unsupported(String),
    #[error("excision reduction failed: {0}")]
    Excision(String),
    #[error("no monic last entry for any twist exponent up to {c_max}")]
    MonicNotAchieved { c_max: u32 },
    #[error("last column is not e_{size}")]
    LastColumn { size: usize },
    #[error("matrix is not in the group")]
    NotInGroup,
    #[error("internal replay mismatch in {0}")]
    Replay(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    MonoidRing(#[from] MonoidRingError),
}

impl ReductionError {
    /// True for errors that report a violated input contract.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, ReductionError::Replay(_) | ReductionError::Excision(_))
    }
}
