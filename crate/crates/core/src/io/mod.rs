//! Interchange formats and experiment configuration.

pub mod config;
pub mod json;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::groups::GroupError;
use crate::monoid_ring::MonoidRingError;
use crate::ring::RingError;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Format(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    MonoidRing(#[from] MonoidRingError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub use config::{ExperimentConfig, Family, StabilityBound};
pub use json::{to_canonical, Carrier, JsonCarrier};
