//! Skeletons, brackets, bracket systems, clique anchors, clique systems and
//! signatures, with validators and the constructive clique extraction.

mod bracket;
mod clique_system;
mod skeleton;

use serde::{Deserialize, Serialize};

pub use bracket::{
    build_bracket, extract_clique, interior_classify, validate_bracket_system, verify_bracket_crossing, Bracket,
    BracketEntry, BracketJson, Classification, SupportSide,
};
pub use clique_system::{
    check_signature_betweenness, clique_anchors, crosses_system, side_for_clique, signature, signature_in,
    validate_clique_system, CliqueAnchors, CliqueSystem, CliqueSystemJson, Signature,
};
pub use skeleton::{is_supported, support_window, supported_subfamily, Skeleton};

use crate::geom::{CurveFamily, ExteriorError, GroundedCurve};

/// Left/right classification of a curve against a clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Neither,
}

impl Side {
    pub fn bit(self) -> Option<u8> {
        match self {
            Side::Left => Some(0),
            Side::Right => Some(1),
            Side::Neither => None,
        }
    }
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum StructureError {
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),
    #[error("P and S must lie on opposite sides of each other in basepoint order")]
    SideOrderViolation,
    #[error("curve {0} of P misses every curve of S")]
    UnhitCurve(String),
    #[error("support {0} is no curve's first hit")]
    UnusedSupport(String),
    #[error("P and S share curve {0}")]
    Overlapping(String),
    #[error("{0}")]
    NotAClique(String),
    #[error("curve {curve} is classified both ways (or neither) for the clique led by {l}")]
    InconsistentSide { curve: String, l: String },
    #[error("curve {curve} does not lie strictly between {l} and {r}")]
    NotBetween { curve: String, l: String, r: String },
    #[error("curve {0} does not cross the clique system")]
    NotCrossing(String),
    #[error("invalid clique system at clique {index}: {reason}")]
    InvalidCliqueSystem { index: usize, reason: String },
    #[error("invalid bracket system at bracket {index}: {reason}")]
    InvalidBracketSystem { index: usize, reason: String },
    #[error("precondition failed at index {index}: {reason}")]
    PreconditionFailure {
        index: usize,
        reason: String,
        measured: Option<usize>,
    },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

pub(crate) fn lookup<'a>(family: &'a CurveFamily, id: &str) -> Result<(usize, &'a GroundedCurve), StructureError> {
    let i = family
        .index_of(id)
        .ok_or_else(|| StructureError::UnknownCurve(id.to_string()))?;
    Ok((i, family.curve(i)))
}

/// Sorts ids by basepoint order and removes duplicates.
pub(crate) fn sorted_ids<S: AsRef<str>>(family: &CurveFamily, ids: &[S]) -> Result<Vec<String>, StructureError> {
    let mut idx = ids
        .iter()
        .map(|s| lookup(family, s.as_ref()).map(|(i, _)| i))
        .collect::<Result<Vec<_>, _>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx.into_iter().map(|i| family.curve(i).id().to_string()).collect())
}
