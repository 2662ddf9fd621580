use alloc::string::String;

use crate::space::{ComponentId, ExtPoint};

/// Errors raised by construction and analysis routines.
///
/// Verdicts (a failed continuity check, an invalid certificate, ...) are
/// reported through result types of the individual operations; this enum is
/// reserved for inputs that violate an operation's contract.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown component {0:?}")]
    UnknownComponent(ComponentId),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("point {0} is not a point of the space")]
    PointOutsideSpace(ExtPoint),
    #[error("malformed interval set: {0}")]
    MalformedIntervals(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("no rule of the map governs {0}")]
    CoverageGap(ExtPoint),
    #[error("the rule governing {0} produces no valid image point")]
    InvalidImage(ExtPoint),
    #[error("map spaces do not match")]
    SpaceMismatch,
    #[error("map is not continuous at {0}")]
    Discontinuous(ExtPoint),
    #[error("map is not CSLI: {0}")]
    NotCsli(String),
    #[error("invalid piecewise function: {0}")]
    InvalidFunction(String),
    #[error("map is not a local homeomorphism: level set {level} is not clopen")]
    NotLocalHomeomorphism { level: usize },
    #[error("necessary condition violated: no locally open point over {0}")]
    NecessaryConditionViolated(ExtPoint),
    #[error("no locally open branch over the stratum {0}")]
    NoOpenBranch(String),
    #[error("continuity repair failed: {0}")]
    RepairFailed(String),
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),
    #[error("compatibility condition fails for generators {i} and {j}")]
    DdagViolated { i: usize, j: usize },
    #[error("invalid semigroup data: {0}")]
    InvalidSemigroup(String),
    #[error("family resolver has no map for element {0}")]
    ResolverGap(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
