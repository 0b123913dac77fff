use thiserror::Error;

use crate::lattice::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("walk revisits vertex {0}")]
    SelfIntersection(Point),

    #[error("vertices {0} and {1} are not nearest neighbours")]
    NotAdjacent(Point, Point),

    #[error("edge set is not a simple path: {0}")]
    NotAPath(String),

    #[error("edge set is not a single closed cycle: {0}")]
    NotAPolygon(String),

    #[error("marked sites coincide at {0}")]
    DegenerateDomain(Point),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("walk is not a bridge: {0}")]
    NotABridge(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("no adjacent cardinal edge: {0}")]
    NoAdjacentCardinalEdge(String),

    #[error("no link polygon found for edge {0}: {1}")]
    NoLinkFound(String, String),

    #[error("chain appears frozen: {0}")]
    NonErgodicWarning(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that come from exhausting a budget rather than from bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}
