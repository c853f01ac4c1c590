use thiserror::Error;

use crate::diagram::{CrossingId, EdgeId, Violation};
use crate::geometry::GeneralPositionViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),

    #[error("invalid diagram: {}", join(.0))]
    InvalidDiagram(Vec<Violation>),

    #[error("inconsistent marking: {0}")]
    InconsistentMarking(String),

    #[error("contours are not in general position: {}", join(.0))]
    GeneralPosition(Vec<GeneralPositionViolation>),

    #[error("contour must have at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("contour repeats vertex {0} consecutively")]
    RepeatedVertex(usize),

    #[error("move is not applicable to this diagram: {0}")]
    StaleMove(String),

    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },

    #[error("oracle disagreement: {first} vs {second}")]
    OracleDisagreement { first: String, second: String },

    #[error("edge {0} does not belong to the diagram")]
    UnknownEdge(EdgeId),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
