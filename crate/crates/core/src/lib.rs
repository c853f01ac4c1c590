//! Conway polynomial coefficients of oriented link diagrams.
//!
//! Coefficients are computed by walking from a descending (trivial) state of
//! a diagram to the diagram itself one crossing change at a time, smoothing
//! at each change and recursing one degree down.

mod canonical;
pub mod descending;
pub mod diagram;
pub mod engine;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod reidemeister;
pub mod verify;

pub use descending::{default_marking, descending_diagram, diff_set, is_descending, Marking, MarkingSpace};
pub use diagram::{Crossing, CrossingId, Diagram, EdgeId, Passage, Shadow, Sign, SkeinTriple, Strand, Violation};
pub use engine::{evaluate_gamma, ConwayEngine, ConwaySeries, Invariant, MemoTable};
pub use error::{Error, Result};
pub use geometry::{Contour, ContourSet, Point};
pub use io::{parse_contours, parse_diagram, parse_diagrams, serialize_diagram, ContourDocument, DiagramDocument};
pub use reidemeister::{faces, validate_planarity, MoveDescriptor, MoveKind};
