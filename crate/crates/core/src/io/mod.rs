//! Text formats for diagrams and contours, plus the embedded fixture corpus.

mod contours;
mod diagram;
pub mod fixtures;

pub use contours::{parse_contours, ContourDocument};
pub use diagram::{parse_diagram, parse_diagrams, serialize_diagram, DiagramDocument};

use crate::error::Error;

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with comments stripped, numbered from 1, blank lines skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}
