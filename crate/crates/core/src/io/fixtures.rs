//! Embedded fixture corpus with expected coefficients.

use crate::diagram::Diagram;
use crate::engine::ConwaySeries;
use crate::io::parse_diagram;

#[derive(Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    /// Nonzero coefficients of the full series.
    pub expected: &'static [(u32, i64)],
    /// Part of the reference table checked by `table_check`.
    pub in_table: bool,
}

impl Fixture {
    pub fn diagram(&self) -> Diagram {
        parse_diagram(self.source)
            .unwrap_or_else(|e| panic!("fixture {}: {e}", self.name))
            .diagram
    }

    /// Expected series up to the crossing count.
    pub fn expected_series(&self) -> ConwaySeries {
        let bound = self.diagram().crossing_count() as u32;
        ConwaySeries::from_coefficients(self.expected.iter().copied(), bound)
    }
}

macro_rules! fixture {
    ($name:literal, $table:literal, [$(($n:literal, $v:literal)),*]) => {
        Fixture {
            name: $name,
            source: include_str!(concat!("../../fixtures/", $name, ".diagram")),
            expected: &[$(($n, $v)),*],
            in_table: $table,
        }
    };
}

pub static FIXTURES: &[Fixture] = &[
    fixture!("unknot", true, [(0, 1)]),
    fixture!("unlink2", true, []),
    fixture!("hopf_pos", true, [(1, 1)]),
    fixture!("hopf_neg", true, [(1, -1)]),
    fixture!("trefoil_right", true, [(0, 1), (2, 1)]),
    fixture!("trefoil_left", true, [(0, 1), (2, 1)]),
    fixture!("figure_eight", true, [(0, 1), (2, -1)]),
    fixture!("knot_5_1", true, [(0, 1), (2, 3), (4, 1)]),
    fixture!("knot_5_2", true, [(0, 1), (2, 2)]),
    fixture!("kink", false, [(0, 1)]),
    fixture!("knot_5_1_six", false, [(0, 1), (2, 3), (4, 1)]),
    fixture!("knot_10_123", false, [(0, 1), (2, -2), (4, -1), (6, 2), (8, 1)]),
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

#[derive(Debug)]
pub struct ContourFixture {
    pub name: &'static str,
    pub source: &'static str,
    pub crossings: usize,
}

pub static CONTOUR_FIXTURES: &[ContourFixture] = &[
    ContourFixture {
        name: "hopf_quads",
        source: include_str!("../../fixtures/hopf_quads.contours"),
        crossings: 2,
    },
    ContourFixture {
        name: "trefoil_hexagon",
        source: include_str!("../../fixtures/trefoil_hexagon.contours"),
        crossings: 3,
    },
    ContourFixture {
        name: "disjoint_triangles",
        source: include_str!("../../fixtures/disjoint_triangles.contours"),
        crossings: 0,
    },
];
