//! Planar structure of diagrams and Reidemeister moves.
//!
//! The embedding is never stored: the counterclockwise order of the four
//! edge-ends at a crossing follows from its frame orientation, and faces are
//! traced from that rotation system.

mod moves;
mod walk;

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::{Crossing, CrossingId, Diagram, EdgeId, Sign};

pub use moves::{MoveDescriptor, MoveKind, Side};
pub use walk::{random_equivalent, WalkConfig};

/// One of the four edge-ends at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    AIn,
    AOut,
    BIn,
    BOut,
}

impl Slot {
    pub fn edge(self, c: &Crossing) -> EdgeId {
        match self {
            Slot::AIn => c.a.incoming,
            Slot::AOut => c.a.outgoing,
            Slot::BIn => c.b.incoming,
            Slot::BOut => c.b.outgoing,
        }
    }

    pub fn is_outgoing(self) -> bool {
        matches!(self, Slot::AOut | Slot::BOut)
    }
}

/// Counterclockwise order of edge-ends around a crossing.
pub fn ccw_order(orient_ab: Sign) -> [Slot; 4] {
    match orient_ab {
        Sign::Positive => [Slot::AOut, Slot::BOut, Slot::AIn, Slot::BIn],
        Sign::Negative => [Slot::AOut, Slot::BIn, Slot::AIn, Slot::BOut],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub orders: Vec<(CrossingId, [Slot; 4])>,
}

impl RotationSystem {
    pub fn of(d: &Diagram) -> RotationSystem {
        RotationSystem {
            orders: d
                .crossings()
                .iter()
                .map(|c| (c.id, ccw_order(c.orient_ab)))
                .collect(),
        }
    }
}

/// An edge traversed along (`forward`) or against its orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub forward: bool,
}

/// A face boundary, traced with the face on the left of every dart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub darts: Vec<Dart>,
}

struct Ends {
    head: HashMap<EdgeId, (usize, Slot)>,
    tail: HashMap<EdgeId, (usize, Slot)>,
}

fn ends(d: &Diagram) -> Ends {
    let mut head = HashMap::new();
    let mut tail = HashMap::new();
    for (i, c) in d.crossings().iter().enumerate() {
        head.insert(c.a.incoming, (i, Slot::AIn));
        head.insert(c.b.incoming, (i, Slot::BIn));
        tail.insert(c.a.outgoing, (i, Slot::AOut));
        tail.insert(c.b.outgoing, (i, Slot::BOut));
    }
    Ends { head, tail }
}

fn next_dart(d: &Diagram, ends: &Ends, dart: Dart) -> Dart {
    let (i, arrival) = if dart.forward {
        ends.head[&dart.edge]
    } else {
        ends.tail[&dart.edge]
    };
    let c = &d.crossings()[i];
    let order = ccw_order(c.orient_ab);
    let pos = order.iter().position(|&s| s == arrival).expect("slot in rotation");
    let leave = order[(pos + 3) % 4];
    Dart {
        edge: leave.edge(c),
        forward: leave.is_outgoing(),
    }
}

/// Faces of the rotation system, in order of their least starting dart.
/// Crossing-free components contribute nothing.
pub fn faces(d: &Diagram) -> Vec<Face> {
    let ends = ends(d);
    let mut darts: Vec<Dart> = d
        .edges()
        .into_iter()
        .flat_map(|edge| [Dart { edge, forward: true }, Dart { edge, forward: false }])
        .collect();
    darts.sort_by_key(|x| (x.edge, !x.forward));
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for start in darts {
        if seen.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = start;
        loop {
            seen.insert(cur);
            face.push(cur);
            cur = next_dart(d, &ends, cur);
            if cur == start {
                break;
            }
        }
        out.push(Face { darts: face });
    }
    out
}

/// Whether every crossing-connected piece satisfies `V - E + F = 2`.
pub fn validate_planarity(d: &Diagram) -> bool {
    if d.crossing_count() == 0 {
        return true;
    }
    let ends = ends(d);
    let n = d.crossing_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (e, &(h, _)) in &ends.head {
        let (t, _) = ends.tail[e];
        let (a, b) = (find(&mut parent, h), find(&mut parent, t));
        parent[a] = b;
    }
    let mut euler: HashMap<usize, i64> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        *euler.entry(r).or_default() += 1;
    }
    for &(h, _) in ends.head.values() {
        let r = find(&mut parent, h);
        *euler.entry(r).or_default() -= 1;
    }
    for face in faces(d) {
        let e = face.darts[0].edge;
        let r = find(&mut parent, ends.head[&e].0);
        *euler.entry(r).or_default() += 1;
    }
    euler.values().all(|&chi| chi == 2)
}
