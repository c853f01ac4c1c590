use std::collections::BTreeSet;

use serde::Serialize;

use super::{faces, Dart};
use crate::diagram::{Crossing, CrossingId, Diagram, EdgeId, Passage, Sign, Strand};
use crate::error::{Error, Result};

/// Side of a strand, looking along its orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum MoveDescriptor {
    /// Adds a kink on `edge` (or turns a free loop into a one-crossing kink
    /// when `edge` is `None`). The loop lies on `side` of the strand and the
    /// new crossing has sign `sign`.
    R1Add {
        edge: Option<EdgeId>,
        side: Side,
        sign: Sign,
    },
    /// Removes the kink at `crossing` whose monogon is bounded by `loop_edge`.
    R1Remove { crossing: CrossingId, loop_edge: EdgeId },
    /// Pushes a finger of `first`'s edge across `second`'s edge through the
    /// face both darts bound, creating a bigon.
    R2Add {
        first: Dart,
        second: Dart,
        first_over: bool,
    },
    /// Pulls apart the bigon bounded by `edges` between `crossings`.
    R2Remove {
        crossings: [CrossingId; 2],
        edges: [EdgeId; 2],
    },
    /// Slides a strand across the crossing opposite to it in the triangle
    /// bounded by `edges`.
    R3 {
        crossings: [CrossingId; 3],
        edges: [EdgeId; 3],
    },
}

impl MoveDescriptor {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveDescriptor::R1Add { .. } => MoveKind::R1Add,
            MoveDescriptor::R1Remove { .. } => MoveKind::R1Remove,
            MoveDescriptor::R2Add { .. } => MoveKind::R2Add,
            MoveDescriptor::R2Remove { .. } => MoveKind::R2Remove,
            MoveDescriptor::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn crossing_delta(&self) -> i64 {
        match self.kind() {
            MoveKind::R1Add => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Add => 2,
            MoveKind::R2Remove => -2,
            MoveKind::R3 => 0,
        }
    }

    /// Crossings of the input diagram that take part in the move.
    pub fn participants(&self) -> Vec<CrossingId> {
        match self {
            MoveDescriptor::R1Add { .. } | MoveDescriptor::R2Add { .. } => Vec::new(),
            MoveDescriptor::R1Remove { crossing, .. } => vec![*crossing],
            MoveDescriptor::R2Remove { crossings, .. } => crossings.to_vec(),
            MoveDescriptor::R3 { crossings, .. } => crossings.to_vec(),
        }
    }
}

/// Whether the edge `e` passes over at both of its end crossings.
fn over_at_both_ends(d: &Diagram, e: EdgeId) -> bool {
    let mut at_tail = false;
    let mut at_head = false;
    for c in d.crossings() {
        for s in [Strand::A, Strand::B] {
            let p = c.passage(s);
            if p.outgoing == e {
                at_tail = c.over == s;
            }
            if p.incoming == e {
                at_head = c.over == s;
            }
        }
    }
    at_tail && at_head
}

fn endpoints(d: &Diagram, e: EdgeId) -> (CrossingId, CrossingId) {
    let mut tail = None;
    let mut head = None;
    for c in d.crossings() {
        for s in [Strand::A, Strand::B] {
            if c.passage(s).outgoing == e {
                tail = Some(c.id);
            }
            if c.passage(s).incoming == e {
                head = Some(c.id);
            }
        }
    }
    (tail.expect("edge has a tail"), head.expect("edge has a head"))
}

impl Diagram {
    /// Every Reidemeister move applicable to this (valid, planar) diagram.
    pub fn find_moves(&self) -> Vec<MoveDescriptor> {
        let faces = faces(self);
        let mut removals = Vec::new();

        for face in &faces {
            let edges: Vec<EdgeId> = face.darts.iter().map(|x| x.edge).collect();
            let distinct: BTreeSet<EdgeId> = edges.iter().copied().collect();
            if distinct.len() != edges.len() {
                continue;
            }
            match edges.len() {
                1 => {
                    let (t, _) = endpoints(self, edges[0]);
                    removals.push(MoveDescriptor::R1Remove {
                        crossing: t,
                        loop_edge: edges[0],
                    });
                }
                2 => {
                    let (t0, h0) = endpoints(self, edges[0]);
                    let (t1, h1) = endpoints(self, edges[1]);
                    let same_ends = (t0 == t1 && h0 == h1) || (t0 == h1 && h0 == t1);
                    if t0 != h0
                        && same_ends
                        && (over_at_both_ends(self, edges[0]) || over_at_both_ends(self, edges[1]))
                    {
                        let mut crossings = [t0, h0];
                        crossings.sort();
                        let mut edges = [edges[0], edges[1]];
                        edges.sort();
                        removals.push(MoveDescriptor::R2Remove { crossings, edges });
                    }
                }
                3 => {
                    let ends: Vec<_> = edges.iter().map(|&e| endpoints(self, e)).collect();
                    let corners: BTreeSet<CrossingId> = ends.iter().flat_map(|&(t, h)| [t, h]).collect();
                    let non_loops = ends.iter().all(|(t, h)| t != h);
                    if corners.len() == 3
                        && non_loops
                        && edges.iter().any(|&e| over_at_both_ends(self, e))
                    {
                        let c: Vec<_> = corners.into_iter().collect();
                        let mut edges = [edges[0], edges[1], edges[2]];
                        edges.sort();
                        removals.push(MoveDescriptor::R3 {
                            crossings: [c[0], c[1], c[2]],
                            edges,
                        });
                    }
                }
                _ => {}
            }
        }
        removals.sort_by_key(|m| m.kind());
        removals.dedup();

        let mut moves = removals;
        let kink_sites: Vec<Option<EdgeId>> = self
            .edges()
            .into_iter()
            .map(Some)
            .chain((self.free_loops() > 0).then_some(None))
            .collect();
        for edge in kink_sites {
            for side in [Side::Left, Side::Right] {
                for sign in [Sign::Positive, Sign::Negative] {
                    moves.push(MoveDescriptor::R1Add { edge, side, sign });
                }
            }
        }
        for face in &faces {
            for (i, &first) in face.darts.iter().enumerate() {
                for &second in &face.darts[i + 1..] {
                    if first.edge == second.edge {
                        continue;
                    }
                    for first_over in [true, false] {
                        moves.push(MoveDescriptor::R2Add {
                            first,
                            second,
                            first_over,
                        });
                    }
                }
            }
        }
        moves
    }

    /// Applies `mv`, which must be one of [`Diagram::find_moves`].
    pub fn apply_move(&self, mv: &MoveDescriptor) -> Result<Diagram> {
        if !self.find_moves().contains(mv) {
            return Err(Error::StaleMove(format!("{mv:?}")));
        }
        Ok(self.apply_unchecked(mv))
    }

    pub(crate) fn apply_unchecked(&self, mv: &MoveDescriptor) -> Diagram {
        match *mv {
            MoveDescriptor::R1Remove { crossing, .. } => self.erase(&[crossing]),
            MoveDescriptor::R2Remove { crossings, .. } => self.erase(&crossings),
            MoveDescriptor::R1Add { edge, side, sign } => self.add_kink(edge, side, sign),
            MoveDescriptor::R2Add {
                first,
                second,
                first_over,
            } => self.add_bigon(first, second, first_over),
            MoveDescriptor::R3 { edges, .. } => self.slide_triangle(&edges),
        }
    }

    /// Deletes crossings letting both strands run straight through.
    fn erase(&self, ids: &[CrossingId]) -> Diagram {
        let idx: Vec<usize> = ids
            .iter()
            .map(|&c| self.index_of(c).expect("participant exists"))
            .collect();
        let joins: Vec<(EdgeId, EdgeId)> = idx
            .iter()
            .flat_map(|&i| {
                let c = &self.crossings()[i];
                [(c.a.incoming, c.a.outgoing), (c.b.incoming, c.b.outgoing)]
            })
            .collect();
        self.rewire(&idx, &joins)
    }

    fn add_kink(&self, edge: Option<EdgeId>, side: Side, sign: Sign) -> Diagram {
        let orient_ab = match side {
            Side::Right => Sign::Positive,
            Side::Left => Sign::Negative,
        };
        let over = if sign == orient_ab { Strand::A } else { Strand::B };
        let id = CrossingId(self.max_crossing() + 1);
        let fresh = self.max_edge() + 1;
        let mut d = self.clone();
        let (a, b) = match edge {
            Some(e) => {
                d.retarget_head(e, EdgeId(fresh + 1));
                (Passage::new(e.0, fresh), Passage::new(fresh, fresh + 1))
            }
            None => {
                d.set_free_loops(self.free_loops() - 1);
                if let Some(order) = self.component_order() {
                    let mut order = order.to_vec();
                    order.push(EdgeId(fresh));
                    d = d.with_component_order(order);
                }
                (Passage::new(fresh, fresh + 1), Passage::new(fresh + 1, fresh))
            }
        };
        d.push_crossing(Crossing {
            id,
            a,
            b,
            orient_ab,
            over,
        });
        d
    }

    fn add_bigon(&self, first: Dart, second: Dart, first_over: bool) -> Diagram {
        let (e, f) = (first.edge.0, second.edge.0);
        let c1 = CrossingId(self.max_crossing() + 1);
        let c2 = CrossingId(self.max_crossing() + 2);
        let m = self.max_edge();
        let (p1, p2, q1, q2) = (m + 1, m + 2, m + 3, m + 4);
        // Reflecting the picture negates both frame orientations.
        let s = if first.forward { Sign::Positive } else { Sign::Negative };
        let over = if first_over { Strand::A } else { Strand::B };

        let mut d = self.clone();
        d.retarget_head(first.edge, EdgeId(p2));
        d.retarget_head(second.edge, EdgeId(q2));
        let (x1, x2) = if first.forward == second.forward {
            // Opposite directions across the face: the second strand meets
            // the finger's far crossing first.
            (
                (Passage::new(e, p1), Passage::new(q1, q2), s),
                (Passage::new(p1, p2), Passage::new(f, q1), -s),
            )
        } else {
            (
                (Passage::new(e, p1), Passage::new(f, q1), -s),
                (Passage::new(p1, p2), Passage::new(q1, q2), s),
            )
        };
        for (id, (a, b, orient_ab)) in [(c1, x1), (c2, x2)] {
            d.push_crossing(Crossing {
                id,
                a,
                b,
                orient_ab,
                over,
            });
        }
        d
    }

    /// Reverses, along each of the three strands, the order in which it
    /// meets its two triangle crossings.
    fn slide_triangle(&self, edges: &[EdgeId; 3]) -> Diagram {
        let topo = self.topology();
        let mut updates = Vec::with_capacity(6);
        for &t in edges {
            let tail = topo.tail[&t];
            let head = topo.head[&t];
            let p = self.crossings()[tail.index].passage(tail.strand).incoming;
            let q = self.crossings()[head.index].passage(head.strand).outgoing;
            updates.push((head, Passage { incoming: p, outgoing: t }));
            updates.push((tail, Passage { incoming: t, outgoing: q }));
        }
        let mut d = self.clone();
        for (at, passage) in updates {
            *d.crossings_mut()[at.index].passage_mut(at.strand) = passage;
        }
        d
    }
}
