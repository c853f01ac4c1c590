//! Relabeling-invariant keys for diagrams.
//!
//! Each crossing-connected piece is serialized once per possible starting
//! edge: edges are numbered in the order a fixed traversal discovers them
//! (walk the starting component, then components reached through crossings
//! in discovery order) and crossings are written as
//! `(over in, over out, under in, under out, sign)` in those labels, sorted.
//! The least serialization is the piece's key; piece keys are sorted and
//! prefixed with the free loop count. Component order is not part of the key.

use std::collections::{HashMap, VecDeque};

use crate::diagram::{Diagram, EdgeId, Sign, Topology};

impl Diagram {
    pub fn canonical_key(&self) -> Vec<u8> {
        let topo = self.topology();
        let mut pieces: Vec<Vec<u32>> = crossing_pieces(self, &topo)
            .into_iter()
            .map(|piece| {
                let edges: Vec<EdgeId> = piece
                    .iter()
                    .flat_map(|&i| {
                        let c = &self.crossings()[i];
                        [c.a.outgoing, c.b.outgoing]
                    })
                    .collect();
                edges
                    .iter()
                    .map(|&start| serialize_from(self, &topo, start, piece.len()))
                    .min()
                    .expect("a piece has at least one crossing")
            })
            .collect();
        pieces.sort();

        let mut key = Vec::new();
        key.extend_from_slice(&(self.free_loops() as u32).to_le_bytes());
        for piece in pieces {
            key.extend_from_slice(&(piece.len() as u32).to_le_bytes());
            for v in piece {
                key.extend_from_slice(&v.to_le_bytes());
            }
        }
        key
    }
}

/// Groups crossing indices into pieces connected through shared edges.
fn crossing_pieces(d: &Diagram, topo: &Topology) -> Vec<Vec<usize>> {
    let n = d.crossing_count();
    let mut piece_of = vec![usize::MAX; n];
    let mut pieces = Vec::new();
    for seed in 0..n {
        if piece_of[seed] != usize::MAX {
            continue;
        }
        let id = pieces.len();
        let mut members = vec![seed];
        piece_of[seed] = id;
        let mut stack = vec![seed];
        while let Some(i) = stack.pop() {
            let c = &d.crossings()[i];
            for e in [c.a.outgoing, c.b.outgoing] {
                let j = topo.head[&e].index;
                if piece_of[j] == usize::MAX {
                    piece_of[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
            for e in [c.a.incoming, c.b.incoming] {
                let j = topo.tail[&e].index;
                if piece_of[j] == usize::MAX {
                    piece_of[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        pieces.push(members);
    }
    pieces
}

fn serialize_from(d: &Diagram, topo: &Topology, start: EdgeId, crossings: usize) -> Vec<u32> {
    let mut label: HashMap<EdgeId, u32> = HashMap::with_capacity(crossings * 2);
    let mut pending = VecDeque::from([start]);
    while let Some(first) = pending.pop_front() {
        if label.contains_key(&first) {
            continue;
        }
        let mut e = first;
        loop {
            let next = label.len() as u32;
            label.insert(e, next);
            let h = topo.head[&e];
            let c = &d.crossings()[h.index];
            pending.push_back(c.passage(h.strand.other()).outgoing);
            e = c.passage(h.strand).outgoing;
            if e == first {
                break;
            }
        }
    }

    let mut records: Vec<[u32; 5]> = topo
        .head
        .iter()
        .filter(|(e, _)| label.contains_key(e))
        .filter(|(_, h)| h.strand == crate::diagram::Strand::A)
        .map(|(_, h)| {
            let c = &d.crossings()[h.index];
            let over = c.over_passage();
            let under = c.under_passage();
            [
                label[&over.incoming],
                label[&over.outgoing],
                label[&under.incoming],
                label[&under.outgoing],
                match c.sign() {
                    Sign::Positive => 1,
                    Sign::Negative => 0,
                },
            ]
        })
        .collect();
    records.sort_unstable();
    records.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use crate::diagram::{Crossing, CrossingId, Diagram, Passage, Sign, Strand};

    fn hopf(shift: u32, ids: (u32, u32)) -> Diagram {
        let e = |k: u32| k + shift;
        Diagram::new(
            vec![
                Crossing {
                    id: CrossingId(ids.0),
                    a: Passage::new(e(1), e(2)),
                    b: Passage::new(e(4), e(3)),
                    orient_ab: Sign::Positive,
                    over: Strand::A,
                },
                Crossing {
                    id: CrossingId(ids.1),
                    a: Passage::new(e(2), e(1)),
                    b: Passage::new(e(3), e(4)),
                    orient_ab: Sign::Negative,
                    over: Strand::B,
                },
            ],
            0,
        )
    }

    #[test]
    fn relabeling_keeps_the_key() {
        assert_eq!(hopf(0, (1, 2)).canonical_key(), hopf(10, (7, 3)).canonical_key());
    }

    #[test]
    fn swapping_strand_names_keeps_the_key() {
        let d = hopf(0, (1, 2));
        let mut swapped = d.clone();
        for c in swapped.crossings_mut() {
            std::mem::swap(&mut c.a, &mut c.b);
            c.orient_ab = -c.orient_ab;
            c.over = c.over.other();
        }
        assert_eq!(d.canonical_key(), swapped.canonical_key());
    }

    #[test]
    fn loops_and_signs_matter() {
        assert_ne!(Diagram::unlink(1).canonical_key(), Diagram::unlink(2).canonical_key());
        let d = hopf(0, (1, 2));
        assert_ne!(d.canonical_key(), d.mirror().canonical_key());
    }
}
