//! Diagram builders: braid closures and seeded random diagrams.

use std::collections::BTreeMap;

use rand::Rng;

use crate::diagram::{Crossing, CrossingId, Diagram, EdgeId, Passage, Sign, Strand};
use crate::reidemeister::{random_equivalent, WalkConfig};

/// Closure of a braid on `strands` strands. Letter `i > 0` is a positive
/// crossing between positions `i` and `i + 1`, `-i` a negative one.
///
/// Strands run upward and close up on the right, so every crossing has
/// `orient_ab = +1` with `A` entering from the lower left. Positions no
/// letter touches become free loops. Edges are numbered `1..` by id order.
///
/// Panics if a letter is 0 or out of range.
pub fn braid_closure(strands: usize, word: &[i32]) -> Diagram {
    let mut open: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for (k, &letter) in word.iter().enumerate() {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < strands, "braid letter {letter} out of range");
        let (l, r) = (i - 1, i);
        let a = Passage::new(open[l], next);
        let b = Passage::new(open[r], next + 1);
        open[r] = next;
        open[l] = next + 1;
        next += 2;
        crossings.push(Crossing {
            id: CrossingId(k as u32 + 1),
            a,
            b,
            orient_ab: Sign::Positive,
            over: if letter > 0 { Strand::A } else { Strand::B },
        });
    }

    let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
    let mut free_loops = 0;
    for (p, &last) in open.iter().enumerate() {
        let first = p as u32 + 1;
        if last == first {
            free_loops += 1;
        } else {
            rename.insert(last, first);
        }
    }
    for c in &mut crossings {
        if let Some(&to) = rename.get(&c.a.outgoing.0) {
            c.a.outgoing = EdgeId(to);
        }
        if let Some(&to) = rename.get(&c.b.outgoing.0) {
            c.b.outgoing = EdgeId(to);
        }
    }
    compact_edges(Diagram::new(crossings, free_loops))
}

/// Renumbers edges to `1..=E` preserving their relative order.
pub fn compact_edges(d: Diagram) -> Diagram {
    let map: BTreeMap<EdgeId, EdgeId> = d
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, EdgeId(i as u32 + 1)))
        .collect();
    let order = d
        .component_order()
        .map(|o| o.iter().map(|e| map[e]).collect::<Vec<_>>());
    let crossings = d
        .crossings()
        .iter()
        .map(|c| {
            let mut c = *c;
            for s in [Strand::A, Strand::B] {
                let p = c.passage_mut(s);
                p.incoming = map[&p.incoming];
                p.outgoing = map[&p.outgoing];
            }
            c
        })
        .collect();
    let out = Diagram::new(crossings, d.free_loops());
    match order {
        Some(o) => out.with_component_order(o),
        None => out,
    }
}

/// A random braid closure with at most `max_crossings` crossings on 1 to 4
/// strands, followed by a short random Reidemeister walk under the same cap.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> Diagram {
    let strands = rng.gen_range(1..=4usize);
    let len = if strands == 1 { 0 } else { rng.gen_range(0..=max_crossings) };
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    let base = braid_closure(strands, &word);
    let steps = rng.gen_range(0..=4);
    let config = WalkConfig {
        max_crossings: max_crossings.max(base.crossing_count()),
    };
    let (d, _) = random_equivalent(&base, steps, rng.gen(), &config);
    compact_edges(d)
}
