//! Descending diagrams and difference sets.
//!
//! A marking orders the crossing-bearing components and places one base point
//! on an edge of each. The descending state of a shadow puts later components
//! over earlier ones and, along a component walked from its base edge, every
//! passage over the passages reached before it. Such a state is always a
//! diagram of the trivial link.

use std::collections::HashMap;

use crate::diagram::{CrossingId, Diagram, EdgeId, Shadow, Strand};
use crate::error::{Error, Result};

/// Component order plus one base edge per crossing-bearing component.
///
/// `base_edges()[i]` is the base edge of the `i`-th component in order;
/// crossing-free components carry no marking.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Marking {
    bases: Vec<EdgeId>,
}

impl Marking {
    pub fn new(bases: Vec<EdgeId>) -> Marking {
        Marking { bases }
    }

    pub fn base_edges(&self) -> &[EdgeId] {
        &self.bases
    }
}

/// Deterministic marking: the diagram's component order when present (least
/// edge otherwise), base point on the least edge of each component.
pub fn default_marking(d: &Diagram) -> Marking {
    let cycles = d.edge_cycles();
    let bases = match d.component_order() {
        Some(order) => {
            let owner = owners(&cycles);
            order.iter().map(|e| cycles[owner[e]][0]).collect()
        }
        None => cycles.iter().map(|c| c[0]).collect(),
    };
    Marking { bases }
}

fn owners(cycles: &[Vec<EdgeId>]) -> HashMap<EdgeId, usize> {
    cycles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&e| (e, i)))
        .collect()
}

/// Rank of each passage `(crossing index, strand)`: (component position in
/// the marking, position along that component from its base edge).
fn passage_ranks(d: &Diagram, m: &Marking) -> Result<HashMap<(usize, Strand), (usize, usize)>> {
    let cycles = d.edge_cycles();
    let owner = owners(&cycles);
    if m.bases.len() != cycles.len() {
        return Err(Error::InconsistentMarking(format!(
            "{} base edges for {} components",
            m.bases.len(),
            cycles.len()
        )));
    }
    let mut used = vec![false; cycles.len()];
    let topo = d.topology();
    let mut ranks = HashMap::with_capacity(d.crossing_count() * 2);
    for (rank, &base) in m.bases.iter().enumerate() {
        let Some(&ci) = owner.get(&base) else {
            return Err(Error::InconsistentMarking(format!(
                "base edge {base} is not an edge of the diagram"
            )));
        };
        if std::mem::replace(&mut used[ci], true) {
            return Err(Error::InconsistentMarking(format!(
                "two base edges on the component of {base}"
            )));
        }
        let mut e = base;
        let mut pos = 0;
        loop {
            let h = topo.head[&e];
            ranks.insert((h.index, h.strand), (rank, pos));
            pos += 1;
            e = d.next_edge(&topo, e);
            if e == base {
                break;
            }
        }
    }
    Ok(ranks)
}

/// The descending state of `shadow` for marking `m`.
pub fn descending_diagram(shadow: &Shadow, m: &Marking) -> Result<Diagram> {
    let d = shadow.diagram();
    let ranks = passage_ranks(d, m)?;
    let mut out = d.clone();
    for (i, c) in out.crossings_mut().iter_mut().enumerate() {
        let a = ranks[&(i, Strand::A)];
        let b = ranks[&(i, Strand::B)];
        c.over = if a > b { Strand::A } else { Strand::B };
    }
    Ok(out)
}

pub fn is_descending(d: &Diagram, m: &Marking) -> Result<bool> {
    Ok(diff_set(d, m)?.is_empty())
}

/// Crossings at which `d` differs from its descending state, ascending.
pub fn diff_set(d: &Diagram, m: &Marking) -> Result<Vec<CrossingId>> {
    let ranks = passage_ranks(d, m)?;
    Ok(d.crossings()
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            let a = ranks[&(*i, Strand::A)];
            let b = ranks[&(*i, Strand::B)];
            let descending_over = if a > b { Strand::A } else { Strand::B };
            c.over != descending_over
        })
        .map(|(_, c)| c.id)
        .collect())
}

/// Every marking of a diagram, indexed in mixed radix
/// (component order permutation, then base edge per component).
#[derive(Debug, Clone)]
pub struct MarkingSpace {
    cycles: Vec<Vec<EdgeId>>,
    orders: u128,
}

impl MarkingSpace {
    pub fn new(d: &Diagram) -> MarkingSpace {
        let cycles = d.edge_cycles();
        let orders = (1..=cycles.len() as u128).product();
        MarkingSpace { cycles, orders }
    }

    pub fn len(&self) -> u128 {
        self.cycles
            .iter()
            .fold(self.orders, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: u128) -> Marking {
        let mut rest = index % self.len();
        let order_index = rest % self.orders;
        rest /= self.orders;

        let mut pool: Vec<usize> = (0..self.cycles.len()).collect();
        let mut order = Vec::with_capacity(pool.len());
        let mut k = order_index;
        for remaining in (1..=pool.len() as u128).rev() {
            let pick = (k % remaining) as usize;
            k /= remaining;
            order.push(pool.remove(pick));
        }

        let bases = order
            .iter()
            .map(|&ci| {
                let cyc = &self.cycles[ci];
                let pick = (rest % cyc.len() as u128) as usize;
                rest /= cyc.len() as u128;
                cyc[pick]
            })
            .collect();
        Marking { bases }
    }

    /// All markings when there are at most `cap`, else `cap` evenly spread ones.
    pub fn sample(&self, cap: usize) -> Vec<Marking> {
        let total = self.len();
        if total <= cap as u128 {
            (0..total).map(|i| self.get(i)).collect()
        } else {
            (0..cap as u128).map(|i| self.get(i * total / cap as u128)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Crossing, Passage, Sign};

    fn hopf_shadow() -> Diagram {
        Diagram::new(
            vec![
                Crossing {
                    id: CrossingId(1),
                    a: Passage::new(1, 2),
                    b: Passage::new(4, 3),
                    orient_ab: Sign::Positive,
                    over: Strand::A,
                },
                Crossing {
                    id: CrossingId(2),
                    a: Passage::new(2, 1),
                    b: Passage::new(3, 4),
                    orient_ab: Sign::Negative,
                    over: Strand::A,
                },
            ],
            0,
        )
    }

    #[test]
    fn default_marking_uses_least_edges() {
        let m = default_marking(&hopf_shadow());
        assert_eq!(m.base_edges(), &[EdgeId(1), EdgeId(3)]);
        let ordered = hopf_shadow().with_component_order(vec![EdgeId(4), EdgeId(2)]);
        assert_eq!(default_marking(&ordered).base_edges(), &[EdgeId(3), EdgeId(1)]);
        assert!(default_marking(&Diagram::unknot()).base_edges().is_empty());
    }

    #[test]
    fn later_component_goes_over() {
        let d = hopf_shadow();
        let m = default_marking(&d);
        let desc = descending_diagram(&d.shadow(), &m).unwrap();
        assert!(desc.crossings().iter().all(|c| c.over == Strand::B));
        assert!(is_descending(&desc, &m).unwrap());
        let changed = desc.change_crossing(CrossingId(2)).unwrap();
        assert_eq!(diff_set(&changed, &m).unwrap(), vec![CrossingId(2)]);
    }

    #[test]
    fn inconsistent_markings_are_rejected() {
        let d = hopf_shadow();
        let bad = Marking::new(vec![EdgeId(1), EdgeId(2)]);
        assert!(matches!(diff_set(&d, &bad), Err(Error::InconsistentMarking(_))));
        let short = Marking::new(vec![EdgeId(1)]);
        assert!(diff_set(&d, &short).is_err());
        let unknown = Marking::new(vec![EdgeId(1), EdgeId(9)]);
        assert!(diff_set(&d, &unknown).is_err());
    }

    #[test]
    fn marking_space_enumerates_everything_once() {
        let d = hopf_shadow();
        let space = MarkingSpace::new(&d);
        assert_eq!(space.len(), 2 * 2 * 2);
        let mut all: Vec<_> = (0..space.len()).map(|i| space.get(i)).collect();
        all.sort_by(|a, b| a.bases.cmp(&b.bases));
        all.dedup();
        assert_eq!(all.len(), 8);
        assert_eq!(space.sample(3).len(), 3);
    }
}
