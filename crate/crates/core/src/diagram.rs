//! Combinatorial oriented link diagrams.
//!
//! A diagram is a set of crossings. Each crossing carries two directed strand
//! passages (`A` and `B`), each entering on one edge and leaving on another,
//! the orientation of the frame (direction of `A`, direction of `B`) at the
//! intersection point, and which strand passes above. Crossing-free closed
//! components are kept as a plain counter.
//!
//! Every edge is the out-slot of exactly one passage and the in-slot of
//! exactly one passage, so following "leave a crossing on an edge, enter the
//! next crossing on the same edge, continue on the same strand" partitions
//! the edges into the link components.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Neg;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CrossingId(pub u32);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// A ±1 value: crossing signs and frame orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Strand {
    A,
    B,
}

impl Strand {
    pub fn other(self) -> Strand {
        match self {
            Strand::A => Strand::B,
            Strand::B => Strand::A,
        }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strand::A => "A",
            Strand::B => "B",
        })
    }
}

/// One directed passage of a strand through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Passage {
    pub incoming: EdgeId,
    pub outgoing: EdgeId,
}

impl Passage {
    pub fn new(incoming: u32, outgoing: u32) -> Passage {
        Passage {
            incoming: EdgeId(incoming),
            outgoing: EdgeId(outgoing),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub id: CrossingId,
    pub a: Passage,
    pub b: Passage,
    /// Orientation of the frame (direction of `a`, direction of `b`).
    pub orient_ab: Sign,
    pub over: Strand,
}

impl Crossing {
    pub fn passage(&self, strand: Strand) -> &Passage {
        match strand {
            Strand::A => &self.a,
            Strand::B => &self.b,
        }
    }

    pub fn passage_mut(&mut self, strand: Strand) -> &mut Passage {
        match strand {
            Strand::A => &mut self.a,
            Strand::B => &mut self.b,
        }
    }

    /// Orientation of the frame (over direction, under direction).
    pub fn sign(&self) -> Sign {
        match self.over {
            Strand::A => self.orient_ab,
            Strand::B => -self.orient_ab,
        }
    }

    pub fn over_passage(&self) -> &Passage {
        self.passage(self.over)
    }

    pub fn under_passage(&self) -> &Passage {
        self.passage(self.over.other())
    }

    pub(crate) fn edges(&self) -> [EdgeId; 4] {
        [self.a.incoming, self.a.outgoing, self.b.incoming, self.b.outgoing]
    }
}

/// A broken invariant found by [`Diagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("duplicate crossing id {0}")]
    DuplicateCrossing(CrossingId),
    #[error("edge id 0 at crossing {0}")]
    ZeroEdge(CrossingId),
    #[error("strand {strand} of crossing {crossing} enters and leaves on the same edge")]
    StrandLoop { crossing: CrossingId, strand: Strand },
    #[error("dangling edge {edge}")]
    DanglingEdge { edge: EdgeId, crossing: CrossingId },
    #[error("edge {edge} enters more than one crossing")]
    DuplicateInSlot { edge: EdgeId, crossing: CrossingId },
    #[error("edge {edge} leaves more than one crossing")]
    DuplicateOutSlot { edge: EdgeId, crossing: CrossingId },
    #[error("component order names unknown edge {0}")]
    UnknownOrderEdge(EdgeId),
    #[error("component order lists the component of {0} twice")]
    RepeatedOrderComponent(EdgeId),
    #[error("component order misses the component of {0}")]
    MissingOrderComponent(EdgeId),
}

impl Violation {
    /// Crossing the violation was detected at, when there is one.
    pub fn crossing(&self) -> Option<CrossingId> {
        match self {
            Violation::DuplicateCrossing(c) | Violation::ZeroEdge(c) => Some(*c),
            Violation::StrandLoop { crossing, .. }
            | Violation::DanglingEdge { crossing, .. }
            | Violation::DuplicateInSlot { crossing, .. }
            | Violation::DuplicateOutSlot { crossing, .. } => Some(*crossing),
            _ => None,
        }
    }
}

/// Where an edge starts or ends: crossing index into [`Diagram::crossings`] and strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Endpoint {
    pub index: usize,
    pub strand: Strand,
}

/// Edge incidence lookup for a valid diagram.
pub(crate) struct Topology {
    pub head: HashMap<EdgeId, Endpoint>,
    pub tail: HashMap<EdgeId, Endpoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    component_order: Option<Vec<EdgeId>>,
}

impl Diagram {
    /// Builds a diagram without checking it; see [`Diagram::validate`].
    pub fn new(mut crossings: Vec<Crossing>, free_loops: usize) -> Diagram {
        crossings.sort_by_key(|c| c.id);
        Diagram {
            crossings,
            free_loops,
            component_order: None,
        }
    }

    pub fn unknot() -> Diagram {
        Diagram::unlink(1)
    }

    pub fn unlink(components: usize) -> Diagram {
        Diagram::new(Vec::new(), components)
    }

    /// Sets the component order: one representative edge per edge cycle.
    pub fn with_component_order(mut self, order: Vec<EdgeId>) -> Diagram {
        self.component_order = Some(order);
        self
    }

    /// Forgets the component order.
    pub fn unordered(mut self) -> Diagram {
        self.component_order = None;
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_order(&self) -> Option<&[EdgeId]> {
        self.component_order.as_deref()
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.crossings.iter().map(|c| c.id)
    }

    pub fn crossing(&self, id: CrossingId) -> Result<&Crossing> {
        self.index_of(id).map(|i| &self.crossings[i])
    }

    pub(crate) fn index_of(&self, id: CrossingId) -> Result<usize> {
        self.crossings
            .binary_search_by_key(&id, |c| c.id)
            .map_err(|_| Error::UnknownCrossing(id))
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.crossings.iter().flat_map(|c| c.edges()).collect()
    }

    pub fn max_edge(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.edges())
            .map(|e| e.0)
            .max()
            .unwrap_or(0)
    }

    pub fn max_crossing(&self) -> u32 {
        self.crossings.last().map_or(0, |c| c.id.0)
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut violations = Vec::new();

        for pair in self.crossings.windows(2) {
            if pair[0].id == pair[1].id {
                violations.push(Violation::DuplicateCrossing(pair[0].id));
            }
        }

        let mut ins: BTreeMap<EdgeId, Vec<CrossingId>> = BTreeMap::new();
        let mut outs: BTreeMap<EdgeId, Vec<CrossingId>> = BTreeMap::new();
        for c in &self.crossings {
            if c.edges().iter().any(|e| e.0 == 0) {
                violations.push(Violation::ZeroEdge(c.id));
            }
            for strand in [Strand::A, Strand::B] {
                let p = c.passage(strand);
                if p.incoming == p.outgoing {
                    violations.push(Violation::StrandLoop {
                        crossing: c.id,
                        strand,
                    });
                }
                ins.entry(p.incoming).or_default().push(c.id);
                outs.entry(p.outgoing).or_default().push(c.id);
            }
        }

        let all: BTreeSet<EdgeId> = ins.keys().chain(outs.keys()).copied().collect();
        for edge in all {
            let i = ins.get(&edge).map_or(&[][..], |v| v.as_slice());
            let o = outs.get(&edge).map_or(&[][..], |v| v.as_slice());
            if i.len() > 1 {
                violations.push(Violation::DuplicateInSlot {
                    edge,
                    crossing: i[1],
                });
            }
            if o.len() > 1 {
                violations.push(Violation::DuplicateOutSlot {
                    edge,
                    crossing: o[1],
                });
            }
            match (i.first(), o.first()) {
                (Some(&c), None) | (None, Some(&c)) => {
                    violations.push(Violation::DanglingEdge { edge, crossing: c })
                }
                _ => {}
            }
        }

        if violations.is_empty() {
            if let Some(order) = &self.component_order {
                violations.extend(self.check_order(order));
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    fn check_order(&self, order: &[EdgeId]) -> Vec<Violation> {
        let cycles = self.edge_cycles();
        let owner: HashMap<EdgeId, usize> = cycles
            .iter()
            .enumerate()
            .flat_map(|(i, cyc)| cyc.iter().map(move |&e| (e, i)))
            .collect();
        let mut seen = vec![false; cycles.len()];
        let mut violations = Vec::new();
        for &e in order {
            match owner.get(&e) {
                None => violations.push(Violation::UnknownOrderEdge(e)),
                Some(&i) if seen[i] => violations.push(Violation::RepeatedOrderComponent(e)),
                Some(&i) => seen[i] = true,
            }
        }
        for (i, cyc) in cycles.iter().enumerate() {
            if !seen[i] {
                violations.push(Violation::MissingOrderComponent(cyc[0]));
            }
        }
        violations
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidDiagram)
    }

    pub(crate) fn topology(&self) -> Topology {
        let mut head = HashMap::with_capacity(self.crossings.len() * 2);
        let mut tail = HashMap::with_capacity(self.crossings.len() * 2);
        for (index, c) in self.crossings.iter().enumerate() {
            for strand in [Strand::A, Strand::B] {
                let p = c.passage(strand);
                head.insert(p.incoming, Endpoint { index, strand });
                tail.insert(p.outgoing, Endpoint { index, strand });
            }
        }
        Topology { head, tail }
    }

    pub(crate) fn next_edge(&self, topo: &Topology, e: EdgeId) -> EdgeId {
        let h = topo.head[&e];
        self.crossings[h.index].passage(h.strand).outgoing
    }

    /// The edge cycles (crossing-bearing components), each listed in traversal
    /// order starting from its least edge, sorted by that least edge.
    pub fn edge_cycles(&self) -> Vec<Vec<EdgeId>> {
        let topo = self.topology();
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for start in self.edges() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut e = self.next_edge(&topo, start);
            while e != start {
                seen.insert(e);
                cycle.push(e);
                e = self.next_edge(&topo, e);
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn component_count(&self) -> usize {
        self.edge_cycles().len() + self.free_loops
    }

    pub fn sign(&self, c: CrossingId) -> Result<Sign> {
        Ok(self.crossing(c)?.sign())
    }

    /// Signs of all crossings in ascending id order.
    pub fn signs(&self) -> Vec<Sign> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign().value()).sum()
    }

    /// Flips which strand is over at `c`.
    pub fn change_crossing(&self, c: CrossingId) -> Result<Diagram> {
        let i = self.index_of(c)?;
        let mut d = self.clone();
        d.crossings[i].over = d.crossings[i].over.other();
        Ok(d)
    }

    /// Removes `c` by the orientation-respecting reconnection: the strand
    /// entering on `A` leaves on `B` and vice versa. The result is unordered.
    pub fn smooth_crossing(&self, c: CrossingId) -> Result<Diagram> {
        let i = self.index_of(c)?;
        let x = &self.crossings[i];
        let joins = [(x.a.incoming, x.b.outgoing), (x.b.incoming, x.a.outgoing)];
        Ok(self.rewire(&[i], &joins).unordered())
    }

    pub fn skein_triple(&self, c: CrossingId) -> Result<SkeinTriple> {
        let changed = self.change_crossing(c)?;
        let k_zero = self.smooth_crossing(c)?;
        let (k_plus, k_minus) = match self.sign(c)? {
            Sign::Positive => (self.clone(), changed),
            Sign::Negative => (changed, self.clone()),
        };
        Ok(SkeinTriple {
            k_plus,
            k_minus,
            k_zero,
            site: c,
        })
    }

    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.over = c.over.other();
        }
        d
    }

    /// The over/under-free part of the diagram.
    pub fn shadow(&self) -> Shadow {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.over = Strand::A;
        }
        Shadow(d)
    }

    pub(crate) fn crossings_mut(&mut self) -> &mut [Crossing] {
        &mut self.crossings
    }

    /// Removes the crossings at `removed` (indices), merges each pair of edges
    /// in `joins`, and turns merged classes that no longer touch any crossing
    /// into free loops. Merged edges take the least id of their class.
    pub(crate) fn rewire(&self, removed: &[usize], joins: &[(EdgeId, EdgeId)]) -> Diagram {
        let mut classes = EdgeClasses::default();
        for &(x, y) in joins {
            classes.union(x, y);
        }

        let mut survivors = Vec::with_capacity(self.crossings.len() - removed.len());
        for (i, c) in self.crossings.iter().enumerate() {
            if removed.contains(&i) {
                continue;
            }
            let mut c = *c;
            for strand in [Strand::A, Strand::B] {
                let p = c.passage_mut(strand);
                p.incoming = classes.find(p.incoming);
                p.outgoing = classes.find(p.outgoing);
            }
            survivors.push(c);
        }

        let touching: BTreeSet<EdgeId> = survivors.iter().flat_map(|c| c.edges()).collect();
        let closed: BTreeSet<EdgeId> = removed
            .iter()
            .flat_map(|&i| self.crossings[i].edges())
            .map(|e| classes.find(e))
            .filter(|root| !touching.contains(root))
            .collect();

        let component_order = self.component_order.as_ref().map(|order| {
            order
                .iter()
                .map(|&e| classes.find(e))
                .filter(|e| touching.contains(e))
                .collect()
        });

        Diagram {
            crossings: survivors,
            free_loops: self.free_loops + closed.len(),
            component_order,
        }
    }

    pub(crate) fn set_free_loops(&mut self, n: usize) {
        self.free_loops = n;
    }

    pub(crate) fn push_crossing(&mut self, c: Crossing) {
        self.crossings.push(c);
        self.crossings.sort_by_key(|c| c.id);
    }

    /// Renames `from` to `to` in the in-slot where `from` enters a crossing.
    pub(crate) fn retarget_head(&mut self, from: EdgeId, to: EdgeId) {
        for c in &mut self.crossings {
            for strand in [Strand::A, Strand::B] {
                let p = c.passage_mut(strand);
                if p.incoming == from {
                    p.incoming = to;
                    return;
                }
            }
        }
    }
}

/// Union-find over edge ids keeping the least id as representative.
#[derive(Default)]
struct EdgeClasses {
    parent: HashMap<EdgeId, EdgeId>,
}

impl EdgeClasses {
    fn find(&mut self, e: EdgeId) -> EdgeId {
        let mut root = e;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = e;
        while cur != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    fn union(&mut self, x: EdgeId, y: EdgeId) {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent.insert(hi, lo);
        self.parent.entry(lo).or_insert(lo);
    }
}

/// A diagram whose over/under information is not meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shadow(Diagram);

impl Shadow {
    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    /// Assigns every crossing the given over strand.
    pub fn with_over(&self, over: impl Fn(CrossingId) -> Strand) -> Diagram {
        let mut d = self.0.clone();
        for c in &mut d.crossings {
            c.over = over(c.id);
        }
        d
    }
}

impl From<Diagram> for Shadow {
    fn from(d: Diagram) -> Shadow {
        d.shadow()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinTriple {
    pub k_plus: Diagram,
    pub k_minus: Diagram,
    pub k_zero: Diagram,
    pub site: CrossingId,
}
