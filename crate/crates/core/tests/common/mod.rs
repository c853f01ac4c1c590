#![allow(dead_code)]

use std::collections::HashMap;

use conway_core::io::fixtures::fixture;
use conway_core::{CrossingId, Diagram, Strand};

pub fn load(name: &str) -> Diagram {
    fixture(name).unwrap_or_else(|| panic!("no fixture {name}")).diagram()
}

/// Over/under assignment that alternates along every component, starting
/// with an over passage on each component's least edge.
pub fn alternating(d: &Diagram) -> Diagram {
    let mut over: HashMap<CrossingId, Strand> = HashMap::new();
    for cycle in d.edge_cycles() {
        let mut up = true;
        for e in cycle {
            let c = d
                .crossings()
                .iter()
                .find(|c| c.a.incoming == e || c.b.incoming == e)
                .expect("edge has a head");
            let strand = if c.a.incoming == e { Strand::A } else { Strand::B };
            if up {
                over.insert(c.id, strand);
            }
            up = !up;
        }
    }
    d.shadow().with_over(|id| over.get(&id).copied().unwrap_or(Strand::A))
}
