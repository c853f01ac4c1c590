use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::moves::{MoveDescriptor, MoveKind};
use crate::diagram::Diagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    /// Moves that would push the crossing count above this are skipped while
    /// any other move is available.
    pub max_crossings: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig { max_crossings: 12 }
    }
}

/// Applies `steps` random moves. Each step picks a move kind uniformly among
/// the kinds with an applicable site, then a site uniformly within the kind.
/// Deterministic in `(d, steps, seed, config)`.
pub fn random_equivalent(
    d: &Diagram,
    steps: usize,
    seed: u64,
    config: &WalkConfig,
) -> (Diagram, Vec<MoveDescriptor>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut log = Vec::with_capacity(steps);
    for _ in 0..steps {
        let moves = cur.find_moves();
        if moves.is_empty() {
            break;
        }
        let count = cur.crossing_count() as i64;
        let within: Vec<&MoveDescriptor> = moves
            .iter()
            .filter(|m| count + m.crossing_delta() <= config.max_crossings as i64)
            .collect();
        let pool: Vec<&MoveDescriptor> = if within.is_empty() {
            moves.iter().collect()
        } else {
            within
        };

        let mut by_kind: BTreeMap<MoveKind, Vec<&MoveDescriptor>> = BTreeMap::new();
        for m in pool {
            by_kind.entry(m.kind()).or_default().push(m);
        }
        let kinds: Vec<_> = by_kind.values().collect();
        let sites = kinds[rng.gen_range(0..kinds.len())];
        let mv = sites[rng.gen_range(0..sites.len())].clone();

        cur = cur.apply_unchecked(&mv);
        log.push(mv);
    }
    (cur, log)
}
