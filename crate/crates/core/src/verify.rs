//! Brute-force cross-checks of the engine.
//!
//! The oracle shares the diagram primitives (change, smooth, descending
//! state) but has its own accumulation loop, its own plain recursion for the
//! inner coefficient, no canonical keys and no shared memo.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::descending::{default_marking, descending_diagram, diff_set, MarkingSpace};
use crate::diagram::{CrossingId, Diagram};
use crate::engine::{evaluate_gamma, ConwayEngine, ConwaySeries, Invariant};
use crate::error::{Error, Result};
use crate::generate::random_diagram;
use crate::io::fixtures::FIXTURES;
use crate::reidemeister::{random_equivalent, WalkConfig};

pub const DEFAULT_ORDER_CAP: usize = 5;
pub const DEFAULT_MARKING_CAP: usize = 16;

/// One failed instance with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub limits: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn new(property: impl Into<String>) -> VerificationReport {
        VerificationReport {
            property: property.into(),
            instances: 0,
            failures: Vec::new(),
            limits: BTreeMap::new(),
        }
    }

    pub fn limit(mut self, name: &str, value: u64) -> VerificationReport {
        self.limits.insert(name.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, case: &Case, detail: impl Into<String>) {
        self.failures.push(Failure {
            case: case.name.clone(),
            detail: detail.into(),
            seed: case.seed,
        });
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }
}

/// A named diagram under test, with the seed that produced it if random.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub seed: Option<u64>,
    pub diagram: Diagram,
}

impl Case {
    pub fn named(name: impl Into<String>, diagram: Diagram) -> Case {
        Case {
            name: name.into(),
            seed: None,
            diagram,
        }
    }
}

/// `trials` random diagrams with at most `max_crossings` crossings. Trial `i`
/// is rebuilt from its own seed, recorded on the case.
pub fn random_cases(trials: usize, seed: u64, max_crossings: usize) -> Vec<Case> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|i| {
            let s: u64 = master.gen();
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            Case {
                name: format!("random#{i}"),
                seed: Some(s),
                diagram: random_diagram(&mut rng, max_crossings),
            }
        })
        .collect()
}

/// Coefficient by the bare recursion: default marking, difference set taken
/// in descending id order, nothing cached.
pub fn plain_coefficient(d: &Diagram, n: i32) -> i64 {
    if n < 0 {
        return 0;
    }
    if n == 0 {
        return i64::from(d.component_count() == 1);
    }
    let m = default_marking(d);
    let mut y = diff_set(d, &m).expect("default marking is consistent");
    y.reverse();
    let start = descending_diagram(&d.shadow(), &m).expect("default marking is consistent");
    walk(&start, &y, |s| plain_coefficient(s, n - 1))
}

fn walk(start: &Diagram, order: &[CrossingId], mut beta: impl FnMut(&Diagram) -> i64) -> i64 {
    let mut total = 0;
    let mut cur = start.clone();
    for &a in order {
        let smoothed = cur.smooth_crossing(a).expect("crossing of the walk");
        total -= cur.sign(a).expect("crossing of the walk").value() * beta(&smoothed);
        cur = cur.change_crossing(a).expect("crossing of the walk");
    }
    total
}

/// Every ordering of `y` when there are at most `cap!` of them, otherwise
/// `cap!` seeded shuffles starting with the ascending order.
fn orderings(y: &[CrossingId], cap: usize) -> Vec<Vec<CrossingId>> {
    let budget: usize = (1..=cap).product();
    if y.len() <= cap {
        return y.iter().copied().permutations(y.len()).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(y.len() as u64);
    let mut out = vec![y.to_vec()];
    while out.len() < budget {
        let mut p = y.to_vec();
        p.shuffle(&mut rng);
        out.push(p);
    }
    out
}

/// Evaluates the accumulation for every sampled marking and every ordering
/// of its difference set and insists they all agree.
///
/// The inner coefficient is `plain_coefficient`, looked up in a per-call
/// table keyed on exact diagram equality.
pub fn brute_force_coefficient(d: &Diagram, n: i32, order_cap: usize, marking_cap: usize) -> Result<i64> {
    d.ensure_valid()?;
    if n < 0 {
        return Ok(0);
    }
    if n == 0 {
        return Ok(i64::from(d.component_count() == 1));
    }
    let mut inner: HashMap<Diagram, i64> = HashMap::new();
    let mut beta = |s: &Diagram| *inner.entry(s.clone()).or_insert_with(|| plain_coefficient(s, n - 1));

    let shadow = d.shadow();
    let mut seen: Option<(String, i64)> = None;
    for m in MarkingSpace::new(d).sample(marking_cap) {
        let y = diff_set(d, &m)?;
        let start = descending_diagram(&shadow, &m)?;
        for order in orderings(&y, order_cap) {
            let v = walk(&start, &order, &mut beta);
            let label = format!("{v} (bases {:?}, order {:?})", m.base_edges(), order);
            match &seen {
                None => seen = Some((label, v)),
                Some((first, w)) if *w != v => {
                    return Err(Error::OracleDisagreement {
                        first: first.clone(),
                        second: label,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(seen.map_or(0, |(_, v)| v))
}

/// `(c_n(K+), c_n(K-), c_{n-1}(K0))` at crossing `c`.
pub fn skein_values(inv: &impl Invariant, d: &Diagram, c: CrossingId, n: i32) -> Result<(i64, i64, i64)> {
    let t = d.skein_triple(c)?;
    Ok((
        inv.coefficient(&t.k_plus, n)?,
        inv.coefficient(&t.k_minus, n)?,
        inv.coefficient(&t.k_zero, n - 1)?,
    ))
}

pub fn check_skein(inv: &impl Invariant, d: &Diagram, c: CrossingId, n: i32) -> Result<bool> {
    let (p, m, z) = skein_values(inv, d, c, n)?;
    Ok(p - m == z)
}

pub fn series(inv: &impl Invariant, d: &Diagram, max_degree: u32) -> Result<ConwaySeries> {
    let values = (0..=max_degree)
        .map(|n| Ok((n, inv.coefficient(d, n as i32)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConwaySeries::from_coefficients(values, max_degree))
}

fn record<T>(report: &mut VerificationReport, case: &Case, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            report.fail(case, format!("error: {e}"));
            None
        }
    }
}

/// Skein relation at every crossing of every case for `0 <= n <= n_max`.
pub fn skein_report(inv: &impl Invariant, cases: &[Case], n_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("skein").limit("max_degree", n_max as u64);
    for case in cases {
        for c in case.diagram.crossing_ids() {
            for n in 0..=n_max as i32 {
                report.instances += 1;
                if let Some((p, m, z)) = record(&mut report, case, skein_values(inv, &case.diagram, c, n)) {
                    if p - m != z {
                        report.fail(case, format!("{c}, n={n}: {p} - {m} != {z}"));
                    }
                }
            }
        }
    }
    report
}

/// Every ordering of the default difference set (up to `order_cap!`) must
/// reproduce the engine's coefficient.
pub fn ordering_report(inv: &impl Invariant, cases: &[Case], n_max: u32, order_cap: usize) -> VerificationReport {
    let mut report = VerificationReport::new("ordering")
        .limit("max_degree", n_max as u64)
        .limit("order_cap", order_cap as u64);
    for case in cases {
        let d = &case.diagram;
        let m = default_marking(d);
        let Some(y) = record(&mut report, case, diff_set(d, &m)) else { continue };
        let Some(start) = record(&mut report, case, descending_diagram(&d.shadow(), &m)) else { continue };
        for n in 1..=n_max as i32 {
            let Some(expected) = record(&mut report, case, inv.coefficient(d, n)) else { continue };
            for order in orderings(&y, order_cap) {
                report.instances += 1;
                let v = walk(&start, &order, |s| inv.coefficient(s, n - 1).unwrap_or(i64::MIN));
                if v != expected {
                    report.fail(case, format!("n={n}, order {order:?}: {v} != {expected}"));
                }
            }
        }
    }
    report
}

/// Coefficients computed through every sampled marking must agree, and the
/// descending state of every marking must have `c_n = 0` for
/// `1 <= n <= crossings`.
pub fn marking_report(inv: &impl Invariant, cases: &[Case], n_max: u32, marking_cap: usize) -> VerificationReport {
    let mut report = VerificationReport::new("marking")
        .limit("max_degree", n_max as u64)
        .limit("marking_cap", marking_cap as u64);
    for case in cases {
        let d = &case.diagram;
        let shadow = d.shadow();
        for m in MarkingSpace::new(d).sample(marking_cap) {
            for n in 1..=n_max as i32 {
                report.instances += 1;
                let Some(expected) = record(&mut report, case, inv.coefficient(d, n)) else { continue };
                let got = evaluate_gamma(d, &m, |s| inv.coefficient(s, n - 1).unwrap_or(i64::MIN));
                if let Some(v) = record(&mut report, case, got) {
                    if v != expected {
                        report.fail(case, format!("n={n}, bases {:?}: {v} != {expected}", m.base_edges()));
                    }
                }
            }
            let Some(desc) = record(&mut report, case, descending_diagram(&shadow, &m)) else { continue };
            for n in 1..=desc.crossing_count() as i32 {
                report.instances += 1;
                if let Some(v) = record(&mut report, case, inv.coefficient(&desc, n)) {
                    if v != 0 {
                        report.fail(case, format!("descending state for bases {:?} has c{n}={v}", m.base_edges()));
                    }
                }
            }
        }
    }
    report
}

/// Series up to `n_max` before and after a seeded walk of `steps` moves.
pub fn check_move_invariance(
    inv: &impl Invariant,
    case: &Case,
    seed: u64,
    steps: usize,
    n_max: u32,
    config: &WalkConfig,
) -> VerificationReport {
    let mut report = VerificationReport::new("moves")
        .limit("max_degree", n_max as u64)
        .limit("steps", steps as u64)
        .limit("max_crossings", config.max_crossings as u64);
    report.instances = 1;
    let (after, log) = random_equivalent(&case.diagram, steps, seed, config);
    let before_series = record(&mut report, case, series(inv, &case.diagram, n_max));
    let after_series = record(&mut report, case, series(inv, &after, n_max));
    if let (Some(b), Some(a)) = (before_series, after_series) {
        if a != b {
            let moves: Vec<String> = log.iter().map(|m| format!("{m:?}")).collect();
            report.failures.push(Failure {
                case: case.name.clone(),
                detail: format!("{} became {} after walk seed {seed}: {}", b.to_text(), a.to_text(), moves.join(", ")),
                seed: Some(seed),
            });
        }
    }
    report
}

/// One walk per case, walk seeds drawn from `seed`.
pub fn moves_report(inv: &impl Invariant, cases: &[Case], seed: u64, steps: usize, n_max: u32) -> VerificationReport {
    let config = WalkConfig::default();
    let mut report = VerificationReport::new("moves")
        .limit("max_degree", n_max as u64)
        .limit("steps", steps as u64)
        .limit("max_crossings", config.max_crossings as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in cases {
        report.absorb(check_move_invariance(inv, case, rng.gen(), steps, n_max, &config));
    }
    report
}

/// Vanishing above the crossing count, parity, component change under
/// smoothing and sign reversal under crossing change.
pub fn structural_report(inv: &impl Invariant, cases: &[Case], n_extra: u32) -> VerificationReport {
    let mut report = VerificationReport::new("structure");
    for case in cases {
        let d = &case.diagram;
        let comps = d.component_count() as i64;
        let top = d.crossing_count() as i32 + n_extra as i32;
        for n in 0..=top {
            report.instances += 1;
            let Some(v) = record(&mut report, case, inv.coefficient(d, n)) else { continue };
            let above = n > d.crossing_count() as i32;
            let wrong_parity = (n as i64 - (comps - 1)).rem_euclid(2) != 0;
            if v != 0 && (above || wrong_parity) {
                report.fail(case, format!("c{n}={v} with {comps} components"));
            }
        }
        for c in d.crossing_ids() {
            report.instances += 1;
            let smoothed = d.smooth_crossing(c).expect("crossing of the diagram");
            if (smoothed.component_count() as i64 - comps).abs() != 1 {
                report.fail(case, format!("smoothing {c} gives {} components from {comps}", smoothed.component_count()));
            }
            let changed = d.change_crossing(c).expect("crossing of the diagram");
            if changed.sign(c).ok() != d.sign(c).ok().map(|s| -s) {
                report.fail(case, format!("changing {c} keeps its sign"));
            }
        }
    }
    report
}

/// Oracle and engine agreement on coefficients `0 ..= n_max`.
pub fn oracle_report(
    engine: &impl Invariant,
    cases: &[Case],
    n_max: u32,
    order_cap: usize,
    marking_cap: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new("oracle")
        .limit("max_degree", n_max as u64)
        .limit("order_cap", order_cap as u64)
        .limit("marking_cap", marking_cap as u64);
    for case in cases {
        for n in 0..=n_max as i32 {
            report.instances += 1;
            let Some(b) = record(&mut report, case, brute_force_coefficient(&case.diagram, n, order_cap, marking_cap))
            else {
                continue;
            };
            if let Some(e) = record(&mut report, case, engine.coefficient(&case.diagram, n)) {
                if b != e {
                    report.fail(case, format!("n={n}: oracle {b}, engine {e}"));
                }
            }
        }
    }
    report
}

/// Every embedded fixture with a known series: each expected coefficient is
/// first reproduced by the oracle, then compared with the engine.
pub fn table_check(engine: &ConwayEngine) -> VerificationReport {
    let mut report = VerificationReport::new("tables")
        .limit("order_cap", DEFAULT_ORDER_CAP as u64)
        .limit("marking_cap", DEFAULT_MARKING_CAP as u64);
    for f in FIXTURES.iter().filter(|f| f.in_table) {
        let case = Case::named(f.name, f.diagram());
        let expected = f.expected_series();
        let Some(got) = record(&mut report, &case, engine.conway_polynomial(&case.diagram, None)) else { continue };
        for n in 0..=expected.degree_bound() {
            report.instances += 1;
            let want = expected.get(n);
            match brute_force_coefficient(&case.diagram, n as i32, DEFAULT_ORDER_CAP, DEFAULT_MARKING_CAP) {
                Ok(b) if b == want => {}
                Ok(b) => report.fail(&case, format!("c{n}: oracle {b}, table {want}")),
                Err(e) => report.fail(&case, format!("c{n}: {e}")),
            }
            if got.get(n) != want {
                report.fail(&case, format!("c{n}: engine {}, table {want}", got.get(n)));
            }
        }
    }
    report
}
