//! Conway coefficients by crossing changes from the descending state.
//!
//! For `n >= 1` the coefficient of a diagram is obtained by walking from its
//! descending state to the diagram itself one crossing change at a time. Each
//! change at crossing `a` of the current state `cur` contributes
//! `-sign(cur, a) * c_{n-1}(cur smoothed at a)`. The base cases are `c_n = 0`
//! for `n < 0` and `c_0 = 1` exactly for one-component diagrams.

use std::collections::BTreeMap;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::descending::{default_marking, descending_diagram, diff_set, Marking};
use crate::diagram::{CrossingId, Diagram};
use crate::error::Result;

/// Anything that assigns integer coefficients to diagrams.
///
/// The verification routines are written against this trait so that they
/// can be pointed at deliberately broken implementations.
pub trait Invariant: Sync {
    fn coefficient(&self, d: &Diagram, n: i32) -> Result<i64>;
}

/// Coefficients `c_0 ..= c_{degree_bound}`; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConwaySeries {
    coefficients: BTreeMap<u32, i64>,
    degree_bound: u32,
}

impl ConwaySeries {
    pub fn from_coefficients(values: impl IntoIterator<Item = (u32, i64)>, degree_bound: u32) -> Self {
        let coefficients = values
            .into_iter()
            .filter(|&(n, v)| v != 0 && n <= degree_bound)
            .collect();
        ConwaySeries {
            coefficients,
            degree_bound,
        }
    }

    pub fn get(&self, n: u32) -> i64 {
        self.coefficients.get(&n).copied().unwrap_or(0)
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Nonzero coefficients in ascending degree.
    pub fn nonzero(&self) -> &BTreeMap<u32, i64> {
        &self.coefficients
    }

    /// `c0=1 c2=1`; a series with no nonzero coefficient prints as `0`.
    pub fn to_text(&self) -> String {
        if self.coefficients.is_empty() {
            return "0".to_string();
        }
        self.coefficients
            .iter()
            .map(|(n, v)| format!("c{n}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Shared `(canonical key, degree) -> coefficient` cache.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: DashMap<(Vec<u8>, i32), i64>,
}

impl MemoTable {
    pub fn new() -> MemoTable {
        MemoTable::default()
    }

    pub fn get(&self, key: &[u8], n: i32) -> Option<i64> {
        self.entries.get(&(key.to_vec(), n)).map(|v| *v)
    }

    /// Inserts unless present; returns the stored value.
    pub fn insert(&self, key: Vec<u8>, n: i32, value: i64) -> i64 {
        let stored = *self.entries.entry((key, n)).or_insert(value);
        debug_assert_eq!(stored, value, "memo entries must agree with recomputation");
        stored
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn clear(&self) {
        self.entries.clear();
    }
}

/// Diagrams with at least this many crossings fan their terms out over rayon.
const PARALLEL_THRESHOLD: usize = 6;

#[derive(Debug)]
pub struct ConwayEngine {
    memo: Option<MemoTable>,
    parallel: bool,
}

impl Default for ConwayEngine {
    fn default() -> Self {
        ConwayEngine::new()
    }
}

impl ConwayEngine {
    pub fn new() -> ConwayEngine {
        ConwayEngine {
            memo: Some(MemoTable::new()),
            parallel: false,
        }
    }

    pub fn without_memo() -> ConwayEngine {
        ConwayEngine {
            memo: None,
            parallel: false,
        }
    }

    pub fn parallel(mut self, yes: bool) -> ConwayEngine {
        self.parallel = yes;
        self
    }

    pub fn memo(&self) -> Option<&MemoTable> {
        self.memo.as_ref()
    }

    pub fn coefficient(&self, d: &Diagram, n: i32) -> Result<i64> {
        d.ensure_valid()?;
        Ok(self.coeff(d, n))
    }

    pub fn conway_polynomial(&self, d: &Diagram, max_degree: Option<u32>) -> Result<ConwaySeries> {
        d.ensure_valid()?;
        let bound = max_degree.unwrap_or(d.crossing_count() as u32);
        let values = (0..=bound).map(|n| (n, self.coeff(d, n as i32)));
        Ok(ConwaySeries::from_coefficients(values, bound))
    }

    fn coeff(&self, d: &Diagram, n: i32) -> i64 {
        if n < 0 {
            return 0;
        }
        if n == 0 {
            return i64::from(d.component_count() == 1);
        }
        let Some(memo) = &self.memo else {
            return self.expand(d, n);
        };
        let key = d.canonical_key();
        if let Some(v) = memo.get(&key, n) {
            return v;
        }
        let v = self.expand(d, n);
        memo.insert(key, n, v)
    }

    fn expand(&self, d: &Diagram, n: i32) -> i64 {
        let m = default_marking(d);
        let terms = change_path(d, &m).expect("default marking is consistent");
        if self.parallel && d.crossing_count() >= PARALLEL_THRESHOLD {
            terms
                .par_iter()
                .map(|(sign, smoothed)| -sign * self.coeff(smoothed, n - 1))
                .sum()
        } else {
            terms
                .iter()
                .map(|(sign, smoothed)| -sign * self.coeff(smoothed, n - 1))
                .sum()
        }
    }
}

impl Invariant for ConwayEngine {
    fn coefficient(&self, d: &Diagram, n: i32) -> Result<i64> {
        ConwayEngine::coefficient(self, d, n)
    }
}

/// `(sign of a in cur, cur smoothed at a)` for each step of the walk from the
/// descending state to `d`, changing the crossings of the difference set in
/// ascending order.
fn change_path(d: &Diagram, m: &Marking) -> Result<Vec<(i64, Diagram)>> {
    let y = diff_set(d, m)?;
    let mut cur = descending_diagram(&d.shadow(), m)?;
    let mut terms = Vec::with_capacity(y.len());
    for a in y {
        terms.push((cur.sign(a)?.value(), cur.smooth_crossing(a)?));
        cur = cur.change_crossing(a)?;
    }
    Ok(terms)
}

/// Accumulates `-sign(cur, a) * beta(cur smoothed at a)` along `sequence`
/// starting from `start`, changing each crossing after its term. Repeats are
/// allowed.
pub fn accumulate_gamma(
    start: &Diagram,
    sequence: &[CrossingId],
    mut beta: impl FnMut(&Diagram) -> i64,
) -> Result<i64> {
    let mut total = 0;
    let mut cur = start.clone();
    for &a in sequence {
        total -= cur.sign(a)?.value() * beta(&cur.smooth_crossing(a)?);
        cur = cur.change_crossing(a)?;
    }
    Ok(total)
}

/// The accumulation over the difference set of `d` for marking `m` with a
/// caller-supplied `beta`.
pub fn evaluate_gamma(d: &Diagram, m: &Marking, beta: impl FnMut(&Diagram) -> i64) -> Result<i64> {
    d.ensure_valid()?;
    let y = diff_set(d, m)?;
    let start = descending_diagram(&d.shadow(), m)?;
    accumulate_gamma(&start, &y, beta)
}
