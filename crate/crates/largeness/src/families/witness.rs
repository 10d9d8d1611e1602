//! Bounded witness searches for the largeness families.
//!
//! Every search runs over an explicit finite box and returns a
//! [`WitnessReport`]: either a concrete witness (which always replays through
//! the family's defining predicate), an exhaustion certificate for the box,
//! or an inconclusive verdict when the node budget ran out. Searches are
//! depth-first and deterministic, returning the lexicographically first
//! witness.

use crate::error::{Error, Result};
use crate::families::Vector2;
use crate::fiber::{PlaneSet, Rect};
use crate::numjson::{bigint_str, bigint_vec};
use crate::sets::{SetDescriptor, Window1D};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Caps the number of search nodes (candidate extensions, membership probes)
/// a single bounded search may spend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 10_000_000,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }

    fn counter(&self) -> NodeCounter {
        NodeCounter {
            remaining: self.max_nodes,
        }
    }
}

struct NodeCounter {
    remaining: u64,
}

impl NodeCounter {
    /// Spends one node; `false` once the budget is gone.
    fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            false
        } else {
            self.remaining -= 1;
            true
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    WitnessFound,
    /// The full declared search box was covered and holds no witness.
    Exhausted,
    /// The budget ran out before the box was covered.
    Inconclusive,
}

/// The concrete witness of a successful search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessData {
    /// A generator sequence `x_1 < … < x_k`.
    Elements {
        #[serde(with = "bigint_vec")]
        elements: Vec<BigInt>,
    },
    /// The start of a run of consecutive members.
    Start {
        #[serde(with = "bigint_str")]
        start: BigInt,
    },
    /// A sub-window `[lo, hi]`.
    Interval {
        #[serde(with = "bigint_str")]
        lo: BigInt,
        #[serde(with = "bigint_str")]
        hi: BigInt,
    },
    /// The lower-left corner of a fully contained square block.
    Corner { corner: Vector2 },
    /// An n-fold sum that violated a sum-freeness hypothesis.
    SumViolation {
        indices: Vec<usize>,
        #[serde(with = "bigint_vec")]
        summands: Vec<BigInt>,
        #[serde(with = "bigint_str")]
        total: BigInt,
    },
}

/// Outcome of one bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessData>,
    /// The searched parameter box, as decimal strings.
    pub bounds: BTreeMap<String, String>,
}

impl WitnessReport {
    fn new(kind: &str, verdict: Verdict, witness: Option<WitnessData>) -> Self {
        WitnessReport {
            kind: kind.to_string(),
            verdict,
            witness,
            bounds: BTreeMap::new(),
        }
    }

    fn with_bounds<I: IntoIterator<Item = (&'static str, String)>>(mut self, iter: I) -> Self {
        for (k, v) in iter {
            self.bounds.insert(k.to_string(), v);
        }
        self
    }

    pub fn found(&self) -> bool {
        self.verdict == Verdict::WitnessFound
    }
}

enum SearchOutcome<T> {
    Found(T),
    Exhausted,
    OutOfBudget,
}

/// Searches for `x_1 < … < x_k <= bound` whose full finite-sums closure lies
/// in `set`. Depth-first with pruning: a prefix is abandoned as soon as one
/// of its subset sums leaves the set, so the first witness found is the
/// lexicographically smallest.
pub fn find_ip_witness(
    set: &SetDescriptor,
    k: u32,
    bound: &BigInt,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    if k == 0 {
        return Err(Error::precondition("ip witness needs k >= 1"));
    }
    if k > 24 {
        return Err(Error::bounds("ip witness depth k exceeds 24".to_string()));
    }
    if !bound.is_positive() {
        return Err(Error::precondition("ip witness bound must be >= 1"));
    }

    fn dfs(
        set: &SetDescriptor,
        prefix: &mut Vec<BigInt>,
        closure: &mut Vec<BigInt>,
        next_min: &BigInt,
        k: usize,
        bound: &BigInt,
        nodes: &mut NodeCounter,
    ) -> Result<SearchOutcome<Vec<BigInt>>> {
        if prefix.len() == k {
            return Ok(SearchOutcome::Found(prefix.clone()));
        }
        let mut x = next_min.clone();
        while x <= *bound {
            if !nodes.tick() {
                return Ok(SearchOutcome::OutOfBudget);
            }
            let mut new_sums = Vec::with_capacity(closure.len() + 1);
            let mut ok = set.member_lenient(&x)?;
            if ok {
                new_sums.push(x.clone());
                for s in closure.iter() {
                    let sum = s + &x;
                    if !set.member_lenient(&sum)? {
                        ok = false;
                        break;
                    }
                    new_sums.push(sum);
                }
            }
            if ok {
                let checkpoint = closure.len();
                closure.extend(new_sums);
                prefix.push(x.clone());
                let next = &x + 1;
                match dfs(set, prefix, closure, &next, k, bound, nodes)? {
                    SearchOutcome::Exhausted => {}
                    other => return Ok(other),
                }
                prefix.pop();
                closure.truncate(checkpoint);
            }
            x += 1;
        }
        Ok(SearchOutcome::Exhausted)
    }

    let mut nodes = budget.counter();
    let outcome = dfs(
        set,
        &mut Vec::new(),
        &mut Vec::new(),
        &BigInt::one(),
        k as usize,
        bound,
        &mut nodes,
    )?;
    let report = match outcome {
        SearchOutcome::Found(elements) => WitnessReport::new(
            "ip",
            Verdict::WitnessFound,
            Some(WitnessData::Elements { elements }),
        ),
        SearchOutcome::Exhausted => WitnessReport::new("ip", Verdict::Exhausted, None),
        SearchOutcome::OutOfBudget => WitnessReport::new("ip", Verdict::Inconclusive, None),
    };
    Ok(report.with_bounds([("k", k.to_string()), ("bound", bound.to_string())]))
}

/// Replays the IP predicate: every nonempty subset sum of `elements` is in
/// the set.
pub fn replay_ip_witness(set: &SetDescriptor, elements: &[BigInt]) -> Result<bool> {
    let closure = crate::families::fs_closure(elements)?;
    for s in &closure {
        if !set.member_lenient(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for `x_1 < … < x_k <= bound` whose pairwise forward differences
/// all lie in `set`. The generators themselves need not be members.
pub fn find_delta_witness(
    set: &SetDescriptor,
    k: u32,
    bound: &BigInt,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    if k < 2 {
        return Err(Error::precondition("difference witness needs k >= 2"));
    }
    if k > 64 {
        return Err(Error::bounds("difference witness depth k exceeds 64".to_string()));
    }
    if !bound.is_positive() {
        return Err(Error::precondition("difference witness bound must be >= 1"));
    }

    fn dfs(
        set: &SetDescriptor,
        prefix: &mut Vec<BigInt>,
        next_min: &BigInt,
        k: usize,
        bound: &BigInt,
        nodes: &mut NodeCounter,
    ) -> Result<SearchOutcome<Vec<BigInt>>> {
        if prefix.len() == k {
            return Ok(SearchOutcome::Found(prefix.clone()));
        }
        let mut x = next_min.clone();
        while x <= *bound {
            if !nodes.tick() {
                return Ok(SearchOutcome::OutOfBudget);
            }
            let mut ok = true;
            for prev in prefix.iter() {
                if !set.member_lenient(&(&x - prev))? {
                    ok = false;
                    break;
                }
            }
            if ok {
                prefix.push(x.clone());
                let next = &x + 1;
                match dfs(set, prefix, &next, k, bound, nodes)? {
                    SearchOutcome::Exhausted => {}
                    other => return Ok(other),
                }
                prefix.pop();
            }
            x += 1;
        }
        Ok(SearchOutcome::Exhausted)
    }

    let mut nodes = budget.counter();
    let outcome = dfs(
        set,
        &mut Vec::new(),
        &BigInt::one(),
        k as usize,
        bound,
        &mut nodes,
    )?;
    let report = match outcome {
        SearchOutcome::Found(elements) => WitnessReport::new(
            "delta",
            Verdict::WitnessFound,
            Some(WitnessData::Elements { elements }),
        ),
        SearchOutcome::Exhausted => WitnessReport::new("delta", Verdict::Exhausted, None),
        SearchOutcome::OutOfBudget => WitnessReport::new("delta", Verdict::Inconclusive, None),
    };
    Ok(report.with_bounds([("k", k.to_string()), ("bound", bound.to_string())]))
}

/// Replays the difference predicate: all pairwise forward differences lie in
/// the set.
pub fn replay_delta_witness(set: &SetDescriptor, elements: &[BigInt]) -> Result<bool> {
    let deltas = crate::families::delta_of(elements)?;
    for d in &deltas {
        if !set.member_lenient(d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds the first start of `run_len` consecutive members inside the window.
pub fn thick_run(
    set: &SetDescriptor,
    run_len: u64,
    window: &Window1D,
) -> Result<WitnessReport> {
    if run_len == 0 {
        return Err(Error::precondition("run length must be >= 1"));
    }
    let members = set.enumerate(window)?;
    let mut run_start: Option<usize> = None;
    let mut found: Option<BigInt> = None;
    for i in 0..members.len() {
        let start = match run_start {
            Some(s) if &members[i - 1] + 1 == members[i] => s,
            _ => {
                run_start = Some(i);
                i
            }
        };
        if (i - start + 1) as u64 >= run_len {
            found = Some(members[start].clone());
            break;
        }
    }
    let report = match found {
        Some(start) => WitnessReport::new(
            "thick-run",
            Verdict::WitnessFound,
            Some(WitnessData::Start { start }),
        ),
        None => WitnessReport::new("thick-run", Verdict::Exhausted, None),
    };
    Ok(report.with_bounds([
        ("run_len", run_len.to_string()),
        ("window_lo", window.lo().to_string()),
        ("window_hi", window.hi().to_string()),
    ]))
}

/// Replays a thick run witness.
pub fn replay_thick_run(set: &SetDescriptor, start: &BigInt, run_len: u64) -> Result<bool> {
    let mut x = start.clone();
    for _ in 0..run_len {
        if !set.member_lenient(&x)? {
            return Ok(false);
        }
        x += 1;
    }
    Ok(true)
}

/// Maximum gap between consecutive members within a window; edge gaps cut by
/// the window are flagged in [`crate::sets::GapProfile`] but never counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxGap {
    /// No members meet the window.
    Empty,
    /// Exactly one member: no gap is defined.
    Single(BigInt),
    Gap(BigInt),
}

pub fn syndetic_max_gap(set: &SetDescriptor, window: &Window1D) -> Result<MaxGap> {
    let members = set.enumerate(window)?;
    Ok(match members.len() {
        0 => MaxGap::Empty,
        1 => MaxGap::Single(members.into_iter().next().expect("one member")),
        _ => MaxGap::Gap(
            members
                .windows(2)
                .map(|w| &w[1] - &w[0])
                .max()
                .expect("at least one gap"),
        ),
    })
}

/// Searches for a sub-window `[a, a + len]` of the window such that `a` and
/// `a + len` are members and every consecutive member gap inside is at most
/// `gap`. This is the bounded-gap-on-a-long-block shape of piecewise
/// syndeticity.
pub fn pws_witness(
    set: &SetDescriptor,
    gap: &BigInt,
    len: &BigInt,
    window: &Window1D,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    if !gap.is_positive() || !len.is_positive() {
        return Err(Error::precondition("gap and length must be >= 1"));
    }
    let members = set.enumerate(window)?;
    let gaps: Vec<BigInt> = members.windows(2).map(|w| &w[1] - &w[0]).collect();
    // run_end[i]: largest index reachable from i through gaps <= gap.
    let mut run_end = vec![0usize; members.len()];
    if !members.is_empty() {
        let last = members.len() - 1;
        run_end[last] = last;
        for i in (0..last).rev() {
            run_end[i] = if gaps[i] <= *gap { run_end[i + 1] } else { i };
        }
    }
    let mut nodes = budget.counter();
    let mut witness = None;
    for (i, a) in members.iter().enumerate() {
        if !nodes.tick() {
            let report =
                WitnessReport::new("pws", Verdict::Inconclusive, None).with_bounds(pws_bounds(
                    gap, len, window,
                ));
            return Ok(report);
        }
        let b = a + len;
        if b > *window.hi() {
            break;
        }
        if let Ok(j) = members.binary_search(&b) {
            if run_end[i] >= j {
                witness = Some(WitnessData::Interval { lo: a.clone(), hi: b });
                break;
            }
        }
    }
    let report = match witness {
        Some(w) => WitnessReport::new("pws", Verdict::WitnessFound, Some(w)),
        None => WitnessReport::new("pws", Verdict::Exhausted, None),
    };
    Ok(report.with_bounds(pws_bounds(gap, len, window)))
}

fn pws_bounds(
    gap: &BigInt,
    len: &BigInt,
    window: &Window1D,
) -> [(&'static str, String); 4] {
    [
        ("gap", gap.to_string()),
        ("len", len.to_string()),
        ("window_lo", window.lo().to_string()),
        ("window_hi", window.hi().to_string()),
    ]
}

/// Replays a piecewise-syndetic witness interval.
pub fn replay_pws_witness(
    set: &SetDescriptor,
    gap: &BigInt,
    lo: &BigInt,
    hi: &BigInt,
) -> Result<bool> {
    let window = Window1D::new(lo.clone(), hi.clone())?;
    let members = set.enumerate(&window)?;
    if members.first() != Some(lo) || members.last() != Some(hi) {
        return Ok(false);
    }
    Ok(members.windows(2).all(|w| &w[1] - &w[0] <= *gap))
}

/// Finds the lexicographically first lower-left corner of a fully contained
/// `size`×`size` block of plane-set members inside the rectangle.
pub fn block_witness_2d(
    set: &PlaneSet,
    size: u64,
    rect: &Rect,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    if size == 0 {
        return Err(Error::precondition("block size must be >= 1"));
    }
    let span = BigInt::from(size - 1);
    let mut nodes = budget.counter();
    let m_max = rect.m_hi() - &span;
    let n_max = rect.n_hi() - &span;
    let mut m0 = rect.m_lo().clone();
    while m0 <= m_max {
        let mut n0 = rect.n_lo().clone();
        while n0 <= n_max {
            match block_fits(set, &m0, &n0, size, &mut nodes)? {
                SearchOutcome::Found(()) => {
                    let report = WitnessReport::new(
                        "block-2d",
                        Verdict::WitnessFound,
                        Some(WitnessData::Corner {
                            corner: Vector2::new(m0.clone(), n0.clone()),
                        }),
                    );
                    return Ok(report.with_bounds(block_bounds(size, rect)));
                }
                SearchOutcome::Exhausted => {}
                SearchOutcome::OutOfBudget => {
                    let report = WitnessReport::new("block-2d", Verdict::Inconclusive, None);
                    return Ok(report.with_bounds(block_bounds(size, rect)));
                }
            }
            n0 += 1;
        }
        m0 += 1;
    }
    Ok(WitnessReport::new("block-2d", Verdict::Exhausted, None)
        .with_bounds(block_bounds(size, rect)))
}

fn block_fits(
    set: &PlaneSet,
    m0: &BigInt,
    n0: &BigInt,
    size: u64,
    nodes: &mut NodeCounter,
) -> Result<SearchOutcome<()>> {
    for i in 0..size {
        for j in 0..size {
            if !nodes.tick() {
                return Ok(SearchOutcome::OutOfBudget);
            }
            let point = Vector2::new(m0 + i, n0 + j);
            if !set.member(&point)? {
                return Ok(SearchOutcome::Exhausted);
            }
        }
    }
    Ok(SearchOutcome::Found(()))
}

fn block_bounds(size: u64, rect: &Rect) -> [(&'static str, String); 5] {
    [
        ("size", size.to_string()),
        ("m_lo", rect.m_lo().to_string()),
        ("m_hi", rect.m_hi().to_string()),
        ("n_lo", rect.n_lo().to_string()),
        ("n_hi", rect.n_hi().to_string()),
    ]
}

/// Replays a 2D block witness.
pub fn replay_block_witness(set: &PlaneSet, corner: &Vector2, size: u64) -> Result<bool> {
    for i in 0..size {
        for j in 0..size {
            if !set.member(&Vector2::new(&corner.m + i, &corner.n + j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
