//! Exact integer-set descriptors over ℕ and ℤ.
//!
//! A [`SetDescriptor`] is a lazily evaluated subset of its [`Universe`] with
//! exact membership and ordered window enumeration. Four representations are
//! supported: normalized closed-interval unions, explicit strictly increasing
//! element lists, complements, and construction-backed sets whose elements
//! are produced on demand by a frozen [`ConstructionSetSpec`] (with a
//! memoized prefix, so repeated queries stay cheap).
//!
//! ℕ is `{1, 2, 3, …}`: zero and negative values are outside the naturals
//! universe. Windows are closed intervals `[lo, hi]` and must respect the
//! universe they are used against.

mod backed;

pub use backed::ConstructionSetSpec;
pub(crate) use backed::BackedSet;

use crate::error::{Error, Result};
use crate::numjson::parse_bigint;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Soft cap on materialized enumeration size; anything larger is not "desk
/// scale" and errors out instead of exhausting memory.
pub const MAX_ENUMERATION: u64 = 10_000_000;

/// The ambient 1D universe of a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    /// `{1, 2, 3, …}` — zero is excluded.
    Naturals,
    Integers,
}

impl Universe {
    pub fn contains(&self, x: &BigInt) -> bool {
        match self {
            Universe::Naturals => x.is_positive(),
            Universe::Integers => true,
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::Naturals => write!(f, "naturals"),
            Universe::Integers => write!(f, "integers"),
        }
    }
}

/// A closed 1D window `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window1D {
    lo: BigInt,
    hi: BigInt,
}

impl Window1D {
    pub fn new(lo: BigInt, hi: BigInt) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!("inverted window [{lo}, {hi}]")));
        }
        Ok(Window1D { lo, hi })
    }

    pub fn from_i64(lo: i64, hi: i64) -> Result<Self> {
        Self::new(BigInt::from(lo), BigInt::from(hi))
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    /// Number of integer points in the window.
    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo + 1
    }

    pub fn validate_for(&self, universe: Universe) -> Result<()> {
        if universe == Universe::Naturals && !self.lo.is_positive() {
            return Err(Error::domain(format!(
                "window [{}, {}] extends below 1 in the naturals universe",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

impl std::str::FromStr for Window1D {
    type Err = Error;

    /// Parses `"lo..hi"` (closed on both ends), e.g. `"1..250"` or
    /// `"-50..50"`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| Error::parse(format!("window {s:?} is not of the form lo..hi")))?;
        Window1D::new(parse_bigint(lo)?, parse_bigint(hi)?)
    }
}

impl fmt::Display for Window1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl Serialize for Window1D {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        WindowJson {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Window1D {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = WindowJson::deserialize(de)?;
        let lo = parse_bigint(&raw.lo).map_err(D::Error::custom)?;
        let hi = parse_bigint(&raw.hi).map_err(D::Error::custom)?;
        Window1D::new(lo, hi).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    lo: String,
    hi: String,
}

/// A closed interval of integers, used by the interval-union representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
}

/// Gap statistics of a set restricted to a window.
///
/// `gaps` holds `(position, gap)` pairs where `position` is the left member
/// of each consecutive pair and `gap` is the difference to the next member.
/// `max_gap` is `None` when the window holds fewer than two members; an empty
/// intersection yields the distinguished empty profile (`member_count == 0`).
/// The truncation flags record that the window edge cut into a potential
/// gap (the first member sits strictly above `lo`, or the last strictly
/// below `hi`); truncated edge gaps are flagged but never counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapProfile {
    pub window: Window1D,
    pub gaps: Vec<(BigInt, BigInt)>,
    pub max_gap: Option<BigInt>,
    pub member_count: u64,
    pub left_truncated: bool,
    pub right_truncated: bool,
}

impl GapProfile {
    /// No members in the window at all.
    pub fn is_empty(&self) -> bool {
        self.member_count == 0
    }

    /// Fewer than two members: gaps are undefined ("insufficient elements").
    pub fn is_insufficient(&self) -> bool {
        self.member_count < 2
    }

    /// Smallest gap in the window, when defined.
    pub fn min_gap(&self) -> Option<BigInt> {
        self.gaps.iter().map(|(_, g)| g.clone()).min()
    }
}

/// A lazily evaluated, exact subset of ℕ or ℤ.
#[derive(Clone, Debug, PartialEq)]
pub struct SetDescriptor {
    universe: Universe,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    /// Sorted, pairwise disjoint, non-adjacent closed intervals.
    IntervalUnion(Vec<Interval>),
    /// Strictly increasing element list.
    ExplicitSorted(Vec<BigInt>),
    /// Complement within the same universe.
    Complement(Box<SetDescriptor>),
    /// Elements produced by a frozen construction, memoized.
    ConstructionBacked(BackedSet),
}

impl SetDescriptor {
    /// Union of closed intervals; overlapping or adjacent inputs are merged
    /// and the result is stored in normalized form.
    pub fn interval_union(universe: Universe, intervals: Vec<(BigInt, BigInt)>) -> Result<Self> {
        let mut checked = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            if lo > hi {
                return Err(Error::domain(format!("inverted interval [{lo}, {hi}]")));
            }
            if !universe.contains(&lo) {
                return Err(Error::domain(format!(
                    "interval start {lo} lies outside the {universe} universe"
                )));
            }
            checked.push(Interval { lo, hi });
        }
        Ok(SetDescriptor {
            universe,
            repr: Repr::IntervalUnion(normalize_intervals(checked)),
        })
    }

    /// Explicit finite set; elements are sorted and deduplicated.
    pub fn explicit(universe: Universe, mut elements: Vec<BigInt>) -> Result<Self> {
        for x in &elements {
            if !universe.contains(x) {
                return Err(Error::domain(format!(
                    "element {x} lies outside the {universe} universe"
                )));
            }
        }
        elements.sort();
        elements.dedup();
        Ok(SetDescriptor {
            universe,
            repr: Repr::ExplicitSorted(elements),
        })
    }

    pub fn empty(universe: Universe) -> Self {
        SetDescriptor {
            universe,
            repr: Repr::ExplicitSorted(Vec::new()),
        }
    }

    /// The whole universe, as the complement of the empty set.
    pub fn full(universe: Universe) -> Self {
        Self::complement_of(Self::empty(universe))
    }

    /// Complement within the inner set's universe. The nesting is kept as
    /// written; [`SetDescriptor::normalize`] collapses double complements.
    pub fn complement_of(inner: SetDescriptor) -> Self {
        SetDescriptor {
            universe: inner.universe,
            repr: Repr::Complement(Box::new(inner)),
        }
    }

    /// A set whose elements are generated on demand by a frozen construction.
    pub fn construction(spec: ConstructionSetSpec) -> Result<Self> {
        spec.validate()?;
        Ok(SetDescriptor {
            universe: spec.universe(),
            repr: Repr::ConstructionBacked(BackedSet::new(spec)),
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// The frozen construction behind this set, when there is one.
    pub fn construction_spec(&self) -> Option<&ConstructionSetSpec> {
        self.backed().map(|b| b.spec())
    }

    pub(crate) fn backed(&self) -> Option<&BackedSet> {
        match &self.repr {
            Repr::ConstructionBacked(b) => Some(b),
            _ => None,
        }
    }

    /// Exact membership. `x` must lie in the set's universe.
    pub fn member(&self, x: &BigInt) -> Result<bool> {
        if !self.universe.contains(x) {
            return Err(Error::domain(format!(
                "{x} lies outside the {} universe",
                self.universe
            )));
        }
        self.member_lenient(x)
    }

    /// Membership that treats out-of-universe values as non-members instead
    /// of erroring. Fiber computations over ℕ use this for shifted values
    /// `m + p(n) <= 0`. Construction-backed sets can still fail with a
    /// bounds error when the enumeration cap is exceeded.
    pub fn member_lenient(&self, x: &BigInt) -> Result<bool> {
        if !self.universe.contains(x) {
            return Ok(false);
        }
        match &self.repr {
            Repr::IntervalUnion(intervals) => {
                // Last interval with lo <= x, if any, is the only candidate.
                let idx = intervals.partition_point(|iv| iv.lo <= *x);
                Ok(idx > 0 && intervals[idx - 1].hi >= *x)
            }
            Repr::ExplicitSorted(elements) => Ok(elements.binary_search(x).is_ok()),
            Repr::Complement(inner) => Ok(!inner.member_lenient(x)?),
            Repr::ConstructionBacked(backed) => backed.contains(x),
        }
    }

    /// All members in `[window.lo, window.hi]`, strictly increasing. The
    /// result is deterministic and stable across calls.
    pub fn enumerate(&self, window: &Window1D) -> Result<Vec<BigInt>> {
        window.validate_for(self.universe)?;
        match &self.repr {
            Repr::IntervalUnion(intervals) => {
                let mut out = Vec::new();
                let mut budget = MAX_ENUMERATION;
                for iv in intervals {
                    let lo = iv.lo.clone().max(window.lo.clone());
                    let hi = iv.hi.clone().min(window.hi.clone());
                    if lo > hi {
                        continue;
                    }
                    push_range(&mut out, &lo, &hi, &mut budget)?;
                }
                Ok(out)
            }
            Repr::ExplicitSorted(elements) => {
                let start = elements.partition_point(|e| e < &window.lo);
                let end = elements.partition_point(|e| e <= &window.hi);
                Ok(elements[start..end].to_vec())
            }
            Repr::Complement(inner) => {
                let width_budget = BigInt::from(MAX_ENUMERATION);
                if window.width() > width_budget {
                    return Err(Error::bounds(format!(
                        "complement enumeration over {} points exceeds the {MAX_ENUMERATION} cap",
                        window.width()
                    )));
                }
                let members = inner.enumerate(window)?;
                let mut out = Vec::new();
                let mut x = window.lo.clone();
                let mut iter = members.into_iter().peekable();
                while x <= window.hi {
                    match iter.peek() {
                        Some(m) if *m == x => {
                            iter.next();
                        }
                        _ => out.push(x.clone()),
                    }
                    x += 1;
                }
                Ok(out)
            }
            Repr::ConstructionBacked(backed) => backed.enumerate(window),
        }
    }

    /// Gap statistics over a window; see [`GapProfile`].
    pub fn gap_profile(&self, window: &Window1D) -> Result<GapProfile> {
        let members = self.enumerate(window)?;
        let member_count = members.len() as u64;
        let (left_truncated, right_truncated) = match (members.first(), members.last()) {
            (Some(first), Some(last)) => (*first > window.lo, *last < window.hi),
            _ => (false, false),
        };
        let mut gaps = Vec::new();
        for pair in members.windows(2) {
            gaps.push((pair[0].clone(), &pair[1] - &pair[0]));
        }
        let max_gap = gaps.iter().map(|(_, g)| g.clone()).max();
        Ok(GapProfile {
            window: window.clone(),
            gaps,
            max_gap,
            member_count,
            left_truncated,
            right_truncated,
        })
    }

    /// Unique normal form: interval unions and element lists are already
    /// normalized on construction, so the only rewrite is collapsing nested
    /// complements. Membership is preserved everywhere.
    pub fn normalize(&self) -> SetDescriptor {
        match &self.repr {
            Repr::Complement(inner) => match &inner.repr {
                Repr::Complement(inner2) => inner2.normalize(),
                _ => SetDescriptor::complement_of(inner.normalize()),
            },
            _ => self.clone(),
        }
    }
}

fn push_range(
    out: &mut Vec<BigInt>,
    lo: &BigInt,
    hi: &BigInt,
    budget: &mut u64,
) -> Result<()> {
    let count = hi - lo + 1;
    let count: u64 = u64::try_from(&count)
        .map_err(|_| Error::bounds(format!("enumeration of {count} points is out of range")))?;
    if count > *budget {
        return Err(Error::bounds(format!(
            "enumeration exceeds the {MAX_ENUMERATION} element cap"
        )));
    }
    *budget -= count;
    let mut x = lo.clone();
    while x <= *hi {
        out.push(x.clone());
        x += 1;
    }
    Ok(())
}

/// Sorts intervals, merges overlapping and adjacent ones. The result is the
/// unique normalized representation of the union.
fn normalize_intervals(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match out.last_mut() {
            // Adjacent integer intervals ([1,3],[4,6]) merge as well.
            Some(last) if iv.lo <= &last.hi + 1 => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// JSON round-trip: {"universe": "...", "variant": "...", ...} with all
// integers encoded as decimal strings. Deserialization is strict: inputs must
// already satisfy the normalization invariants.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SetDescriptorJson {
    universe: Universe,
    #[serde(flatten)]
    repr: ReprJson,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum ReprJson {
    IntervalUnion { intervals: Vec<[String; 2]> },
    ExplicitSorted { elements: Vec<String> },
    Complement { inner: Box<SetDescriptorJson> },
    Construction { spec: ConstructionSetSpec },
}

impl SetDescriptor {
    fn to_json_repr(&self) -> SetDescriptorJson {
        let repr = match &self.repr {
            Repr::IntervalUnion(intervals) => ReprJson::IntervalUnion {
                intervals: intervals
                    .iter()
                    .map(|iv| [iv.lo.to_string(), iv.hi.to_string()])
                    .collect(),
            },
            Repr::ExplicitSorted(elements) => ReprJson::ExplicitSorted {
                elements: elements.iter().map(|e| e.to_string()).collect(),
            },
            Repr::Complement(inner) => ReprJson::Complement {
                inner: Box::new(inner.to_json_repr()),
            },
            Repr::ConstructionBacked(backed) => ReprJson::Construction {
                spec: backed.spec().clone(),
            },
        };
        SetDescriptorJson {
            universe: self.universe,
            repr,
        }
    }

    fn from_json_repr(json: SetDescriptorJson) -> Result<Self> {
        let universe = json.universe;
        match json.repr {
            ReprJson::IntervalUnion { intervals } => {
                let mut parsed = Vec::with_capacity(intervals.len());
                for [lo, hi] in &intervals {
                    let lo = parse_bigint(lo)?;
                    let hi = parse_bigint(hi)?;
                    if lo > hi {
                        return Err(Error::parse(format!("inverted interval [{lo}, {hi}]")));
                    }
                    if !universe.contains(&lo) {
                        return Err(Error::parse(format!(
                            "interval start {lo} outside the {universe} universe"
                        )));
                    }
                    parsed.push(Interval { lo, hi });
                }
                for pair in parsed.windows(2) {
                    if pair[1].lo <= &pair[0].hi + 1 {
                        return Err(Error::parse(
                            "intervals must be sorted, disjoint and non-adjacent",
                        ));
                    }
                }
                Ok(SetDescriptor {
                    universe,
                    repr: Repr::IntervalUnion(parsed),
                })
            }
            ReprJson::ExplicitSorted { elements } => {
                let parsed = elements
                    .iter()
                    .map(|s| parse_bigint(s))
                    .collect::<Result<Vec<_>>>()?;
                for pair in parsed.windows(2) {
                    if pair[0] >= pair[1] {
                        return Err(Error::parse("elements must be strictly increasing"));
                    }
                }
                if let Some(first) = parsed.first() {
                    if !universe.contains(first) {
                        return Err(Error::parse(format!(
                            "element {first} outside the {universe} universe"
                        )));
                    }
                }
                Ok(SetDescriptor {
                    universe,
                    repr: Repr::ExplicitSorted(parsed),
                })
            }
            ReprJson::Complement { inner } => {
                let inner = Self::from_json_repr(*inner)?;
                if inner.universe != universe {
                    return Err(Error::parse(
                        "complement universe must match the inner set's universe",
                    ));
                }
                Ok(SetDescriptor::complement_of(inner))
            }
            ReprJson::Construction { spec } => SetDescriptor::construction(spec),
        }
    }
}

impl Serialize for SetDescriptor {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SetDescriptor {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = SetDescriptorJson::deserialize(de)?;
        SetDescriptor::from_json_repr(raw).map_err(D::Error::custom)
    }
}
