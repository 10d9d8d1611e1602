//! Construction-backed sets: frozen parameter blocks that generate their
//! elements on demand, in increasing order, with a memoized prefix.
//!
//! Each variant corresponds to the value set of one counterexample
//! construction. All parameters are frozen at creation, so two descriptors
//! with equal specs denote equal sets and enumeration is exact: membership of
//! `x` is decided by enumerating the set up to `x`.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::sets::{Universe, Window1D, MAX_ENUMERATION};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

/// Exponent guard for the doubly-exponential generators `2^(2^e)`: beyond
/// `e = 20` a single element needs megabytes.
const MAX_TOWER_EXPONENT: u32 = 20;

/// Bit-size guard for the geometric generators `2^(i*N)`.
const MAX_GENERATOR_BITS: u64 = 1 << 20;

/// A frozen recipe for a construction-backed set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum ConstructionSetSpec {
    /// The thick set `⋃_{n>=1} [base^n, base^n + n]` over ℕ.
    ThickBlocks { base: u64 },
    /// `{ p(t) + t : t a nonempty subset sum of {2^N, 2^(2N), …, 2^(cap·N)} }`
    /// over ℕ (values below 1 are dropped).
    IpStarSums {
        poly: IntPolynomial,
        shift_exponent: u32,
        index_cap: u32,
    },
    /// `{ p(t) + t : t a nonempty subset sum of {2^(2^(beta+1)), …,
    /// 2^(2^(beta+cap))} }` over ℕ.
    IpnStarSums {
        poly: IntPolynomial,
        beta: u32,
        index_cap: u32,
    },
    /// `{ p(d) + d : 1 <= d <= count - 1 }`, the difference values of the
    /// diagonal generators `(i, i)`.
    DeltaStarValues {
        poly: IntPolynomial,
        count: u32,
        universe: Universe,
    },
    /// `{ p(v) + m : v, m ∈ [starts[k], starts[k] + k] }` over all blocks
    /// `k`, the 1D shadow of the central* thick plane set.
    CentralStarSums {
        poly: IntPolynomial,
        #[serde(with = "crate::numjson::bigint_vec")]
        starts: Vec<BigInt>,
    },
}

impl ConstructionSetSpec {
    pub fn universe(&self) -> Universe {
        match self {
            ConstructionSetSpec::DeltaStarValues { universe, .. } => *universe,
            _ => Universe::Naturals,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            ConstructionSetSpec::ThickBlocks { base } => {
                if *base < 2 {
                    return Err(Error::precondition("block rule base must be at least 2"));
                }
            }
            ConstructionSetSpec::IpStarSums {
                shift_exponent,
                index_cap,
                ..
            } => {
                if *index_cap == 0 || *index_cap > 24 {
                    return Err(Error::bounds(format!(
                        "index cap {index_cap} outside 1..=24"
                    )));
                }
                if *shift_exponent == 0 {
                    return Err(Error::precondition("shift exponent must be at least 1"));
                }
                let bits = u64::from(*shift_exponent) * u64::from(*index_cap);
                if bits > MAX_GENERATOR_BITS {
                    return Err(Error::bounds(format!(
                        "largest generator 2^{bits} is too large"
                    )));
                }
            }
            ConstructionSetSpec::IpnStarSums {
                beta, index_cap, ..
            } => {
                if *index_cap == 0 || *index_cap > 8 {
                    return Err(Error::bounds(format!("index cap {index_cap} outside 1..=8")));
                }
                if beta + index_cap > MAX_TOWER_EXPONENT {
                    return Err(Error::bounds(format!(
                        "generator exponent 2^(2^{}) is too large",
                        beta + index_cap
                    )));
                }
            }
            ConstructionSetSpec::DeltaStarValues { count, .. } => {
                if *count < 2 {
                    return Err(Error::precondition(
                        "difference generators need count >= 2",
                    ));
                }
                if *count > 100_000 {
                    return Err(Error::bounds(format!("count {count} is too large")));
                }
            }
            ConstructionSetSpec::CentralStarSums { starts, .. } => {
                if starts.len() > 10_000 {
                    return Err(Error::bounds("too many blocks".to_string()));
                }
                for (k, s) in starts.iter().enumerate() {
                    if !s.is_positive() {
                        return Err(Error::precondition(format!(
                            "block start {s} (index {k}) must be positive"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the whole set can be materialized outright (small and finite).
    fn materializes_fully(&self) -> bool {
        matches!(
            self,
            ConstructionSetSpec::IpnStarSums { .. }
                | ConstructionSetSpec::DeltaStarValues { .. }
                | ConstructionSetSpec::CentralStarSums { .. }
        )
    }

    /// Largest element, when the set is finite.
    pub fn max_element(&self) -> Result<Option<BigInt>> {
        match self {
            ConstructionSetSpec::ThickBlocks { .. } => Ok(None),
            ConstructionSetSpec::IpStarSums {
                poly,
                shift_exponent,
                index_cap,
            } => {
                // All generators sum to t_max >= 2^N >= the monotone
                // threshold of p(t) + t, so q(t_max) is the maximum.
                let mut t_max = BigInt::zero();
                for g in geometric_generators(*shift_exponent, *index_cap) {
                    t_max += g;
                }
                Ok(Some(poly.plus_identity().eval(&t_max)))
            }
            _ => Ok(self.materialize_all()?.last().cloned()),
        }
    }

    /// All elements `<= bound`, strictly increasing.
    pub fn enumerate_up_to(&self, bound: &BigInt) -> Result<Vec<BigInt>> {
        match self {
            ConstructionSetSpec::ThickBlocks { base } => {
                let mut out = Vec::new();
                let mut block_start = BigInt::one();
                let mut n = 0u64;
                loop {
                    n += 1;
                    block_start *= *base;
                    if block_start > *bound {
                        break;
                    }
                    let hi = (&block_start + n).min(bound.clone());
                    let mut x = block_start.clone();
                    while x <= hi {
                        out.push(x.clone());
                        x += 1;
                    }
                    if out.len() as u64 > MAX_ENUMERATION {
                        return Err(Error::bounds(format!(
                            "thick block enumeration up to {bound} exceeds the cap"
                        )));
                    }
                }
                Ok(out)
            }
            ConstructionSetSpec::IpStarSums {
                poly,
                shift_exponent,
                index_cap,
            } => {
                let q = poly.plus_identity();
                let threshold = q.monotone_threshold()?;
                // Smallest t >= threshold with q(t) > bound: beyond it the
                // image is above the bound for good.
                let sum_cap = if q.eval(&threshold) > *bound {
                    threshold
                } else {
                    let mut hi = threshold.clone() + 1u8;
                    while q.eval(&hi) <= *bound {
                        hi = &hi * 2 + 1;
                    }
                    let mut lo = threshold;
                    // Invariant: q(lo) <= bound < q(hi).
                    while &lo + 1 < hi {
                        let mid = (&lo + &hi) / 2;
                        if q.eval(&mid) <= *bound {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    hi
                };
                let generators = geometric_generators(*shift_exponent, *index_cap);
                let mut sums = Vec::new();
                subset_sums_up_to(&generators, &sum_cap, &mut sums)?;
                let mut out = BTreeSet::new();
                for t in sums {
                    let v = q.eval(&t);
                    if v.is_positive() && v <= *bound {
                        out.insert(v);
                    }
                }
                Ok(out.into_iter().collect())
            }
            _ => {
                let all = self.materialize_all()?;
                let end = all.partition_point(|x| x <= bound);
                Ok(all[..end].to_vec())
            }
        }
    }

    /// Full materialization for the finite variants.
    fn materialize_all(&self) -> Result<Vec<BigInt>> {
        let mut out = BTreeSet::new();
        match self {
            ConstructionSetSpec::IpnStarSums {
                poly,
                beta,
                index_cap,
            } => {
                let q = poly.plus_identity();
                let generators = tower_generators(*beta, *index_cap)?;
                let mut sums = Vec::new();
                subset_sums_all(&generators, &mut sums);
                for t in sums {
                    let v = q.eval(&t);
                    if v.is_positive() {
                        out.insert(v);
                    }
                }
            }
            ConstructionSetSpec::DeltaStarValues {
                poly,
                count,
                universe,
            } => {
                let q = poly.plus_identity();
                for d in 1..*count {
                    let v = q.eval(&BigInt::from(d));
                    if *universe == Universe::Integers || v.is_positive() {
                        out.insert(v);
                    }
                }
            }
            ConstructionSetSpec::CentralStarSums { poly, starts } => {
                for (k, start) in starts.iter().enumerate() {
                    let hi = start + k as u64;
                    let mut v = start.clone();
                    while v <= hi {
                        let base = poly.eval(&v);
                        let mut m = start.clone();
                        while m <= hi {
                            let val = &base + &m;
                            if val.is_positive() {
                                out.insert(val);
                            }
                            m += 1;
                        }
                        v += 1;
                    }
                }
            }
            _ => unreachable!("materialize_all is only called for finite variants"),
        }
        Ok(out.into_iter().collect())
    }
}

/// `2^(i*N)` for `i = 1..=cap`.
fn geometric_generators(shift_exponent: u32, index_cap: u32) -> Vec<BigInt> {
    (1..=index_cap)
        .map(|i| BigInt::one() << (u64::from(i) * u64::from(shift_exponent)))
        .collect()
}

/// `2^(2^(beta+i))` for `i = 1..=cap`.
pub(crate) fn tower_generators(beta: u32, index_cap: u32) -> Result<Vec<BigInt>> {
    if beta + index_cap > MAX_TOWER_EXPONENT {
        return Err(Error::bounds(format!(
            "generator exponent 2^(2^{}) is too large",
            beta + index_cap
        )));
    }
    Ok((1..=index_cap)
        .map(|i| BigInt::one() << (1u64 << (beta + i)))
        .collect())
}

/// All nonempty subset sums `<= cap` of positive generators, by depth-first
/// search; branches whose partial sum already exceeds `cap` are pruned.
fn subset_sums_up_to(generators: &[BigInt], cap: &BigInt, out: &mut Vec<BigInt>) -> Result<()> {
    fn rec(
        generators: &[BigInt],
        start: usize,
        sum: &BigInt,
        cap: &BigInt,
        out: &mut Vec<BigInt>,
    ) -> Result<()> {
        for (offset, g) in generators[start..].iter().enumerate() {
            let next = sum + g;
            if next > *cap {
                // Generators ascend, so later branches only grow.
                break;
            }
            if out.len() as u64 >= MAX_ENUMERATION {
                return Err(Error::bounds("subset sum enumeration exceeds the cap"));
            }
            out.push(next.clone());
            rec(generators, start + offset + 1, &next, cap, out)?;
        }
        Ok(())
    }
    rec(generators, 0, &BigInt::zero(), cap, out)
}

/// All nonempty subset sums of a small generator list.
fn subset_sums_all(generators: &[BigInt], out: &mut Vec<BigInt>) {
    for g in generators {
        let with_g: Vec<BigInt> = out.iter().map(|s| s + g).collect();
        out.extend(with_g);
        out.push(g.clone());
    }
}

/// A spec plus a memoized, internally synchronized element prefix. Cloning
/// shares the memo; equality ignores it.
#[derive(Clone, Debug)]
pub(crate) struct BackedSet {
    spec: ConstructionSetSpec,
    memo: Arc<Mutex<Memo>>,
}

#[derive(Debug, Default)]
struct Memo {
    /// Elements are exact and complete up to this value.
    frontier: Option<BigInt>,
    /// The whole (finite) set is materialized.
    complete: bool,
    elements: Vec<BigInt>,
}

impl PartialEq for BackedSet {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl BackedSet {
    pub(crate) fn new(spec: ConstructionSetSpec) -> Self {
        BackedSet {
            spec,
            memo: Arc::new(Mutex::new(Memo::default())),
        }
    }

    pub(crate) fn spec(&self) -> &ConstructionSetSpec {
        &self.spec
    }

    /// Runs `f` over the memoized prefix, extending it to `bound` first.
    fn with_prefix<R>(&self, bound: &BigInt, f: impl FnOnce(&[BigInt]) -> R) -> Result<R> {
        let mut memo = self.memo.lock().expect("memo lock");
        let fresh_enough =
            memo.complete || memo.frontier.as_ref().is_some_and(|front| front >= bound);
        if !fresh_enough {
            if self.spec.materializes_fully() {
                memo.elements = self.spec.materialize_all()?;
                memo.complete = true;
            } else {
                memo.elements = self.spec.enumerate_up_to(bound)?;
                memo.frontier = Some(bound.clone());
            }
        }
        let end = memo.elements.partition_point(|x| x <= bound);
        Ok(f(&memo.elements[..end]))
    }

    pub(crate) fn contains(&self, x: &BigInt) -> Result<bool> {
        self.with_prefix(x, |elems| elems.binary_search(x).is_ok())
    }

    pub(crate) fn enumerate(&self, window: &Window1D) -> Result<Vec<BigInt>> {
        self.with_prefix(window.hi(), |elems| {
            let start = elems.partition_point(|e| e < window.lo());
            elems[start..].to_vec()
        })
    }

    /// The first `k` elements (all of them if the set has fewer), plus the
    /// bound that enumeration reached.
    pub(crate) fn first_elements(&self, k: usize) -> Result<(Vec<BigInt>, BigInt)> {
        if self.spec.materializes_fully() {
            let max = self
                .spec
                .max_element()?
                .unwrap_or_else(BigInt::one);
            return self.with_prefix(&max, |elems| {
                (elems.iter().take(k).cloned().collect(), max.clone())
            });
        }
        let max = self.spec.max_element()?;
        let mut bound = BigInt::from(16);
        loop {
            if let Some(max) = &max {
                if bound > *max {
                    bound = max.clone();
                }
            }
            let elems = self.with_prefix(&bound, |elems| elems.to_vec())?;
            let exhausted = max.as_ref().is_some_and(|m| bound == *m);
            if elems.len() >= k || exhausted {
                return Ok((elems.into_iter().take(k).collect(), bound));
            }
            bound *= 16;
        }
    }
}
