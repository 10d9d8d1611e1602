//! The central* obstruction: a thick union of square blocks
//! `[s_k, s_k + k]²` whose polynomial image `D = { p(v) + m }` is pairwise
//! sum-free, so the complement of `D` is large while the fiber misses every
//! block.
//!
//! Block starts are found by upward scan. A candidate `s_k` is accepted only
//! when its image block `D_k` clears three oracles:
//!
//! 1. `D_k` avoids every pairwise sum (doubles included) of the previously
//!    materialized `D`;
//! 2. every new sum involving `D_k` avoids all materialized values;
//! 3. `min D_k > 2 · max D_{k-1}`, which keeps all old sums below every
//!    future block.
//!
//! Together these make the materialized `D` pairwise sum-free at every
//! stage, which the replayable claims then verify by brute force.
//!
//! The start of block 0 needs care. Block `k` contributes rows of `k + 1`
//! consecutive integers to `D`, so any element `a <= k` already in `D`
//! shifts some row value onto another (`x` and `x + a` share a row) and no
//! choice of `s_k` can restore sum-freeness. The scan therefore requires
//! `p(s_0) + s_0 > n_blocks` in addition to `p(s_0) > 1`: the smallest image
//! value must exceed every requested block width.

use crate::constructions::{
    bounded_enumeration, require_superlinear, Claim, ConstructionResult, Generators,
};
use crate::error::{Error, Result};
use crate::families::SearchBudget;
use crate::fiber::{PlaneUniverse, Rect};
use crate::poly::IntPolynomial;
use crate::sets::{ConstructionSetSpec, SetDescriptor, Universe};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::BTreeSet;

/// Builds the central* obstruction for `p` with blocks `0..=n_blocks`.
pub fn centralstar_counterexample(
    p: &IntPolynomial,
    n_blocks: u32,
    budget: &SearchBudget,
) -> Result<ConstructionResult> {
    require_superlinear(p)?;
    let mut nodes = budget.max_nodes;

    // s_0: smallest natural with p(s_0) > 1 whose image value p(s_0) + s_0
    // exceeds every later block width (see the module docs).
    let width_bound = BigInt::from(n_blocks);
    let mut s0 = BigInt::one();
    loop {
        if nodes == 0 {
            return Err(Error::bounds("ran out of budget searching for s_0"));
        }
        nodes -= 1;
        let value = p.eval(&s0);
        if value > BigInt::one() && &value + &s0 > width_bound {
            break;
        }
        s0 += 1;
    }

    let mut starts = vec![s0.clone()];
    let mut materialized: BTreeSet<BigInt> = block_values(p, &s0, 0);
    let mut forbidden: BTreeSet<BigInt> = pairwise_sums(&materialized, &materialized);

    for k in 1..=u64::from(n_blocks) {
        let max_prev = materialized
            .iter()
            .next_back()
            .expect("blocks are nonempty")
            .clone();
        let separation = &max_prev * 2;
        let mut candidate = starts.last().expect("nonempty") + 1;
        loop {
            if nodes == 0 {
                return Err(Error::bounds(format!(
                    "ran out of budget at block {k}; partial starts: {}",
                    join_bigints(&starts)
                )));
            }
            nodes -= 1;
            let block = block_values(p, &candidate, k);
            if accept_block(&block, &materialized, &forbidden, &separation) {
                let new_sums = pairwise_sums_union(&materialized, &block);
                materialized.extend(block);
                forbidden.extend(new_sums);
                starts.push(candidate.clone());
                break;
            }
            candidate += 1;
        }
    }

    let d_set = SetDescriptor::construction(ConstructionSetSpec::CentralStarSums {
        poly: p.clone(),
        starts: starts.clone(),
    })?;
    let a = SetDescriptor::complement_of(d_set.clone());
    let rects: Vec<Rect> = starts
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let hi = s + k as u64;
            Rect::new(s.clone(), hi.clone(), s.clone(), hi)
        })
        .collect::<Result<_>>()?;

    let prefix_len = u32::try_from(materialized.len()).expect("desk-scale block count");
    let mut result = ConstructionResult::new(
        "central-star",
        Universe::Naturals,
        PlaneUniverse::NaturalsSquared,
        vec![p.clone()],
    );
    result.param("n_blocks", n_blocks);
    result.param("starts", join_bigints(&starts));
    result.set_enumeration = bounded_enumeration(&d_set, 64)?;
    result.s = Some(d_set);
    result.a = Some(a);
    result.generators = Generators::None;
    result.claims = vec![
        Claim::SumFree {
            prefix_len,
            order: 2,
            include_doubles: true,
        },
        Claim::BlocksContained {
            rects: rects.clone(),
        },
        Claim::PlaneDisjointFromFiber { rects },
    ];
    Ok(result)
}

/// `{ p(v) + m : v, m in [start, start + len] }`, positives only.
fn block_values(p: &IntPolynomial, start: &BigInt, len: u64) -> BTreeSet<BigInt> {
    let mut out = BTreeSet::new();
    let hi = start + len;
    let mut v = start.clone();
    while v <= hi {
        let base = p.eval(&v);
        let mut m = start.clone();
        while m <= hi {
            let value = &base + &m;
            if value.is_positive() {
                out.insert(value);
            }
            m += 1;
        }
        v += 1;
    }
    out
}

fn accept_block(
    block: &BTreeSet<BigInt>,
    materialized: &BTreeSet<BigInt>,
    forbidden: &BTreeSet<BigInt>,
    separation: &BigInt,
) -> bool {
    let Some(min_new) = block.iter().next() else {
        return false;
    };
    // (3) strict growth past all earlier sums-to-come.
    if min_new <= separation {
        return false;
    }
    // (1) old pairwise sums must not hit the new block.
    if block.iter().any(|v| forbidden.contains(v)) {
        return false;
    }
    // (2) new sums (old + new and new + new, doubles included) must avoid
    // everything materialized so far, including the block itself.
    for b in block {
        for a in materialized.iter().chain(block.iter()) {
            let sum = a + b;
            if materialized.contains(&sum) || block.contains(&sum) {
                return false;
            }
        }
    }
    true
}

/// All sums `a + b` with `a, b` in the set, doubles included.
fn pairwise_sums(left: &BTreeSet<BigInt>, right: &BTreeSet<BigInt>) -> BTreeSet<BigInt> {
    let mut out = BTreeSet::new();
    for a in left {
        for b in right {
            out.insert(a + b);
        }
    }
    out
}

/// Sums contributed by a new block: old + new and new + new.
fn pairwise_sums_union(old: &BTreeSet<BigInt>, new: &BTreeSet<BigInt>) -> BTreeSet<BigInt> {
    let mut out = pairwise_sums(old, new);
    out.extend(pairwise_sums(new, new));
    out
}

fn join_bigints(values: &[BigInt]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1]).unwrap()
    }

    fn starts_of(result: &ConstructionResult) -> Vec<BigInt> {
        result.parameters["starts"]
            .split(',')
            .map(|s| s.parse::<BigInt>().unwrap())
            .collect()
    }

    #[test]
    fn square_poly_block_starts() {
        let result =
            centralstar_counterexample(&square(), 2, &SearchBudget::default()).unwrap();
        let starts = starts_of(&result);
        // s_0 = 2 (p(2) = 4 > 1 while p(1) = 1).
        assert_eq!(starts[0], BigInt::from(2));
        // s_1 = 3 is rejected because 6 + 6 = 12 lands in its image block
        // {12, 13, 19, 20}; the scan accepts 4.
        assert_eq!(starts[1], BigInt::from(4));
        // s_2 = 16: every smaller candidate either violates the separation
        // guard or lets an old element bridge into the new block.
        assert_eq!(starts[2], BigInt::from(16));
    }

    #[test]
    fn candidate_three_is_rejected_by_the_sum_oracle() {
        let p = square();
        let d0 = block_values(&p, &BigInt::from(2), 0);
        assert_eq!(d0, BTreeSet::from([BigInt::from(6)]));
        let forbidden = pairwise_sums(&d0, &d0);
        assert!(forbidden.contains(&BigInt::from(12)));
        let d1_candidate = block_values(&p, &BigInt::from(3), 1);
        assert_eq!(
            d1_candidate,
            BTreeSet::from([
                BigInt::from(12),
                BigInt::from(13),
                BigInt::from(19),
                BigInt::from(20)
            ])
        );
        assert!(!accept_block(
            &d1_candidate,
            &d0,
            &forbidden,
            &BigInt::from(12)
        ));
    }

    #[test]
    fn materialized_values_stay_sum_free() {
        let result =
            centralstar_counterexample(&square(), 4, &SearchBudget::default()).unwrap();
        let d = result.s.as_ref().unwrap();
        let elements = result.set_enumeration.as_ref().unwrap().elements.clone();
        assert!(elements.len() >= 10);
        for (i, a) in elements.iter().enumerate() {
            for b in &elements[i..] {
                assert!(
                    !d.member(&(a + b)).unwrap(),
                    "{a} + {b} landed back in the value set"
                );
            }
        }
    }

    #[test]
    fn rejects_degree_one() {
        let p = IntPolynomial::from_i64(&[3]).unwrap();
        assert!(centralstar_counterexample(&p, 2, &SearchBudget::default()).is_err());
    }

    #[test]
    fn wide_rows_force_a_larger_first_start() {
        // With s_0 = 2 the smallest image value is 6, and any block of
        // width >= 7 holds a row containing both x and x + 6: sum-freeness
        // is unreachable no matter where the block starts.
        let p = square();
        let six = BTreeSet::from([BigInt::from(6)]);
        let forbidden = pairwise_sums(&six, &six);
        for start in [100i64, 1000, 54321] {
            let block = block_values(&p, &BigInt::from(start), 6);
            assert!(!accept_block(&block, &six, &forbidden, &BigInt::from(12)));
        }
        // The scan therefore starts at s_0 = 3 once eight blocks are
        // requested, and the greedy completes.
        let result =
            centralstar_counterexample(&p, 8, &SearchBudget::default()).unwrap();
        assert!(result.parameters["starts"].starts_with("3,"));
    }
}
