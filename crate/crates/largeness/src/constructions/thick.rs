//! Thick sets transfer to the fiber: given a thick set presented as a block
//! rule `[a_n, a_n + n]` and a window size `N`, locate a block index `n(N)`
//! and offset `b` so that the whole square `[b, b+N] × [0, N]` lies inside
//! the fiber.
//!
//! The fiber values of the square range over `[b + N_min, b + N + N_max]`
//! where `N_min`/`N_max` are the polynomial extrema over `0 <= n <= N`; the
//! block index is the smallest one whose block strictly contains that range.

use crate::constructions::{Claim, ConstructionResult, Generators};
use crate::error::{Error, Result};
use crate::families::SearchBudget;
use crate::fiber::{PlaneUniverse, Rect};
use crate::poly::IntPolynomial;
use crate::sets::{ConstructionSetSpec, SetDescriptor, Universe};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A thick-set block rule `a_n = base^n`, giving blocks `[a_n, a_n + n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRule {
    pub base: u64,
}

impl BlockRule {
    pub fn new(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::precondition("block rule base must be at least 2"));
        }
        Ok(BlockRule { base })
    }

    /// The underlying thick subset of ℕ as a descriptor.
    pub fn descriptor(&self) -> SetDescriptor {
        SetDescriptor::construction(ConstructionSetSpec::ThickBlocks { base: self.base })
            .expect("validated base")
    }
}

/// The located block: `[b, b+N] × [0, N]` sits inside the fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickBlockWitness {
    /// The chosen block index `n(N)`.
    pub block_index: u64,
    /// The chosen offset `b`.
    pub b: BigInt,
    /// `[b, b+N] × [0, N]`.
    pub rect: Rect,
    /// `min p_i(n)` over `0 <= n <= N` and all `i`.
    pub n_min: BigInt,
    /// `max p_i(n)` over `0 <= n <= N` and all `i`.
    pub n_max: BigInt,
}

/// Finds the smallest block index and then the smallest offset `b` with
/// `a_n < b + N_min` and `b + N_max + N < a_n + n`, both strict.
pub fn thick_block_witness(
    rule: &BlockRule,
    polys: &[IntPolynomial],
    window_size: u64,
    budget: &SearchBudget,
) -> Result<ThickBlockWitness> {
    if window_size == 0 {
        return Err(Error::precondition("window size must be at least 1"));
    }
    if polys.is_empty() {
        return Err(Error::precondition("at least one polynomial is required"));
    }
    let (n_min, n_max) = poly_extrema(polys, window_size);

    let mut block_start = BigInt::one();
    for block_index in 1..=budget.max_nodes {
        block_start *= rule.base;
        // Smallest b with a_n < b + N_min, clamped to the naturals.
        let mut b = &block_start - &n_min + 1u32;
        if !b.is_positive() {
            b = BigInt::one();
        }
        let strict_lower = block_start < &b + &n_min;
        let strict_upper = &b + &n_max + window_size < &block_start + block_index;
        if strict_lower && strict_upper {
            let rect = Rect::new(
                b.clone(),
                &b + window_size,
                BigInt::zero(),
                BigInt::from(window_size),
            )?;
            return Ok(ThickBlockWitness {
                block_index,
                b,
                rect,
                n_min,
                n_max,
            });
        }
    }
    Err(Error::bounds(format!(
        "no admissible block index within the first {} blocks",
        budget.max_nodes
    )))
}

fn poly_extrema(polys: &[IntPolynomial], window_size: u64) -> (BigInt, BigInt) {
    let mut n_min: Option<BigInt> = None;
    let mut n_max: Option<BigInt> = None;
    for n in 0..=window_size {
        let n = BigInt::from(n);
        for p in polys {
            let v = p.eval(&n);
            if n_min.as_ref().is_none_or(|m| v < *m) {
                n_min = Some(v.clone());
            }
            if n_max.as_ref().is_none_or(|m| v > *m) {
                n_max = Some(v);
            }
        }
    }
    (n_min.expect("nonempty scan"), n_max.expect("nonempty scan"))
}

/// Packages a thick block witness as a replayable construction result.
pub fn thick_block_witness_result(
    rule: &BlockRule,
    polys: &[IntPolynomial],
    window_size: u64,
    budget: &SearchBudget,
) -> Result<ConstructionResult> {
    let witness = thick_block_witness(rule, polys, window_size, budget)?;
    let thick_set = rule.descriptor();
    let mut result = ConstructionResult::new(
        "thick",
        Universe::Naturals,
        PlaneUniverse::NaturalsSquared,
        polys.to_vec(),
    );
    result.param("block_rule_base", rule.base);
    result.param("window_size", window_size);
    result.param("block_index", witness.block_index);
    result.param("b", &witness.b);
    result.param("poly_min", &witness.n_min);
    result.param("poly_max", &witness.n_max);
    result.set_enumeration = super::bounded_enumeration(&thick_set, 64)?;
    result.s = Some(SetDescriptor::complement_of(thick_set.clone()));
    result.a = Some(thick_set);
    result.generators = Generators::None;
    result.claims = vec![Claim::BlockInFiber {
        rect: witness.rect.clone(),
    }];
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{block_witness_2d, Vector2, Verdict};
    use crate::fiber::PlaneSet;

    fn square() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1]).unwrap()
    }

    #[test]
    fn square_poly_window_three() {
        // N_min = 0, N_max = 9; the block index must satisfy
        // n >= N_max - N_min + N + 2 = 14, and b = a_n + 1.
        let rule = BlockRule::new(2).unwrap();
        let witness =
            thick_block_witness(&rule, &[square()], 3, &SearchBudget::default()).unwrap();
        assert_eq!(witness.n_min, BigInt::zero());
        assert_eq!(witness.n_max, BigInt::from(9));
        assert_eq!(witness.block_index, 14);
        assert_eq!(witness.b, BigInt::from(16385));
    }

    #[test]
    fn linear_poly_window_one() {
        let rule = BlockRule::new(2).unwrap();
        let p = IntPolynomial::from_i64(&[1]).unwrap();
        let witness = thick_block_witness(&rule, &[p], 1, &SearchBudget::default()).unwrap();
        // N_min = 0, N_max = 1: n >= 4, b = 17; 17 + 1 + 1 = 19 < 20.
        assert_eq!(witness.block_index, 4);
        assert_eq!(witness.b, BigInt::from(17));
    }

    #[test]
    fn degenerate_equal_extrema() {
        // p = n^2 - n vanishes on {0, 1}, so N_min = N_max = 0 for N = 1.
        let rule = BlockRule::new(2).unwrap();
        let p = IntPolynomial::from_i64(&[-1, 1]).unwrap();
        let witness = thick_block_witness(&rule, &[p], 1, &SearchBudget::default()).unwrap();
        assert_eq!(witness.n_min, BigInt::zero());
        assert_eq!(witness.n_max, BigInt::zero());
        assert_eq!(witness.block_index, 3);
        assert_eq!(witness.b, BigInt::from(9));
    }

    #[test]
    fn witness_block_replays_in_fiber() {
        let rule = BlockRule::new(2).unwrap();
        let witness =
            thick_block_witness(&rule, &[square()], 3, &SearchBudget::default()).unwrap();
        let fiber = PlaneSet::fiber(
            rule.descriptor(),
            vec![square()],
            PlaneUniverse::NaturalsSquared,
        )
        .unwrap();
        let report = block_witness_2d(&fiber, 4, &witness.rect, &SearchBudget::default()).unwrap();
        assert_eq!(report.verdict, Verdict::WitnessFound);
        assert!(fiber
            .member(&Vector2::new(witness.b.clone(), BigInt::zero()))
            .unwrap());
    }
}
