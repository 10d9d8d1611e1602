//! Syndetic sets and polynomial fibers: the `d = 1` preservation check over
//! ℤ, and the two failure modes — a negative leading coefficient over ℕ, and
//! two distinct polynomials whose shifted images of a thick row family can be
//! made disjoint.

use crate::constructions::{Claim, ConstructionResult, Generators, RowBlock};
use crate::error::{Error, Result};
use crate::families::SearchBudget;
use crate::fiber::{PlaneSet, PlaneUniverse, Rect};
use crate::poly::IntPolynomial;
use crate::sets::{SetDescriptor, Universe, Window1D};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Gap data for one fiber slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceGap {
    pub n: BigInt,
    /// `None` when the slice holds fewer than two members (vacuous).
    pub max_gap: Option<BigInt>,
}

/// Slice-wise gap report of a fiber over a rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceGapReport {
    pub rect: Rect,
    /// Maximum over all conclusive slices.
    pub max_slice_gap: Option<BigInt>,
    pub slices: Vec<SliceGap>,
    /// Number of slices with fewer than two members.
    pub inconclusive_slices: u64,
}

/// Verifies slice-wise that the fiber of a syndetic set under one polynomial
/// keeps bounded gaps: every slice `(A - p(n)) ∩ [m_lo, m_hi]` is measured
/// and the largest observed gap reported. Slices with fewer than two members
/// are flagged inconclusive rather than measured.
pub fn syndetic_preservation_check(
    a: &SetDescriptor,
    p: &IntPolynomial,
    rect: &Rect,
) -> Result<SliceGapReport> {
    if a.universe() != Universe::Integers {
        return Err(Error::domain(
            "syndetic preservation check runs over the integers universe",
        ));
    }
    let fiber = PlaneSet::fiber(a.clone(), vec![p.clone()], PlaneUniverse::IntegersSquared)?;
    let m_window = Window1D::new(rect.m_lo().clone(), rect.m_hi().clone())?;
    let mut slices = Vec::new();
    let mut inconclusive = 0u64;
    let mut max_gap: Option<BigInt> = None;
    let mut n = rect.n_lo().clone();
    while n <= *rect.n_hi() {
        let members = fiber.slice(&n, &m_window)?;
        let gap = if members.len() < 2 {
            inconclusive += 1;
            None
        } else {
            members.windows(2).map(|w| &w[1] - &w[0]).max()
        };
        if let Some(g) = &gap {
            if max_gap.as_ref().is_none_or(|m| g > m) {
                max_gap = Some(g.clone());
            }
        }
        slices.push(SliceGap {
            n: n.clone(),
            max_gap: gap,
        });
        n += 1;
    }
    Ok(SliceGapReport {
        rect: rect.clone(),
        max_slice_gap: max_gap,
        slices,
        inconclusive_slices: inconclusive,
    })
}

/// Packages a preservation check as a replayable result whose claim pins the
/// observed maximum slice gap.
pub fn syndetic_preservation_result(
    a: &SetDescriptor,
    p: &IntPolynomial,
    rect: &Rect,
) -> Result<ConstructionResult> {
    let report = syndetic_preservation_check(a, p, rect)?;
    let Some(max_gap) = report.max_slice_gap.clone() else {
        return Err(Error::inconclusive(
            "every slice over the rectangle was vacuous",
        ));
    };
    if report.inconclusive_slices > 0 {
        return Err(Error::inconclusive(format!(
            "{} slices were vacuous; enlarge the rectangle or the set",
            report.inconclusive_slices
        )));
    }
    let mut result = ConstructionResult::new(
        "syndetic-d1",
        Universe::Integers,
        PlaneUniverse::IntegersSquared,
        vec![p.clone()],
    );
    result.param("max_slice_gap", &max_gap);
    result.param("slice_count", report.slices.len());
    result.a = Some(a.clone());
    result.claims = vec![Claim::SliceGapBound {
        rect: rect.clone(),
        max_gap,
    }];
    Ok(result)
}

/// For a polynomial with negative leading coefficient over ℕ, the fiber
/// misses the whole region `{(m, n) : m <= m_cap, threshold < n <= n_cap}`:
/// beyond the threshold, `m + p(n)` is negative for every `m <= m_cap`.
///
/// Returns the packaged result; the threshold is the largest `n <= n_cap`
/// with `m_cap + p(n) >= 0` (0 when none).
pub fn negative_lead_failure_region(
    a: &SetDescriptor,
    p: &IntPolynomial,
    m_cap: &BigInt,
    n_cap: &BigInt,
) -> Result<ConstructionResult> {
    if !p.leading_coefficient().is_negative() {
        return Err(Error::precondition(
            "failure region requires a negative leading coefficient",
        ));
    }
    if a.universe() != Universe::Naturals {
        return Err(Error::domain("the base set must live over the naturals"));
    }
    if !m_cap.is_positive() || !n_cap.is_positive() {
        return Err(Error::precondition("caps must be at least 1"));
    }
    // Certificate scan: n_threshold = last n in [1, n_cap] where the fiber
    // value can still reach the naturals.
    let mut threshold = BigInt::zero();
    let mut n = BigInt::one();
    while n <= *n_cap {
        if !(m_cap + p.eval(&n)).is_negative() {
            threshold = n.clone();
        }
        n += 1;
    }
    if threshold >= *n_cap {
        return Err(Error::inconclusive(format!(
            "no disjoint region below n = {n_cap}; the certificate never held"
        )));
    }
    let region = Rect::new(
        BigInt::one(),
        m_cap.clone(),
        &threshold + 1,
        n_cap.clone(),
    )?;
    let mut result = ConstructionResult::new(
        "remark2",
        Universe::Naturals,
        PlaneUniverse::NaturalsSquared,
        vec![p.clone()],
    );
    result.param("m_cap", m_cap);
    result.param("n_cap", n_cap);
    result.param("threshold", &threshold);
    result.a = Some(a.clone());
    result.claims = vec![Claim::PlaneDisjointFromFiber {
        rects: vec![region],
    }];
    Ok(result)
}

/// How far the row-offset scan goes for each candidate row height before
/// moving on.
const ROW_OFFSET_SCAN: u64 = 256;

/// Builds a family of row blocks `[a_k, a_k + k] × {n_k}` whose two
/// polynomial shifts `p_i(n_k) + [a_k, a_k + k]` form disjoint element sets,
/// by greedy search over `(n_k, a_k)` in lexicographic order.
pub fn two_polynomial_disjoint_rows(
    p1: &IntPolynomial,
    p2: &IntPolynomial,
    cap: u32,
    budget: &SearchBudget,
) -> Result<ConstructionResult> {
    if p1 == p2 {
        return Err(Error::precondition(
            "the two polynomials must be distinct",
        ));
    }
    if cap == 0 {
        return Err(Error::precondition("cap must be at least 1"));
    }
    let mut rows: Vec<RowBlock> = Vec::new();
    let mut first_shift: Vec<(BigInt, BigInt)> = Vec::new();
    let mut second_shift: Vec<(BigInt, BigInt)> = Vec::new();
    let mut nodes = budget.max_nodes;
    let mut prev_n = BigInt::zero();

    for k in 1..=u64::from(cap) {
        let mut n = &prev_n + 1;
        'scan: loop {
            let s1 = p1.eval(&n);
            let s2 = p2.eval(&n);
            for offset in 1..=ROW_OFFSET_SCAN {
                if nodes == 0 {
                    return Err(Error::bounds(format!(
                        "greedy row search ran out of budget at block {k}"
                    )));
                }
                nodes -= 1;
                let a = BigInt::from(offset);
                let i1 = (&s1 + &a, &s1 + &a + k);
                let i2 = (&s2 + &a, &s2 + &a + k);
                let clash = overlaps(&i1, &i2)
                    || second_shift.iter().any(|iv| overlaps(&i1, iv))
                    || first_shift.iter().any(|iv| overlaps(&i2, iv));
                if !clash {
                    rows.push(RowBlock {
                        n: n.clone(),
                        start: a,
                        len: k,
                    });
                    first_shift.push(i1);
                    second_shift.push(i2);
                    prev_n = n.clone();
                    break 'scan;
                }
            }
            n += 1;
        }
    }

    let mut result = ConstructionResult::new(
        "remark1",
        Universe::Integers,
        PlaneUniverse::IntegersSquared,
        vec![p1.clone(), p2.clone()],
    );
    result.param("cap", cap);
    result.generators = Generators::None;
    result.claims = vec![Claim::ShiftedRowsDisjoint { rows }];
    Ok(result)
}

fn overlaps(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> bool {
    a.0 <= b.1 && b.0 <= a.1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn evens_z(range: i64) -> SetDescriptor {
        SetDescriptor::explicit(
            Universe::Integers,
            (-range / 2..=range / 2).map(|i| big(2 * i)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn evens_keep_gap_two_under_cubic() {
        let a = evens_z(20_000);
        let p = IntPolynomial::from_i64(&[0, 0, 1]).unwrap(); // n^3
        let rect = Rect::from_i64(-20, 20, -20, 20).unwrap();
        let report = syndetic_preservation_check(&a, &p, &rect).unwrap();
        assert_eq!(report.max_slice_gap, Some(big(2)));
        assert_eq!(report.inconclusive_slices, 0);
    }

    #[test]
    fn full_integers_have_gap_one() {
        let a = SetDescriptor::full(Universe::Integers);
        let p = IntPolynomial::from_i64(&[0, 1]).unwrap();
        let rect = Rect::from_i64(-5, 5, -5, 5).unwrap();
        let report = syndetic_preservation_check(&a, &p, &rect).unwrap();
        assert_eq!(report.max_slice_gap, Some(big(1)));
    }

    #[test]
    fn multiples_of_five_keep_gap_five_under_square() {
        let fives = SetDescriptor::explicit(
            Universe::Integers,
            (-600..=600).map(|i| big(5 * i)).collect(),
        )
        .unwrap();
        let p = IntPolynomial::from_i64(&[0, 1]).unwrap();
        let rect = Rect::from_i64(0, 50, 0, 6).unwrap();
        let report = syndetic_preservation_check(&fives, &p, &rect).unwrap();
        assert_eq!(report.max_slice_gap, Some(big(5)));
    }

    #[test]
    fn negative_lead_thresholds() {
        let evens = SetDescriptor::explicit(
            Universe::Naturals,
            (1..=100).map(|i| big(2 * i)).collect(),
        )
        .unwrap();
        let p = IntPolynomial::from_i64(&[0, -1]).unwrap(); // -n^2
        let result =
            negative_lead_failure_region(&evens, &p, &big(10), &big(100)).unwrap();
        assert_eq!(result.parameters["threshold"], "3");

        let all = SetDescriptor::full(Universe::Naturals);
        let p = IntPolynomial::from_i64(&[-1]).unwrap(); // -n
        let result = negative_lead_failure_region(&all, &p, &big(5), &big(50)).unwrap();
        assert_eq!(result.parameters["threshold"], "5");

        let p = IntPolynomial::from_i64(&[0, 1]).unwrap();
        assert!(matches!(
            negative_lead_failure_region(&all, &p, &big(5), &big(50)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn disjoint_rows_first_block() {
        let p1 = IntPolynomial::from_i64(&[0, 1]).unwrap();
        let p2 = IntPolynomial::from_i64(&[0, 2]).unwrap();
        let result =
            two_polynomial_disjoint_rows(&p1, &p2, 1, &SearchBudget::default()).unwrap();
        let Claim::ShiftedRowsDisjoint { rows } = &result.claims[0] else {
            panic!("wrong claim kind");
        };
        // First admissible row: n = 2, a = 1 gives [5, 6] vs [9, 10].
        assert_eq!(rows[0], RowBlock { n: big(2), start: big(1), len: 1 });

        assert!(matches!(
            two_polynomial_disjoint_rows(&p1, &p1, 1, &SearchBudget::default()),
            Err(Error::Precondition(_))
        ));
    }
}
