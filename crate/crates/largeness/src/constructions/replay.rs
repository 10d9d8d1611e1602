//! Replays the claims of a [`ConstructionResult`] from scratch.
//!
//! Replay never trusts the construction: fibers are rebuilt from the stored
//! dual set and polynomials, closures and difference sets are recomputed
//! from the stored generators, and every point is checked through the exact
//! membership machinery.

use crate::constructions::{delta_free_solution_count, gap_divergence_evidence, n_sum_free_check};
use crate::constructions::{Claim, ConstructionResult, DivergenceVerdict};
use crate::error::{Error, Result};
use crate::families::{
    block_witness_2d, delta_of_2d, fs_closure_2d, SearchBudget, Vector2, Verdict, WitnessData,
};
use crate::fiber::{PlaneSet, Rect};
use crate::sets::SetDescriptor;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimVerdict {
    Verified,
    Violated,
    Inconclusive,
}

/// Outcome of replaying one claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub label: String,
    pub verdict: ClaimVerdict,
    pub detail: String,
}

impl ClaimOutcome {
    fn new(label: String, verdict: ClaimVerdict, detail: impl Into<String>) -> Self {
        ClaimOutcome {
            label,
            verdict,
            detail: detail.into(),
        }
    }
}

struct ReplayContext<'a> {
    result: &'a ConstructionResult,
    fiber: Option<PlaneSet>,
    budget: SearchBudget,
}

impl<'a> ReplayContext<'a> {
    fn fiber(&mut self) -> Result<&PlaneSet> {
        if self.fiber.is_none() {
            let a = self
                .result
                .a
                .as_ref()
                .ok_or_else(|| Error::domain("claim needs the dual set `a`, which is absent"))?;
            self.fiber = Some(PlaneSet::fiber(
                a.clone(),
                self.result.polynomials.clone(),
                self.result.plane_universe,
            )?);
        }
        Ok(self.fiber.as_ref().expect("just built"))
    }

    fn s_set(&self) -> Result<&SetDescriptor> {
        self.result
            .s
            .as_ref()
            .ok_or_else(|| Error::domain("claim needs the constructed set `s`, which is absent"))
    }
}

/// Replays every claim in order and reports one outcome per claim.
pub fn replay_claims(
    result: &ConstructionResult,
    budget: &SearchBudget,
) -> Result<Vec<ClaimOutcome>> {
    let mut ctx = ReplayContext {
        result,
        fiber: None,
        budget: *budget,
    };
    result
        .claims
        .iter()
        .enumerate()
        .map(|(i, claim)| {
            let label = format!("C{} {}", i + 1, claim.kind());
            replay_one(&mut ctx, claim, label)
        })
        .collect()
}

fn replay_one(ctx: &mut ReplayContext, claim: &Claim, label: String) -> Result<ClaimOutcome> {
    let budget = ctx.budget;
    match claim {
        Claim::FsExclusion { generators } => {
            let closure = fs_closure_2d(generators)?;
            let fiber = ctx.fiber()?;
            for point in &closure {
                if fiber.member(point)? {
                    return Ok(ClaimOutcome::new(
                        label,
                        ClaimVerdict::Violated,
                        format!("closure point {point} lies in the fiber"),
                    ));
                }
            }
            Ok(ClaimOutcome::new(
                label,
                ClaimVerdict::Verified,
                format!("{} closure points excluded from the fiber", closure.len()),
            ))
        }
        Claim::DeltaExclusion { generators } => {
            let deltas = delta_of_2d(generators)?;
            let fiber = ctx.fiber()?;
            let mut checked = 0usize;
            // Check every ordered pair, not just the deduplicated values.
            for j in 1..generators.len() {
                for i in 0..j {
                    let point = generators[j].sub(&generators[i]);
                    checked += 1;
                    if fiber.member(&point)? {
                        return Ok(ClaimOutcome::new(
                            label,
                            ClaimVerdict::Violated,
                            format!("difference point {point} lies in the fiber"),
                        ));
                    }
                }
            }
            Ok(ClaimOutcome::new(
                label,
                ClaimVerdict::Verified,
                format!(
                    "{checked} difference points ({} distinct) excluded from the fiber",
                    deltas.len()
                ),
            ))
        }
        Claim::GapDivergence { start, doublings } => {
            let s = ctx.s_set()?;
            let report = gap_divergence_evidence(s, start, *doublings)?;
            let flagged = report
                .windows
                .iter()
                .filter(|w| w.min_gap.is_none())
                .count();
            let outcome = match report.verdict {
                DivergenceVerdict::Increasing => ClaimOutcome::new(
                    label,
                    ClaimVerdict::Verified,
                    format!(
                        "per-window minimum gaps strictly increase over {} windows ({flagged} flagged)",
                        report.windows.len()
                    ),
                ),
                DivergenceVerdict::NotIncreasing => ClaimOutcome::new(
                    label,
                    ClaimVerdict::Violated,
                    "per-window minimum gaps do not strictly increase",
                ),
                DivergenceVerdict::Insufficient => ClaimOutcome::new(
                    label,
                    ClaimVerdict::Inconclusive,
                    "no dyadic window held two members",
                ),
            };
            Ok(outcome)
        }
        Claim::SumFree {
            prefix_len,
            order,
            include_doubles,
        } => {
            let s = ctx.s_set()?;
            let backed = s
                .backed()
                .ok_or_else(|| Error::domain("sum-free claim needs a construction-backed set"))?;
            let (prefix, _) = backed.first_elements(*prefix_len as usize)?;
            let report = n_sum_free_check(&prefix, *order, s, &budget)?;
            if let Some(WitnessData::SumViolation { total, .. }) = &report.witness {
                return Ok(ClaimOutcome::new(
                    label,
                    ClaimVerdict::Violated,
                    format!("sum {total} of distinct elements lies in the set"),
                ));
            }
            let mut doubles_checked = 0usize;
            if *include_doubles && *order == 2 {
                for x in &prefix {
                    doubles_checked += 1;
                    let double = x + x;
                    if s.member_lenient(&double)? {
                        return Ok(ClaimOutcome::new(
                            label,
                            ClaimVerdict::Violated,
                            format!("doubled element {x} + {x} = {double} lies in the set"),
                        ));
                    }
                }
            }
            Ok(ClaimOutcome::new(
                label,
                ClaimVerdict::Verified,
                format!(
                    "all order-{order} sums of {} elements avoid the set ({doubles_checked} doubles included)",
                    prefix.len()
                ),
            ))
        }
        Claim::BlockInFiber { rect } => {
            let size = square_side(rect)?;
            let fiber = ctx.fiber()?;
            let report = block_witness_2d(fiber, size, rect, &budget)?;
            let expected = Vector2::new(rect.m_lo().clone(), rect.n_lo().clone());
            let outcome = match (report.verdict, report.witness) {
                (Verdict::WitnessFound, Some(WitnessData::Corner { corner }))
                    if corner == expected =>
                {
                    ClaimOutcome::new(
                        label,
                        ClaimVerdict::Verified,
                        format!("all {}x{size} block points lie in the fiber", size),
                    )
                }
                (Verdict::Inconclusive, _) => {
                    ClaimOutcome::new(label, ClaimVerdict::Inconclusive, "budget exhausted")
                }
                _ => ClaimOutcome::new(
                    label,
                    ClaimVerdict::Violated,
                    format!("block {rect} is not fully inside the fiber"),
                ),
            };
            Ok(outcome)
        }
        Claim::BlocksContained { rects } => {
            let plane = PlaneSet::blocks(ctx.result.plane_universe, rects.clone())?;
            for rect in rects {
                let size = square_side(rect)?;
                let report = block_witness_2d(&plane, size, rect, &budget)?;
                let expected = Vector2::new(rect.m_lo().clone(), rect.n_lo().clone());
                let ok = matches!(
                    (report.verdict, report.witness),
                    (Verdict::WitnessFound, Some(WitnessData::Corner { corner })) if corner == expected
                );
                if !ok {
                    return Ok(ClaimOutcome::new(
                        label,
                        ClaimVerdict::Violated,
                        format!("block search missed the {size}x{size} block at {rect}"),
                    ));
                }
            }
            Ok(ClaimOutcome::new(
                label,
                ClaimVerdict::Verified,
                format!("{} blocks located by the 2D block search", rects.len()),
            ))
        }
        Claim::PlaneDisjointFromFiber { rects } => {
            let fiber = ctx.fiber()?;
            let mut checked = 0u64;
            for rect in rects {
                let mut m = rect.m_lo().clone();
                while m <= *rect.m_hi() {
                    let mut n = rect.n_lo().clone();
                    while n <= *rect.n_hi() {
                        checked += 1;
                        if checked > budget.max_nodes {
                            return Ok(ClaimOutcome::new(
                                label,
                                ClaimVerdict::Inconclusive,
                                "budget exhausted",
                            ));
                        }
                        let point = Vector2::new(m.clone(), n.clone());
                        if fiber.member(&point)? {
                            return Ok(ClaimOutcome::new(
                                label,
                                ClaimVerdict::Violated,
                                format!("region point {point} lies in the fiber"),
                            ));
                        }
                        n += 1;
                    }
                    m += 1;
                }
            }
            Ok(ClaimOutcome::new(
                label,
                ClaimVerdict::Verified,
                format!("{checked} region points excluded from the fiber"),
            ))
        }
        Claim::SolutionCountStable { difference, bound } => {
            let p = ctx
                .result
                .polynomials
                .first()
                .ok_or_else(|| Error::domain("solution-count claim needs a polynomial"))?;
            let sc = delta_free_solution_count(p, difference, *bound)?;
            let outcome = if sc.stabilized {
                ClaimOutcome::new(
                    label,
                    ClaimVerdict::Verified,
                    format!(
                        "{} solutions of p(x) - p(y) = {difference} at bounds {} and {}",
                        sc.count,
                        bound / 2,
                        bound
                    ),
                )
            } else {
                ClaimOutcome::new(
                    label,
                    ClaimVerdict::Inconclusive,
                    format!(
                        "count grew from {} to {} between bounds {} and {}",
                        sc.half_count,
                        sc.count,
                        bound / 2,
                        bound
                    ),
                )
            };
            Ok(outcome)
        }
        Claim::SliceGapBound { rect, max_gap } => {
            let a = ctx
                .result
                .a
                .as_ref()
                .ok_or_else(|| Error::domain("slice-gap claim needs the dual set `a`"))?;
            let p = ctx
                .result
                .polynomials
                .first()
                .ok_or_else(|| Error::domain("slice-gap claim needs a polynomial"))?;
            let report = super::syndetic_preservation_check(a, p, rect)?;
            let outcome = if report.inconclusive_slices > 0 {
                ClaimOutcome::new(
                    label,
                    ClaimVerdict::Inconclusive,
                    format!("{} vacuous slices", report.inconclusive_slices),
                )
            } else {
                match report.max_slice_gap {
                    Some(observed) if observed <= *max_gap => ClaimOutcome::new(
                        label,
                        ClaimVerdict::Verified,
                        format!(
                            "max slice gap {observed} within the claimed bound {max_gap} over {} slices",
                            report.slices.len()
                        ),
                    ),
                    Some(observed) => ClaimOutcome::new(
                        label,
                        ClaimVerdict::Violated,
                        format!("slice gap {observed} exceeds the claimed bound {max_gap}"),
                    ),
                    None => ClaimOutcome::new(
                        label,
                        ClaimVerdict::Inconclusive,
                        "no slice had two members",
                    ),
                }
            };
            Ok(outcome)
        }
        Claim::ShiftedRowsDisjoint { rows } => {
            let [p1, p2] = ctx.result.polynomials.as_slice() else {
                return Err(Error::domain(
                    "shifted-rows claim needs exactly two polynomials",
                ));
            };
            let mut first: Vec<BigInt> = Vec::new();
            let mut second: Vec<BigInt> = Vec::new();
            for row in rows {
                let s1 = p1.eval(&row.n);
                let s2 = p2.eval(&row.n);
                for offset in 0..=row.len {
                    first.push(&s1 + &row.start + offset);
                    second.push(&s2 + &row.start + offset);
                }
            }
            first.sort();
            second.sort();
            for v in &first {
                if second.binary_search(v).is_ok() {
                    return Ok(ClaimOutcome::new(
                        label,
                        ClaimVerdict::Violated,
                        format!("value {v} appears in both shifted images"),
                    ));
                }
            }
            Ok(ClaimOutcome::new(
                label,
                ClaimVerdict::Verified,
                format!(
                    "shifted images of {} rows are disjoint ({} vs {} values)",
                    rows.len(),
                    first.len(),
                    second.len()
                ),
            ))
        }
    }
}

fn square_side(rect: &Rect) -> Result<u64> {
    let m_span = rect.m_hi() - rect.m_lo() + 1;
    let n_span = rect.n_hi() - rect.n_lo() + 1;
    if m_span != n_span {
        return Err(Error::domain(format!("rectangle {rect} is not square")));
    }
    u64::try_from(&m_span).map_err(|_| Error::bounds(format!("block side {m_span} too large")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        centralstar_counterexample, deltastar_counterexample, ipnstar_counterexample,
        ipstar_counterexample, thick_block_witness_result, BlockRule,
    };
    use crate::poly::IntPolynomial;
    use crate::sets::Universe;

    fn square() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1]).unwrap()
    }

    fn all_verified(outcomes: &[ClaimOutcome]) -> bool {
        outcomes.iter().all(|o| o.verdict == ClaimVerdict::Verified)
    }

    #[test]
    fn ipstar_claims_replay() {
        let result = ipstar_counterexample(&square(), 3).unwrap();
        let outcomes = replay_claims(&result, &SearchBudget::default()).unwrap();
        assert_eq!(outcomes.len(), 2);
        assert!(all_verified(&outcomes), "{outcomes:?}");
    }

    #[test]
    fn ipnstar_claims_replay() {
        let result = ipnstar_counterexample(&square(), 3).unwrap();
        let outcomes = replay_claims(&result, &SearchBudget::default()).unwrap();
        assert!(all_verified(&outcomes), "{outcomes:?}");
    }

    #[test]
    fn deltastar_claims_replay() {
        let result = deltastar_counterexample(&square(), 4, Universe::Integers).unwrap();
        let outcomes = replay_claims(&result, &SearchBudget::default()).unwrap();
        assert!(all_verified(&outcomes), "{outcomes:?}");
    }

    #[test]
    fn centralstar_claims_replay() {
        let result =
            centralstar_counterexample(&square(), 3, &SearchBudget::default()).unwrap();
        let outcomes = replay_claims(&result, &SearchBudget::default()).unwrap();
        assert_eq!(outcomes.len(), 3);
        assert!(all_verified(&outcomes), "{outcomes:?}");
    }

    #[test]
    fn thick_claims_replay() {
        let rule = BlockRule::new(2).unwrap();
        let result =
            thick_block_witness_result(&rule, &[square()], 3, &SearchBudget::default()).unwrap();
        let outcomes = replay_claims(&result, &SearchBudget::default()).unwrap();
        assert!(all_verified(&outcomes), "{outcomes:?}");
    }

    #[test]
    fn tampered_result_is_caught() {
        let mut result = ipstar_counterexample(&square(), 3).unwrap();
        // Claim a generator that is not excluded: (1, 2) has 1 + p(2) = 5,
        // which stays in the complement.
        if let Claim::FsExclusion { generators } = &mut result.claims[1] {
            generators[0] = crate::families::Vector2::from_i64(1, 2);
        }
        let outcomes = replay_claims(&result, &SearchBudget::default()).unwrap();
        assert_eq!(outcomes[1].verdict, ClaimVerdict::Violated);
    }

    #[test]
    fn construction_json_round_trips_and_is_deterministic() {
        let a = ipstar_counterexample(&square(), 3).unwrap();
        let b = ipstar_counterexample(&square(), 3).unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        let parsed: ConstructionResult =
            serde_json::from_str(&a.to_canonical_json()).unwrap();
        assert_eq!(parsed, a);
        assert_eq!(parsed.to_canonical_json(), a.to_canonical_json());
    }
}
