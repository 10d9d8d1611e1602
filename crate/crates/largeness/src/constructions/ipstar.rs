//! The IP* obstruction: a set `S = { p(t) + t : t ∈ FS{2^(iN)} }` whose
//! complement is IP*-like (its gaps diverge), yet the finite-sums closure of
//! the diagonal generators `(2^(iN), 2^(iN))` misses the fiber of the
//! complement entirely.

use crate::constructions::{
    bounded_enumeration, diagonal_point, power_of_two, require_superlinear, Claim,
    ConstructionResult, Generators,
};
use crate::error::{Error, Result};
use crate::fiber::PlaneUniverse;
use crate::poly::IntPolynomial;
use crate::sets::{ConstructionSetSpec, SetDescriptor, Universe, Window1D};
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Evidence that the per-window minimum gaps of a set grow across dyadic
/// windows. This is windowed evidence for gap divergence, never a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapDivergenceReport {
    pub windows: Vec<DyadicWindowEvidence>,
    pub verdict: DivergenceVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicWindowEvidence {
    pub window: Window1D,
    pub member_count: u64,
    /// `None` when the window holds fewer than two members (flagged, not
    /// failed).
    pub min_gap: Option<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivergenceVerdict {
    /// The usable per-window minima strictly increase.
    Increasing,
    NotIncreasing,
    /// No window held two members; nothing can be said.
    Insufficient,
}

/// Computes the minimum gap of `set` over each dyadic window
/// `[start·2^j, start·2^(j+1)]`, `j < doublings`, and reports whether the
/// usable minima strictly increase.
pub fn gap_divergence_evidence(
    set: &SetDescriptor,
    start: &BigInt,
    doublings: u32,
) -> Result<GapDivergenceReport> {
    if !start.is_positive() {
        return Err(Error::precondition("start must be at least 1"));
    }
    if doublings == 0 {
        return Err(Error::precondition("at least one window is required"));
    }
    let mut windows = Vec::new();
    let mut lo = start.clone();
    for _ in 0..doublings {
        let hi = &lo * 2u32;
        let window = Window1D::new(lo.clone(), hi.clone())?;
        let profile = set.gap_profile(&window)?;
        windows.push(DyadicWindowEvidence {
            window,
            member_count: profile.member_count,
            min_gap: profile.min_gap(),
        });
        lo = hi;
    }
    let usable: Vec<&BigInt> = windows.iter().filter_map(|w| w.min_gap.as_ref()).collect();
    let verdict = if usable.is_empty() {
        DivergenceVerdict::Insufficient
    } else if usable.windows(2).all(|w| w[0] < w[1]) {
        DivergenceVerdict::Increasing
    } else {
        DivergenceVerdict::NotIncreasing
    };
    Ok(GapDivergenceReport { windows, verdict })
}

/// Picks deterministic gap-divergence parameters for a construction-backed
/// set: the smallest power-of-two start whose first window holds two
/// members, extended while consecutive windows stay usable, capped at six
/// windows. `None` when no two consecutive usable windows exist.
pub(crate) fn divergence_params(set: &SetDescriptor) -> Result<Option<(BigInt, u32)>> {
    let Some(spec) = set.construction_spec() else {
        return Ok(None);
    };
    let Some(max_element) = spec.max_element()? else {
        return Ok(None);
    };
    let mut start = BigInt::one();
    while start <= max_element {
        let window = Window1D::new(start.clone(), &start * 2u32)?;
        let members = match set.enumerate(&window) {
            Ok(m) => m,
            Err(Error::Bounds(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if members.len() >= 2 {
            break;
        }
        start *= 2u32;
    }
    if start > max_element {
        return Ok(None);
    }
    let mut doublings = 0u32;
    let mut lo = start.clone();
    while doublings < 6 {
        let window = Window1D::new(lo.clone(), &lo * 2u32)?;
        if set.enumerate(&window)?.len() < 2 {
            break;
        }
        doublings += 1;
        lo *= 2u32;
    }
    if doublings < 2 {
        return Ok(None);
    }
    Ok(Some((start, doublings)))
}

/// Builds the IP* obstruction for `p` with generators `(2^(iN), 2^(iN))`,
/// `1 <= i <= index_cap`, where `N` is the certified shift exponent of `p`.
pub fn ipstar_counterexample(p: &IntPolynomial, index_cap: u32) -> Result<ConstructionResult> {
    require_superlinear(p)?;
    if index_cap == 0 || index_cap > 24 {
        return Err(Error::bounds(format!(
            "index cap {index_cap} outside 1..=24"
        )));
    }
    let shift = p.choose_shift_exponent()?;
    let spec = ConstructionSetSpec::IpStarSums {
        poly: p.clone(),
        shift_exponent: shift,
        index_cap,
    };
    let s = SetDescriptor::construction(spec)?;
    let a = SetDescriptor::complement_of(s.clone());

    let generators: Vec<_> = (1..=index_cap)
        .map(|i| diagonal_point(&power_of_two(u64::from(i) * u64::from(shift))))
        .collect();

    let mut result = ConstructionResult::new(
        "ip-star",
        Universe::Naturals,
        PlaneUniverse::NaturalsSquared,
        vec![p.clone()],
    );
    result.param("index_cap", index_cap);
    result.param("shift_exponent", shift);
    result.set_enumeration = bounded_enumeration(&s, 64)?;

    let mut claims = Vec::new();
    match divergence_params(&s)? {
        Some((start, doublings)) => {
            result.param("gap_window_start", &start);
            result.param("gap_window_doublings", doublings);
            claims.push(Claim::GapDivergence { start, doublings });
        }
        None => {
            result.param("gap_window_start", "unavailable");
        }
    }
    claims.push(Claim::FsExclusion {
        generators: generators.clone(),
    });

    result.s = Some(s);
    result.a = Some(a);
    result.generators = Generators::Points { points: generators };
    result.claims = claims;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Vector2;

    fn square() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1]).unwrap()
    }

    #[test]
    fn square_cap_three() {
        let result = ipstar_counterexample(&square(), 3).unwrap();
        assert_eq!(result.parameters["shift_exponent"], "1");
        let Generators::Points { points } = &result.generators else {
            panic!("expected point generators");
        };
        assert_eq!(
            points,
            &[
                Vector2::from_i64(2, 2),
                Vector2::from_i64(4, 4),
                Vector2::from_i64(8, 8)
            ]
        );
        let s = result.s.as_ref().unwrap();
        assert_eq!(
            s.enumerate(&Window1D::from_i64(1, 250).unwrap()).unwrap(),
            [6, 20, 42, 72, 110, 156, 210]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn cubic_shift_four() {
        let p = IntPolynomial::from_i64(&[-300, 0, 1]).unwrap();
        let result = ipstar_counterexample(&p, 2).unwrap();
        assert_eq!(result.parameters["shift_exponent"], "4");
        let Generators::Points { points } = &result.generators else {
            panic!("expected point generators");
        };
        assert_eq!(
            points,
            &[Vector2::from_i64(16, 16), Vector2::from_i64(256, 256)]
        );
    }

    #[test]
    fn rejects_degree_one() {
        let p = IntPolynomial::from_i64(&[1]).unwrap();
        assert!(matches!(
            ipstar_counterexample(&p, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn divergence_examples() {
        // S = { t^2 + t : t even } materialized explicitly.
        let s = SetDescriptor::explicit(
            Universe::Naturals,
            (1..=60).map(|i| BigInt::from(2 * i * (2 * i + 1))).collect(),
        )
        .unwrap();
        let report = gap_divergence_evidence(&s, &BigInt::from(8), 4).unwrap();
        assert_eq!(report.verdict, DivergenceVerdict::Increasing);
        // Three of the four windows are too small to measure.
        assert_eq!(
            report.windows.iter().filter(|w| w.min_gap.is_none()).count(),
            3
        );

        let evens = SetDescriptor::explicit(
            Universe::Naturals,
            (1..=200).map(|i| BigInt::from(2 * i)).collect(),
        )
        .unwrap();
        let report = gap_divergence_evidence(&evens, &BigInt::from(8), 4).unwrap();
        assert_eq!(report.verdict, DivergenceVerdict::NotIncreasing);

        let interval = SetDescriptor::interval_union(
            Universe::Naturals,
            vec![(BigInt::from(1), BigInt::from(500))],
        )
        .unwrap();
        let report = gap_divergence_evidence(&interval, &BigInt::from(8), 4).unwrap();
        assert_eq!(report.verdict, DivergenceVerdict::NotIncreasing);
    }

    #[test]
    fn divergence_rule_for_square_cap_ten() {
        let result = ipstar_counterexample(&square(), 10).unwrap();
        assert_eq!(result.parameters["gap_window_start"], "64");
        assert_eq!(result.parameters["gap_window_doublings"], "6");
    }
}
