//! The Δ* obstruction: the diagonal generators `(i, i)` have difference set
//! `{(d, d) : 1 <= d < count}`, and the value set `S = { p(d) + d }` removes
//! exactly those points from the fiber of its complement. The supporting
//! evidence — `p(x) - p(y) = d` has only finitely many solutions for a fixed
//! nonzero `d` once `deg p >= 2` — is checked by exhaustive counting with a
//! stabilization flag.

use crate::constructions::{
    bounded_enumeration, diagonal_point, require_superlinear, Claim, ConstructionResult,
    Generators,
};
use crate::error::{Error, Result};
use crate::fiber::PlaneUniverse;
use crate::poly::IntPolynomial;
use crate::sets::{ConstructionSetSpec, SetDescriptor, Universe};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

/// Exhaustive solution count of `p(x) - p(y) = difference` over a symmetric
/// box, with the count at half the bound for stabilization evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCount {
    pub difference: BigInt,
    pub bound: u64,
    pub count: u64,
    pub half_count: u64,
    /// The count did not change between `bound / 2` and `bound`.
    pub stabilized: bool,
}

/// Counts integer pairs `(x, y)` with `|x|, |y| <= bound` and
/// `p(x) - p(y) = difference`.
pub fn delta_free_solution_count(
    p: &IntPolynomial,
    difference: &BigInt,
    bound: u64,
) -> Result<SolutionCount> {
    if p.degree() < 2 {
        return Err(Error::precondition(
            "solution counting requires degree at least 2",
        ));
    }
    if difference.is_zero() {
        return Err(Error::precondition(
            "the difference must be a genuine nonzero value",
        ));
    }
    if bound == 0 || bound > 1_000_000 {
        return Err(Error::bounds(format!("bound {bound} outside 1..=1000000")));
    }
    let count = count_in_box(p, difference, bound);
    let half_count = count_in_box(p, difference, bound / 2);
    Ok(SolutionCount {
        difference: difference.clone(),
        bound,
        count,
        half_count,
        stabilized: count == half_count,
    })
}

fn count_in_box(p: &IntPolynomial, difference: &BigInt, bound: u64) -> u64 {
    let bound = bound as i64;
    let mut values: HashMap<BigInt, u64> = HashMap::new();
    let mut evals = Vec::with_capacity((2 * bound + 1) as usize);
    for x in -bound..=bound {
        let v = p.eval(&BigInt::from(x));
        *values.entry(v.clone()).or_default() += 1;
        evals.push(v);
    }
    let mut count = 0u64;
    for v in &evals {
        // x with p(x) = p(y) + difference pairs with this y.
        if let Some(&multiplicity) = values.get(&(v + difference)) {
            count += multiplicity;
        }
    }
    count
}

/// Builds the Δ* obstruction for `p` with `count` diagonal generators.
/// Claims default to the integers universe; the naturals variant simply
/// drops non-positive values from `S`.
pub fn deltastar_counterexample(
    p: &IntPolynomial,
    count: u32,
    universe: Universe,
) -> Result<ConstructionResult> {
    require_superlinear(p)?;
    if count < 2 {
        return Err(Error::precondition(
            "at least two generators are needed to form a difference",
        ));
    }
    let spec = ConstructionSetSpec::DeltaStarValues {
        poly: p.clone(),
        count,
        universe,
    };
    let s = SetDescriptor::construction(spec)?;
    let a = SetDescriptor::complement_of(s.clone());
    let generators: Vec<_> = (1..=count)
        .map(|i| diagonal_point(&BigInt::from(i)))
        .collect();

    let plane_universe = match universe {
        Universe::Naturals => PlaneUniverse::NaturalsSquared,
        Universe::Integers => PlaneUniverse::IntegersSquared,
    };
    let mut result =
        ConstructionResult::new("delta-star", universe, plane_universe, vec![p.clone()]);
    result.param("count", count);
    result.set_enumeration = bounded_enumeration(&s, 64)?;

    let mut claims = vec![Claim::DeltaExclusion {
        generators: generators.clone(),
    }];
    // Stabilization evidence at the first few consecutive value differences.
    if let Some(enumeration) = &result.set_enumeration {
        let diffs: Vec<BigInt> = enumeration
            .elements
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .filter(|d| !d.is_zero())
            .take(3)
            .collect();
        for difference in diffs {
            result.param(
                &format!("solution_count_difference_{difference}"),
                "bound 1000",
            );
            claims.push(Claim::SolutionCountStable {
                difference,
                bound: 1000,
            });
        }
    }

    result.s = Some(s);
    result.a = Some(a);
    result.generators = Generators::Points { points: generators };
    result.claims = claims;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Window1D;

    fn square() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1]).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn value_set_examples() {
        let result = deltastar_counterexample(&square(), 4, Universe::Integers).unwrap();
        let s = result.s.as_ref().unwrap();
        assert_eq!(
            s.enumerate(&Window1D::from_i64(-100, 100).unwrap()).unwrap(),
            vec![big(2), big(6), big(12)]
        );

        let result = deltastar_counterexample(&square(), 2, Universe::Integers).unwrap();
        assert_eq!(
            result.set_enumeration.as_ref().unwrap().elements,
            vec![big(2)]
        );

        let cube = IntPolynomial::from_i64(&[0, 0, 1]).unwrap();
        let result = deltastar_counterexample(&cube, 3, Universe::Integers).unwrap();
        assert_eq!(
            result.set_enumeration.as_ref().unwrap().elements,
            vec![big(2), big(10)]
        );
    }

    #[test]
    fn solution_count_examples() {
        let sc = delta_free_solution_count(&square(), &big(16), 100).unwrap();
        // x^2 - y^2 = 16: (±5, ±3) and (±4, 0).
        assert_eq!(sc.count, 6);
        assert!(sc.stabilized);

        let sc = delta_free_solution_count(&square(), &big(2), 100).unwrap();
        assert_eq!(sc.count, 0);
        assert!(sc.stabilized);

        assert!(matches!(
            delta_free_solution_count(&square(), &big(0), 100),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn solution_count_brute_force_agreement() {
        // Independent quadratic oracle over a small box.
        let p = square();
        for d in [1i64, 2, 16, 40, -9] {
            let d = big(d);
            let bound = 60i64;
            let mut expected = 0u64;
            for x in -bound..=bound {
                for y in -bound..=bound {
                    if p.eval(&big(x)) - p.eval(&big(y)) == d {
                        expected += 1;
                    }
                }
            }
            let sc = delta_free_solution_count(&p, &d, bound as u64).unwrap();
            assert_eq!(sc.count, expected, "difference {d}");
        }
    }

    #[test]
    fn rejects_degree_one() {
        let p = IntPolynomial::from_i64(&[2]).unwrap();
        assert!(deltastar_counterexample(&p, 4, Universe::Integers).is_err());
        assert!(delta_free_solution_count(&p, &big(2), 10).is_err());
    }
}
