//! Finite-sums closures and difference sets.

use crate::error::{Error, Result};
use crate::families::Vector2;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Largest generator count for the `2^k` subset-sum enumerations.
pub const MAX_CLOSURE_GENERATORS: usize = 24;

/// All sums over nonempty subsets of `generators`, deduplicated and sorted.
///
/// Generators must be positive and there may be at most 24 of them.
pub fn fs_closure(generators: &[BigInt]) -> Result<Vec<BigInt>> {
    if generators.is_empty() {
        return Err(Error::precondition("finite-sums closure of no generators"));
    }
    if generators.len() > MAX_CLOSURE_GENERATORS {
        return Err(Error::bounds(format!(
            "{} generators exceed the 2^{MAX_CLOSURE_GENERATORS} enumeration cap",
            generators.len()
        )));
    }
    if let Some(bad) = generators.iter().find(|g| !g.is_positive()) {
        return Err(Error::domain(format!("generator {bad} is not positive")));
    }
    let mut sums: BTreeSet<BigInt> = BTreeSet::new();
    for g in generators {
        let extended: Vec<BigInt> = sums.iter().map(|s| s + g).collect();
        sums.extend(extended);
        sums.insert(g.clone());
    }
    Ok(sums.into_iter().collect())
}

/// Componentwise finite-sums closure in the plane.
///
/// Generators must be nonzero with nonnegative components (so that e.g.
/// `(1, 0)` and `(0, 1)` are allowed).
pub fn fs_closure_2d(generators: &[Vector2]) -> Result<Vec<Vector2>> {
    if generators.is_empty() {
        return Err(Error::precondition("finite-sums closure of no generators"));
    }
    if generators.len() > MAX_CLOSURE_GENERATORS {
        return Err(Error::bounds(format!(
            "{} generators exceed the 2^{MAX_CLOSURE_GENERATORS} enumeration cap",
            generators.len()
        )));
    }
    for g in generators {
        if g.m.is_negative() || g.n.is_negative() || (g.m.is_zero() && g.n.is_zero()) {
            return Err(Error::domain(format!(
                "generator {g} must be nonzero with nonnegative components"
            )));
        }
    }
    let mut sums: BTreeSet<Vector2> = BTreeSet::new();
    for g in generators {
        let extended: Vec<Vector2> = sums.iter().map(|s| s.add(g)).collect();
        sums.extend(extended);
        sums.insert(g.clone());
    }
    Ok(sums.into_iter().collect())
}

/// All forward differences `x_j - x_i` (`i < j`) of a strictly increasing
/// sequence, deduplicated and sorted.
pub fn delta_of(sequence: &[BigInt]) -> Result<Vec<BigInt>> {
    if sequence.len() < 2 {
        return Err(Error::domain(
            "difference set needs at least two sequence elements",
        ));
    }
    if sequence.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("sequence must be strictly increasing"));
    }
    let mut out = BTreeSet::new();
    for j in 1..sequence.len() {
        for i in 0..j {
            out.insert(&sequence[j] - &sequence[i]);
        }
    }
    Ok(out.into_iter().collect())
}

/// Componentwise forward differences of a plane sequence (pairs `i < j`),
/// deduplicated and sorted.
pub fn delta_of_2d(sequence: &[Vector2]) -> Result<Vec<Vector2>> {
    if sequence.len() < 2 {
        return Err(Error::domain(
            "difference set needs at least two sequence elements",
        ));
    }
    let mut out = BTreeSet::new();
    for j in 1..sequence.len() {
        for i in 0..j {
            out.insert(sequence[j].sub(&sequence[i]));
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigs(ns: &[i64]) -> Vec<BigInt> {
        ns.iter().map(|&n| BigInt::from(n)).collect()
    }

    #[test]
    fn fs_closure_examples() {
        assert_eq!(
            fs_closure(&bigs(&[1, 2, 4])).unwrap(),
            bigs(&[1, 2, 3, 4, 5, 6, 7])
        );
        assert_eq!(fs_closure(&bigs(&[5])).unwrap(), bigs(&[5]));
        assert_eq!(
            fs_closure(&bigs(&[2, 4, 8])).unwrap(),
            bigs(&[2, 4, 6, 8, 10, 12, 14])
        );
    }

    #[test]
    fn fs_closure_rejects_bad_inputs() {
        assert!(fs_closure(&[]).is_err());
        assert!(fs_closure(&bigs(&[0, 3])).is_err());
        assert!(fs_closure(&bigs(&[-1])).is_err());
        let too_many = bigs(&(1..=25).collect::<Vec<i64>>());
        assert!(matches!(fs_closure(&too_many), Err(Error::Bounds(_))));
    }

    #[test]
    fn fs_closure_2d_examples() {
        let diag = |ns: &[i64]| -> Vec<Vector2> {
            ns.iter().map(|&n| Vector2::from_i64(n, n)).collect()
        };
        assert_eq!(
            fs_closure_2d(&diag(&[2, 4])).unwrap(),
            diag(&[2, 4, 6])
        );
        assert_eq!(
            fs_closure_2d(&[Vector2::from_i64(1, 0), Vector2::from_i64(0, 1)]).unwrap(),
            vec![
                Vector2::from_i64(0, 1),
                Vector2::from_i64(1, 0),
                Vector2::from_i64(1, 1)
            ]
        );
        assert_eq!(
            fs_closure_2d(&diag(&[2, 4, 8])).unwrap(),
            diag(&[2, 4, 6, 8, 10, 12, 14])
        );
        assert!(fs_closure_2d(&[Vector2::from_i64(0, 0)]).is_err());
    }

    #[test]
    fn delta_of_examples() {
        assert_eq!(delta_of(&bigs(&[1, 3, 7])).unwrap(), bigs(&[2, 4, 6]));
        assert_eq!(delta_of(&bigs(&[1, 2, 3])).unwrap(), bigs(&[1, 2]));
        assert_eq!(
            delta_of(&bigs(&[1, 4, 9, 16])).unwrap(),
            bigs(&[3, 5, 7, 8, 12, 15])
        );
        assert!(delta_of(&bigs(&[5])).is_err());
        assert!(delta_of(&bigs(&[3, 3])).is_err());
    }
}
