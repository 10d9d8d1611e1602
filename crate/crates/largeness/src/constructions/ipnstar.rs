//! The IPₙ* obstruction: a sum-free value set over doubly exponential
//! generators. The base exponent β is certified exactly: for every index α
//! in the materialized range, `p(α) > 0`, `p'(α) > 0`, and
//! `p(2^(2^α) + 2) > p(2^(2^α)) + p(2^(2^1) + … + 2^(2^(α-1)))`.
//!
//! The certificate is finite by design — it covers exactly the indices the
//! experiment materializes — and its scope is recorded in the result
//! parameters.

use crate::constructions::{
    bounded_enumeration, diagonal_point, require_superlinear, Claim, ConstructionResult,
    Generators,
};
use crate::error::{Error, Result};
use crate::families::{SearchBudget, Verdict, WitnessData, WitnessReport};
use crate::fiber::PlaneUniverse;
use crate::poly::IntPolynomial;
use crate::sets::{ConstructionSetSpec, SetDescriptor, Universe};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One verified instance of the base-exponent inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCheck {
    pub alpha: u32,
    /// `p(2^(2^alpha) + 2)`.
    pub lhs: BigInt,
    /// `p(2^(2^alpha)) + p(2^(2^1) + … + 2^(2^(alpha-1)))`.
    pub rhs: BigInt,
}

/// A certified base exponent: every check in `checks` passed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCertificate {
    pub beta: u32,
    pub checks: Vec<AlphaCheck>,
}

impl BetaCertificate {
    /// The inclusive index range the certificate covers.
    pub fn alpha_range(&self) -> (u32, u32) {
        (self.beta + 1, self.beta + self.checks.len() as u32)
    }
}

/// Verifies the base-exponent conditions for all `alpha` in
/// `(beta, beta + index_cap]`. Returns the certificate, or `None` when some
/// check fails.
pub fn certify_beta(
    p: &IntPolynomial,
    beta: u32,
    index_cap: u32,
) -> Result<Option<BetaCertificate>> {
    if beta == 0 || index_cap == 0 {
        return Err(Error::precondition("beta and index cap must be at least 1"));
    }
    let derivative = p.derivative();
    let mut checks = Vec::new();
    // Running sum 2^(2^1) + ... + 2^(2^sum_upto).
    let mut tail_sum = BigInt::zero();
    let mut sum_upto = 0u32;
    for alpha in beta + 1..=beta + index_cap {
        while sum_upto + 1 < alpha {
            sum_upto += 1;
            tail_sum += tower(sum_upto)?;
        }
        let alpha_big = BigInt::from(alpha);
        if !p.eval(&alpha_big).is_positive() || !derivative.eval(&alpha_big).is_positive() {
            return Ok(None);
        }
        let base = tower(alpha)?;
        let lhs = p.eval(&(&base + 2));
        let rhs = p.eval(&base) + p.eval(&tail_sum);
        if lhs <= rhs {
            return Ok(None);
        }
        checks.push(AlphaCheck { alpha, lhs, rhs });
    }
    Ok(Some(BetaCertificate { beta, checks }))
}

/// `2^(2^e)`, guarded against absurd exponents.
fn tower(e: u32) -> Result<BigInt> {
    if e > 20 {
        return Err(Error::bounds(format!("tower exponent 2^(2^{e}) too large")));
    }
    Ok(BigInt::one() << (1u64 << e))
}

/// Smallest `beta >= 1` whose certificate holds for `index_cap` indices.
pub fn find_beta(p: &IntPolynomial, index_cap: u32) -> Result<BetaCertificate> {
    let ceiling = 20u32.saturating_sub(index_cap);
    for beta in 1..=ceiling.max(1) {
        if let Some(cert) = certify_beta(p, beta, index_cap)? {
            return Ok(cert);
        }
    }
    Err(Error::bounds(format!(
        "no base exponent found below {ceiling}"
    )))
}

/// Exhaustively checks whether any sum of `order` distinct prefix elements
/// lands back in the membership set. `Exhausted` means the sum-freeness
/// hypothesis holds on the prefix.
pub fn n_sum_free_check(
    prefix: &[BigInt],
    order: u32,
    membership: &SetDescriptor,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    if order < 2 {
        return Err(Error::precondition("sum order must be at least 2"));
    }
    if prefix.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("prefix must be strictly increasing"));
    }
    let order = order as usize;
    let mut bounds = BTreeMap::new();
    bounds.insert("order".to_string(), order.to_string());
    bounds.insert("prefix_len".to_string(), prefix.len().to_string());

    if prefix.len() >= order {
        let combos = binomial(prefix.len() as u64, order as u64);
        if combos > budget.max_nodes {
            return Err(Error::bounds(format!(
                "{combos} sums exceed the {} node budget",
                budget.max_nodes
            )));
        }
        // Lexicographic combination scan.
        let mut indices: Vec<usize> = (0..order).collect();
        loop {
            let total: BigInt = indices.iter().map(|&i| &prefix[i]).sum();
            if membership.member_lenient(&total)? {
                let witness = WitnessData::SumViolation {
                    indices: indices.clone(),
                    summands: indices.iter().map(|&i| prefix[i].clone()).collect(),
                    total,
                };
                return Ok(WitnessReport {
                    kind: "n-sum-free".to_string(),
                    verdict: Verdict::WitnessFound,
                    witness: Some(witness),
                    bounds,
                });
            }
            // Advance to the next combination.
            let mut pos = order;
            loop {
                if pos == 0 {
                    return Ok(WitnessReport {
                        kind: "n-sum-free".to_string(),
                        verdict: Verdict::Exhausted,
                        witness: None,
                        bounds,
                    });
                }
                pos -= 1;
                if indices[pos] != prefix.len() - order + pos {
                    break;
                }
            }
            indices[pos] += 1;
            for i in pos + 1..order {
                indices[i] = indices[i - 1] + 1;
            }
        }
    }
    Ok(WitnessReport {
        kind: "n-sum-free".to_string(),
        verdict: Verdict::Exhausted,
        witness: None,
        bounds,
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Builds the IPₙ* obstruction for `p`: the value set over the generators
/// `2^(2^(beta+i))`, `1 <= i <= index_cap`, with `beta` certified minimal.
pub fn ipnstar_counterexample(p: &IntPolynomial, index_cap: u32) -> Result<ConstructionResult> {
    require_superlinear(p)?;
    if index_cap == 0 || index_cap > 8 {
        return Err(Error::bounds(format!("index cap {index_cap} outside 1..=8")));
    }
    let cert = find_beta(p, index_cap)?;
    let spec = ConstructionSetSpec::IpnStarSums {
        poly: p.clone(),
        beta: cert.beta,
        index_cap,
    };
    let s = SetDescriptor::construction(spec)?;
    let a = SetDescriptor::complement_of(s.clone());

    let generators: Vec<_> = (1..=index_cap)
        .map(|i| Ok(diagonal_point(&tower(cert.beta + i)?)))
        .collect::<Result<_>>()?;

    // The prefix covered by the sum-freeness claim: every materialized
    // element (at most 2^index_cap - 1 of them).
    let prefix_len = (1u32 << index_cap) - 1;

    let mut result = ConstructionResult::new(
        "ipn-star",
        Universe::Naturals,
        PlaneUniverse::NaturalsSquared,
        vec![p.clone()],
    );
    result.param("index_cap", index_cap);
    result.param("beta", cert.beta);
    let (alpha_lo, alpha_hi) = cert.alpha_range();
    result.param(
        "beta_certificate_alphas",
        format!("{alpha_lo}..={alpha_hi}"),
    );
    result.set_enumeration = bounded_enumeration(&s, 64)?;
    result.s = Some(s);
    result.a = Some(a);
    result.generators = Generators::Points {
        points: generators.clone(),
    };
    result.claims = vec![
        Claim::SumFree {
            prefix_len,
            order: 2,
            include_doubles: true,
        },
        Claim::FsExclusion { generators },
    ];
    Ok(result)
}
