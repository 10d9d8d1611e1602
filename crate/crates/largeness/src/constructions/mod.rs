//! Deterministic generators for the counterexample constructions, each
//! returning a [`ConstructionResult`] whose claims can be replayed from
//! scratch by [`replay_claims`].
//!
//! A result freezes everything needed for replay: the polynomials, the
//! generator sequence, the constructed set `S` (construction-backed, exact),
//! its dual `A` (the complement of `S`), all derived parameters, and a list
//! of machine-checkable [`Claim`] records. Identical inputs produce
//! byte-identical JSON.

mod centralstar;
mod deltastar;
mod ipnstar;
mod ipstar;
mod replay;
mod syndetic;
mod thick;

pub use centralstar::centralstar_counterexample;
pub use deltastar::{delta_free_solution_count, deltastar_counterexample, SolutionCount};
pub use ipnstar::{
    certify_beta, find_beta, ipnstar_counterexample, n_sum_free_check, AlphaCheck,
    BetaCertificate,
};
pub use ipstar::{
    gap_divergence_evidence, ipstar_counterexample, DivergenceVerdict, DyadicWindowEvidence,
    GapDivergenceReport,
};
pub use replay::{replay_claims, ClaimOutcome, ClaimVerdict};
pub use syndetic::{
    negative_lead_failure_region, syndetic_preservation_check, syndetic_preservation_result,
    two_polynomial_disjoint_rows, SliceGap, SliceGapReport,
};
pub use thick::{thick_block_witness, thick_block_witness_result, BlockRule, ThickBlockWitness};

use crate::error::{Error, Result};
use crate::families::Vector2;
use crate::fiber::{PlaneUniverse, Rect};
use crate::numjson::{bigint_str, bigint_vec};
use crate::poly::IntPolynomial;
use crate::sets::{SetDescriptor, Universe, Window1D};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One frozen construction together with its replayable claims.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResult {
    /// Construction tag (`thick`, `syndetic-d1`, `ip-star`, `ipn-star`,
    /// `delta-star`, `central-star`, `remark1`, `remark2`).
    pub name: String,
    /// Universe of the 1D sets `s` and `a`.
    pub universe: Universe,
    /// Plane the fiber lives in.
    pub plane_universe: PlaneUniverse,
    pub polynomials: Vec<IntPolynomial>,
    /// All derived parameters, as decimal strings, in sorted key order.
    pub parameters: BTreeMap<String, String>,
    pub generators: Generators,
    /// The constructed obstruction set, when the construction has one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<SetDescriptor>,
    /// The dual set; always the complement of `s` when both are present.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<SetDescriptor>,
    /// A bounded enumeration of the primary constructed set (`s` when
    /// present, otherwise `a`), for human inspection.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set_enumeration: Option<BoundedEnumeration>,
    pub claims: Vec<Claim>,
    pub provenance: Provenance,
}

impl ConstructionResult {
    pub(crate) fn new(
        name: &str,
        universe: Universe,
        plane_universe: PlaneUniverse,
        polynomials: Vec<IntPolynomial>,
    ) -> Self {
        ConstructionResult {
            name: name.to_string(),
            universe,
            plane_universe,
            polynomials,
            parameters: BTreeMap::new(),
            generators: Generators::None,
            s: None,
            a: None,
            set_enumeration: None,
            claims: Vec::new(),
            provenance: Provenance::current(),
        }
    }

    pub(crate) fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    /// Canonical JSON: pretty-printed, sorted keys, trailing newline.
    /// Identical inputs produce byte-identical output.
    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable result");
        out.push('\n');
        out
    }
}

/// The generator sequence of a construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Generators {
    None,
    Elements {
        #[serde(with = "bigint_vec")]
        elements: Vec<BigInt>,
    },
    Points { points: Vec<Vector2> },
}

/// A window together with the exact members inside it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundedEnumeration {
    pub window: Window1D,
    #[serde(with = "bigint_vec")]
    pub elements: Vec<BigInt>,
}

/// Versions only; never timestamps, so output stays reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub artifact: String,
    pub version: String,
}

impl Provenance {
    pub fn current() -> Self {
        Provenance {
            artifact: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// A single row block `[start, start + len] × {n}` of the remark1
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowBlock {
    #[serde(with = "bigint_str")]
    pub n: BigInt,
    #[serde(with = "bigint_str")]
    pub start: BigInt,
    pub len: u64,
}

/// A machine-checkable claim. Each record carries every bound needed to
/// replay it against the other fields of its [`ConstructionResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Claim {
    /// Every point of the finite-sums closure of the 2D generators is
    /// excluded from the fiber of `a`.
    FsExclusion { generators: Vec<Vector2> },
    /// Per-window minimum gaps of `s` over the dyadic windows
    /// `[start·2^j, start·2^(j+1))`, `j < doublings`, strictly increase.
    GapDivergence {
        #[serde(with = "bigint_str")]
        start: BigInt,
        doublings: u32,
    },
    /// No sum of `order` distinct elements of the first `prefix_len`
    /// elements of `s` lands back in `s`; with `include_doubles`, doubled
    /// elements `x + x` are checked too.
    SumFree {
        prefix_len: u32,
        order: u32,
        include_doubles: bool,
    },
    /// Every pairwise forward difference of the 2D generators is excluded
    /// from the fiber of `a`.
    DeltaExclusion { generators: Vec<Vector2> },
    /// Every point of the rectangle lies in the fiber of `a`.
    BlockInFiber { rect: Rect },
    /// Each rectangle is fully contained in the plane set the rectangles
    /// form together (replayed through the 2D block search).
    BlocksContained { rects: Vec<Rect> },
    /// Every point of every rectangle is excluded from the fiber of `a`.
    PlaneDisjointFromFiber { rects: Vec<Rect> },
    /// The solution count of `p(x) - p(y) = difference` over `|x|, |y| <=
    /// bound` equals the count at `bound / 2`.
    SolutionCountStable {
        #[serde(with = "bigint_str")]
        difference: BigInt,
        bound: u64,
    },
    /// Every fiber slice over the rectangle has maximum m-gap `max_gap`,
    /// with no vacuous slices.
    SliceGapBound {
        rect: Rect,
        #[serde(with = "bigint_str")]
        max_gap: BigInt,
    },
    /// The two polynomial shifts of the row blocks produce disjoint element
    /// sets.
    ShiftedRowsDisjoint { rows: Vec<RowBlock> },
}

impl Claim {
    /// Short name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::FsExclusion { .. } => "fs_exclusion",
            Claim::GapDivergence { .. } => "gap_divergence",
            Claim::SumFree { .. } => "sum_free",
            Claim::DeltaExclusion { .. } => "delta_exclusion",
            Claim::BlockInFiber { .. } => "block_in_fiber",
            Claim::BlocksContained { .. } => "blocks_contained",
            Claim::PlaneDisjointFromFiber { .. } => "plane_disjoint_from_fiber",
            Claim::SolutionCountStable { .. } => "solution_count_stable",
            Claim::SliceGapBound { .. } => "slice_gap_bound",
            Claim::ShiftedRowsDisjoint { .. } => "shifted_rows_disjoint",
        }
    }
}

/// Bounded enumeration of a construction-backed set: its first `k` elements.
pub(crate) fn bounded_enumeration(
    set: &SetDescriptor,
    k: usize,
) -> Result<Option<BoundedEnumeration>> {
    let Some(backed) = set.backed() else {
        return Ok(None);
    };
    let (elements, hi) = backed.first_elements(k)?;
    let lo = elements.first().cloned().unwrap_or_else(|| hi.clone());
    let lo = lo.min(hi.clone());
    Ok(Some(BoundedEnumeration {
        window: Window1D::new(lo, hi)?,
        elements,
    }))
}

/// Shared degree/lead preconditions of the counterexample generators: the
/// obstruction phenomena require degree at least 2 and a positive leading
/// coefficient.
pub(crate) fn require_superlinear(p: &IntPolynomial) -> Result<()> {
    if p.degree() < 2 {
        return Err(Error::precondition(
            "counterexample constructions require a polynomial of degree at least 2",
        ));
    }
    if !p.leading_coefficient().is_positive() {
        return Err(Error::precondition(
            "counterexample constructions require a positive leading coefficient",
        ));
    }
    Ok(())
}

pub(crate) fn diagonal_point(value: &BigInt) -> Vector2 {
    Vector2::new(value.clone(), value.clone())
}

pub(crate) fn power_of_two(bits: u64) -> BigInt {
    BigInt::one() << bits
}
