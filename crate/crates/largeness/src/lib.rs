//! Exact, desk-scale machinery for largeness families over the natural
//! numbers and the integers.
//!
//! The crate has five layers:
//!
//! * [`poly`] — integral polynomials vanishing at 0, with exact
//!   arbitrary-precision evaluation and certified monotonicity thresholds.
//! * [`sets`] — lazily evaluated integer sets ([`SetDescriptor`]) with exact
//!   membership, ordered window enumeration and gap statistics.
//! * [`families`] — finite-sums closures, difference sets, the implication
//!   lattice between largeness families, and bounded witness searches
//!   (IP witnesses, difference witnesses, runs, gap bounds, 2D blocks).
//! * [`fiber`] — the plane set `{(m,n) : m + p_1(n), …, m + p_d(n) ∈ A}`
//!   restricted to rectangles, over ℕ² or ℤ².
//! * [`constructions`] — deterministic generators for the counterexample
//!   constructions (thick block witnesses, syndetic preservation and failure,
//!   IP*/IPₙ*/Δ*/central* obstructions), each emitting machine-checkable
//!   claims that [`constructions::replay_claims`] re-verifies from scratch.
//!
//! Everything is exact: integers are arbitrary precision and all JSON
//! interchange encodes them as decimal strings. Searches are bounded and
//! report either a concrete witness, an exhaustion certificate for the
//! declared box, or an inconclusive verdict when a budget ran out. No
//! operation ever claims an infinitary verdict.

pub mod constructions;
pub mod error;
pub mod families;
pub mod fiber;
pub mod numjson;
pub mod poly;
pub mod sets;

pub use error::{Error, Result};
pub use families::{
    delta_of, delta_of_2d, family_implies, fs_closure, fs_closure_2d, Family, FamilyLattice,
    MaxGap, SearchBudget, Vector2, Verdict, WitnessData, WitnessReport,
};
pub use fiber::{poly_fiber, PlaneSet, PlaneUniverse, Rect};
pub use poly::{IntPolynomial, Polynomial};
pub use sets::{ConstructionSetSpec, GapProfile, SetDescriptor, Universe, Window1D};
