//! Largeness families: finite-sums and difference closures, bounded witness
//! searches, and the implication lattice between the families.
//!
//! All searches are windowed: an infinitary notion like "contains an IP-set"
//! becomes "contains the finite-sums closure of `k` generators below a
//! bound". Verdicts are therefore per-box: `Exhausted` means none exists in
//! the declared box, never that none exists at all.

mod closure;
mod lattice;
mod witness;

pub use closure::{delta_of, delta_of_2d, fs_closure, fs_closure_2d, MAX_CLOSURE_GENERATORS};
pub use lattice::{family_implies, Family, FamilyLattice};
pub use witness::{
    block_witness_2d, find_delta_witness, find_ip_witness, pws_witness, replay_block_witness,
    replay_delta_witness, replay_ip_witness, replay_pws_witness, replay_thick_run,
    syndetic_max_gap, thick_run, MaxGap, SearchBudget, Verdict, WitnessData, WitnessReport,
};

use crate::numjson::parse_bigint;
use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A point of ℕ² or ℤ², ordered lexicographically by `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector2 {
    pub m: BigInt,
    pub n: BigInt,
}

impl Vector2 {
    pub fn new(m: BigInt, n: BigInt) -> Self {
        Vector2 { m, n }
    }

    pub fn from_i64(m: i64, n: i64) -> Self {
        Vector2::new(BigInt::from(m), BigInt::from(n))
    }

    pub fn add(&self, other: &Vector2) -> Vector2 {
        Vector2::new(&self.m + &other.m, &self.n + &other.n)
    }

    pub fn sub(&self, other: &Vector2) -> Vector2 {
        Vector2::new(&self.m - &other.m, &self.n - &other.n)
    }
}

impl fmt::Display for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

impl Serialize for Vector2 {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        [self.m.to_string(), self.n.to_string()].serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Vector2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let [m, n] = <[String; 2]>::deserialize(de)?;
        Ok(Vector2::new(
            parse_bigint(&m).map_err(D::Error::custom)?,
            parse_bigint(&n).map_err(D::Error::custom)?,
        ))
    }
}
