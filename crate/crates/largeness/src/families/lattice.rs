//! The implication lattice between largeness families.
//!
//! Nodes are the classical families over a commutative semigroup together
//! with the depth-graded IP families; edges are the known implications:
//!
//! ```text
//! Δ* → IP* → central* → syndetic → piecewise syndetic
//!                     ↘ central ↗
//! PS* → central*,  PS* → thick → central → IP → Δ
//! IP → IP_<ω → IP_n → … → IP_2
//! IP_2* → IP_3* → … → IP_n* → IP_<ω* → IP*
//! ```
//!
//! The depth-graded chains are materialized up to a configurable depth.
//! `family_implies` is reachability in this DAG.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Family {
    Syndetic,
    Thick,
    PiecewiseSyndetic,
    /// PS*, the dual of piecewise syndetic.
    ThicklySyndetic,
    Central,
    CentralStar,
    Ip,
    IpStar,
    Delta,
    DeltaStar,
    /// IP_n for a fixed depth `n >= 2`.
    IpDepth(u32),
    /// IP_n* for a fixed depth `n >= 2`.
    IpDepthStar(u32),
    /// IP_<ω: all finite depths at once.
    IpFinite,
    /// IP_<ω*.
    IpFiniteStar,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Syndetic => write!(f, "syndetic"),
            Family::Thick => write!(f, "thick"),
            Family::PiecewiseSyndetic => write!(f, "piecewise-syndetic"),
            Family::ThicklySyndetic => write!(f, "thickly-syndetic"),
            Family::Central => write!(f, "central"),
            Family::CentralStar => write!(f, "central-star"),
            Family::Ip => write!(f, "ip"),
            Family::IpStar => write!(f, "ip-star"),
            Family::Delta => write!(f, "delta"),
            Family::DeltaStar => write!(f, "delta-star"),
            Family::IpDepth(n) => write!(f, "ip-{n}"),
            Family::IpDepthStar(n) => write!(f, "ip-{n}-star"),
            Family::IpFinite => write!(f, "ip-lt-omega"),
            Family::IpFiniteStar => write!(f, "ip-lt-omega-star"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "syndetic" => Family::Syndetic,
            "thick" => Family::Thick,
            "piecewise-syndetic" | "pws" => Family::PiecewiseSyndetic,
            "thickly-syndetic" | "ps-star" => Family::ThicklySyndetic,
            "central" => Family::Central,
            "central-star" => Family::CentralStar,
            "ip" => Family::Ip,
            "ip-star" => Family::IpStar,
            "delta" => Family::Delta,
            "delta-star" => Family::DeltaStar,
            "ip-lt-omega" | "ip-finite" => Family::IpFinite,
            "ip-lt-omega-star" | "ip-finite-star" => Family::IpFiniteStar,
            other => {
                let parse_depth = |core: &str| -> Option<u32> {
                    let n: u32 = core.parse().ok()?;
                    (n >= 2).then_some(n)
                };
                if let Some(rest) = other.strip_prefix("ip-") {
                    if let Some(core) = rest.strip_suffix("-star") {
                        if let Some(n) = parse_depth(core) {
                            return Ok(Family::IpDepthStar(n));
                        }
                    } else if let Some(n) = parse_depth(rest) {
                        return Ok(Family::IpDepth(n));
                    }
                }
                return Err(Error::parse(format!("unknown family name {other:?}")));
            }
        })
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Family {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The implication DAG, with the IP depth chains materialized up to
/// `max_depth`.
#[derive(Clone, Debug)]
pub struct FamilyLattice {
    max_depth: u32,
    edges: Vec<(Family, Family)>,
    successors: BTreeMap<Family, Vec<Family>>,
}

impl Default for FamilyLattice {
    fn default() -> Self {
        FamilyLattice::with_depth(8)
    }
}

impl FamilyLattice {
    /// Builds the lattice with IP_n / IP_n* nodes for `2 <= n <= max_depth`.
    pub fn with_depth(max_depth: u32) -> Self {
        let max_depth = max_depth.max(2);
        let mut edges: Vec<(Family, Family)> = vec![
            (Family::DeltaStar, Family::IpStar),
            (Family::IpStar, Family::CentralStar),
            (Family::CentralStar, Family::Syndetic),
            (Family::Syndetic, Family::PiecewiseSyndetic),
            (Family::CentralStar, Family::Central),
            (Family::Central, Family::PiecewiseSyndetic),
            (Family::ThicklySyndetic, Family::CentralStar),
            (Family::ThicklySyndetic, Family::Thick),
            (Family::Thick, Family::Central),
            (Family::Central, Family::Ip),
            (Family::Ip, Family::Delta),
        ];
        edges.push((Family::Ip, Family::IpFinite));
        edges.push((Family::IpFinite, Family::IpDepth(max_depth)));
        for n in (3..=max_depth).rev() {
            edges.push((Family::IpDepth(n), Family::IpDepth(n - 1)));
        }
        for n in 2..max_depth {
            edges.push((Family::IpDepthStar(n), Family::IpDepthStar(n + 1)));
        }
        edges.push((Family::IpDepthStar(max_depth), Family::IpFiniteStar));
        edges.push((Family::IpFiniteStar, Family::IpStar));

        let mut successors: BTreeMap<Family, Vec<Family>> = BTreeMap::new();
        for f in Self::node_list(max_depth) {
            successors.entry(f).or_default();
        }
        for (src, dst) in &edges {
            successors.entry(*src).or_default().push(*dst);
        }
        FamilyLattice {
            max_depth,
            edges,
            successors,
        }
    }

    fn node_list(max_depth: u32) -> Vec<Family> {
        let mut nodes = vec![
            Family::Syndetic,
            Family::Thick,
            Family::PiecewiseSyndetic,
            Family::ThicklySyndetic,
            Family::Central,
            Family::CentralStar,
            Family::Ip,
            Family::IpStar,
            Family::Delta,
            Family::DeltaStar,
            Family::IpFinite,
            Family::IpFiniteStar,
        ];
        for n in 2..=max_depth {
            nodes.push(Family::IpDepth(n));
            nodes.push(Family::IpDepthStar(n));
        }
        nodes
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn nodes(&self) -> Vec<Family> {
        self.successors.keys().copied().collect()
    }

    /// The directed edge list, in construction order.
    pub fn edges(&self) -> &[(Family, Family)] {
        &self.edges
    }

    fn check_node(&self, f: Family) -> Result<()> {
        if self.successors.contains_key(&f) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "family {f} is not a node of this lattice (depth {})",
                self.max_depth
            )))
        }
    }

    /// Whether every `from`-large set is `to`-large: reachability in the
    /// implication DAG. Distinct-node reachability only; `implies(f, f)` is
    /// `false`.
    pub fn implies(&self, from: Family, to: Family) -> Result<bool> {
        self.check_node(from)?;
        self.check_node(to)?;
        if from == to {
            return Ok(false);
        }
        let mut seen: BTreeSet<Family> = BTreeSet::new();
        let mut queue: VecDeque<Family> = VecDeque::new();
        queue.push_back(from);
        while let Some(f) = queue.pop_front() {
            for &next in &self.successors[&f] {
                if next == to {
                    return Ok(true);
                }
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(false)
    }
}

/// Reachability in the default-depth lattice.
pub fn family_implies(from: Family, to: Family) -> Result<bool> {
    FamilyLattice::default().implies(from, to)
}
