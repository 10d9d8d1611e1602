//! Plane sets over ℕ² and ℤ², and the polynomial fiber construction
//! `{(m, n) : m + p_1(n), …, m + p_d(n) ∈ A}`.
//!
//! Over ℕ² the first coordinate is at least 1 while the second may be 0,
//! because the block witnesses of the thick construction use rows `n = 0`.
//! A fiber membership probe whose shifted value `m + p_i(n)` falls at or
//! below 0 over a naturals base set counts as a non-member, never an error.

use crate::error::{Error, Result};
use crate::families::Vector2;
use crate::numjson::parse_bigint;
use crate::poly::IntPolynomial;
use crate::sets::{SetDescriptor, Universe, Window1D, MAX_ENUMERATION};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// The ambient plane of a [`PlaneSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneUniverse {
    /// `m >= 1`, `n >= 0`.
    NaturalsSquared,
    IntegersSquared,
}

impl PlaneUniverse {
    pub fn contains(&self, point: &Vector2) -> bool {
        match self {
            PlaneUniverse::NaturalsSquared => point.m.is_positive() && !point.n.is_negative(),
            PlaneUniverse::IntegersSquared => true,
        }
    }
}

impl fmt::Display for PlaneUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneUniverse::NaturalsSquared => write!(f, "naturals-squared"),
            PlaneUniverse::IntegersSquared => write!(f, "integers-squared"),
        }
    }
}

/// A closed rectangle `[m_lo, m_hi] × [n_lo, n_hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    m_lo: BigInt,
    m_hi: BigInt,
    n_lo: BigInt,
    n_hi: BigInt,
}

impl Rect {
    pub fn new(m_lo: BigInt, m_hi: BigInt, n_lo: BigInt, n_hi: BigInt) -> Result<Self> {
        if m_lo > m_hi || n_lo > n_hi {
            return Err(Error::domain(format!(
                "inverted rectangle [{m_lo}, {m_hi}] x [{n_lo}, {n_hi}]"
            )));
        }
        Ok(Rect {
            m_lo,
            m_hi,
            n_lo,
            n_hi,
        })
    }

    pub fn from_i64(m_lo: i64, m_hi: i64, n_lo: i64, n_hi: i64) -> Result<Self> {
        Self::new(
            BigInt::from(m_lo),
            BigInt::from(m_hi),
            BigInt::from(n_lo),
            BigInt::from(n_hi),
        )
    }

    pub fn m_lo(&self) -> &BigInt {
        &self.m_lo
    }
    pub fn m_hi(&self) -> &BigInt {
        &self.m_hi
    }
    pub fn n_lo(&self) -> &BigInt {
        &self.n_lo
    }
    pub fn n_hi(&self) -> &BigInt {
        &self.n_hi
    }

    pub fn contains(&self, point: &Vector2) -> bool {
        self.m_lo <= point.m && point.m <= self.m_hi && self.n_lo <= point.n && point.n <= self.n_hi
    }

    /// Number of integer points.
    pub fn area(&self) -> BigInt {
        (&self.m_hi - &self.m_lo + 1) * (&self.n_hi - &self.n_lo + 1)
    }

    pub fn validate_for(&self, universe: PlaneUniverse) -> Result<()> {
        if universe == PlaneUniverse::NaturalsSquared
            && (!self.m_lo.is_positive() || self.n_lo.is_negative())
        {
            return Err(Error::domain(format!(
                "rectangle [{}, {}] x [{}, {}] leaves the naturals-squared plane",
                self.m_lo, self.m_hi, self.n_lo, self.n_hi
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] x [{}, {}]",
            self.m_lo, self.m_hi, self.n_lo, self.n_hi
        )
    }
}

impl std::str::FromStr for Rect {
    type Err = Error;

    /// Parses `"m_lo..m_hi,n_lo..n_hi"`, e.g. `"-50..50,-50..50"`.
    fn from_str(s: &str) -> Result<Self> {
        let (m, n) = s.split_once(',').ok_or_else(|| {
            Error::parse(format!("rectangle {s:?} is not of the form m_lo..m_hi,n_lo..n_hi"))
        })?;
        let m: Window1D = m.trim().parse()?;
        let n: Window1D = n.trim().parse()?;
        Rect::new(
            m.lo().clone(),
            m.hi().clone(),
            n.lo().clone(),
            n.hi().clone(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RectJson {
    m_lo: String,
    m_hi: String,
    n_lo: String,
    n_hi: String,
}

impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RectJson {
            m_lo: self.m_lo.to_string(),
            m_hi: self.m_hi.to_string(),
            n_lo: self.n_lo.to_string(),
            n_hi: self.n_hi.to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Rect {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RectJson::deserialize(de)?;
        let parse = |s: &str| parse_bigint(s).map_err(D::Error::custom);
        Rect::new(
            parse(&raw.m_lo)?,
            parse(&raw.m_hi)?,
            parse(&raw.n_lo)?,
            parse(&raw.n_hi)?,
        )
        .map_err(D::Error::custom)
    }
}

/// A subset of the plane with exact membership.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneSet {
    universe: PlaneUniverse,
    repr: PlaneRepr,
}

#[derive(Clone, Debug, PartialEq)]
enum PlaneRepr {
    /// Sorted, deduplicated point list.
    Points(Vec<Vector2>),
    /// Union of rectangles; rectangles nested inside another are dropped.
    Blocks(Vec<Rect>),
    /// `{(m, n) : m + p_i(n) ∈ base for every i}`.
    Fiber {
        base: SetDescriptor,
        polys: Vec<IntPolynomial>,
    },
}

impl PlaneSet {
    pub fn points(universe: PlaneUniverse, mut points: Vec<Vector2>) -> Result<Self> {
        for p in &points {
            if !universe.contains(p) {
                return Err(Error::domain(format!("point {p} outside {universe}")));
            }
        }
        points.sort();
        points.dedup();
        Ok(PlaneSet {
            universe,
            repr: PlaneRepr::Points(points),
        })
    }

    pub fn blocks(universe: PlaneUniverse, rects: Vec<Rect>) -> Result<Self> {
        for r in &rects {
            r.validate_for(universe)?;
        }
        Ok(PlaneSet {
            universe,
            repr: PlaneRepr::Blocks(normalize_blocks(rects)),
        })
    }

    /// The polynomial fiber of `base` under `polys`.
    pub fn fiber(
        base: SetDescriptor,
        polys: Vec<IntPolynomial>,
        universe: PlaneUniverse,
    ) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::precondition("fiber needs at least one polynomial"));
        }
        Ok(PlaneSet {
            universe,
            repr: PlaneRepr::Fiber { base, polys },
        })
    }

    pub fn universe(&self) -> PlaneUniverse {
        self.universe
    }

    /// Exact membership; points outside the plane universe are non-members.
    pub fn member(&self, point: &Vector2) -> Result<bool> {
        if !self.universe.contains(point) {
            return Ok(false);
        }
        match &self.repr {
            PlaneRepr::Points(points) => Ok(points.binary_search(point).is_ok()),
            PlaneRepr::Blocks(rects) => Ok(rects.iter().any(|r| r.contains(point))),
            PlaneRepr::Fiber { base, polys } => {
                for p in polys {
                    let value = &point.m + p.eval(&point.n);
                    if !base.member_lenient(&value)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// For a fiber set, the members `m` of the slice at height `n` within the
    /// `m`-window: exactly `⋂_i (base − p_i(n)) ∩ window`.
    pub fn slice(&self, n: &BigInt, m_window: &Window1D) -> Result<Vec<BigInt>> {
        let PlaneRepr::Fiber { base, polys } = &self.repr else {
            return Err(Error::precondition("slice requires a fiber-backed plane set"));
        };
        if self.universe == PlaneUniverse::NaturalsSquared
            && (n.is_negative() || !m_window.lo().is_positive())
        {
            return Err(Error::domain(format!(
                "slice at n = {n}, window [{}, {}] leaves the naturals-squared plane",
                m_window.lo(),
                m_window.hi()
            )));
        }
        let mut rows: Option<Vec<BigInt>> = None;
        for p in polys {
            let shift = p.eval(n);
            let row = shifted_members(base, &shift, m_window)?;
            rows = Some(match rows {
                None => row,
                Some(acc) => intersect_sorted(&acc, &row),
            });
            if rows.as_ref().is_some_and(Vec::is_empty) {
                break;
            }
        }
        Ok(rows.expect("at least one polynomial"))
    }

    /// Materializes all members inside the rectangle, sorted by `(m, n)`.
    pub fn enumerate(&self, rect: &Rect) -> Result<Vec<Vector2>> {
        rect.validate_for(self.universe)?;
        if rect.area() > BigInt::from(MAX_ENUMERATION) {
            return Err(Error::bounds(format!(
                "rectangle with {} points exceeds the {MAX_ENUMERATION} cap",
                rect.area()
            )));
        }
        let mut out = Vec::new();
        match &self.repr {
            PlaneRepr::Points(points) => {
                out.extend(points.iter().filter(|p| rect.contains(p)).cloned());
            }
            PlaneRepr::Fiber { .. } => {
                let m_window = Window1D::new(rect.m_lo().clone(), rect.m_hi().clone())?;
                let mut n = rect.n_lo().clone();
                while n <= *rect.n_hi() {
                    for m in self.slice(&n, &m_window)? {
                        out.push(Vector2::new(m, n.clone()));
                    }
                    n += 1;
                }
                out.sort();
            }
            PlaneRepr::Blocks(_) => {
                let mut m = rect.m_lo().clone();
                while m <= *rect.m_hi() {
                    let mut n = rect.n_lo().clone();
                    while n <= *rect.n_hi() {
                        let point = Vector2::new(m.clone(), n.clone());
                        if self.member(&point)? {
                            out.push(point);
                        }
                        n += 1;
                    }
                    m += 1;
                }
            }
        }
        Ok(out)
    }
}

/// Drops rectangles fully contained in another; sorts the rest.
fn normalize_blocks(mut rects: Vec<Rect>) -> Vec<Rect> {
    rects.sort_by(|a, b| {
        (a.m_lo(), a.n_lo(), a.m_hi(), a.n_hi()).cmp(&(b.m_lo(), b.n_lo(), b.m_hi(), b.n_hi()))
    });
    rects.dedup();
    let keep: Vec<bool> = rects
        .iter()
        .map(|r| {
            !rects.iter().any(|other| {
                other != r
                    && other.m_lo <= r.m_lo
                    && r.m_hi <= other.m_hi
                    && other.n_lo <= r.n_lo
                    && r.n_hi <= other.n_hi
            })
        })
        .collect();
    rects
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect()
}

/// Members `m` of `window` with `m + shift ∈ base`; values at or below 0 over
/// a naturals base are simply absent.
fn shifted_members(
    base: &SetDescriptor,
    shift: &BigInt,
    window: &Window1D,
) -> Result<Vec<BigInt>> {
    let mut lo = window.lo() + shift;
    let hi = window.hi() + shift;
    if base.universe() == Universe::Naturals {
        if hi.is_negative() || hi.is_zero() {
            return Ok(Vec::new());
        }
        if !lo.is_positive() {
            lo = BigInt::from(1);
        }
    }
    let members = base.enumerate(&Window1D::new(lo, hi)?)?;
    Ok(members.into_iter().map(|v| v - shift).collect())
}

fn intersect_sorted(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Builds the fiber of `base` under `polys` and materializes its points in
/// the window rectangle. The returned plane set stays queryable outside the
/// rectangle.
pub fn poly_fiber(
    base: &SetDescriptor,
    polys: &[IntPolynomial],
    rect: &Rect,
    universe: PlaneUniverse,
) -> Result<(PlaneSet, Vec<Vector2>)> {
    let fiber = PlaneSet::fiber(base.clone(), polys.to_vec(), universe)?;
    let points = fiber.enumerate(rect)?;
    Ok((fiber, points))
}

// ---------------------------------------------------------------------------
// JSON: {"universe": "...", "variant": "points" | "blocks" | "fiber", ...}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PlaneSetJson {
    universe: PlaneUniverse,
    #[serde(flatten)]
    repr: PlaneReprJson,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum PlaneReprJson {
    Points { points: Vec<Vector2> },
    Blocks { rects: Vec<Rect> },
    Fiber {
        base: SetDescriptor,
        polys: Vec<IntPolynomial>,
    },
}

impl Serialize for PlaneSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.repr {
            PlaneRepr::Points(points) => PlaneReprJson::Points {
                points: points.clone(),
            },
            PlaneRepr::Blocks(rects) => PlaneReprJson::Blocks {
                rects: rects.clone(),
            },
            PlaneRepr::Fiber { base, polys } => PlaneReprJson::Fiber {
                base: base.clone(),
                polys: polys.clone(),
            },
        };
        PlaneSetJson {
            universe: self.universe,
            repr,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PlaneSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = PlaneSetJson::deserialize(de)?;
        let built = match raw.repr {
            PlaneReprJson::Points { points } => PlaneSet::points(raw.universe, points),
            PlaneReprJson::Blocks { rects } => PlaneSet::blocks(raw.universe, rects),
            PlaneReprJson::Fiber { base, polys } => PlaneSet::fiber(base, polys, raw.universe),
        };
        built.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::ConstructionSetSpec;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn square() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1]).unwrap()
    }

    fn evens_up_to(hi: i64) -> SetDescriptor {
        SetDescriptor::explicit(
            Universe::Naturals,
            (1..=hi / 2).map(|i| big(2 * i)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn full_base_gives_full_fiber() {
        let all = SetDescriptor::full(Universe::Naturals);
        let rect = Rect::from_i64(1, 5, 0, 3).unwrap();
        let (_, points) =
            poly_fiber(&all, &[square()], &rect, PlaneUniverse::NaturalsSquared).unwrap();
        assert_eq!(points.len(), 20);
    }

    #[test]
    fn parity_fiber_example() {
        // m + n^2 even iff m and n share parity.
        let rect = Rect::from_i64(1, 4, 0, 3).unwrap();
        let (_, points) = poly_fiber(
            &evens_up_to(40),
            &[square()],
            &rect,
            PlaneUniverse::NaturalsSquared,
        )
        .unwrap();
        assert_eq!(points.len(), 8);
        for p in &points {
            assert!(((&p.m + &p.n * &p.n) % 2u32).is_zero());
        }
        let expected: Vec<Vector2> = vec![
            Vector2::from_i64(1, 1),
            Vector2::from_i64(1, 3),
            Vector2::from_i64(2, 0),
            Vector2::from_i64(2, 2),
            Vector2::from_i64(3, 1),
            Vector2::from_i64(3, 3),
            Vector2::from_i64(4, 0),
            Vector2::from_i64(4, 2),
        ];
        assert_eq!(points, expected);
    }

    #[test]
    fn construction_backed_fiber_excludes_diagonal() {
        let s = SetDescriptor::construction(ConstructionSetSpec::IpStarSums {
            poly: square(),
            shift_exponent: 1,
            index_cap: 3,
        })
        .unwrap();
        let a = SetDescriptor::complement_of(s);
        let fiber =
            PlaneSet::fiber(a, vec![square()], PlaneUniverse::NaturalsSquared).unwrap();
        for t in [2i64, 4, 6] {
            assert!(!fiber.member(&Vector2::from_i64(t, t)).unwrap());
        }
        assert!(fiber.member(&Vector2::from_i64(1, 2)).unwrap());
    }

    #[test]
    fn slice_examples() {
        let fiber = PlaneSet::fiber(
            evens_up_to(60),
            vec![square()],
            PlaneUniverse::NaturalsSquared,
        )
        .unwrap();
        // 9 + m even iff m odd.
        assert_eq!(
            fiber
                .slice(&big(3), &Window1D::from_i64(1, 10).unwrap())
                .unwrap(),
            vec![big(1), big(3), big(5), big(7), big(9)]
        );

        let full = PlaneSet::fiber(
            SetDescriptor::full(Universe::Naturals),
            vec![square()],
            PlaneUniverse::NaturalsSquared,
        )
        .unwrap();
        assert_eq!(
            full.slice(&big(2), &Window1D::from_i64(3, 7).unwrap())
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn fiber_values_below_one_are_non_members() {
        let evens = evens_up_to(20);
        let p = IntPolynomial::from_i64(&[0, -1]).unwrap(); // -n^2
        let fiber =
            PlaneSet::fiber(evens, vec![p], PlaneUniverse::NaturalsSquared).unwrap();
        // m - n^2 <= 0 for m = 3, n = 2.
        assert!(!fiber.member(&Vector2::from_i64(3, 2)).unwrap());
        // 6 - 4 = 2 is even.
        assert!(fiber.member(&Vector2::from_i64(6, 2)).unwrap());
    }

    #[test]
    fn multi_polynomial_fiber_is_intersection() {
        let evens = evens_up_to(200);
        let p1 = square();
        let p2 = IntPolynomial::from_i64(&[2]).unwrap(); // 2n
        let rect = Rect::from_i64(1, 10, 0, 5).unwrap();
        let (both, pts_both) = poly_fiber(
            &evens,
            &[p1.clone(), p2.clone()],
            &rect,
            PlaneUniverse::NaturalsSquared,
        )
        .unwrap();
        let (_, pts_p1) =
            poly_fiber(&evens, &[p1], &rect, PlaneUniverse::NaturalsSquared).unwrap();
        for p in &pts_both {
            assert!(pts_p1.contains(p), "{p} escaped the single-poly fiber");
            assert!(both.member(p).unwrap());
        }
    }

    #[test]
    fn blocks_and_points_membership() {
        let blocks = PlaneSet::blocks(
            PlaneUniverse::NaturalsSquared,
            vec![
                Rect::from_i64(2, 4, 2, 4).unwrap(),
                Rect::from_i64(3, 3, 3, 3).unwrap(), // nested, dropped
                Rect::from_i64(10, 11, 0, 1).unwrap(),
            ],
        )
        .unwrap();
        assert!(blocks.member(&Vector2::from_i64(3, 3)).unwrap());
        assert!(blocks.member(&Vector2::from_i64(10, 0)).unwrap());
        assert!(!blocks.member(&Vector2::from_i64(5, 5)).unwrap());
        let listed = blocks.enumerate(&Rect::from_i64(1, 12, 0, 5).unwrap()).unwrap();
        assert_eq!(listed.len(), 9 + 4);

        let json = serde_json::to_string(&blocks).unwrap();
        let back: PlaneSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, blocks);
    }

    #[test]
    fn rejects_bad_rects() {
        assert!(Rect::from_i64(5, 1, 0, 0).is_err());
        let r = Rect::from_i64(0, 3, 0, 3).unwrap();
        assert!(r.validate_for(PlaneUniverse::NaturalsSquared).is_err());
        assert!(r.validate_for(PlaneUniverse::IntegersSquared).is_ok());
    }
}
