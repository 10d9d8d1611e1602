//! Integral polynomials vanishing at 0, with exact evaluation, formal
//! derivatives, and certified monotonicity thresholds.
//!
//! Every construction in [`crate::constructions`] manipulates a polynomial
//! `p(n) = a_1 n + a_2 n^2 + … + a_l n^l` with integer coefficients and zero
//! constant term. The monotonicity threshold is certified rather than
//! assumed: a root bound on the derivative shows `p` is eventually strictly
//! increasing, and a finite scan pins down the exact integer threshold.

use crate::error::{Error, Result};
use crate::numjson::parse_bigint;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Maximum supported degree, mostly to keep hostile inputs from allocating
/// absurd coefficient vectors.
pub const MAX_DEGREE: usize = 4096;

/// Hard cap on the certification scan of [`IntPolynomial::monotone_threshold`].
const MAX_THRESHOLD_SCAN: u64 = 4_000_000;

/// A polynomial with integer coefficients and zero constant term.
///
/// `coeffs[i]` is the coefficient of `n^(i+1)`; the constant term is
/// identically zero and not stored. The leading coefficient is nonzero and
/// the degree is at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from `[a_1, …, a_l]` (coefficient of `n^i` at
    /// index `i-1`). Trailing zero coefficients are trimmed; the zero
    /// polynomial is rejected.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::precondition(
                "polynomial must have degree at least 1",
            ));
        }
        if coeffs.len() > MAX_DEGREE {
            return Err(Error::bounds(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                coeffs.len()
            )));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `n^k`.
    pub fn monomial(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::precondition("constant term must be zero"));
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs[k - 1] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `n^power` (`power >= 1`).
    pub fn coefficient(&self, power: usize) -> BigInt {
        if power == 0 || power > self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[power - 1].clone()
        }
    }

    pub fn leading_coefficient(&self) -> &BigInt {
        self.coeffs.last().expect("degree >= 1")
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation by Horner's scheme.
    pub fn eval(&self, n: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c;
        }
        acc * n
    }

    /// Formal derivative. The result may have a nonzero constant term, so it
    /// is a general [`Polynomial`].
    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    /// The polynomial `p(n) + n`, used by the value sets of the
    /// counterexample constructions.
    pub fn plus_identity(&self) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += 1;
        // p(n) + n can only vanish identically if p(n) = -n, which has
        // degree 1 and leading coefficient -1; new() re-validates.
        IntPolynomial::new(coeffs).expect("p(n) + n is zero only for p = -n")
    }

    /// Smallest integer `M >= 0` such that `p` is strictly increasing on the
    /// integers of `[M, ∞)`.
    ///
    /// Certified in two steps: a Cauchy root bound `B` on `p'` shows
    /// `p' > 0` on `(B, ∞)` (the leading coefficient of `p'` is positive),
    /// and an exhaustive scan of `[0, B+1]` locates the last violation of
    /// `p(n+1) > p(n)`.
    pub fn monotone_threshold(&self) -> Result<BigInt> {
        if !self.leading_coefficient().is_positive() {
            return Err(Error::precondition(
                "monotone threshold requires a positive leading coefficient",
            ));
        }
        let bound = self.derivative().cauchy_root_bound();
        let scan_hi = u64::try_from(&bound).map_err(|_| {
            Error::bounds(format!(
                "certification scan bound {bound} is too large to scan"
            ))
        })?;
        if scan_hi > MAX_THRESHOLD_SCAN {
            return Err(Error::bounds(format!(
                "certification scan bound {bound} exceeds {MAX_THRESHOLD_SCAN}"
            )));
        }
        // Last n in [0, B] with p(n+1) <= p(n); the threshold is one past it.
        let mut threshold = BigInt::zero();
        let mut prev = BigInt::zero(); // p(0) = 0
        for n in 0..=scan_hi {
            let next = self.eval(&BigInt::from(n + 1));
            if next <= prev {
                threshold = BigInt::from(n + 1);
            }
            prev = next;
        }
        Ok(threshold)
    }

    /// Smallest `N >= 1` with `2^N >= monotone_threshold(p)`.
    pub fn choose_shift_exponent(&self) -> Result<u32> {
        let threshold = self.monotone_threshold()?;
        let mut n = 1u32;
        let mut pow = BigInt::from(2);
        while pow < threshold {
            n += 1;
            pow *= 2;
        }
        Ok(n)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for power in (1..=self.coeffs.len()).rev() {
            let c = &self.coeffs[power - 1];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                1 => write!(f, "n")?,
                _ => write!(f, "n^{power}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly_expr(s)
    }
}

#[derive(Serialize, Deserialize)]
struct IntPolynomialJson {
    coeffs: Vec<String>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        IntPolynomialJson {
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = IntPolynomialJson::deserialize(de)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_bigint(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        IntPolynomial::new(coeffs).map_err(D::Error::custom)
    }
}

/// A general integer polynomial (constant term allowed); the result type of
/// [`IntPolynomial::derivative`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// `coeffs[i]` is the coefficient of `n^i`. Trailing zeros are trimmed;
    /// the zero polynomial is representable (empty coefficient vector).
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c;
        }
        acc
    }

    /// An integer `B >= 0` such that every real root of `self` has absolute
    /// value strictly below `B + 1`; in particular the sign of the leading
    /// coefficient decides the sign on `(B, ∞)`. Constant polynomials have no
    /// roots and get `B = 0`.
    pub fn cauchy_root_bound(&self) -> BigInt {
        if self.coeffs.len() <= 1 {
            return BigInt::zero();
        }
        let lead = self.coeffs.last().expect("nonempty").abs();
        let max_low = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .expect("degree >= 1 has a lower coefficient");
        // |root| < 1 + max|a_i| / |a_l| <= 1 + ceil(max / lead)
        BigInt::one() + max_low.div_ceil(&lead)
    }
}

/// Parses expressions like `n^2`, `n^3-300n`, `2n^2 - n`, `-n^4 + 3n`.
///
/// The grammar is a sum of integer-coefficient monomials in `n`; constant
/// terms are rejected because every polynomial here must vanish at 0.
pub fn parse_poly_expr(input: &str) -> Result<IntPolynomial> {
    let bytes = input.as_bytes();
    let mut pos = 0usize;
    let mut coeffs: Vec<BigInt> = Vec::new();

    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    }

    fn read_digits<'a>(input: &'a str, bytes: &[u8], pos: &mut usize) -> Option<&'a str> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| &input[start..*pos])
    }

    skip_ws(bytes, &mut pos);
    if pos == bytes.len() {
        return Err(Error::parse("empty polynomial expression"));
    }

    let mut sign_negative = false;
    if bytes[pos] == b'+' || bytes[pos] == b'-' {
        sign_negative = bytes[pos] == b'-';
        pos += 1;
    }

    loop {
        skip_ws(bytes, &mut pos);
        // term := digits? '*'? 'n' ('^' digits)?
        let coef_digits = read_digits(input, bytes, &mut pos);
        skip_ws(bytes, &mut pos);
        if coef_digits.is_some() && pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(bytes, &mut pos);
        }
        if pos >= bytes.len() || bytes[pos] != b'n' {
            return Err(Error::parse(if coef_digits.is_some() {
                "constant terms are not allowed: every polynomial must vanish at 0".to_string()
            } else {
                format!("expected a term of the form [coef]n[^power] at byte {pos}")
            }));
        }
        pos += 1;
        let mut power = 1usize;
        skip_ws(bytes, &mut pos);
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            skip_ws(bytes, &mut pos);
            let digits = read_digits(input, bytes, &mut pos)
                .ok_or_else(|| Error::parse("expected an exponent after '^'"))?;
            power = digits
                .parse::<usize>()
                .map_err(|_| Error::parse(format!("exponent {digits:?} is out of range")))?;
            if power == 0 {
                return Err(Error::parse("exponent 0 would create a constant term"));
            }
            if power > MAX_DEGREE {
                return Err(Error::parse(format!(
                    "exponent {power} exceeds the supported maximum {MAX_DEGREE}"
                )));
            }
        }
        let mut coef = match coef_digits {
            Some(d) => parse_bigint(d)?,
            None => BigInt::one(),
        };
        if sign_negative {
            coef = -coef;
        }
        if coeffs.len() < power {
            coeffs.resize(power, BigInt::zero());
        }
        coeffs[power - 1] += coef;

        skip_ws(bytes, &mut pos);
        if pos == bytes.len() {
            break;
        }
        sign_negative = match bytes[pos] {
            b'+' => false,
            b'-' => true,
            other => {
                return Err(Error::parse(format!(
                    "unexpected character {:?} at byte {pos}",
                    other as char
                )))
            }
        };
        pos += 1;
    }

    IntPolynomial::new(coeffs)
        .map_err(|_| Error::parse("expression simplifies to the zero polynomial"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(expr: &str) -> IntPolynomial {
        parse_poly_expr(expr).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn eval_matches_direct_arithmetic() {
        assert_eq!(p("n^2").eval(&big(3)), big(9));
        assert_eq!(p("n^3-2n").eval(&big(-2)), big(-4));
        let huge = BigInt::from(1u8) << 16; // 2^(2^4)
        assert_eq!(p("n^2").eval(&huge), BigInt::from(1u8) << 32);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("n^2").derivative(), Polynomial::new(vec![big(0), big(2)]));
        assert_eq!(
            p("n^3+n").derivative(),
            Polynomial::new(vec![big(1), big(0), big(3)])
        );
        assert_eq!(
            p("5n^4-2n^2").derivative(),
            Polynomial::new(vec![big(0), big(-4), big(0), big(20)])
        );
    }

    #[test]
    fn monotone_threshold_examples() {
        assert_eq!(p("n^2").monotone_threshold().unwrap(), big(0));
        assert_eq!(p("n^2-4n").monotone_threshold().unwrap(), big(2));
        assert_eq!(p("n^3-300n").monotone_threshold().unwrap(), big(10));
    }

    #[test]
    fn monotone_threshold_rejects_negative_lead() {
        assert!(matches!(
            p("-n^2").monotone_threshold(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn shift_exponent_examples() {
        assert_eq!(p("n^2").choose_shift_exponent().unwrap(), 1);
        assert_eq!(p("n^3-300n").choose_shift_exponent().unwrap(), 4);
        assert_eq!(p("2n^2-n").choose_shift_exponent().unwrap(), 1);
    }

    #[test]
    fn threshold_certificate_holds_to_scan_bound() {
        for expr in ["n^2", "n^2-4n", "n^3-300n", "2n^2-n", "n^4-17n^2+3n"] {
            let poly = p(expr);
            let threshold = poly.monotone_threshold().unwrap();
            let bound = poly.derivative().cauchy_root_bound();
            let mut n = threshold.clone();
            while n <= &bound + 1 {
                let next = &n + 1;
                assert!(poly.eval(&next) > poly.eval(&n), "{expr} at n = {n}");
                n = next;
            }
            // And the threshold is tight: one step earlier fails (if legal).
            if threshold.is_positive() {
                let before = &threshold - 1;
                assert!(poly.eval(&threshold) <= poly.eval(&before));
            }
        }
    }

    #[test]
    fn parser_accepts_shorthands() {
        assert_eq!(p("n^3-300n"), IntPolynomial::from_i64(&[-300, 0, 1]).unwrap());
        assert_eq!(p("2n^2 - n"), IntPolynomial::from_i64(&[-1, 2]).unwrap());
        assert_eq!(p("-n^2+5n"), IntPolynomial::from_i64(&[5, -1]).unwrap());
        assert_eq!(p("3*n^2"), IntPolynomial::from_i64(&[0, 3]).unwrap());
        assert_eq!(p("n + n"), IntPolynomial::from_i64(&[2]).unwrap());
    }

    #[test]
    fn parser_rejects_bad_input() {
        for bad in ["", "5", "n+1", "n^0", "2 + n", "n -", "n^", "x^2", "n - n"] {
            assert!(parse_poly_expr(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        for expr in ["n^2", "n^3-300n", "2n^2-n", "-n^2+5n", "n^4 - 17n^2 + 3n"] {
            let poly = p(expr);
            assert_eq!(parse_poly_expr(&poly.to_string()).unwrap(), poly);
        }
    }

    #[test]
    fn json_round_trips() {
        let poly = p("n^3-300n");
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, r#"{"coeffs":["-300","0","1"]}"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);
        assert!(serde_json::from_str::<IntPolynomial>(r#"{"coeffs":[]}"#).is_err());
        assert!(serde_json::from_str::<IntPolynomial>(r#"{"coeffs":["0"]}"#).is_err());
    }
}
