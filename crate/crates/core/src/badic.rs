//! Exact b-adic digit arithmetic.
//!
//! A [`BAdicNumber`] is a finite expansion `x = sum_{i=1..P} x_i b^{-i}` in an
//! explicit base, always in `[0, 1)`. Digit index 1 is the most significant
//! fractional digit (`b^{-1}`). Carry-free digit addition and subtraction,
//! truncation and the absolute valuation are the primitives everything else in
//! this crate is built on.
//!
//! All values here are immutable after construction and every operation is
//! pure, so they can be shared freely across threads.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{big_pow, inv_pow, Rational};

/// Finite digit expansion `x = sum x_i b^{-i}` with `x_i` in `{0, .., b-1}`.
///
/// The precision `P` is the number of stored fractional digits. Two numbers
/// with the same base compare equal when their digit sequences agree after
/// padding the shorter one with zeros.
#[derive(Clone)]
pub struct BAdicNumber {
    base: u32,
    digits: Vec<u32>,
}

impl BAdicNumber {
    /// Builds an expansion from explicit digits, most significant first.
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitRange { digit, base });
        }
        Ok(Self { base, digits })
    }

    /// The zero expansion with `precision` tracked digits.
    pub fn zero(base: u32, precision: usize) -> Self {
        Self {
            base,
            digits: vec![0; precision],
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Number of tracked fractional digits.
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// The 1-indexed digit `x_i`; zero beyond the stored precision.
    pub fn digit(&self, i: usize) -> u32 {
        if i == 0 || i > self.digits.len() {
            0
        } else {
            self.digits[i - 1]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Truncation to the first `m` digits. `truncate(x, 0)` is zero.
    pub fn truncate(&self, m: usize) -> Self {
        let keep = m.min(self.digits.len());
        Self {
            base: self.base,
            digits: self.digits[..keep].to_vec(),
        }
    }

    /// Digit-wise sum mod b, no carries. Precision is the max of the inputs.
    pub fn digit_add(&self, shift: &Self) -> Result<Self> {
        self.zip_digits(shift, |a, b, base| (a + b) % base)
    }

    /// Digit-wise difference mod b; inverse of [`Self::digit_add`].
    pub fn digit_sub(&self, shift: &Self) -> Result<Self> {
        self.zip_digits(shift, |a, b, base| (a + base - b) % base)
    }

    fn zip_digits(&self, other: &Self, op: impl Fn(u32, u32, u32) -> u32) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        let precision = self.digits.len().max(other.digits.len());
        let digits = (1..=precision)
            .map(|i| op(self.digit(i), other.digit(i), self.base))
            .collect();
        Ok(Self {
            base: self.base,
            digits,
        })
    }

    /// Absolute valuation: `1/b^{k+1}` where `k` counts leading zero digits.
    ///
    /// The all-zero expansion has no nonzero digit; its valuation is defined
    /// as exactly 0, which is below `1/b^{m+d}` for every `d`.
    pub fn valuation(&self) -> Rational {
        match self.digits.iter().position(|&d| d != 0) {
            Some(k) => inv_pow(self.base, (k + 1) as u32),
            None => Rational::zero(),
        }
    }

    /// Exact value `sum x_i b^{-i}`.
    pub fn to_rational(&self) -> Rational {
        let mut numer = BigInt::zero();
        for &d in &self.digits {
            numer = numer * self.base + d;
        }
        if self.digits.is_empty() {
            return Rational::zero();
        }
        Rational::new(numer, big_pow(self.base, self.digits.len() as u32))
    }

    /// Digits of the floor expansion of a rational in `[0, 1)`.
    pub fn from_rational_floor(base: u32, value: &Rational, precision: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if value < &Rational::zero() || value >= &Rational::one() {
            return Err(Error::OutOfUnitInterval(value.to_string()));
        }
        let mut digits = Vec::with_capacity(precision);
        let mut rest = value.clone();
        for _ in 0..precision {
            rest *= Rational::from_integer(BigInt::from(base));
            let whole = rest.to_integer();
            let digit = u32::try_from(&whole).expect("digit below base fits u32");
            digits.push(digit);
            rest -= Rational::from_integer(whole);
        }
        Self::new(base, digits)
    }

    /// First `d` digits read as an integer in `[0, b^d)`.
    ///
    /// Used for elementary-interval membership; callers keep `b^d` inside
    /// `u128` range (desk-scale orders).
    pub(crate) fn prefix_int(&self, d: usize) -> u128 {
        let mut acc: u128 = 0;
        for i in 1..=d {
            acc = acc
                .checked_mul(self.base as u128)
                .and_then(|v| v.checked_add(self.digit(i) as u128))
                .expect("digit prefix exceeds u128");
        }
        acc
    }
}

impl PartialEq for BAdicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.base != other.base {
            return false;
        }
        let precision = self.digits.len().max(other.digits.len());
        (1..=precision).all(|i| self.digit(i) == other.digit(i))
    }
}

impl Eq for BAdicNumber {}

impl fmt::Debug for BAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BAdicNumber {
    /// Renders as `0.d1d2...dP (base b)`; bases above 10 separate digits
    /// with commas.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        if self.base <= 10 {
            for &d in &self.digits {
                write!(f, "{d}")?;
            }
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        write!(f, " (base {})", self.base)
    }
}

impl FromStr for BAdicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits_part, base_part) = s
            .split_once(" (base ")
            .ok_or_else(|| Error::Parse(format!("missing base suffix in {s:?}")))?;
        let base: u32 = base_part
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated base suffix in {s:?}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad base in {s:?}")))?;
        let digit_str = digits_part
            .strip_prefix("0.")
            .ok_or_else(|| Error::Parse(format!("expected 0. prefix in {s:?}")))?;
        let digits: Vec<u32> = if digit_str.is_empty() {
            Vec::new()
        } else if base <= 10 {
            digit_str
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            digit_str
                .split(',')
                .map(|p| {
                    p.parse()
                        .map_err(|_| Error::Parse(format!("bad digit {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(base, digits)
    }
}

/// A point in `[0,1)^s` with one expansion per coordinate.
///
/// Coordinates may use different bases (the Halton case); operations that need
/// a common base check for it.
#[derive(Clone, PartialEq, Eq)]
pub struct BAdicPoint {
    coords: Vec<BAdicNumber>,
}

impl BAdicPoint {
    pub fn new(coords: Vec<BAdicNumber>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::UnsupportedDimension(0));
        }
        Ok(Self { coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BAdicNumber] {
        &self.coords
    }

    /// The `j`-th coordinate, 0-indexed.
    pub fn coord(&self, j: usize) -> &BAdicNumber {
        &self.coords[j]
    }

    /// The common base of all coordinates, or an error for mixed bases.
    pub fn common_base(&self) -> Result<u32> {
        let base = self.coords[0].base();
        if self.coords.iter().any(|c| c.base() != base) {
            return Err(Error::MixedBases);
        }
        Ok(base)
    }

    /// Coordinate-wise digital shift.
    pub fn digit_add(&self, shift: &Self) -> Result<Self> {
        self.zip(shift, BAdicNumber::digit_add)
    }

    /// Coordinate-wise inverse shift.
    pub fn digit_sub(&self, shift: &Self) -> Result<Self> {
        self.zip(shift, BAdicNumber::digit_sub)
    }

    fn zip(
        &self,
        other: &Self,
        op: impl Fn(&BAdicNumber, &BAdicNumber) -> Result<BAdicNumber>,
    ) -> Result<Self> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: other.dimension(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_>>()?;
        Ok(Self { coords })
    }

    /// Coordinate-wise truncation to `m` digits.
    pub fn truncate(&self, m: usize) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c.truncate(m)).collect(),
        }
    }

    /// Product of the coordinate valuations; requires a single common base.
    pub fn point_valuation(&self) -> Result<Rational> {
        self.common_base()?;
        Ok(self
            .coords
            .iter()
            .map(BAdicNumber::valuation)
            .product::<Rational>())
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coords.iter().map(BAdicNumber::to_rational).collect()
    }
}

impl fmt::Debug for BAdicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
