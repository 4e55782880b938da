//! Exact rational values.
//!
//! All verdicts in this crate are decided on arbitrary-precision rationals;
//! floating point only ever appears in clearly labeled display output.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact fraction type used for volumes, discrepancies and bounds.
///
/// Backed by `num_rational::BigRational`, which keeps fractions reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u32, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// `base^{-exp}` as an exact rational.
pub fn inv_pow(base: u32, exp: u32) -> Rational {
    Rational::new(BigInt::one(), big_pow(base, exp))
}

/// Canonical `"p/q"` rendering; zero renders as `"0/1"`.
pub fn render(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the canonical `"p/q"` form (also accepts a bare integer).
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let denom: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Display-only decimal approximation.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division for fractions whose parts overflow f64.
        let scale = BigInt::from(1u64 << 60);
        let scaled = (r.numer() * &scale) / r.denom();
        scaled.to_f64().unwrap_or(f64::NAN) / (1u64 << 60) as f64
    })
}

/// True when `r` is in the closed unit interval.
pub fn in_closed_unit(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        for (n, d) in [(0, 1), (3, 4), (-7, 12), (22, 7)] {
            let r = rat(n, d);
            assert_eq!(parse(&render(&r)).unwrap(), r);
        }
        assert_eq!(parse("5").unwrap(), rat_int(5));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse("1/0").is_err());
        assert!(parse("x/2").is_err());
    }

    #[test]
    fn inv_pow_values() {
        assert_eq!(inv_pow(2, 3), rat(1, 8));
        assert_eq!(inv_pow(3, 2), rat(1, 9));
    }
}
