//! Point-set constructions: radical inverses, Halton sequences, Hammersley
//! nets, digital shifts and the duplicated-net fixture.
//!
//! Constructions are deterministic in the point index; none of them is
//! trusted to have the net property — verification lives in [`crate::netcheck`]
//! and the test suites.

use num_integer::Integer;

use crate::badic::{BAdicNumber, BAdicPoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Guard for materialized point sets; `b^m` beyond this is refused.
pub const MAX_POINTS: u64 = 1 << 24;

/// Bases of an s-dimensional Halton sequence, pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaltonSpec {
    bases: Vec<u32>,
}

impl HaltonSpec {
    pub fn new(bases: Vec<u32>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::UnsupportedDimension(0));
        }
        if let Some(&b) = bases.iter().find(|&&b| b < 2) {
            return Err(Error::InvalidBase(b));
        }
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                if bases[i].gcd(&bases[j]) != 1 {
                    return Err(Error::NotCoprime {
                        a: bases[i],
                        b: bases[j],
                    });
                }
            }
        }
        Ok(Self { bases })
    }

    pub fn dimension(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    /// Product of all bases.
    pub fn modulus(&self) -> u64 {
        self.bases.iter().map(|&b| b as u64).product()
    }
}

/// Radical inverse: base-b digit reversal of `n` across the radix point.
///
/// Fails if `precision` cannot hold every digit of `n` exactly.
pub fn radical_inverse(n: u64, base: u32, precision: usize) -> Result<BAdicNumber> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push((rest % base as u64) as u32);
        rest /= base as u64;
    }
    if digits.len() > precision {
        return Err(Error::PrecisionTooSmall {
            precision,
            needed: digits.len(),
        });
    }
    digits.resize(precision, 0);
    BAdicNumber::new(base, digits)
}

/// The n-th point of the Halton sequence (indexing starts at n = 0).
pub fn halton_point(n: u64, spec: &HaltonSpec, precision: usize) -> Result<BAdicPoint> {
    let coords = spec
        .bases
        .iter()
        .map(|&b| radical_inverse(n, b, precision))
        .collect::<Result<_>>()?;
    BAdicPoint::new(coords)
}

/// Ordered multiset of points sharing dimension and per-coordinate bases.
///
/// Duplicates are allowed; the duplicated-net fixture depends on that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<BAdicPoint>,
    s: usize,
    bases: Vec<u32>,
    precision: usize,
}

impl PointSet {
    pub fn new(points: Vec<BAdicPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::TooFewPoints)?;
        let s = first.dimension();
        let bases: Vec<u32> = first.coords().iter().map(|c| c.base()).collect();
        let mut precision = 0;
        for p in &points {
            if p.dimension() != s {
                return Err(Error::DimensionMismatch {
                    expected: s,
                    got: p.dimension(),
                });
            }
            for (c, &b) in p.coords().iter().zip(&bases) {
                if c.base() != b {
                    return Err(Error::BaseMismatch(b, c.base()));
                }
                precision = precision.max(c.precision());
            }
        }
        Ok(Self {
            points,
            s,
            bases,
            precision,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.s
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    /// Maximum per-coordinate precision over all points.
    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn points(&self) -> &[BAdicPoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BAdicPoint> {
        self.points.iter()
    }

    /// The single base shared by every coordinate, or an error.
    pub fn common_base(&self) -> Result<u32> {
        let base = self.bases[0];
        if self.bases.iter().any(|&b| b != base) {
            return Err(Error::MixedBases);
        }
        Ok(base)
    }

    /// Exact coordinates row by row.
    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.points.iter().map(|p| p.to_rationals()).collect()
    }

    /// CSV with one row per point and exact `p/q` cells.
    pub fn to_csv_rationals(&self) -> String {
        let mut out = csv_header(self.s);
        for p in &self.points {
            let cells: Vec<String> = p
                .to_rationals()
                .iter()
                .map(crate::rational::render)
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// CSV with one quoted digit-expansion cell per coordinate.
    pub fn to_csv_digits(&self) -> String {
        let mut out = csv_header(self.s);
        for p in &self.points {
            let cells: Vec<String> = p.coords().iter().map(|c| format!("\"{c}\"")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the digit-expansion CSV produced by [`Self::to_csv_digits`].
    pub fn from_csv_digits(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let _header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty CSV".into()))?;
        let mut points = Vec::new();
        for line in lines {
            let coords = split_csv_row(line)?
                .iter()
                .map(|cell| cell.parse::<BAdicNumber>())
                .collect::<Result<Vec<_>>>()?;
            points.push(BAdicPoint::new(coords)?);
        }
        Self::new(points)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a BAdicPoint;
    type IntoIter = std::slice::Iter<'a, BAdicPoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn csv_header(s: usize) -> String {
    let cols: Vec<String> = (1..=s).map(|j| format!("x{j}")).collect();
    format!("{}\n", cols.join(","))
}

fn split_csv_row(line: &str) -> Result<Vec<String>> {
    let mut cells = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ',' if !quoted => {
                cells.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if quoted {
        return Err(Error::Parse(format!("unterminated quote in row {line:?}")));
    }
    cells.push(cur);
    Ok(cells)
}

fn checked_count(b: u32, m: u32) -> Result<u64> {
    let count = (b as u64)
        .checked_pow(m)
        .filter(|&c| c <= MAX_POINTS)
        .ok_or(Error::CapExceeded {
            needed: (b as u128).pow(m),
            cap: MAX_POINTS as u128,
        })?;
    Ok(count)
}

/// Two-dimensional Hammersley net in base 2: `2^m` points `(phi_2(n), n/2^m)`.
pub fn hammersley_net(m: u32) -> Result<PointSet> {
    hammersley_net_in_base(2, m)
}

/// Generalized two-dimensional Hammersley net: `(phi_b(n), n/b^m)`.
///
/// Expected to be a net of optimal quality in its base; callers verify with
/// [`crate::netcheck::is_net`] rather than trusting the construction.
pub fn hammersley_net_in_base(base: u32, m: u32) -> Result<PointSet> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let count = checked_count(base, m)?;
    let precision = m as usize;
    let mut points = Vec::with_capacity(count as usize);
    for n in 0..count {
        let first = radical_inverse(n, base, precision)?;
        // n / b^m: the base-b digits of n, most significant first.
        let mut digits = vec![0u32; precision];
        let mut rest = n;
        for i in (0..precision).rev() {
            digits[i] = (rest % base as u64) as u32;
            rest /= base as u64;
        }
        let second = BAdicNumber::new(base, digits)?;
        points.push(BAdicPoint::new(vec![first, second])?);
    }
    PointSet::new(points)
}

/// Shifts every point by `w` digit-wise; net parameters are preserved.
pub fn digital_shift_set(set: &PointSet, shift: &BAdicPoint) -> Result<PointSet> {
    set.common_base()?;
    if shift.dimension() != set.dimension() {
        return Err(Error::DimensionMismatch {
            expected: set.dimension(),
            got: shift.dimension(),
        });
    }
    let points = set
        .iter()
        .map(|p| p.digit_add(shift))
        .collect::<Result<_>>()?;
    PointSet::new(points)
}

/// `b` identical copies of a `b^{m-1}`-point Hammersley net.
///
/// The result has `b^m` points, satisfies the net property only with quality
/// parameter 1, and its duplicated points force the minimum pairwise
/// valuation to zero.
pub fn copies_fixture(m: u32, base: u32, s: usize) -> Result<PointSet> {
    if s != 2 {
        return Err(Error::UnsupportedConstruction { b: base, s });
    }
    if m < 1 {
        return Err(Error::InvalidParameter(
            "copies fixture needs m >= 1".into(),
        ));
    }
    checked_count(base, m)?;
    let source = hammersley_net_in_base(base, m - 1)?;
    let mut points = Vec::with_capacity(source.len() * base as usize);
    for _ in 0..base {
        points.extend(source.iter().cloned());
    }
    PointSet::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use num_traits::Zero;

    #[test]
    fn halton_spec_checks_coprimality() {
        assert!(HaltonSpec::new(vec![2, 3]).is_ok());
        assert!(HaltonSpec::new(vec![2, 4]).is_err());
        assert!(HaltonSpec::new(vec![2, 3, 5]).is_ok());
        assert!(HaltonSpec::new(vec![]).is_err());
        assert!(HaltonSpec::new(vec![1, 3]).is_err());
    }

    #[test]
    fn radical_inverse_examples() {
        assert!(radical_inverse(0, 2, 4).unwrap().is_zero());
        assert_eq!(radical_inverse(3, 2, 4).unwrap().to_rational(), rat(3, 4));
        assert_eq!(radical_inverse(5, 3, 4).unwrap().to_rational(), rat(7, 9));
        assert!(radical_inverse(8, 2, 3).is_err());
    }

    // Independent route for the radical inverse: accumulate n_j / b^{j+1}
    // directly in rational arithmetic.
    fn radical_inverse_oracle(mut n: u64, base: u32) -> Rational {
        let mut value = Rational::zero();
        let mut weight = rat(1, base as i64);
        while n > 0 {
            value += rat_int((n % base as u64) as i64) * &weight;
            weight /= rat_int(base as i64);
            n /= base as u64;
        }
        value
    }

    #[test]
    fn halton_point_examples() {
        let spec = HaltonSpec::new(vec![2, 3]).unwrap();
        let p0 = halton_point(0, &spec, 8).unwrap();
        assert!(p0.coord(0).is_zero() && p0.coord(1).is_zero());

        let p1 = halton_point(1, &spec, 8).unwrap();
        assert_eq!(p1.to_rationals(), vec![rat(1, 2), rat(1, 3)]);

        let p5 = halton_point(5, &spec, 8).unwrap();
        assert_eq!(p5.to_rationals(), vec![rat(5, 8), rat(7, 9)]);
        assert_eq!(p5.coord(0).to_rational(), radical_inverse_oracle(5, 2));
        assert_eq!(p5.coord(1).to_rational(), radical_inverse_oracle(5, 3));
    }

    #[test]
    fn halton_matches_oracle_for_many_indices() {
        let spec = HaltonSpec::new(vec![2, 3, 5]).unwrap();
        for n in 0..200 {
            let p = halton_point(n, &spec, 10).unwrap();
            for (j, &b) in spec.bases().iter().enumerate() {
                assert_eq!(p.coord(j).to_rational(), radical_inverse_oracle(n, b));
            }
        }
    }

    #[test]
    fn hammersley_small_cases() {
        let net0 = hammersley_net(0).unwrap();
        assert_eq!(net0.len(), 1);
        assert!(net0.points()[0].coord(0).is_zero());

        let net1 = hammersley_net(1).unwrap();
        let rows = net1.rational_rows();
        assert_eq!(rows[0], vec![rat_int(0), rat_int(0)]);
        assert_eq!(rows[1], vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn hammersley_second_coordinate_is_n_over_bm() {
        for base in [2u32, 3] {
            let m = 3;
            let net = hammersley_net_in_base(base, m).unwrap();
            for (n, p) in net.iter().enumerate() {
                assert_eq!(
                    p.coord(1).to_rational(),
                    rat(n as i64, (base as i64).pow(m))
                );
            }
        }
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let net = hammersley_net(3).unwrap();
        let zero = BAdicPoint::new(vec![BAdicNumber::zero(2, 3), BAdicNumber::zero(2, 3)]).unwrap();
        assert_eq!(digital_shift_set(&net, &zero).unwrap(), net);
    }

    #[test]
    fn shift_round_trips() {
        let net = hammersley_net(4).unwrap();
        let w = BAdicPoint::new(vec![
            BAdicNumber::new(2, vec![1, 0, 1, 1, 0, 1]).unwrap(),
            BAdicNumber::new(2, vec![0, 1, 1, 0, 0, 1]).unwrap(),
        ])
        .unwrap();
        let shifted = digital_shift_set(&net, &w).unwrap();
        for (orig, moved) in net.iter().zip(shifted.iter()) {
            assert_eq!(&moved.digit_sub(&w).unwrap(), orig);
        }
    }

    #[test]
    fn copies_fixture_duplicates_a_smaller_net() {
        let fixture = copies_fixture(4, 2, 2).unwrap();
        assert_eq!(fixture.len(), 16);
        let source = hammersley_net(3).unwrap();
        assert_eq!(&fixture.points()[..8], source.points());
        assert_eq!(&fixture.points()[8..], source.points());
        assert!(copies_fixture(4, 2, 3).is_err());
    }

    #[test]
    fn halton_prefix_balance() {
        // Among the first N points with 2^{r1} 3^{r2} | N, every elementary
        // box with per-coordinate orders (r1, r2) holds exactly
        // N / (2^{r1} 3^{r2}) points.
        let spec = HaltonSpec::new(vec![2, 3]).unwrap();
        let n_total = 432u64; // 2^4 * 27
        let points: Vec<BAdicPoint> = (0..n_total)
            .map(|n| halton_point(n, &spec, 12).unwrap())
            .collect();
        for (r1, r2) in [(1u32, 1u32), (2, 1), (4, 3), (3, 2)] {
            let cell_count = 2u64.pow(r1) * 3u64.pow(r2);
            if !n_total.is_multiple_of(cell_count) {
                continue;
            }
            let expected = n_total / cell_count;
            for a1 in 0..2u64.pow(r1) {
                for a2 in 0..3u64.pow(r2) {
                    let count = points
                        .iter()
                        .filter(|p| {
                            p.coord(0).to_rational() >= rat(a1 as i64, 2i64.pow(r1))
                                && p.coord(0).to_rational() < rat(a1 as i64 + 1, 2i64.pow(r1))
                                && p.coord(1).to_rational() >= rat(a2 as i64, 3i64.pow(r2))
                                && p.coord(1).to_rational() < rat(a2 as i64 + 1, 3i64.pow(r2))
                        })
                        .count() as u64;
                    assert_eq!(count, expected, "box ({a1},{a2}) at orders ({r1},{r2})");
                }
            }
        }
    }

    #[test]
    fn csv_digit_round_trip() {
        let net = hammersley_net(2).unwrap();
        let csv = net.to_csv_digits();
        let back = PointSet::from_csv_digits(&csv).unwrap();
        assert_eq!(back, net);
        assert!(csv.starts_with("x1,x2\n"));
    }

    #[test]
    fn csv_rationals_format() {
        let net = hammersley_net(1).unwrap();
        assert_eq!(net.to_csv_rationals(), "x1,x2\n0/1,0/1\n1/2,1/2\n");
    }
}
