//! Exact local discrepancy and exact star discrepancy.
//!
//! The discrepancy function compares the number of points inside an anchored
//! box `[0, y)` with `N` times the box volume. The star discrepancy is its
//! supremum over all anchors. Because the count only changes at point
//! coordinates, the supremum over the closed unit square is attained as a
//! one-sided limit at corners of the critical grid (point coordinates plus 1);
//! evaluating both the strict and the inclusive count at every grid corner
//! covers both limits. Everything is exact; no floating point decides a value.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::generators::PointSet;
use crate::rational::{rat_int, Rational};

/// Default point cap for the brute-force star-discrepancy route.
pub const DEFAULT_ORACLE_CAP: u64 = 256;

/// Anchored half-open box `[0, y^{(1)}) x ... x [0, y^{(s)})`.
///
/// Upper corner coordinates live in the closed interval `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredBox {
    upper: Vec<Rational>,
}

impl AnchoredBox {
    pub fn new(upper: Vec<Rational>) -> Result<Self> {
        if upper.is_empty() {
            return Err(Error::UnsupportedDimension(0));
        }
        for y in &upper {
            if y.is_negative() || y > &Rational::one() {
                return Err(Error::OutOfUnitInterval(y.to_string()));
            }
        }
        Ok(Self { upper })
    }

    pub fn dimension(&self) -> usize {
        self.upper.len()
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn volume(&self) -> Rational {
        self.upper.iter().product()
    }

    /// Strict membership: every coordinate below the upper corner.
    pub fn contains(&self, coords: &[Rational]) -> bool {
        coords.iter().zip(&self.upper).all(|(x, y)| x < y)
    }
}

/// Signed counting error of a box: `count - N * volume`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyValue {
    pub count: u64,
    pub n: u64,
    pub raw: Rational,
    pub normalized: Rational,
}

impl DiscrepancyValue {
    fn new(count: u64, n: u64, volume: &Rational) -> Self {
        let raw = rat_int(count as i64) - rat_int(n as i64) * volume;
        let normalized = if n == 0 {
            Rational::zero()
        } else {
            &raw / rat_int(n as i64)
        };
        Self {
            count,
            n,
            raw,
            normalized,
        }
    }
}

fn check_dimension(rows: &[Vec<Rational>], s: usize) -> Result<()> {
    for row in rows {
        if row.len() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: row.len(),
            });
        }
    }
    Ok(())
}

/// Number of rows strictly inside the anchored box.
pub fn count_rows_in_box(rows: &[Vec<Rational>], anchored: &AnchoredBox) -> Result<u64> {
    check_dimension(rows, anchored.dimension())?;
    Ok(rows.iter().filter(|r| anchored.contains(r)).count() as u64)
}

/// Number of points of a set strictly inside the anchored box.
pub fn count_in_box(set: &PointSet, anchored: &AnchoredBox) -> Result<u64> {
    if set.dimension() != anchored.dimension() {
        return Err(Error::DimensionMismatch {
            expected: anchored.dimension(),
            got: set.dimension(),
        });
    }
    let mut count = 0;
    for p in set {
        if anchored.contains(&p.to_rationals()) {
            count += 1;
        }
    }
    Ok(count)
}

/// Local discrepancy of a point set at one anchored box.
pub fn local_discrepancy(set: &PointSet, anchored: &AnchoredBox) -> Result<DiscrepancyValue> {
    let count = count_in_box(set, anchored)?;
    Ok(DiscrepancyValue::new(
        count,
        set.len() as u64,
        &anchored.volume(),
    ))
}

/// Local discrepancy of an explicit stream of points.
///
/// Windows of a sequence are evaluated by feeding the window's points; the
/// stream never has to be materialized as a set.
pub fn local_discrepancy_stream<I>(points: I, anchored: &AnchoredBox) -> Result<DiscrepancyValue>
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    let mut count = 0u64;
    let mut n = 0u64;
    for row in points {
        if row.len() != anchored.dimension() {
            return Err(Error::DimensionMismatch {
                expected: anchored.dimension(),
                got: row.len(),
            });
        }
        if anchored.contains(&row) {
            count += 1;
        }
        n += 1;
    }
    Ok(DiscrepancyValue::new(count, n, &anchored.volume()))
}

/// A star-discrepancy value together with the grid corner attaining it.
#[derive(Clone, Debug)]
pub struct StarDiscrepancy {
    pub value: Rational,
    pub witness: Vec<Rational>,
}

/// Sorted, deduplicated coordinate values plus the closing 1.
fn critical_axis(rows: &[Vec<Rational>], j: usize) -> Vec<Rational> {
    let mut values: Vec<Rational> = rows.iter().map(|r| r[j].clone()).collect();
    values.push(Rational::one());
    values.sort();
    values.dedup();
    values
}

/// Exact two-dimensional star discrepancy via rank prefix sums.
///
/// Points are mapped to their coordinate ranks once; prefix sums over the
/// rank histogram give the strict and inclusive counts for every grid corner
/// in constant time each.
pub fn star_discrepancy_exact(set: &PointSet) -> Result<StarDiscrepancy> {
    star_discrepancy_exact_rows(&set.rational_rows())
}

pub fn star_discrepancy_exact_rows(rows: &[Vec<Rational>]) -> Result<StarDiscrepancy> {
    if rows.is_empty() {
        return Err(Error::TooFewPoints);
    }
    if rows[0].len() != 2 {
        return Err(Error::UnsupportedDimension(rows[0].len()));
    }
    check_dimension(rows, 2)?;
    let n = rows.len() as u64;
    let xs = critical_axis(rows, 0);
    let ys = critical_axis(rows, 1);

    let mut hist = vec![vec![0u64; ys.len()]; xs.len()];
    for row in rows {
        let rx = xs.binary_search(&row[0]).expect("coordinate is on the grid");
        let ry = ys.binary_search(&row[1]).expect("coordinate is on the grid");
        hist[rx][ry] += 1;
    }
    // prefix[i][j] = number of points with x-rank < i and y-rank < j.
    let mut prefix = vec![vec![0u64; ys.len() + 1]; xs.len() + 1];
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            prefix[i + 1][j + 1] =
                prefix[i][j + 1] + prefix[i + 1][j] + hist[i][j] - prefix[i][j];
        }
    }

    let mut best = Rational::zero();
    let mut witness = vec![Rational::one(), Rational::one()];
    for (i, u) in xs.iter().enumerate() {
        for (j, v) in ys.iter().enumerate() {
            let n_vol = rat_int(n as i64) * u * v;
            let strict = prefix[i][j];
            let inclusive = prefix[i + 1][j + 1];
            for count in [strict, inclusive] {
                let value = (rat_int(count as i64) - &n_vol).abs();
                if value > best {
                    best = value;
                    witness = vec![u.clone(), v.clone()];
                }
            }
        }
    }
    Ok(StarDiscrepancy {
        value: best / rat_int(n as i64),
        witness,
    })
}

/// Brute-force route: recount the points for every grid corner.
///
/// Definitionally transparent and independent of the prefix-sum machinery;
/// quadratic in the grid and linear in the points, so the point count is
/// capped.
pub fn star_discrepancy_oracle(set: &PointSet) -> Result<StarDiscrepancy> {
    star_discrepancy_oracle_capped(set, DEFAULT_ORACLE_CAP)
}

pub fn star_discrepancy_oracle_capped(set: &PointSet, cap: u64) -> Result<StarDiscrepancy> {
    star_discrepancy_oracle_rows(&set.rational_rows(), cap)
}

pub fn star_discrepancy_oracle_rows(rows: &[Vec<Rational>], cap: u64) -> Result<StarDiscrepancy> {
    if rows.is_empty() {
        return Err(Error::TooFewPoints);
    }
    if rows.len() as u64 > cap {
        return Err(Error::CapExceeded {
            needed: rows.len() as u128,
            cap: cap as u128,
        });
    }
    if rows[0].len() != 2 {
        return Err(Error::UnsupportedDimension(rows[0].len()));
    }
    check_dimension(rows, 2)?;
    let n = rows.len() as u64;
    let xs = critical_axis(rows, 0);
    let ys = critical_axis(rows, 1);
    let mut best = Rational::zero();
    let mut witness = vec![Rational::one(), Rational::one()];
    for u in &xs {
        for v in &ys {
            let strict = rows
                .iter()
                .filter(|r| &r[0] < u && &r[1] < v)
                .count() as u64;
            let inclusive = rows
                .iter()
                .filter(|r| &r[0] <= u && &r[1] <= v)
                .count() as u64;
            let n_vol = rat_int(n as i64) * u * v;
            for count in [strict, inclusive] {
                let value = (rat_int(count as i64) - &n_vol).abs();
                if value > best {
                    best = value;
                    witness = vec![u.clone(), v.clone()];
                }
            }
        }
    }
    Ok(StarDiscrepancy {
        value: best / rat_int(n as i64),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::badic::{BAdicNumber, BAdicPoint};
    use crate::generators::hammersley_net;
    use crate::rational::rat;

    fn unit_box(s: usize) -> AnchoredBox {
        AnchoredBox::new(vec![Rational::one(); s]).unwrap()
    }

    fn single_point_set(c1: &[u32], c2: &[u32]) -> PointSet {
        PointSet::new(vec![BAdicPoint::new(vec![
            BAdicNumber::new(2, c1.to_vec()).unwrap(),
            BAdicNumber::new(2, c2.to_vec()).unwrap(),
        ])
        .unwrap()])
        .unwrap()
    }

    #[test]
    fn full_box_counts_everything() {
        let net = hammersley_net(3).unwrap();
        assert_eq!(count_in_box(&net, &unit_box(2)).unwrap(), 8);
    }

    #[test]
    fn zero_coordinate_empties_the_box() {
        let net = hammersley_net(3).unwrap();
        let empty = AnchoredBox::new(vec![rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(count_in_box(&net, &empty).unwrap(), 0);
    }

    #[test]
    fn quarter_box_of_small_net() {
        // Points of the m = 2 net: (0,0), (1/2,1/4), (1/4,1/2), (3/4,3/4).
        let net = hammersley_net(2).unwrap();
        let anchored = AnchoredBox::new(vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(count_in_box(&net, &anchored).unwrap(), 1);
    }

    #[test]
    fn local_discrepancy_vanishes_at_corners() {
        let net = hammersley_net(3).unwrap();
        assert_eq!(
            local_discrepancy(&net, &unit_box(2)).unwrap().raw,
            rat(0, 1)
        );
        let origin = AnchoredBox::new(vec![rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(local_discrepancy(&net, &origin).unwrap().raw, rat(0, 1));
    }

    #[test]
    fn raw_value_is_bounded_by_n() {
        let net = hammersley_net(4).unwrap();
        for y in [rat(1, 3), rat(7, 8), rat(1, 16)] {
            let anchored = AnchoredBox::new(vec![y.clone(), y]).unwrap();
            let d = local_discrepancy(&net, &anchored).unwrap();
            assert!(d.raw.abs() <= rat_int(net.len() as i64));
            assert!(d.normalized.abs() <= Rational::one());
        }
    }

    #[test]
    fn stream_route_matches_set_route() {
        let net = hammersley_net(3).unwrap();
        let anchored = AnchoredBox::new(vec![rat(3, 8), rat(5, 8)]).unwrap();
        let by_set = local_discrepancy(&net, &anchored).unwrap();
        let by_stream = local_discrepancy_stream(net.rational_rows(), &anchored).unwrap();
        assert_eq!(by_set, by_stream);
    }

    #[test]
    fn star_discrepancy_of_origin_point_is_one() {
        let set = single_point_set(&[0], &[0]);
        assert_eq!(star_discrepancy_exact(&set).unwrap().value, rat(1, 1));
        assert_eq!(star_discrepancy_oracle(&set).unwrap().value, rat(1, 1));
    }

    #[test]
    fn star_discrepancy_of_center_point() {
        let set = single_point_set(&[1], &[1]);
        assert_eq!(star_discrepancy_exact(&set).unwrap().value, rat(3, 4));
        assert_eq!(star_discrepancy_oracle(&set).unwrap().value, rat(3, 4));
    }

    #[test]
    fn both_routes_agree_on_hammersley() {
        for m in 0..=5u32 {
            let net = hammersley_net(m).unwrap();
            let exact = star_discrepancy_exact(&net).unwrap();
            let oracle = star_discrepancy_oracle(&net).unwrap();
            assert_eq!(exact.value, oracle.value, "m = {m}");
        }
    }

    #[test]
    fn star_discrepancy_dominates_probes() {
        let net = hammersley_net(4).unwrap();
        let dstar = star_discrepancy_exact(&net).unwrap().value;
        for (a, b) in [(1, 3), (2, 5), (7, 11), (15, 16), (1, 1)] {
            let anchored = AnchoredBox::new(vec![rat(a, b), rat(b - a, b)]).unwrap();
            let local = local_discrepancy(&net, &anchored).unwrap();
            assert!(local.normalized.abs() <= dstar);
        }
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let net = hammersley_net(4).unwrap();
        assert!(matches!(
            star_discrepancy_oracle_capped(&net, 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn anchored_box_validates_corner() {
        assert!(AnchoredBox::new(vec![rat(3, 2)]).is_err());
        assert!(AnchoredBox::new(vec![rat(-1, 2)]).is_err());
        assert!(AnchoredBox::new(vec![rat(1, 1)]).is_ok());
    }
}
