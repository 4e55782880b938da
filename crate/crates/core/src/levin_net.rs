//! Lower-bound machinery for digital nets: anchored boxes with prescribed
//! digit patterns, their elementary-interval partitions, and the exact
//! decomposition of the discrepancy function along that partition.
//!
//! The central object is a [`GammaSpec`]: an anchor `gamma` whose coordinates
//! are sums `sum_{r in R_j} a_r^{(j)} b^{-r}`. The box `[0, gamma)` splits
//! into elementary intervals indexed by `R_1 x ... x R_s`; index vectors whose
//! order exceeds `m + s - 1` give boxes a net cannot touch, which forces the
//! local discrepancy at `gamma` below an explicit negative bound. The
//! [`nearest_gamma`] constructor realizes such anchors close to any point of
//! the unit cube.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::badic::{BAdicNumber, BAdicPoint};
use crate::discrepancy::{local_discrepancy, AnchoredBox, DiscrepancyValue};
use crate::error::{Error, Result};
use crate::generators::PointSet;
use crate::netcheck::{count_in_elementary, is_net, ElementaryBox};
use crate::rational::{inv_pow, rat_int, Rational};

/// Anchor point with per-coordinate index sets `R_j` and digits `a_r^{(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSpec {
    s: usize,
    base: u32,
    m: u32,
    /// One map per coordinate: index `r` (1-based digit position, at most `m`)
    /// to digit `a_r` in `{1, .., b-1}`.
    digits: Vec<BTreeMap<u32, u32>>,
}

impl GammaSpec {
    pub fn new(base: u32, m: u32, digits: Vec<BTreeMap<u32, u32>>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if digits.is_empty() {
            return Err(Error::UnsupportedDimension(0));
        }
        for per_coord in &digits {
            if per_coord.is_empty() {
                return Err(Error::InvalidParameter(
                    "every coordinate needs a nonempty index set".into(),
                ));
            }
            for (&r, &a) in per_coord {
                if r == 0 || r > m {
                    return Err(Error::InvalidParameter(format!(
                        "index {r} outside 1..={m}"
                    )));
                }
                if a == 0 || a >= base {
                    return Err(Error::DigitRange { digit: a, base });
                }
            }
        }
        Ok(Self {
            s: digits.len(),
            base,
            m,
            digits,
        })
    }

    pub fn dimension(&self) -> usize {
        self.s
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Index set `R_j` of one coordinate.
    pub fn index_set(&self, j: usize) -> BTreeSet<u32> {
        self.digits[j].keys().copied().collect()
    }

    pub fn digit(&self, j: usize, r: u32) -> u32 {
        self.digits[j].get(&r).copied().unwrap_or(0)
    }

    /// Exact value of coordinate `j`.
    pub fn value(&self, j: usize) -> Rational {
        self.digits[j]
            .iter()
            .map(|(&r, &a)| inv_pow(self.base, r) * rat_int(a as i64))
            .sum()
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.s).map(|j| self.value(j)).collect()
    }

    /// The anchor as a digit expansion with `precision` digits per coordinate.
    pub fn to_point(&self, precision: usize) -> Result<BAdicPoint> {
        let coords = self
            .digits
            .iter()
            .map(|per_coord| {
                let mut ds = vec![0u32; precision];
                for (&r, &a) in per_coord {
                    if r as usize > precision {
                        return Err(Error::PrecisionTooSmall {
                            precision,
                            needed: r as usize,
                        });
                    }
                    ds[r as usize - 1] = a;
                }
                BAdicNumber::new(self.base, ds)
            })
            .collect::<Result<Vec<_>>>()?;
        BAdicPoint::new(coords)
    }

    /// The anchored box `[0, gamma)`.
    pub fn anchored_box(&self) -> AnchoredBox {
        AnchoredBox::new(self.values()).expect("gamma coordinates lie in [0, 1)")
    }

    /// Truncation `[gamma^{(j)}]_d` scaled by `b^d`, i.e. the first `d` digits
    /// as an integer.
    fn prefix_int(&self, j: usize, d: u32) -> u128 {
        let mut acc: u128 = 0;
        for i in 1..=d {
            acc = acc * self.base as u128 + self.digit(j, i) as u128;
        }
        acc
    }

    /// Largest digit index of coordinate `j`.
    fn max_index(&self, j: usize) -> u32 {
        *self.digits[j].keys().next_back().expect("nonempty index set")
    }
}

/// Number of points strictly below the anchor in every coordinate.
///
/// Finite expansions in a common base compare by digit strings, so this walks
/// digits instead of building rationals; exact and allocation-free.
pub fn count_below_anchor(set: &PointSet, gamma: &GammaSpec) -> Result<u64> {
    let base = set.common_base()?;
    if base != gamma.base {
        return Err(Error::BaseMismatch(gamma.base, base));
    }
    if set.dimension() != gamma.s {
        return Err(Error::DimensionMismatch {
            expected: gamma.s,
            got: set.dimension(),
        });
    }
    let mut count = 0u64;
    'points: for p in set {
        for j in 0..gamma.s {
            let coord = p.coord(j);
            let width = coord.precision().max(gamma.max_index(j) as usize);
            let mut less = false;
            for i in 1..=width {
                let x_digit = coord.digit(i);
                let g_digit = gamma.digit(j, i as u32);
                if x_digit != g_digit {
                    less = x_digit < g_digit;
                    break;
                }
            }
            if !less {
                continue 'points;
            }
        }
        count += 1;
    }
    Ok(count)
}

/// Anchor for the dyadic two-dimensional bound at quality zero:
/// `gamma = (sum 2^{-2j}, sum 2^{-(m/2+2j)})` for `j = 1..m/4`.
pub fn gamma_theorem3(m: u32) -> Result<GammaSpec> {
    if m < 4 || !m.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "anchor needs m >= 4 with m divisible by 4, got {m}"
        )));
    }
    let first: BTreeMap<u32, u32> = (1..=m / 4).map(|j| (2 * j, 1)).collect();
    let second: BTreeMap<u32, u32> = (1..=m / 4).map(|j| (m / 2 + 2 * j, 1)).collect();
    GammaSpec::new(2, m, vec![first, second])
}

/// One box of the partition of `[0, gamma)`.
#[derive(Clone, Debug)]
pub struct PartitionBox {
    /// Index vector `r` in `R_1 x ... x R_s`.
    pub indices: Vec<u32>,
    /// Digit choices `g_j` in `{0, .., a_{r_j} - 1}`.
    pub offsets: Vec<u32>,
    pub elem: ElementaryBox,
}

/// Splits `[0, gamma)` into disjoint elementary boxes.
///
/// For each index vector `r` and offsets `g`, the box per coordinate is
/// `[[gamma]_{r_j - 1} + g_j b^{-r_j}, [gamma]_{r_j - 1} + (g_j + 1) b^{-r_j})`.
/// The union is exactly the anchored box; the volume identity is what the
/// tests pin down.
pub fn partition_boxes(gamma: &GammaSpec) -> Vec<PartitionBox> {
    let index_sets: Vec<Vec<u32>> = (0..gamma.s)
        .map(|j| gamma.index_set(j).into_iter().collect())
        .collect();
    let mut out = Vec::new();
    let mut indices = vec![0usize; gamma.s];
    'outer: loop {
        let r: Vec<u32> = indices
            .iter()
            .enumerate()
            .map(|(j, &i)| index_sets[j][i])
            .collect();
        // Enumerate offset vectors g, lexicographically.
        let digit_counts: Vec<u32> = r
            .iter()
            .enumerate()
            .map(|(j, &rj)| gamma.digit(j, rj))
            .collect();
        let mut offsets = vec![0u32; gamma.s];
        loop {
            let cells: Vec<u64> = r
                .iter()
                .enumerate()
                .map(|(j, &rj)| {
                    let prefix = gamma.prefix_int(j, rj - 1);
                    (prefix * gamma.base as u128 + offsets[j] as u128) as u64
                })
                .collect();
            let elem = ElementaryBox::new(gamma.base, r.clone(), cells)
                .expect("partition cells are in range");
            out.push(PartitionBox {
                indices: r.clone(),
                offsets: offsets.clone(),
                elem,
            });
            // Advance g.
            let mut j = gamma.s;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                offsets[j] += 1;
                if offsets[j] < digit_counts[j] {
                    break;
                }
                offsets[j] = 0;
            }
            if offsets.iter().all(|&g| g == 0) {
                break;
            }
        }
        // Advance r.
        let mut j = gamma.s;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            indices[j] += 1;
            if indices[j] < index_sets[j].len() {
                break;
            }
            indices[j] = 0;
        }
    }
    out
}

/// Index vectors of `R_1 x ... x R_s` grouped by their order `sum r_j`
/// relative to `m`: at most `m`, inside the forbidden band
/// `(m, m + s)`, or at least `m + s`; the fourth group collects order
/// exactly `m + alpha`.
#[derive(Clone, Debug)]
pub struct IndexPartition {
    pub low: Vec<Vec<u32>>,
    pub band: Vec<Vec<u32>>,
    pub high: Vec<Vec<u32>>,
    pub at_alpha: Vec<Vec<u32>>,
}

impl IndexPartition {
    pub fn from_gamma(gamma: &GammaSpec, alpha: u32) -> Self {
        let index_sets: Vec<Vec<u32>> = (0..gamma.s)
            .map(|j| gamma.index_set(j).into_iter().collect())
            .collect();
        let m = gamma.m;
        let s = gamma.s as u32;
        let mut part = IndexPartition {
            low: Vec::new(),
            band: Vec::new(),
            high: Vec::new(),
            at_alpha: Vec::new(),
        };
        let mut cursor = vec![0usize; gamma.s];
        loop {
            let r: Vec<u32> = cursor
                .iter()
                .enumerate()
                .map(|(j, &i)| index_sets[j][i])
                .collect();
            let order: u32 = r.iter().sum();
            if order <= m {
                part.low.push(r.clone());
            } else if order < m + s {
                part.band.push(r.clone());
            } else {
                part.high.push(r.clone());
            }
            if order == m + alpha {
                part.at_alpha.push(r);
            }
            let mut j = gamma.s;
            loop {
                if j == 0 {
                    return part;
                }
                j -= 1;
                cursor[j] += 1;
                if cursor[j] < index_sets[j].len() {
                    break;
                }
                cursor[j] = 0;
            }
        }
    }
}

/// Per-box record of the decomposition.
#[derive(Clone, Debug)]
pub struct BoxCount {
    pub indices: Vec<u32>,
    pub offsets: Vec<u32>,
    pub count: u64,
    pub volume: Rational,
}

/// Exact split of the normalized local discrepancy at `gamma` into the
/// contributions of the three order groups.
#[derive(Clone, Debug)]
pub struct DeltaDecomposition {
    pub delta1: Rational,
    pub delta2: Rational,
    pub delta3: Rational,
    pub per_box: Vec<BoxCount>,
    pub partition: IndexPartition,
    /// Direct one-pass evaluation of the same local discrepancy, for the
    /// exact cross-check `delta1 + delta2 + delta3 = direct.normalized`.
    pub direct: DiscrepancyValue,
}

impl DeltaDecomposition {
    pub fn total(&self) -> Rational {
        &self.delta1 + &self.delta2 + &self.delta3
    }
}

/// Decomposes the normalized local discrepancy of a verified net at `gamma`
/// along the box partition. The fourth index group uses `alpha = s`.
pub fn delta_decomposition(set: &PointSet, gamma: &GammaSpec) -> Result<DeltaDecomposition> {
    let base = set.common_base()?;
    if base != gamma.base {
        return Err(Error::BaseMismatch(gamma.base, base));
    }
    if set.dimension() != gamma.s {
        return Err(Error::DimensionMismatch {
            expected: gamma.s,
            got: set.dimension(),
        });
    }
    let verdict = is_net(set, 0, gamma.m, base)?;
    if !verdict.is_net {
        return Err(Error::ConstraintViolated(format!(
            "point set is not a net of order {} at quality 0 in base {base}",
            gamma.m
        )));
    }
    let n = rat_int(set.len() as i64);
    let m = gamma.m;
    let s = gamma.s as u32;

    let mut delta1 = Rational::zero();
    let mut delta2 = Rational::zero();
    let mut delta3 = Rational::zero();
    let mut per_box = Vec::new();
    for pb in partition_boxes(gamma) {
        let count = count_in_elementary(set, &pb.elem)?;
        let volume = pb.elem.volume();
        let term = rat_int(count as i64) / &n - &volume;
        let order: u32 = pb.indices.iter().sum();
        if order <= m {
            delta1 += &term;
        } else if order < m + s {
            delta2 += &term;
        } else {
            delta3 += &term;
        }
        per_box.push(BoxCount {
            indices: pb.indices,
            offsets: pb.offsets,
            count,
            volume,
        });
    }
    let direct = local_discrepancy(set, &gamma.anchored_box())?;
    Ok(DeltaDecomposition {
        delta1,
        delta2,
        delta3,
        per_box,
        partition: IndexPartition::from_gamma(gamma, s),
        direct,
    })
}

/// Constraint constants for the general anchored-box bound.
///
/// `delta = None` works in the limit of an arbitrarily large constraint
/// constant, which requires the forbidden order band to be empty.
#[derive(Clone, Debug)]
pub struct LevinNetParams {
    pub alpha: u32,
    pub beta: Rational,
    pub delta: Option<Rational>,
}

impl LevinNetParams {
    pub fn new(alpha: u32, beta: Rational, delta: Option<Rational>) -> Result<Self> {
        if !beta.is_positive() {
            return Err(Error::InvalidParameter("beta must be positive".into()));
        }
        if let Some(d) = &delta {
            if !d.is_positive() {
                return Err(Error::InvalidParameter("delta must be positive".into()));
            }
        }
        Ok(Self { alpha, beta, delta })
    }

    /// The instantiation used by the dense-anchor construction:
    /// `alpha = s`, `beta = (4 s^2 (s-1)^2)^{s-1} / (2s-3)^{s-1}`, limit delta.
    pub fn dense_anchor(s: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::UnsupportedDimension(s));
        }
        let s_i = s as i64;
        let beta_base = rat_int(4 * s_i * s_i * (s_i - 1) * (s_i - 1)) / rat_int(2 * s_i - 3);
        let mut beta = Rational::one();
        for _ in 0..s - 1 {
            beta *= &beta_base;
        }
        Self::new(s as u32, beta, None)
    }
}

/// Verdict of the general anchored-box check.
#[derive(Clone, Debug)]
pub struct Lemma31Report {
    /// Normalized local discrepancy at the anchor, computed directly.
    pub delta_normalized: Rational,
    /// The guaranteed upper bound (negative when the constraints hold).
    pub bound: Rational,
    /// `delta_normalized <= bound`.
    pub holds: bool,
    pub band_len: usize,
    pub at_alpha_len: usize,
}

/// Checks the constraints of the general anchored-box bound and evaluates it.
///
/// Preconditions (each names its own diagnostic on failure):
/// - some point of the set lies in `prod [gamma_j, gamma_j + b^{-max R_j})`;
/// - the forbidden band `m+1 <= order < m+s` holds at most `m^{s-1} / delta`
///   index vectors (`= 0` in the limit mode);
/// - order `m + alpha` is taken by at least `m^{s-1} / beta` index vectors;
/// - `delta > b^alpha (b^{s-1} - 1) beta / b^{s-1}` when finite.
pub fn lemma31_check(
    set: &PointSet,
    gamma: &GammaSpec,
    params: &LevinNetParams,
) -> Result<Lemma31Report> {
    let base = set.common_base()?;
    if base != gamma.base {
        return Err(Error::BaseMismatch(gamma.base, base));
    }
    if set.dimension() != gamma.s {
        return Err(Error::DimensionMismatch {
            expected: gamma.s,
            got: set.dimension(),
        });
    }
    let s = gamma.s as u32;
    let m = gamma.m;
    if params.alpha < s {
        return Err(Error::ConstraintViolated(format!(
            "alpha = {} must be at least s = {s}",
            params.alpha
        )));
    }

    // m^{s-1}, (b-1)^s and friends as exact rationals.
    let m_pow = rat_int(m as i64).pow(s as i32 - 1);
    let b_minus_1_pow = rat_int(base as i64 - 1).pow(s as i32);
    let b_pow_sm1 = rat_int(base as i64).pow(s as i32 - 1);
    let b_pow_alpha = rat_int(base as i64).pow(params.alpha as i32);

    if let Some(delta) = &params.delta {
        let threshold = &b_pow_alpha * (&b_pow_sm1 - Rational::one()) * &params.beta / &b_pow_sm1;
        if delta <= &threshold {
            return Err(Error::ConstraintViolated(format!(
                "delta = {delta} must exceed b^alpha (b^{{s-1}} - 1) beta / b^{{s-1}} = {threshold}"
            )));
        }
    }

    // Anchor prefix condition: some point shares gamma's digits up to max R_j
    // in every coordinate.
    let max_orders: Vec<u32> = (0..gamma.s)
        .map(|j| *gamma.index_set(j).iter().next_back().expect("nonempty"))
        .collect();
    let anchor_prefixes: Vec<u128> = max_orders
        .iter()
        .enumerate()
        .map(|(j, &d)| gamma.prefix_int(j, d))
        .collect();
    let anchored_point_exists = set.iter().any(|p| {
        max_orders
            .iter()
            .enumerate()
            .all(|(j, &d)| p.coord(j).prefix_int(d as usize) == anchor_prefixes[j])
    });
    if !anchored_point_exists {
        return Err(Error::ConstraintViolated(
            "no point of the set lies in prod [gamma_j, gamma_j + b^{-max R_j})".into(),
        ));
    }

    let partition = IndexPartition::from_gamma(gamma, params.alpha);
    let band_len = partition.band.len();
    let at_alpha_len = partition.at_alpha.len();

    match &params.delta {
        Some(delta) => {
            if rat_int(band_len as i64) > &m_pow / delta {
                return Err(Error::ConstraintViolated(format!(
                    "forbidden band holds {band_len} index vectors, above m^{{s-1}}/delta"
                )));
            }
        }
        None => {
            if band_len != 0 {
                return Err(Error::ConstraintViolated(format!(
                    "limit mode needs an empty forbidden band, found {band_len} index vectors"
                )));
            }
        }
    }
    if rat_int(at_alpha_len as i64) < &m_pow / &params.beta {
        return Err(Error::ConstraintViolated(format!(
            "only {at_alpha_len} index vectors at order m + alpha, below m^{{s-1}}/beta"
        )));
    }

    // bound = -(m^{s-1} / b^m) (-(b-1)^s/delta (b^{s-1}-1)/b^{s-1}
    //                           + (b-1)^s / (beta b^alpha))
    let positive_part = &b_minus_1_pow / (&params.beta * &b_pow_alpha);
    let negative_part = match &params.delta {
        Some(delta) => {
            &b_minus_1_pow / delta * (&b_pow_sm1 - Rational::one()) / &b_pow_sm1
        }
        None => Rational::zero(),
    };
    let paren = positive_part - negative_part;
    if !paren.is_positive() {
        return Err(Error::ConstraintViolated(
            "bound is not negative under these constants".into(),
        ));
    }
    let bound = -(&m_pow * inv_pow(base, m)) * paren;

    let inside = count_below_anchor(set, gamma)?;
    let volume: Rational = gamma.values().iter().product();
    let delta_normalized = rat_int(inside as i64) / rat_int(set.len() as i64) - volume;
    let holds = delta_normalized <= bound;
    Ok(Lemma31Report {
        delta_normalized,
        bound,
        holds,
        band_len,
        at_alpha_len,
    })
}

/// Builds an anchor close to `x` whose index sets avoid the forbidden order
/// band and hit order `m + s` often.
///
/// Digits up to `k = [m / (2s(s-1))]` are copied from `x`; beyond that, each
/// coordinate places ones on an arithmetic progression with step `s`, the
/// last coordinate's progression shifted so that only multiples of `s` above
/// `m` are reachable.
pub fn nearest_gamma(x: &BAdicPoint, m: u32, s: usize, base: u32) -> Result<GammaSpec> {
    if x.dimension() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            got: x.dimension(),
        });
    }
    if s < 2 {
        return Err(Error::UnsupportedDimension(s));
    }
    for c in x.coords() {
        if c.base() != base {
            return Err(Error::BaseMismatch(base, c.base()));
        }
    }
    let s_u = s as u32;
    let least_m = 2u64 * (s as u64).pow(s_u) * (s as u64 - 1).pow(s_u);
    if (m as u64) < least_m {
        return Err(Error::InvalidParameter(format!(
            "m = {m} too small; the construction needs m >= 2 s^s (s-1)^s = {least_m}"
        )));
    }

    let k = m / (2 * s_u * (s_u - 1));
    let m_bar = m * (2 * s_u - 3) / (2 * s_u * s_u * (s_u - 1));
    debug_assert!(m_bar >= 1);

    let mut digits = Vec::with_capacity(s);
    for i in 0..s {
        let mut per_coord = BTreeMap::new();
        // Copied prefix: the nonzero digits of x at positions <= k.
        for r in 1..=k {
            let d = x.coord(i).digit(r as usize);
            if d != 0 {
                per_coord.insert(r, d);
            }
        }
        // Progression part, digit 1 throughout.
        let offset = if i + 1 < s {
            k
        } else {
            m - (s_u - 1) * (k + s_u * m_bar)
        };
        for j in 1..=m_bar {
            let t = offset + s_u * j;
            debug_assert!(t > k && t <= m);
            per_coord.insert(t, 1);
        }
        digits.push(per_coord);
    }
    let gamma = GammaSpec::new(base, m, digits)?;

    // Membership conditions: empty forbidden band, enough index vectors at
    // order m + s.
    let partition = IndexPartition::from_gamma(&gamma, s_u);
    if !partition.band.is_empty() {
        return Err(Error::ConstraintViolated(format!(
            "constructed anchor has {} index vectors in the forbidden band",
            partition.band.len()
        )));
    }
    let at_top: usize = partition
        .high
        .iter()
        .filter(|r| r.iter().sum::<u32>() == m + s_u)
        .count();
    let s_i = s as i64;
    let required = rat_int(m as i64).pow(s as i32 - 1) * rat_int(2 * s_i - 3).pow(s as i32 - 1)
        / rat_int(4 * s_i * s_i * (s_i - 1) * (s_i - 1)).pow(s as i32 - 1);
    if rat_int(at_top as i64) < required {
        return Err(Error::ConstraintViolated(format!(
            "only {at_top} index vectors at order m + s, below the required density"
        )));
    }
    Ok(gamma)
}
