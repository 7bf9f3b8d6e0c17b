//! Closed-form spectra of the three walks and the generator graph, per
//! irreducible constituent of A_n and aggregated over the regular
//! representation.
//!
//! Labels: non-self-conjugate shapes appear once, under the fat member of
//! the conjugate pair (the spectra agree). Self-conjugate shapes split into
//! a plus and a minus constituent of half the dimension; for every quantity
//! computed here the two constituents carry identical data, obtained by
//! halving per eigenvalue value.
//!
//! Eigenvalue origin (one eigenvalue per standard tableau, grouped by the
//! cells of n and n-1 with contents x = content_n, y = content_n1):
//!
//! - transpose-top-2 walk: (x + y)/(2n-3) when the cells share a row,
//!   -(x + y)/(2n-3) when they share a column, and +-(x + y)/(2n-3) in
//!   opposite pairs otherwise (sign + on the group with x > y);
//! - three-cycle walk: the normalized character ratio, one scalar per
//!   shape, valid as a closed form only for n > 4;
//! - star-three-cycle walk: (x')^2 where x' = content of the cell of n
//!   over (n-1); tableau pairs from opposite-orientation groups form 2x2
//!   upper-triangular blocks [[a^2, (a+b)/kappa], [0, b^2]] with
//!   a = x/(n-1), b = y/(n-1), kappa = n-1;
//! - generator graph: (2n-3) times the transpose-top-2 eigenvalue, minus 1.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::characters::normalized_three_cycle;
use crate::combinatorics::{
    check_n, corner_pair_groups, enumerate_partitions, CornerPairGroup, PairRelation, Partition,
};
use crate::{Error, Result, Walk};

/// Which constituent of the shape's irrep a label refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrrepVariant {
    /// A non-self-conjugate shape, which stays irreducible on A_n.
    Whole,
    Plus,
    Minus,
}

impl IrrepVariant {
    pub fn token(self) -> &'static str {
        match self {
            IrrepVariant::Whole => "whole",
            IrrepVariant::Plus => "plus",
            IrrepVariant::Minus => "minus",
        }
    }
}

/// A canonical irrep label: fat shapes carry `Whole`, self-conjugate shapes
/// carry `Plus` or `Minus`. Thin shapes are labeled by their conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    shape: Partition,
    variant: IrrepVariant,
}

impl IrrepLabel {
    pub fn new(shape: Partition, variant: IrrepVariant) -> Result<Self> {
        use crate::combinatorics::ShapeClass::*;
        match (shape.classify(), variant) {
            (SelfConjugate, IrrepVariant::Plus | IrrepVariant::Minus) => {
                Ok(IrrepLabel { shape, variant })
            }
            (SelfConjugate, IrrepVariant::Whole) => Err(Error::InvalidLabel(format!(
                "{shape} is self-conjugate and splits; use {shape}+ or {shape}-"
            ))),
            (FatNonSelfConjugate, IrrepVariant::Whole) => Ok(IrrepLabel { shape, variant }),
            (FatNonSelfConjugate, _) => Err(Error::InvalidLabel(format!(
                "{shape} does not split; drop the sign"
            ))),
            (ThinNonSelfConjugate, _) => Err(Error::InvalidLabel(format!(
                "{shape} is thin; label by its conjugate shape"
            ))),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn variant(&self) -> IrrepVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    fn is_split(&self) -> bool {
        self.variant != IrrepVariant::Whole
    }
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = match self.variant {
            IrrepVariant::Whole => "",
            IrrepVariant::Plus => "+",
            IrrepVariant::Minus => "-",
        };
        write!(f, "{}{}", self.shape, sign)
    }
}

impl std::str::FromStr for IrrepLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, variant) = match s.as_bytes().last() {
            Some(b'+') => (&s[..s.len() - 1], IrrepVariant::Plus),
            Some(b'-') => (&s[..s.len() - 1], IrrepVariant::Minus),
            _ => (s, IrrepVariant::Whole),
        };
        IrrepLabel::new(body.parse()?, variant)
    }
}

/// All canonical labels for a given n, in reverse-lexicographic shape order
/// with plus before minus.
pub fn canonical_labels(n: usize) -> Result<Vec<IrrepLabel>> {
    use crate::combinatorics::ShapeClass::*;
    let mut out = Vec::new();
    for shape in enumerate_partitions(n)? {
        match shape.classify() {
            FatNonSelfConjugate => out.push(IrrepLabel::new(shape, IrrepVariant::Whole)?),
            SelfConjugate => {
                out.push(IrrepLabel::new(shape.clone(), IrrepVariant::Plus)?);
                out.push(IrrepLabel::new(shape, IrrepVariant::Minus)?);
            }
            ThinNonSelfConjugate => {}
        }
    }
    Ok(out)
}

/// An eigenvalue multiplicity: the log is always present, the exact count
/// only while it is cheap to carry (see the per-operation policy).
#[derive(Debug, Clone)]
pub struct Count {
    pub log: f64,
    pub exact: Option<BigUint>,
}

impl Count {
    fn from_exact(exact: BigUint) -> Self {
        let log = big_ln(&exact);
        Count {
            log,
            exact: Some(exact),
        }
    }

    fn halved(self) -> Self {
        let exact = self.exact.map(|e| {
            assert!((&e % 2u32).is_zero(), "count must be even to halve");
            e >> 1
        });
        Count {
            log: self.log - std::f64::consts::LN_2,
            exact,
        }
    }
}

/// Exact counts print as plain integers, log-only counts as
/// `log:<natural log>` — the same convention the CLI emits.
impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact {
            Some(exact) => write!(f, "{exact}"),
            None => write!(f, "log:{:.16e}", self.log),
        }
    }
}

fn big_ln(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    // Exact for small counts; for larger ones split off the high 64 bits.
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v.ln();
        }
    }
    let bits = x.bits();
    let top = (x >> (bits - 64)).to_f64().expect("64-bit value");
    top.ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

/// One eigenvalue with its multiplicity.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub value: Ratio<BigInt>,
    pub count: Count,
}

/// A diagonalizable spectrum: eigenvalues sorted in decreasing order.
#[derive(Debug, Clone)]
pub struct IrrepSpectrum {
    pub label: IrrepLabel,
    pub entries: Vec<SpectrumEntry>,
}

/// A 2x2 upper-triangular block [[a^2, (a+b)/kappa], [0, b^2]] appearing
/// `count` times; its eigenvalues are a^2 and b^2.
#[derive(Debug, Clone)]
pub struct TwoByTwoBlock {
    pub a: Ratio<BigInt>,
    pub b: Ratio<BigInt>,
    pub kappa: u64,
    pub count: Count,
}

/// Spectrum of the star-three-cycle walk on one irrep: diagonal singles
/// plus 2x2 blocks.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub label: IrrepLabel,
    pub singles: Vec<SpectrumEntry>,
    pub blocks: Vec<TwoByTwoBlock>,
}

impl BlockSpectrum {
    /// The eigenvalue multiset, blocks expanded to their diagonal.
    pub fn eigenvalue_entries(&self) -> Vec<SpectrumEntry> {
        let mut acc: BTreeMap<Ratio<BigInt>, Count> = BTreeMap::new();
        for e in &self.singles {
            merge_count(&mut acc, e.value.clone(), e.count.clone());
        }
        for b in &self.blocks {
            merge_count(&mut acc, &b.a * &b.a, b.count.clone());
            merge_count(&mut acc, &b.b * &b.b, b.count.clone());
        }
        into_sorted_entries(acc)
    }
}

fn merge_count(acc: &mut BTreeMap<Ratio<BigInt>, Count>, value: Ratio<BigInt>, count: Count) {
    match acc.entry(value) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(count);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let cur = o.get_mut();
            cur.log = log_add(cur.log, count.log);
            cur.exact = match (cur.exact.take(), count.exact) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
        }
    }
}

pub(crate) fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

fn into_sorted_entries(acc: BTreeMap<Ratio<BigInt>, Count>) -> Vec<SpectrumEntry> {
    acc.into_iter()
        .rev()
        .map(|(value, count)| SpectrumEntry { value, count })
        .collect()
}

/// Spectrum of the transpose-top-2 walk on one irrep. Requires n >= 4.
pub fn tt2r_spectrum(label: &IrrepLabel) -> Result<IrrepSpectrum> {
    let n = label.n();
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "transpose-top-2 spectrum needs n >= 4, got {n}"
        )));
    }
    let den = BigInt::from(2 * n as i64 - 3);
    let mut acc: BTreeMap<Ratio<BigInt>, Count> = BTreeMap::new();
    for g in corner_pair_groups(label.shape())? {
        let value = Ratio::new(BigInt::from(tt2r_numerator(&g)), den.clone());
        merge_count(&mut acc, value, group_count(&g));
    }
    let entries = finish_entries(acc, label.is_split());
    Ok(IrrepSpectrum {
        label: label.clone(),
        entries,
    })
}

/// Signed numerator x + y, -(x + y), or +-(x + y) by group relation.
fn tt2r_numerator(g: &CornerPairGroup) -> i64 {
    let s = g.content_n + g.content_n1;
    match g.relation {
        PairRelation::SameRow => s,
        PairRelation::SameColumn => -s,
        PairRelation::Neither => {
            if g.content_n > g.content_n1 {
                s
            } else {
                -s
            }
        }
    }
}

fn group_count(g: &CornerPairGroup) -> Count {
    Count {
        log: g.log_count,
        exact: g.exact_count.clone(),
    }
}

/// Halves every per-value count for split labels; counts per value are
/// even there because conjugation pairs up the contributing tableaux.
fn finish_entries(acc: BTreeMap<Ratio<BigInt>, Count>, split: bool) -> Vec<SpectrumEntry> {
    let entries = into_sorted_entries(acc);
    if !split {
        return entries;
    }
    entries
        .into_iter()
        .map(|e| SpectrumEntry {
            value: e.value,
            count: e.count.halved(),
        })
        .collect()
}

/// Spectrum of the three-cycle walk on one irrep: a single scalar, the
/// normalized character ratio. The closed form is established only for
/// n > 4; below that the brute-force oracle is the reference.
pub fn three_cycle_spectrum(label: &IrrepLabel) -> Result<IrrepSpectrum> {
    let n = label.n();
    if n <= 4 {
        return Err(Error::FormulaUnavailable {
            n,
            hint: "the scalar form needs n > 4; use group_oracle::brute_spectrum",
        });
    }
    let value = normalized_three_cycle(label.shape())?;
    let dim = label.shape().dimension();
    let count = if dim.bits() <= 512 {
        Count::from_exact(dim)
    } else {
        Count {
            log: label.shape().log_dimension(),
            exact: None,
        }
    };
    let count = if label.is_split() { count.halved() } else { count };
    Ok(IrrepSpectrum {
        label: label.clone(),
        entries: vec![SpectrumEntry { value, count }],
    })
}

/// Block spectrum of the star-three-cycle walk on one irrep. Requires
/// n >= 3.
///
/// Whole labels: every corner-pair group in the `Neither` relation with
/// content_n > content_n1 becomes one block (its orientation partner
/// supplies the paired tableaux); same-row and same-column groups become
/// singles. Split labels: blocks are grouped into mirror classes
/// {(a, b), (-b, -a)}; each class keeps the count of either member (they
/// are equal), under the representative with a + b > 0. Self-mirrored
/// classes (b = -a) act as the scalar a^2 and are reported as singles.
pub fn tprime_blocks(label: &IrrepLabel) -> Result<BlockSpectrum> {
    let n = label.n();
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "star-cycle block spectrum needs n >= 4, got {n}"
        )));
    }
    let kappa = n as u64 - 1;
    let den = BigInt::from(kappa);
    let ratio = |num: i64| Ratio::new(BigInt::from(num), den.clone());
    let groups = corner_pair_groups(label.shape())?;

    let mut singles: BTreeMap<Ratio<BigInt>, Count> = BTreeMap::new();
    let mut split_singles: BTreeMap<Ratio<BigInt>, Count> = BTreeMap::new();
    let mut blocks = Vec::new();
    // Ordered Neither counts by (content_n, content_n1), for the mirror
    // assertion below.
    let neither: Vec<&CornerPairGroup> = groups
        .iter()
        .filter(|g| g.relation == PairRelation::Neither)
        .collect();

    for g in &groups {
        match g.relation {
            PairRelation::SameRow | PairRelation::SameColumn => {
                let v = ratio(g.content_n);
                merge_count(&mut singles, &v * &v, group_count(g));
            }
            PairRelation::Neither => {
                let x = g.content_n;
                let y = g.content_n1;
                if x < y {
                    continue; // counted at the orientation partner
                }
                if !label.is_split() {
                    blocks.push(TwoByTwoBlock {
                        a: ratio(x),
                        b: ratio(y),
                        kappa,
                        count: group_count(g),
                    });
                } else if x + y == 0 {
                    // Scalar class: the block degenerates to a^2 * identity
                    // and contributes `count` singles per constituent.
                    let v = ratio(x);
                    merge_count(&mut split_singles, &v * &v, group_count(g));
                } else if x + y > 0 {
                    // Canonical mirror representative; its image (-y, -x)
                    // has the same count.
                    let partner = neither
                        .iter()
                        .find(|h| h.content_n == -y && h.content_n1 == -x)
                        .expect("self-conjugate shapes contain the mirror group");
                    assert_mirror_counts(g, partner);
                    blocks.push(TwoByTwoBlock {
                        a: ratio(x),
                        b: ratio(y),
                        kappa,
                        count: group_count(g),
                    });
                }
            }
        }
    }

    let mut singles = finish_entries(singles, label.is_split());
    if label.is_split() {
        // The scalar-class singles are per-constituent counts already.
        let extra = into_sorted_entries(split_singles);
        let mut acc: BTreeMap<Ratio<BigInt>, Count> = BTreeMap::new();
        for e in singles.into_iter().chain(extra) {
            merge_count(&mut acc, e.value, e.count);
        }
        singles = into_sorted_entries(acc);
    }
    blocks.sort_by_key(|p| std::cmp::Reverse((p.a.clone(), p.b.clone())));
    Ok(BlockSpectrum {
        label: label.clone(),
        singles,
        blocks,
    })
}

fn assert_mirror_counts(g: &CornerPairGroup, h: &CornerPairGroup) {
    if let (Some(a), Some(b)) = (&g.exact_count, &h.exact_count) {
        assert_eq!(a, b, "mirror groups must have equal counts");
    }
    assert!(
        (g.log_count - h.log_count).abs() <= 1e-9 * g.log_count.abs().max(1.0),
        "mirror groups must have equal counts"
    );
}

/// Iterates `(value_numerator, relation-signed)` corner-pair eigenvalue
/// data aggregated over the regular representation: each shape contributes
/// its dimension times each group count, and the grand total is halved
/// (conjugate shapes carry equal data; self-conjugate shapes contribute
/// both constituents).
///
/// Exact multiplicities are kept for n <= 20, logs always.
pub fn regular_spectrum_aggregate(walk: Walk, n: usize) -> Result<Vec<SpectrumEntry>> {
    let min = match walk {
        Walk::TransposeTop2 => 4,
        Walk::ThreeCycle => 5,
        Walk::StarThreeCycle => 4,
    };
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "aggregate spectrum for {} needs n >= {min}, got {n}",
            walk.token()
        )));
    }
    check_n(n)?;
    if n <= 20 {
        aggregate_exact(walk, n)
    } else {
        aggregate_log(walk, n)
    }
}

fn aggregate_exact(walk: Walk, n: usize) -> Result<Vec<SpectrumEntry>> {
    let mut acc: BTreeMap<Ratio<BigInt>, BigUint> = BTreeMap::new();
    let mut add = |value: Ratio<BigInt>, count: BigUint| {
        *acc.entry(value).or_default() += count;
    };
    for shape in enumerate_partitions(n)? {
        let dim = shape.dimension();
        match walk {
            Walk::TransposeTop2 => {
                let den = BigInt::from(2 * n as i64 - 3);
                for g in corner_pair_groups(&shape)? {
                    let value = Ratio::new(BigInt::from(tt2r_numerator(&g)), den.clone());
                    let count = g.exact_count.clone().expect("small n keeps exact counts");
                    add(value, &dim * count);
                }
            }
            Walk::ThreeCycle => {
                add(three_cycle_ratio_exact(shape.parts(), n), &dim * &dim);
            }
            Walk::StarThreeCycle => {
                let den = BigInt::from(n as i64 - 1);
                for corner in shape.removable_corners() {
                    let v = Ratio::new(BigInt::from(corner.content()), den.clone());
                    let inner_dim = shape.remove_corner(corner)?.dimension();
                    add(&v * &v, &dim * inner_dim);
                }
            }
        }
    }
    let entries = acc
        .into_iter()
        .rev()
        .map(|(value, total)| {
            assert!((&total % 2u32).is_zero(), "aggregate counts come in pairs");
            SpectrumEntry {
                value,
                count: Count::from_exact(total >> 1),
            }
        })
        .collect();
    Ok(entries)
}

fn aggregate_log(walk: Walk, n: usize) -> Result<Vec<SpectrumEntry>> {
    use crate::combinatorics::{
        conjugate_into, for_each_corner, for_each_corner_pair, for_each_partition, log_dim,
        LnTables, ShapeScratch,
    };
    let tables = LnTables::new(2 * n);
    let mut scratch = ShapeScratch::new();
    let mut acc: BTreeMap<Ratio<BigInt>, f64> = BTreeMap::new();
    let mut parts_buf: Vec<usize> = Vec::new();
    for_each_partition(n, |parts| {
        parts_buf.clear();
        parts_buf.extend_from_slice(parts);
        conjugate_into(&parts_buf, &mut scratch.conj);
        let log_dim_full = log_dim(&parts_buf, &scratch.conj, n, &tables);
        let mut add = |value: Ratio<BigInt>, log_count: f64| {
            let slot = acc.entry(value).or_insert(f64::NEG_INFINITY);
            *slot = log_add(*slot, log_dim_full + log_count);
        };
        match walk {
            Walk::TransposeTop2 => {
                let den = BigInt::from(2 * n as i64 - 3);
                for_each_corner_pair(&mut parts_buf, n, &tables, &mut scratch, |x, y, rel, lc| {
                    let num = match rel {
                        PairRelation::SameRow => x + y,
                        PairRelation::SameColumn => -(x + y),
                        PairRelation::Neither => {
                            if x > y {
                                x + y
                            } else {
                                -(x + y)
                            }
                        }
                    };
                    add(Ratio::new(BigInt::from(num), den.clone()), lc);
                });
            }
            Walk::ThreeCycle => {
                add(three_cycle_ratio_exact(&parts_buf, n), log_dim_full);
            }
            Walk::StarThreeCycle => {
                let den = BigInt::from(n as i64 - 1);
                for_each_corner(&mut parts_buf, n, &tables, &mut scratch, |x, lc| {
                    let v = Ratio::new(BigInt::from(x), den.clone());
                    add(&v * &v, lc);
                });
            }
        }
    });
    let entries = acc
        .into_iter()
        .rev()
        .map(|(value, log_total)| SpectrumEntry {
            value,
            count: Count {
                log: log_total - std::f64::consts::LN_2,
                exact: None,
            },
        })
        .collect();
    Ok(entries)
}

/// The normalized three-cycle character ratio through the content moments:
/// 3 (sum of squared contents - C(n,2)) / (n(n-1)(n-2)), exact in i64.
///
/// This is the fast route used in sweeps; the strip-peeling character in
/// [`crate::characters`] is the reference it is tested against.
pub(crate) fn three_cycle_ratio_exact(parts: &[usize], n: usize) -> Ratio<BigInt> {
    let mut sum_sq: i64 = 0;
    for (i, &p) in parts.iter().enumerate() {
        if p == 0 {
            break;
        }
        for j in 0..p {
            let c = j as i64 - i as i64;
            sum_sq += c * c;
        }
    }
    let n = n as i64;
    let num = 3 * (sum_sq - n * (n - 1) / 2);
    Ratio::new(BigInt::from(num), BigInt::from(n * (n - 1) * (n - 2)))
}

/// Spectrum of the generator graph on n symbols: the adjacency eigenvalue
/// multiset is the affine image (2n-3) e - 1 of the transpose-top-2 walk
/// spectrum e over the regular representation. Requires n >= 3. Integer
/// eigenvalues, sorted decreasing; exact multiplicities for n <= 20.
pub fn ag_spectrum(n: usize) -> Result<Vec<(i64, Count)>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "alternating group graph needs n >= 3, got {n}"
        )));
    }
    check_n(n)?;
    let ag_value = |x: i64, y: i64, rel: PairRelation| match rel {
        PairRelation::SameRow => x + y - 1,
        PairRelation::SameColumn => -(x + y) - 1,
        PairRelation::Neither => {
            if x > y {
                x + y - 1
            } else {
                -(x + y) - 1
            }
        }
    };
    if n <= 20 {
        let mut exact: BTreeMap<i64, BigUint> = BTreeMap::new();
        for shape in enumerate_partitions(n)? {
            let dim = shape.dimension();
            for g in corner_pair_groups(&shape)? {
                let value = ag_value(g.content_n, g.content_n1, g.relation);
                let count = g.exact_count.expect("small n keeps exact counts");
                *exact.entry(value).or_default() += &dim * count;
            }
        }
        let out = exact
            .into_iter()
            .rev()
            .map(|(value, total)| {
                assert!((&total % 2u32).is_zero(), "aggregate counts come in pairs");
                (value, Count::from_exact(total >> 1))
            })
            .collect();
        return Ok(out);
    }
    use crate::combinatorics::{
        conjugate_into, for_each_corner_pair, for_each_partition, log_dim, LnTables, ShapeScratch,
    };
    let tables = LnTables::new(2 * n);
    let mut scratch = ShapeScratch::new();
    let mut logs: BTreeMap<i64, f64> = BTreeMap::new();
    let mut parts_buf: Vec<usize> = Vec::new();
    for_each_partition(n, |parts| {
        parts_buf.clear();
        parts_buf.extend_from_slice(parts);
        conjugate_into(&parts_buf, &mut scratch.conj);
        let log_dim_full = log_dim(&parts_buf, &scratch.conj, n, &tables);
        for_each_corner_pair(&mut parts_buf, n, &tables, &mut scratch, |x, y, rel, lc| {
            let slot = logs.entry(ag_value(x, y, rel)).or_insert(f64::NEG_INFINITY);
            *slot = log_add(*slot, log_dim_full + lc);
        });
    });
    let out = logs
        .into_iter()
        .rev()
        .map(|(value, log_total)| {
            (
                value,
                Count {
                    log: log_total - std::f64::consts::LN_2,
                    exact: None,
                },
            )
        })
        .collect();
    Ok(out)
}

/// The transpose-top-2 eigenvalue attached to one standard tableau: the
/// content sum of the cells of n and n-1 over (2n-3), with sign + exactly
/// when content(n) > content(n-1). One rule covers all three relations:
/// same-row tableaux always take +, same-column always -, and each
/// opposite-orientation tableau pair picks up one + and one -. Used by the
/// enumeration-based spectrum tests.
pub fn tableau_tt2r_value(t: &crate::combinatorics::StandardTableau) -> Ratio<BigInt> {
    let n = t.shape().n();
    assert!(n >= 2);
    let cn = t.entry_cell(n).content();
    let cn1 = t.entry_cell(n - 1).content();
    let num = if cn > cn1 { cn + cn1 } else { -(cn + cn1) };
    Ratio::new(BigInt::from(num), BigInt::from(2 * n as i64 - 3))
}

/// Entry counts as one trivial check: the aggregate multiplicities over any
/// walk sum to n!/2.
pub fn aggregate_total_count(entries: &[SpectrumEntry]) -> Option<BigUint> {
    let mut total = BigUint::zero();
    for e in entries {
        total += e.count.exact.clone()?;
    }
    Some(total)
}

impl SpectrumEntry {
    /// Eigenvalue as f64 (num/den through 53-bit rounding).
    pub fn value_f64(&self) -> f64 {
        ratio_to_f64(&self.value)
    }
}

pub(crate) fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}

