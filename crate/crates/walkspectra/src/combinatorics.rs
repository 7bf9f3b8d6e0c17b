//! Partitions, Young diagrams, hook-length dimensions, corner data, and
//! standard tableaux.
//!
//! Conventions used everywhere in this crate:
//!
//! - cells are 1-based `(row, col)` pairs and the content of a cell is
//!   `col - row`;
//! - partitions are weakly decreasing with strictly positive parts;
//! - partition lists are in reverse-lexicographic order, `(n)` first and
//!   `(1, ..., 1)` last;
//! - a tableau is stored as the cell of each entry, so `cells[k]` is where
//!   `k + 1` sits.

use num_bigint::BigUint;
use num_traits::One;

use crate::{config, Error, Result};

/// A cell of a Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    /// Content `col - row`; the diagonal a cell sits on.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// How a shape relates to its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    SelfConjugate,
    /// Lexicographically above its conjugate.
    FatNonSelfConjugate,
    /// Lexicographically below its conjugate.
    ThinNonSelfConjugate,
}

/// An integer partition, weakly decreasing, parts >= 1. The empty partition
/// (of 0) is allowed and has dimension 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates weak decrease and positivity.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// First part; 0 for the empty partition.
    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let mut conj = vec![0usize; self.first_part()];
        for &p in &self.parts {
            for c in conj.iter_mut().take(p) {
                *c += 1;
            }
        }
        Partition { parts: conj }
    }

    /// Classification used to pick canonical irrep labels: a shape is fat
    /// when it is lexicographically above its conjugate, so conjugation
    /// swaps fat and thin and fixes the self-conjugate shapes.
    pub fn classify(&self) -> ShapeClass {
        let conj = self.conjugate();
        match self.parts.cmp(&conj.parts) {
            std::cmp::Ordering::Equal => ShapeClass::SelfConjugate,
            std::cmp::Ordering::Greater => ShapeClass::FatNonSelfConjugate,
            std::cmp::Ordering::Less => ShapeClass::ThinNonSelfConjugate,
        }
    }

    /// Exact number of standard tableaux, by the hook length formula.
    pub fn dimension(&self) -> BigUint {
        let n = self.n();
        let mut num = BigUint::one();
        for k in 2..=n {
            num *= BigUint::from(k);
        }
        let conj = self.conjugate();
        let mut den = BigUint::one();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                den *= BigUint::from(hook(&self.parts, conj.parts(), i, j));
            }
        }
        num / den
    }

    /// Natural log of the dimension, accurate to ~1e-13 relative.
    pub fn log_dimension(&self) -> f64 {
        let n = self.n();
        let tables = LnTables::new(n.max(self.first_part() + self.rows()));
        let conj = self.conjugate();
        log_dim(&self.parts, conj.parts(), n, &tables)
    }

    /// Cells whose removal leaves a partition, top row first.
    pub fn removable_corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            if i + 1 == self.parts.len() || p > self.parts[i + 1] {
                out.push(Cell { row: i + 1, col: p });
            }
        }
        out
    }

    /// Removes a removable corner; errors if the cell is not one.
    pub fn remove_corner(&self, cell: Cell) -> Result<Partition> {
        if !self.removable_corners().contains(&cell) {
            return Err(Error::InvalidArgument(format!(
                "{cell:?} is not a removable corner of {self}"
            )));
        }
        let mut parts = self.parts.clone();
        parts[cell.row - 1] -= 1;
        if parts[cell.row - 1] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }
}

impl std::fmt::Display for Partition {
    /// Dot-joined parts, e.g. `3.1`; the empty partition prints as `0`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("."))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split('.')
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of n in reverse-lexicographic order.
///
/// Requires `1 <= n <= WALKSPECTRA_MAX_N` (default 64).
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    check_n(n)?;
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        out.push(Partition {
            parts: parts.to_vec(),
        })
    });
    Ok(out)
}

/// Streaming form of [`enumerate_partitions`]; same order, no allocation
/// per shape beyond one scratch buffer. `n = 0` calls `f` once with `[]`.
pub(crate) fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) {
    let mut buf = Vec::with_capacity(n);
    rec_partitions(n, n, &mut buf, &mut f);
}

/// Streams exactly the partitions of `n` whose first part equals `first`;
/// the strata over `first = 1..=n` tile [`for_each_partition`] disjointly,
/// which is what makes the partition sweeps parallelizable.
pub(crate) fn for_each_partition_with_first(first: usize, n: usize, mut f: impl FnMut(&[usize])) {
    if first > n || first == 0 {
        return;
    }
    let mut buf = Vec::with_capacity(n);
    buf.push(first);
    rec_partitions(n - first, first, &mut buf, &mut f);
}

fn rec_partitions(remaining: usize, max_part: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if remaining == 0 {
        f(buf);
        return;
    }
    let top = remaining.min(max_part);
    for p in (1..=top).rev() {
        buf.push(p);
        rec_partitions(remaining - p, p, buf, f);
        buf.pop();
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    let limit = config::max_n();
    if n == 0 || n > limit {
        return Err(Error::SizeLimit {
            what: "n",
            requested: n as u64,
            limit: limit as u64,
        });
    }
    Ok(())
}

/// How the cells of the top two entries of a tableau pair relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairRelation {
    SameRow,
    SameColumn,
    Neither,
}

impl PairRelation {
    pub fn token(self) -> &'static str {
        match self {
            PairRelation::SameRow => "same_row",
            PairRelation::SameColumn => "same_column",
            PairRelation::Neither => "neither",
        }
    }
}

/// Standard tableaux grouped by where the top two entries sit.
///
/// `content_n` is the content of the cell of n, `content_n1` that of n - 1,
/// and `count` is the number of standard tableaux with those two cells
/// fixed, which equals the dimension of the shape with both cells removed.
#[derive(Debug, Clone)]
pub struct CornerPairGroup {
    pub content_n: i64,
    pub content_n1: i64,
    pub relation: PairRelation,
    pub log_count: f64,
    /// Present whenever the ambient dimension fits in 512 bits.
    pub exact_count: Option<BigUint>,
}

/// Groups the standard tableaux of `shape` by the (cell of n, cell of n-1)
/// pair. Requires n >= 2. Group order follows corner order: the cell of n
/// scans corners top to bottom, then the cell of n - 1 likewise.
///
/// The counts over all groups add up to the dimension of `shape`.
pub fn corner_pair_groups(shape: &Partition) -> Result<Vec<CornerPairGroup>> {
    let n = shape.n();
    if n < 2 {
        return Err(Error::SizeLimit {
            what: "corner_pair_groups n",
            requested: n as u64,
            limit: 1,
        });
    }
    check_n(n)?;
    let keep_exact = shape.dimension().bits() <= 512;
    let mut out = Vec::new();
    for beta in shape.removable_corners() {
        let inner = shape.remove_corner(beta)?;
        for gamma in inner.removable_corners() {
            let rest = inner.remove_corner(gamma)?;
            let relation = if gamma.row == beta.row {
                PairRelation::SameRow
            } else if gamma.col == beta.col {
                PairRelation::SameColumn
            } else {
                PairRelation::Neither
            };
            out.push(CornerPairGroup {
                content_n: beta.content(),
                content_n1: gamma.content(),
                relation,
                log_count: rest.log_dimension(),
                exact_count: keep_exact.then(|| rest.dimension()),
            });
        }
    }
    Ok(out)
}

/// A standard Young tableau, stored as the cell of each entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    cells: Vec<Cell>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Cell of entry `k`, 1-based.
    pub fn entry_cell(&self, k: usize) -> Cell {
        self.cells[k - 1]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// True when entry 2 sits in the first row (content +1). Transposing
    /// swaps upper and lower tableaux, so self-conjugate shapes split their
    /// tableaux evenly.
    pub fn is_upper(&self) -> bool {
        if self.cells.len() < 2 {
            return true;
        }
        self.cells[1] == Cell { row: 1, col: 2 }
    }
}

/// All standard tableaux of `shape`, in the backtracking order that places
/// entries 1..n into the highest available row first.
///
/// Guarded by the exact dimension: errors when it exceeds 10^6.
pub fn enumerate_standard_tableaux(shape: &Partition) -> Result<Vec<StandardTableau>> {
    let n = shape.n();
    if n > 0 {
        check_n(n)?;
    }
    let dim = shape.dimension();
    if dim > BigUint::from(1_000_000u64) {
        return Err(Error::SizeLimit {
            what: "tableau count",
            requested: u64::try_from(&dim).unwrap_or(u64::MAX),
            limit: 1_000_000,
        });
    }
    let mut filled = vec![0usize; shape.rows()];
    let mut cells = Vec::with_capacity(n);
    let mut out = Vec::new();
    rec_tableaux(shape, &mut filled, &mut cells, &mut out);
    debug_assert_eq!(BigUint::from(out.len()), dim);
    Ok(out)
}

fn rec_tableaux(
    shape: &Partition,
    filled: &mut Vec<usize>,
    cells: &mut Vec<Cell>,
    out: &mut Vec<StandardTableau>,
) {
    if cells.len() == shape.n() {
        out.push(StandardTableau {
            shape: shape.clone(),
            cells: cells.clone(),
        });
        return;
    }
    for r in 0..shape.rows() {
        let c = filled[r];
        if c >= shape.parts()[r] {
            continue;
        }
        if r > 0 && filled[r - 1] <= c {
            continue;
        }
        filled[r] += 1;
        cells.push(Cell { row: r + 1, col: c + 1 });
        rec_tableaux(shape, filled, cells, out);
        cells.pop();
        filled[r] -= 1;
    }
}

// ---------------------------------------------------------------------------
// Lean internals shared by the million-shape sweeps. These avoid per-shape
// allocation: parts/conj buffers are mutated in place and restored.

/// Precomputed ln(k) and ln(k!) tables.
pub(crate) struct LnTables {
    pub ln: Vec<f64>,
    pub lnfact: Vec<f64>,
}

impl LnTables {
    pub fn new(max: usize) -> Self {
        let mut ln = vec![0.0; max + 1];
        let mut lnfact = vec![0.0; max + 1];
        for k in 1..=max {
            ln[k] = (k as f64).ln();
            lnfact[k] = lnfact[k - 1] + ln[k];
        }
        LnTables { ln, lnfact }
    }
}

#[inline]
fn hook(parts: &[usize], conj: &[usize], i: usize, j: usize) -> usize {
    parts[i] + conj[j] - i - j - 1
}

/// ln(dimension) for a shape given as parts plus conjugate. Trailing zero
/// parts are tolerated; `n` must equal the number of boxes.
pub(crate) fn log_dim(parts: &[usize], conj: &[usize], n: usize, tables: &LnTables) -> f64 {
    let mut s = 0.0;
    for (i, &p) in parts.iter().enumerate() {
        if p == 0 {
            break;
        }
        for j in 0..p {
            s += tables.ln[hook(parts, conj, i, j)];
        }
    }
    tables.lnfact[n] - s
}

/// Writes the conjugate of `parts` into `conj` (resized as needed).
pub(crate) fn conjugate_into(parts: &[usize], conj: &mut Vec<usize>) {
    let width = parts.first().copied().unwrap_or(0);
    conj.clear();
    conj.resize(width, 0);
    for &p in parts {
        if p == 0 {
            break;
        }
        for c in conj.iter_mut().take(p) {
            *c += 1;
        }
    }
}

/// Pushes the removable corners of `parts` (0-based (row, col)) onto `out`.
/// Trailing zero parts are tolerated.
pub(crate) fn corners_into(parts: &[usize], out: &mut Vec<(usize, usize)>) {
    out.clear();
    let rows = parts.iter().take_while(|&&p| p > 0).count();
    for r in 0..rows {
        if r + 1 == rows || parts[r] > parts[r + 1] {
            out.push((r, parts[r] - 1));
        }
    }
}

/// Reusable buffers for the per-shape sweeps.
pub(crate) struct ShapeScratch {
    pub conj: Vec<usize>,
    corners1: Vec<(usize, usize)>,
    corners2: Vec<(usize, usize)>,
}

impl ShapeScratch {
    pub fn new() -> Self {
        ShapeScratch {
            conj: Vec::new(),
            corners1: Vec::new(),
            corners2: Vec::new(),
        }
    }
}

/// Calls `f(content_n, content_n1, relation, log_count)` for every corner
/// pair group of the shape in `parts`, allocation-free. `parts` and
/// `scratch.conj` must describe the same shape of `n` boxes and are
/// restored before returning.
pub(crate) fn for_each_corner_pair(
    parts: &mut [usize],
    n: usize,
    tables: &LnTables,
    scratch: &mut ShapeScratch,
    mut f: impl FnMut(i64, i64, PairRelation, f64),
) {
    // Split borrows: corners buffers are taken out of the scratch so the
    // conj buffer can still be mutated.
    let mut corners1 = std::mem::take(&mut scratch.corners1);
    let mut corners2 = std::mem::take(&mut scratch.corners2);
    corners_into(parts, &mut corners1);
    for &(r1, c1) in &corners1 {
        parts[r1] -= 1;
        scratch.conj[c1] -= 1;
        corners_into(parts, &mut corners2);
        for &(r2, c2) in &corners2 {
            parts[r2] -= 1;
            scratch.conj[c2] -= 1;
            let relation = if r2 == r1 {
                PairRelation::SameRow
            } else if c2 == c1 {
                PairRelation::SameColumn
            } else {
                PairRelation::Neither
            };
            let log_count = log_dim(parts, &scratch.conj, n - 2, tables);
            f(
                c1 as i64 - r1 as i64,
                c2 as i64 - r2 as i64,
                relation,
                log_count,
            );
            parts[r2] += 1;
            scratch.conj[c2] += 1;
        }
        parts[r1] += 1;
        scratch.conj[c1] += 1;
    }
    scratch.corners1 = corners1;
    scratch.corners2 = corners2;
}

/// Calls `f(content, log_count)` for each removable corner, where the count
/// is the dimension of the shape with that corner removed.
pub(crate) fn for_each_corner(
    parts: &mut [usize],
    n: usize,
    tables: &LnTables,
    scratch: &mut ShapeScratch,
    mut f: impl FnMut(i64, f64),
) {
    let mut corners1 = std::mem::take(&mut scratch.corners1);
    corners_into(parts, &mut corners1);
    for &(r1, c1) in &corners1 {
        parts[r1] -= 1;
        scratch.conj[c1] -= 1;
        let log_count = log_dim(parts, &scratch.conj, n - 1, tables);
        f(c1 as i64 - r1 as i64, log_count);
        parts[r1] += 1;
        scratch.conj[c1] += 1;
    }
    scratch.corners1 = corners1;
}
