//! Young diagram combinatorics.
//!
//! Partitions are stored without trailing zeros; `part(i)` reads as zero past
//! the last row. The Grassmannian `Gr(k, n)` fixes a `k x (n-k)` rectangle in
//! which all basis partitions live.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Ordered by weight first and then lexicographically, which is the
/// canonical basis order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing { position: i + 2 });
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn from_slice(parts: &[usize]) -> Result<Self> {
        Self::new(parts.to_vec())
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// One row of `r` boxes.
    pub fn row(r: usize) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![r] }
        }
    }

    /// One column of `r` boxes.
    pub fn column(r: usize) -> Self {
        Partition { parts: vec![1; r] }
    }

    /// `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            Self::empty()
        } else {
            Partition {
                parts: vec![cols; rows],
            }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part (0-based); zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Whether the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// The partition with its first row deleted.
    pub fn without_first_row(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// Subtract one box from each of the first `rows` rows. `None` when some
    /// of those rows is empty.
    pub fn minus_column(&self, rows: usize) -> Option<Partition> {
        if self.len() < rows {
            return None;
        }
        let mut parts = self.parts.clone();
        for p in parts.iter_mut().take(rows) {
            *p -= 1;
        }
        Partition::new(parts).ok()
    }

    /// All partitions obtained by adding an `r`-box strip that stays inside
    /// the rectangle of `ctx`.
    pub fn add_strip(&self, r: usize, orientation: Orientation, ctx: &GrContext) -> Vec<Partition> {
        let rows = ctx.rows();
        let cols = ctx.cols();
        if self.len() > rows || self.first() > cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = vec![0usize; rows];
        match orientation {
            Orientation::Horizontal => self.grow_horizontal(0, r, cols, &mut cur, &mut out),
            Orientation::Vertical => self.grow_vertical(0, r, cols, &mut cur, &mut out),
        }
        out.sort();
        out.dedup();
        out
    }

    fn grow_horizontal(
        &self,
        i: usize,
        left: usize,
        cols: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i == cur.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let lo = self.part(i);
        let hi = if i == 0 {
            cols
        } else {
            self.part(i - 1).min(cols)
        };
        for v in lo..=hi.min(lo + left) {
            cur[i] = v;
            self.grow_horizontal(i + 1, left - (v - lo), cols, cur, out);
        }
    }

    fn grow_vertical(
        &self,
        i: usize,
        left: usize,
        cols: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if left > cur.len() - i {
            return;
        }
        if i == cur.len() {
            out.push(Partition::new(cur.clone()).expect("checked on the fly"));
            return;
        }
        let base = self.part(i);
        for add in [0, 1] {
            if add > left {
                continue;
            }
            let v = base + add;
            if v > cols || (i > 0 && v > cur[i - 1]) {
                continue;
            }
            cur[i] = v;
            self.grow_vertical(i + 1, left - add, cols, cur, out);
        }
    }

    /// All `mu` inside `self` such that `self / mu` is a vertical strip of
    /// `s` boxes (at most one box removed from each row).
    pub fn remove_vertical_strip(&self, s: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.len()];
        self.shrink_vertical(0, s, &mut cur, &mut out);
        out.sort();
        out
    }

    fn shrink_vertical(
        &self,
        i: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if left > cur.len() - i {
            return;
        }
        if i == cur.len() {
            out.push(Partition::new(cur.clone()).expect("checked on the fly"));
            return;
        }
        let base = self.parts[i];
        for sub in [0, 1] {
            if sub > left {
                continue;
            }
            let v = base - sub;
            if i > 0 && v > cur[i - 1] {
                continue;
            }
            cur[i] = v;
            self.shrink_vertical(i + 1, left - sub, cur, out);
        }
    }

    /// All `mu` inside `self` such that `self / mu` is a horizontal strip of
    /// `s` boxes (at most one box removed from each column).
    pub fn remove_horizontal_strip(&self, s: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.len()];
        self.shrink_horizontal(0, s, &mut cur, &mut out);
        out.sort();
        out
    }

    fn shrink_horizontal(
        &self,
        i: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i == cur.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let hi = self.parts[i];
        let lo = self.part(i + 1).max(hi.saturating_sub(left));
        for v in (lo..=hi).rev() {
            cur[i] = v;
            self.shrink_horizontal(i + 1, left - (hi - v), cur, out);
        }
    }

    /// Beta numbers `part(i) + len - 1 - i` for `len` beads.
    fn beads(&self, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.part(i) + len - 1 - i).collect()
    }

    fn from_beads(mut beads: Vec<usize>) -> Partition {
        beads.sort_unstable_by(|a, b| b.cmp(a));
        let len = beads.len();
        let parts = beads
            .iter()
            .enumerate()
            .map(|(i, b)| b - (len - 1 - i))
            .collect();
        Partition::new(parts).expect("distinct beads give a partition")
    }

    /// Every `size`-rim hook of the diagram, one per starting row, in order of
    /// increasing starting row.
    pub fn find_rim_hooks(&self, size: usize) -> Vec<RimHook> {
        let len = self.len();
        let beads = self.beads(len);
        let occupied: BTreeSet<usize> = beads.iter().copied().collect();
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        for (row, &b) in beads.iter().enumerate() {
            if b < size || occupied.contains(&(b - size)) {
                continue;
            }
            let target = b - size;
            let rows = 1 + occupied.range(target + 1..b).count();
            let mut moved = beads.clone();
            moved[row] = target;
            out.push(RimHook {
                remainder: Self::from_beads(moved),
                rows,
                start_row: row,
            });
        }
        out
    }

    /// Every way of adjoining a `size`-rim hook; returns the enlarged diagram
    /// together with the number of rows the new hook occupies.
    pub fn add_rim_hooks(&self, size: usize) -> Vec<(Partition, usize)> {
        let len = self.len() + size;
        let beads = self.beads(len);
        let occupied: BTreeSet<usize> = beads.iter().copied().collect();
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        for (i, &b) in beads.iter().enumerate() {
            let target = b + size;
            if occupied.contains(&target) {
                continue;
            }
            let rows = 1 + occupied.range(b + 1..target).count();
            let mut moved = beads.clone();
            moved[i] = target;
            out.push((Self::from_beads(moved), rows));
        }
        out.sort();
        out
    }

    pub fn fits(&self, ctx: &GrContext) -> bool {
        self.len() <= ctx.rows() && self.first() <= ctx.cols()
    }

    /// Complement inside the rectangle, rotated by 180 degrees.
    pub fn complement(&self, ctx: &GrContext) -> Result<Partition> {
        ctx.check(self)?;
        let k = ctx.rows();
        let parts = (0..k).map(|i| ctx.cols() - self.part(k - 1 - i)).collect();
        Partition::new(parts)
    }

    /// Boundary path of the diagram read from the south-west corner of the
    /// rectangle to the north-east corner: 0 for a vertical step, 1 for a
    /// horizontal one.
    pub fn to_01_string(&self, ctx: &GrContext) -> Result<FixedPoint> {
        ctx.check(self)?;
        let mut bits = Vec::with_capacity(ctx.n());
        let mut x = 0;
        for i in (0..ctx.rows()).rev() {
            let p = self.part(i);
            bits.extend(std::iter::repeat_n(1u8, p - x));
            x = p;
            bits.push(0);
        }
        bits.extend(std::iter::repeat_n(1u8, ctx.cols() - x));
        Ok(FixedPoint { bits, k: ctx.k() })
    }

    pub fn from_01_string(bits: &FixedPoint) -> Partition {
        let mut rows_from_bottom = Vec::with_capacity(bits.k);
        let mut ones = 0;
        for &b in &bits.bits {
            if b == 1 {
                ones += 1;
            } else {
                rows_from_bottom.push(ones);
            }
        }
        rows_from_bottom.reverse();
        Partition::new(rows_from_bottom).expect("boundary path gives a partition")
    }

    /// All partitions inside a `rows x cols` box, in canonical order.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
            if cur.len() == rows {
                return;
            }
            for v in 1..=max {
                cur.push(v);
                rec(rows, v, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of `weight` with at most `max_rows` rows and parts at
    /// most `max_part`.
    pub fn of_weight(weight: usize, max_rows: usize, max_part: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            left: usize,
            rows: usize,
            max: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
                return;
            }
            if cur.len() == rows {
                return;
            }
            for v in (1..=max.min(left)).rev() {
                cur.push(v);
                rec(left - v, rows, v, cur, out);
                cur.pop();
            }
        }
        rec(weight, max_rows, max_part, &mut cur, &mut out);
        out.sort();
        out
    }
}

/// Straighten a Jacobi-Trudi index sequence: `det(h_{a_i + j - i})` equals
/// `sign * s_lambda` for the returned partition, or vanishes (`None`).
pub fn straighten(seq: &[i64]) -> Option<(i32, Partition)> {
    let len = seq.len() as i64;
    let mut beads = Vec::with_capacity(seq.len());
    for (i, &a) in seq.iter().enumerate() {
        let b = a + len - 1 - i as i64;
        if b < 0 {
            return None;
        }
        beads.push(b as usize);
    }
    let mut sign = 1;
    for i in 0..beads.len() {
        for j in i + 1..beads.len() {
            match beads[i].cmp(&beads[j]) {
                Ordering::Equal => return None,
                Ordering::Less => sign = -sign,
                Ordering::Greater => {}
            }
        }
    }
    Some((sign, Partition::from_beads(beads)))
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[5,4,4,2,2]`, `5,4,4,2,2` and `[]`.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) if trimmed.len() >= 2 => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => {
                return Err(Error::ParsePartition {
                    text: text.to_string(),
                    reason: "unbalanced brackets".into(),
                })
            }
        };
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for (i, tok) in inner.split(',').enumerate() {
            let v = tok
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::ParsePartition {
                    text: text.to_string(),
                    reason: format!(
                        "part {} ({:?}) is not a nonnegative integer",
                        i + 1,
                        tok.trim()
                    ),
                })?;
            parts.push(v);
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// No two added boxes in the same row.
    Vertical,
    /// No two added boxes in the same column.
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimHook {
    pub remainder: Partition,
    /// Number of rows the hook occupies.
    pub rows: usize,
    /// 0-based row holding the hook's first (north-east) box.
    pub start_row: usize,
}

/// The Grassmannian `Gr(k, n)` with its `k x (n-k)` rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawContext")]
pub struct GrContext {
    k: usize,
    n: usize,
}

#[derive(Deserialize)]
struct RawContext {
    k: usize,
    n: usize,
}

impl TryFrom<RawContext> for GrContext {
    type Error = Error;

    fn try_from(raw: RawContext) -> Result<Self> {
        GrContext::new(raw.k, raw.n)
    }
}

impl GrContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidContext { k, n });
        }
        Ok(GrContext { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    /// `Gr(n-k, n)`.
    pub fn dual(&self) -> GrContext {
        GrContext {
            k: self.n - self.k,
            n: self.n,
        }
    }

    pub fn fits(&self, p: &Partition) -> bool {
        p.fits(self)
    }

    pub fn check(&self, p: &Partition) -> Result<()> {
        if p.fits(self) {
            Ok(())
        } else {
            Err(Error::OutsideRectangle {
                partition: p.to_string(),
                rows: self.rows(),
                cols: self.cols(),
            })
        }
    }

    /// All partitions in the rectangle, in canonical order.
    pub fn basis(&self) -> Vec<Partition> {
        Partition::all_in_box(self.rows(), self.cols())
    }

    pub fn full_rectangle(&self) -> Partition {
        Partition::rectangle(self.rows(), self.cols())
    }
}

impl fmt::Display for GrContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

/// A torus fixed point of `Gr(k, n)`, written as a 01-string with `k` zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint {
    bits: Vec<u8>,
    k: usize,
}

impl FixedPoint {
    pub fn parse(text: &str, ctx: &GrContext) -> Result<Self> {
        let bad = || Error::BitString {
            bits: text.to_string(),
            zeros: ctx.k(),
            ones: ctx.cols(),
        };
        let bits: Vec<u8> = text
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        let zeros = bits.iter().filter(|&&b| b == 0).count();
        if bits.len() != ctx.n() || zeros != ctx.k() {
            return Err(bad());
        }
        Ok(FixedPoint { bits, k: ctx.k() })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// 1-based positions holding a 0.
    pub fn zero_positions(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn partition(&self) -> Partition {
        Partition::from_01_string(self)
    }

    /// Swap the entries at 1-based positions `i` and `j`.
    pub fn transposed(&self, i: usize, j: usize) -> FixedPoint {
        let mut bits = self.bits.clone();
        bits.swap(i - 1, j - 1);
        FixedPoint { bits, k: self.k }
    }

    /// The two 1-based positions where `self` and `other` differ, if they
    /// differ in exactly two entries.
    pub fn differs_by_transposition(&self, other: &FixedPoint) -> Option<(usize, usize)> {
        let diff: Vec<usize> = (0..self.bits.len())
            .filter(|&i| self.bits[i] != other.bits[i])
            .map(|i| i + 1)
            .collect();
        match diff.as_slice() {
            [i, j] => Some((*i, *j)),
            _ => None,
        }
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}
