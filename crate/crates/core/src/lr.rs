//! Littlewood-Richardson coefficients by counting skew tableaux, and Schur
//! polynomial evaluation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::det::{determinant, Integers};
use crate::partition::Partition;

/// A filling of the skew shape `outer / inner`; `rows[i]` lists the entries
/// of row `i` from left to right (empty when the row has no skew boxes).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkewTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl SkewTableau {
    /// Entries read right to left along rows, top to bottom.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows
            .iter()
            .flat_map(|r| r.iter().rev().copied())
            .collect()
    }

    pub fn content(&self) -> Vec<usize> {
        let mut c = Vec::new();
        for &x in self.rows.iter().flatten() {
            if c.len() < x {
                c.resize(x, 0);
            }
            c[x - 1] += 1;
        }
        c
    }

    pub fn is_semistandard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r == 0 {
                continue;
            }
            let start = self.inner.part(r);
            for (i, &x) in row.iter().enumerate() {
                let col = start + i;
                let above_start = self.inner.part(r - 1);
                if col >= above_start {
                    if let Some(&y) = self.rows[r - 1].get(col - above_start) {
                        if y >= x {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_lattice(&self) -> bool {
        let mut counts = vec![0usize; 1];
        for x in self.reading_word() {
            if counts.len() <= x {
                counts.resize(x + 1, 0);
            }
            counts[x] += 1;
            if x > 1 && counts[x] > counts[x - 1] {
                return false;
            }
        }
        true
    }
}

struct Search<'a> {
    outer: &'a Partition,
    inner: &'a Partition,
    content: &'a Partition,
    grid: Vec<Vec<usize>>,
    counts: Vec<usize>,
}

impl Search<'_> {
    /// Visits every LR filling; `visit` sees the grid of skew rows.
    fn run(&mut self, row: usize, col: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if row == self.outer.len() {
            visit(&self.grid);
            return;
        }
        let lo = self.inner.part(row);
        if col < lo || col == usize::MAX {
            self.run(row + 1, self.outer.part(row + 1).wrapping_sub(1), visit);
            return;
        }
        let idx = col - lo;
        let mut max = self.content.len();
        if let Some(&right) = self.grid[row].get(idx + 1) {
            max = max.min(right);
        }
        let mut min = 1;
        if row > 0 {
            let above_lo = self.inner.part(row - 1);
            if col >= above_lo {
                min = self.grid[row - 1][col - above_lo] + 1;
            }
        }
        for v in min..=max {
            if self.counts[v] >= self.content.part(v - 1) {
                continue;
            }
            if v > 1 && self.counts[v] + 1 > self.counts[v - 1] {
                continue;
            }
            self.counts[v] += 1;
            self.grid[row][idx] = v;
            self.run(row, col.wrapping_sub(1), visit);
            self.counts[v] -= 1;
        }
        self.grid[row][idx] = 0;
    }
}

fn search(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if lambda.weight() + mu.weight() != nu.weight() || !nu.contains(lambda) {
        return;
    }
    let grid = (0..nu.len())
        .map(|i| vec![0; nu.part(i) - lambda.part(i)])
        .collect();
    let mut s = Search {
        outer: nu,
        inner: lambda,
        content: mu,
        grid,
        counts: vec![0; mu.len() + 1],
    };
    if nu.is_empty() {
        visit(&s.grid);
        return;
    }
    s.run(0, nu.part(0) - 1, visit);
}

/// Number of LR tableaux of shape `nu / lambda` with content `mu`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let mut count = 0;
    search(lambda, mu, nu, &mut |_| count += 1);
    count
}

/// All LR tableaux of shape `nu / lambda` with content `mu`.
pub fn lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> Vec<SkewTableau> {
    let mut out = Vec::new();
    search(lambda, mu, nu, &mut |grid| {
        out.push(SkewTableau {
            outer: nu.clone(),
            inner: lambda.clone(),
            rows: grid.to_vec(),
        })
    });
    out.sort();
    out
}

/// `s_lambda * s_mu` in the ring of symmetric functions, truncated to
/// partitions with at most `max_rows` rows.
pub fn expand_product_infinite(
    lambda: &Partition,
    mu: &Partition,
    max_rows: usize,
) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    let rows = max_rows.min(lambda.len() + mu.len());
    if lambda.len() > rows || mu.len() > rows {
        return out;
    }
    let mut cur = vec![0usize; rows];
    candidates(lambda, mu.first(), 0, mu.weight(), &mut cur, &mut |nu| {
        let c = lr_coefficient(lambda, mu, nu);
        if c > 0 {
            out.insert(nu.clone(), c);
        }
    });
    out
}

/// Every `nu` containing `lambda` with the right weight and no row growing by
/// more than `mu_1` boxes.
fn candidates(
    lambda: &Partition,
    mu1: usize,
    row: usize,
    left: usize,
    cur: &mut Vec<usize>,
    visit: &mut dyn FnMut(&Partition),
) {
    if row == cur.len() {
        if left == 0 {
            visit(&Partition::new(cur.clone()).expect("decreasing by construction"));
        }
        return;
    }
    let lo = lambda.part(row);
    let mut hi = lo + mu1.min(left);
    if row > 0 {
        hi = hi.min(cur[row - 1]);
    }
    for v in lo..=hi {
        cur[row] = v;
        candidates(lambda, mu1, row + 1, left - (v - lo), cur, visit);
    }
}

/// Complete homogeneous symmetric polynomials `h_0..=h_max` at `values`.
fn complete_homogeneous(values: &[BigInt], max: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); max + 1];
    h[0] = BigInt::from(1);
    for x in values {
        for m in 1..=max {
            let prev = h[m - 1].clone();
            h[m] += x * prev;
        }
    }
    h
}

/// `s_lambda(values)` through the Jacobi-Trudi determinant `det(h_{lambda_i + j - i})`.
pub fn schur_evaluate(lambda: &Partition, values: &[BigInt]) -> BigInt {
    if lambda.len() > values.len() {
        return BigInt::zero();
    }
    let len = lambda.len();
    let max = lambda.first() + len;
    let h = complete_homogeneous(values, max);
    let matrix: Vec<Vec<BigInt>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let idx = lambda.part(i) as i64 + j as i64 - i as i64;
                    if idx < 0 {
                        BigInt::zero()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&Integers, &matrix)
}
