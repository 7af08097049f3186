//! Shared workloads for the benchmarks.

use schubert_core::{Grassmannian, Partition};

pub fn gr(k: usize, n: usize) -> Grassmannian {
    Grassmannian::from_kn(k, n).expect("valid Grassmannian")
}

pub fn partition(s: &str) -> Partition {
    s.parse().expect("valid partition")
}

/// Every pair `(a, b)` with `a <= b` in basis order.
pub fn basis_pairs(g: &Grassmannian) -> Vec<(Partition, Partition)> {
    let basis = g.ctx().basis();
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}
