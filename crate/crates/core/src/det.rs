//! Determinants over an arbitrary commutative ring.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::CoeffPoly;

/// The ring operations a determinant needs. Implemented by context objects
/// so that multiplication can go through a reduction engine.
pub trait RingOps {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Integers.
pub struct Integers;

impl RingOps for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// Polynomials in `e`, `t`, `q`.
pub struct Polynomials;

impl RingOps for Polynomials {
    type Elem = CoeffPoly;

    fn zero(&self) -> CoeffPoly {
        CoeffPoly::zero()
    }
    fn one(&self) -> CoeffPoly {
        CoeffPoly::one()
    }
    fn add(&self, a: &CoeffPoly, b: &CoeffPoly) -> CoeffPoly {
        a + b
    }
    fn neg(&self, a: &CoeffPoly) -> CoeffPoly {
        -a
    }
    fn mul(&self, a: &CoeffPoly, b: &CoeffPoly) -> CoeffPoly {
        a * b
    }
    fn is_zero(&self, a: &CoeffPoly) -> bool {
        a.is_zero()
    }
}

/// Laplace expansion along rows, memoized on the set of used columns.
/// The empty matrix has determinant one.
pub fn determinant<R: RingOps>(ring: &R, matrix: &[Vec<R::Elem>]) -> R::Elem {
    let size = matrix.len();
    assert!(size < 64, "matrix too large");
    assert!(
        matrix.iter().all(|row| row.len() == size),
        "matrix must be square"
    );
    let mut memo: HashMap<u64, R::Elem> = HashMap::new();
    minor(ring, matrix, 0, &mut memo)
}

fn minor<R: RingOps>(
    ring: &R,
    m: &[Vec<R::Elem>],
    used: u64,
    memo: &mut HashMap<u64, R::Elem>,
) -> R::Elem {
    let row = used.count_ones() as usize;
    if row == m.len() {
        return ring.one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = ring.zero();
    let mut sign_neg = false;
    for (col, entry) in m[row].iter().enumerate() {
        if used >> col & 1 == 1 {
            continue;
        }
        if !ring.is_zero(entry) {
            let sub = minor(ring, m, used | 1 << col, memo);
            if !ring.is_zero(&sub) {
                let term = ring.mul(entry, &sub);
                acc = if sign_neg {
                    ring.add(&acc, &ring.neg(&term))
                } else {
                    ring.add(&acc, &term)
                };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(used, acc.clone());
    acc
}
