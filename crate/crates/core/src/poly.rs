//! Sparse polynomials with integer coefficients in `e_1..e_n`, `t_1..t_n`
//! and `q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::GrContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Elementary symmetric function `e_i`, 1-based.
    E(usize),
    /// Torus weight `t_i`, 1-based.
    T(usize),
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::E(i) => write!(f, "e{i}"),
            Var::T(i) => write!(f, "t{i}"),
            Var::Q => write!(f, "q"),
        }
    }
}

/// Exponent vector. `e[i]` is the exponent of `e_{i+1}`; trailing zeros are
/// trimmed so equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    e: Vec<u32>,
    t: Vec<u32>,
    q: u32,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::default().with(v, 1)
    }

    /// Builds from exponent vectors; trailing zeros are allowed.
    pub fn from_exponents(mut e: Vec<u32>, mut t: Vec<u32>, q: u32) -> Self {
        trim(&mut e);
        trim(&mut t);
        Monomial { e, t, q }
    }

    fn with(mut self, v: Var, exp: u32) -> Self {
        let slot = match v {
            Var::E(i) | Var::T(i) => {
                assert!(i >= 1, "variable indices are 1-based");
                let vec = if matches!(v, Var::E(_)) {
                    &mut self.e
                } else {
                    &mut self.t
                };
                if vec.len() < i {
                    vec.resize(i, 0);
                }
                &mut vec[i - 1]
            }
            Var::Q => &mut self.q,
        };
        *slot += exp;
        trim(&mut self.e);
        trim(&mut self.t);
        self
    }

    pub fn e_exponents(&self) -> &[u32] {
        &self.e
    }

    pub fn t_exponents(&self) -> &[u32] {
        &self.t
    }

    pub fn q_exponent(&self) -> u32 {
        self.q
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::E(i) => self.e.get(i.wrapping_sub(1)).copied().unwrap_or(0),
            Var::T(i) => self.t.get(i.wrapping_sub(1)).copied().unwrap_or(0),
            Var::Q => self.q,
        }
    }

    /// Variables with nonzero exponent, in the order `e`, `t`, `q`.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        let e = self
            .e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| (Var::E(i + 1), x));
        let t = self
            .t
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| (Var::T(i + 1), x));
        e.chain(t).chain((self.q > 0).then_some((Var::Q, self.q)))
    }

    pub fn is_one(&self) -> bool {
        self.e.is_empty() && self.t.is_empty() && self.q == 0
    }

    /// Degree ignoring `q`: `deg e_i = i`, `deg t_i = 1`.
    pub fn base_degree(&self) -> usize {
        let e: usize = self
            .e
            .iter()
            .enumerate()
            .map(|(i, &x)| (i + 1) * x as usize)
            .sum();
        let t: usize = self.t.iter().map(|&x| x as usize).sum();
        e + t
    }

    /// Full degree with `deg q = n`.
    pub fn degree(&self, n: usize) -> usize {
        self.base_degree() + n * self.q as usize
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: add_exps(&self.e, &other.e),
            t: add_exps(&self.t, &other.t),
            q: self.q + other.q,
        }
    }

    /// Quotient when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let sub = |a: &[u32], b: &[u32]| -> Option<Vec<u32>> {
            if b.len() > a.len() {
                return None;
            }
            let mut out = a.to_vec();
            for (o, &x) in out.iter_mut().zip(b) {
                *o = o.checked_sub(x)?;
            }
            trim(&mut out);
            Some(out)
        };
        Some(Monomial {
            e: sub(&self.e, &other.e)?,
            t: sub(&self.t, &other.t)?,
            q: self.q.checked_sub(other.q)?,
        })
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        let mut first = true;
        for (v, x) in self.factors() {
            if !first && !latex {
                write!(f, "*")?;
            }
            first = false;
            if latex {
                match v {
                    Var::E(i) => write!(f, "e_{{{i}}}")?,
                    Var::T(i) => write!(f, "t_{{{i}}}")?,
                    Var::Q => write!(f, "q")?,
                }
                if x > 1 {
                    write!(f, "^{{{x}}}")?;
                }
            } else {
                write!(f, "{v}")?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

/// Terms come out with the lowest power of `q` first, then by decreasing
/// degree, then lexicographically with `e_1` heaviest.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        fn lex_desc(a: &[u32], b: &[u32]) -> Ordering {
            let len = a.len().max(b.len());
            for i in 0..len {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        }
        self.q
            .cmp(&other.q)
            .then_with(|| other.base_degree().cmp(&self.base_degree()))
            .then_with(|| lex_desc(&self.e, &other.e))
            .then_with(|| lex_desc(&self.t, &other.t))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        self.write_with(f, false)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl CoeffPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn e(i: usize) -> Self {
        Self::var(Var::E(i))
    }

    pub fn t(i: usize) -> Self {
        Self::var(Var::T(i))
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CoeffPoly { terms }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> CoeffPoly {
        if c.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (mm, x) in &self.terms {
            out.add_term(mm.mul(m), &(x * c));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> CoeffPoly {
        let mut acc = CoeffPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn contains_e(&self) -> bool {
        self.terms.keys().any(|m| !m.e.is_empty())
    }

    pub fn contains_t(&self) -> bool {
        self.terms.keys().any(|m| !m.t.is_empty())
    }

    pub fn contains_q(&self) -> bool {
        self.terms.keys().any(|m| m.q > 0)
    }

    /// Largest index `i` with `e_i` present.
    pub fn max_e_index(&self) -> usize {
        self.terms.keys().map(|m| m.e.len()).max().unwrap_or(0)
    }

    pub fn max_t_index(&self) -> usize {
        self.terms.keys().map(|m| m.t.len()).max().unwrap_or(0)
    }

    /// The degree when every term has the same degree (`deg q = n`);
    /// `Some(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self, n: usize) -> Option<Option<usize>> {
        let mut degs = self.terms.keys().map(|m| m.degree(n));
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|x| x == d).then_some(Some(d)),
        }
    }

    pub fn is_homogeneous_of(&self, degree: usize, n: usize) -> bool {
        self.terms.keys().all(|m| m.degree(n) == degree)
    }

    /// Keep only terms without `q`.
    pub fn q_to_zero(&self) -> CoeffPoly {
        self.filtered(|m| m.q == 0)
    }

    /// Keep only terms without `e`.
    pub fn e_to_zero(&self) -> CoeffPoly {
        self.filtered(|m| m.e.is_empty())
    }

    fn filtered(&self, keep: impl Fn(&Monomial) -> bool) -> CoeffPoly {
        CoeffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn substitute(&self, s: &VarSubstitution) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        let mut powers: BTreeMap<(Var, u32), CoeffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = CoeffPoly::one();
            for (v, x) in m.factors() {
                match s.image(v) {
                    None => kept = kept.with(v, x),
                    Some(img) => {
                        let p = powers.entry((v, x)).or_insert_with(|| img.pow(x));
                        acc = &acc * p;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc.mul_monomial(&kept, c);
        }
        out
    }

    /// Substitute integer values for every variable that appears.
    pub fn evaluate(&self, value: impl Fn(Var) -> BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, x) in m.factors() {
                term *= num_traits::pow(value(v), x as usize);
            }
            total += term;
        }
        total
    }

    /// Polynomial in `t_j` only: returns `(quotient, remainder)` of division
    /// by `t_i - t_j`, where the remainder is `p` with `t_i := t_j`.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> (CoeffPoly, CoeffPoly) {
        // Synthetic division in t_i: p = sum_a c_a t_i^a with c_a free of t_i.
        let ti = Var::T(i);
        let mut by_power: BTreeMap<u32, CoeffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let a = m.exponent(ti);
            let rest = m
                .div(&Monomial::var(ti).pow_of(a))
                .expect("exponent read from monomial");
            by_power.entry(a).or_default().add_term(rest, c);
        }
        let top = by_power.keys().next_back().copied().unwrap_or(0);
        let tj = CoeffPoly::t(j);
        let mut quotient = CoeffPoly::zero();
        let mut carry = CoeffPoly::zero();
        // Horner: b_{a-1} = c_a + t_j * b_a, quotient = sum b_a t_i^a.
        for a in (1..=top).rev() {
            let c = by_power.remove(&a).unwrap_or_default();
            carry = &c + &(&carry * &tj);
            quotient += &carry.mul_monomial(&Monomial::var(ti).pow_of(a - 1), &BigInt::one());
        }
        let c0 = by_power.remove(&0).unwrap_or_default();
        let remainder = &c0 + &(&carry * &tj);
        (quotient, remainder)
    }

    pub fn divisible_by_difference(&self, i: usize, j: usize) -> bool {
        self.divide_by_difference(i, j).1.is_zero()
    }

    pub fn to_latex(&self) -> String {
        LatexPoly(self).to_string()
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                    if !latex {
                        write!(f, "*")?;
                    }
                }
                m.write_with(f, latex)?;
            }
        }
        Ok(())
    }
}

impl Monomial {
    fn pow_of(&self, exp: u32) -> Monomial {
        Monomial {
            e: self.e.iter().map(|x| x * exp).collect(),
            t: self.t.iter().map(|x| x * exp).collect(),
            q: self.q * exp,
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Monomial {
        trim(&mut self.e);
        trim(&mut self.t);
        self
    }
}

struct LatexPoly<'a>(&'a CoeffPoly);

impl fmt::Display for LatexPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_terms(f, true)
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, false)
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for CoeffPoly {
    fn zero() -> Self {
        CoeffPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for CoeffPoly {
    fn one() -> Self {
        CoeffPoly::constant(1)
    }
}

impl From<i64> for CoeffPoly {
    fn from(c: i64) -> Self {
        CoeffPoly::constant(c)
    }
}

impl From<BigInt> for CoeffPoly {
    fn from(c: BigInt) -> Self {
        CoeffPoly::constant(c)
    }
}

impl AddAssign<&CoeffPoly> for CoeffPoly {
    fn add_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&CoeffPoly> for CoeffPoly {
    fn sub_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;

    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;

    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;

    fn neg(self) -> CoeffPoly {
        CoeffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;

    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }
}

macro_rules! by_value {
    ($tr:ident, $method:ident) => {
        impl $tr for CoeffPoly {
            type Output = CoeffPoly;

            fn $method(self, rhs: CoeffPoly) -> CoeffPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for CoeffPoly {
    type Output = CoeffPoly;

    fn neg(self) -> CoeffPoly {
        -&self
    }
}

/// A ring map on coefficients: listed variables are rewritten, the rest are
/// left alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarSubstitution {
    images: BTreeMap<Var, CoeffPoly>,
}

impl VarSubstitution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, image: CoeffPoly) -> Self {
        self.images.insert(v, image);
        self
    }

    pub fn image(&self, v: Var) -> Option<&CoeffPoly> {
        self.images.get(&v)
    }

    pub fn rewritten(&self) -> impl Iterator<Item = (&Var, &CoeffPoly)> {
        self.images.iter()
    }

    /// `e_i -> 0` for `i < n`, `e_n -> (-1)^k q`.
    pub fn forgetful(ctx: &GrContext) -> Self {
        let n = ctx.n();
        let mut s = (1..n).fold(Self::identity(), |s, i| {
            s.with(Var::E(i), CoeffPoly::zero())
        });
        s = s.with(Var::E(n), signed_q(ctx));
        s
    }

    /// `e_n -> e_n + (-1)^k q`, other `e_i` fixed.
    pub fn quantum_shift(ctx: &GrContext) -> Self {
        let n = ctx.n();
        Self::identity().with(Var::E(n), &CoeffPoly::e(n) + &signed_q(ctx))
    }

    /// `e_i -> e_i(t_1..t_n)`.
    pub fn e_in_t(ctx: &GrContext) -> Self {
        let all: Vec<usize> = (1..=ctx.n()).collect();
        (1..=ctx.n()).fold(Self::identity(), |s, i| {
            s.with(Var::E(i), elementary_symmetric(&all, i as i64))
        })
    }

    /// `e_i -> (-1)^i e_i` for `i = 1..n`.
    pub fn e_sign_twist(n: usize) -> Self {
        (1..=n).fold(Self::identity(), |s, i| {
            let img = if i % 2 == 0 {
                CoeffPoly::e(i)
            } else {
                -CoeffPoly::e(i)
            };
            s.with(Var::E(i), img)
        })
    }

    /// The map "apply `self`, then `then`".
    pub fn then(&self, then: &VarSubstitution) -> VarSubstitution {
        let mut images: BTreeMap<Var, CoeffPoly> = self
            .images
            .iter()
            .map(|(v, p)| (*v, p.substitute(then)))
            .collect();
        for (v, p) in &then.images {
            images.entry(*v).or_insert_with(|| p.clone());
        }
        VarSubstitution { images }
    }
}

fn signed_q(ctx: &GrContext) -> CoeffPoly {
    if ctx.k().is_multiple_of(2) {
        CoeffPoly::q()
    } else {
        -CoeffPoly::q()
    }
}

/// `e_r` in the listed `t`-variables; 1 for `r = 0`, 0 when `r` is negative
/// or exceeds the number of variables.
pub fn elementary_symmetric(vars: &[usize], r: i64) -> CoeffPoly {
    if r < 0 || r as usize > vars.len() {
        return CoeffPoly::zero();
    }
    let r = r as usize;
    // dp[j] = e_j of the variables seen so far.
    let mut dp = vec![CoeffPoly::zero(); r + 1];
    dp[0] = CoeffPoly::one();
    for &v in vars {
        let tv = CoeffPoly::t(v);
        for j in (1..=r).rev() {
            let add = &dp[j - 1] * &tv;
            dp[j] += &add;
        }
    }
    dp.swap_remove(r)
}

/// `e_r(t_1..t_m)`, the prefix form.
pub fn elementary_prefix(m: usize, r: i64) -> CoeffPoly {
    let vars: Vec<usize> = (1..=m).collect();
    elementary_symmetric(&vars, r)
}

/// Replace each `e_i` by `e_i(t_1..t_n)`; `e_i` with `i > n` vanishes.
pub fn expand_e_in_t(p: &CoeffPoly, ctx: &GrContext) -> CoeffPoly {
    let mut s = VarSubstitution::e_in_t(ctx);
    for i in ctx.n() + 1..=p.max_e_index() {
        s = s.with(Var::E(i), CoeffPoly::zero());
    }
    p.substitute(&s)
}

impl FromStr for CoeffPoly {
    type Err = Error;

    /// Parses sums of products such as `e1*e2 - 3 e4 + (e4+q)^2`;
    /// juxtaposition multiplies, `e_1` and `e1` are both accepted.
    fn from_str(text: &str) -> Result<Self> {
        let mut p = PolyParser {
            text,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(out)
    }
}

struct PolyParser<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl PolyParser<'_> {
    fn fail(&self, reason: &str) -> Error {
        Error::ParsePoly {
            text: self.text.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CoeffPoly> {
        let mut acc = CoeffPoly::zero();
        let mut sign = match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') | Some('−') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<CoeffPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, 'e' | 't' | 'q' | '(') => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<CoeffPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let exp = self
                .number()
                .ok_or_else(|| self.fail("expected exponent"))?;
            let exp = u32::try_from(exp).map_err(|_| self.fail("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn index(&mut self) -> Result<usize> {
        if self.peek() == Some('_') {
            self.pos += 1;
        }
        let idx = self
            .number()
            .ok_or_else(|| self.fail("expected variable index"))?;
        let idx = usize::try_from(idx).map_err(|_| self.fail("index too large"))?;
        if idx == 0 {
            return Err(self.fail("variable indices start at 1"));
        }
        Ok(idx)
    }

    fn atom(&mut self) -> Result<CoeffPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('e') => {
                self.pos += 1;
                Ok(CoeffPoly::e(self.index()?))
            }
            Some('t') => {
                self.pos += 1;
                Ok(CoeffPoly::t(self.index()?))
            }
            Some('q') => {
                self.pos += 1;
                Ok(CoeffPoly::q())
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(CoeffPoly::constant(self.number().expect("digit seen")))
            }
            _ => Err(self.fail("expected a term")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    e: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    t: Vec<u32>,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    q: u32,
}

fn is_zero_u32(x: &u32) -> bool {
    *x == 0
}

impl Serialize for CoeffPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermJson {
                c: c.to_string(),
                e: m.e.clone(),
                t: m.t.clone(),
                q: m.q,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CoeffPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = CoeffPoly::zero();
        for term in raw {
            let c: BigInt = term
                .c
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            out.add_term(Monomial::from_exponents(term.e, term.t, term.q), &c);
        }
        Ok(out)
    }
}
