//! The equivariant cohomology of `Gr(k, n)` in the basis of characteristic
//! classes `σ̂_λ = s_λ(x_1..x_k)`, `x_i` the Chern roots of the dual
//! tautological subbundle.
//!
//! Relations: `σ̃_m = Σ_{i=0}^{m} e_i σ̂_{m-i}` vanishes for `m > n-k`, with
//! `e_i = 0` for `i > n`. A class `σ̂_ν` with `ν_1 > n-k` is rewritten by
//! substituting the relation into the first row of its Jacobi-Trudi
//! determinant, which gives
//!
//! `σ̂_ν = -Σ_{i=1}^{n} e_i · σ̂_{(ν_1 - i, ν_2, ..)}`
//!
//! where the right-hand side indices are straightened back to partitions.
//! Each step lowers the weight, so the rewriting terminates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::det::{determinant, RingOps};
use crate::error::Result;
use crate::expr::{ClassExpr, Ring};
use crate::lr::expand_product_infinite;
use crate::partition::{straighten, GrContext, Orientation, Partition};
use crate::poly::{CoeffPoly, Var, VarSubstitution};

pub(crate) type Expansion = BTreeMap<Partition, CoeffPoly>;

/// What the coefficients `e_1..e_n` are replaced by while reducing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Coefficients {
    /// `e_i` kept as is.
    Equivariant,
    /// `e_i -> 0` for `i < n` and `e_n -> (-1)^k q`.
    Quantum,
    /// Every `e_i -> 0`.
    Classical,
    /// `e_n -> e_n + (-1)^k q`, other `e_i` kept.
    EquivariantQuantum,
}

/// Exact Schubert calculus on one Grassmannian. Reductions and products of
/// basis classes are memoized; the caches are shared safely between threads.
pub struct Grassmannian {
    ctx: GrContext,
    reductions: RwLock<HashMap<(Coefficients, Partition), Arc<Expansion>>>,
    products: RwLock<HashMap<(Coefficients, Partition, Partition), Arc<Expansion>>>,
}

impl Grassmannian {
    pub fn new(ctx: GrContext) -> Self {
        Grassmannian {
            ctx,
            reductions: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn from_kn(k: usize, n: usize) -> Result<Self> {
        Ok(Self::new(GrContext::new(k, n)?))
    }

    pub fn ctx(&self) -> GrContext {
        self.ctx
    }

    fn coefficient(&self, spec: Coefficients, i: usize) -> CoeffPoly {
        let n = self.ctx.n();
        match spec {
            Coefficients::Equivariant => CoeffPoly::e(i),
            Coefficients::Classical => CoeffPoly::zero(),
            Coefficients::Quantum if i == n => {
                if self.ctx.k().is_multiple_of(2) {
                    CoeffPoly::q()
                } else {
                    -CoeffPoly::q()
                }
            }
            Coefficients::Quantum => CoeffPoly::zero(),
            Coefficients::EquivariantQuantum if i == n => {
                &CoeffPoly::e(n) + &self.coefficient(Coefficients::Quantum, n)
            }
            Coefficients::EquivariantQuantum => CoeffPoly::e(i),
        }
    }

    /// `σ̂_ν` (any `ν`) written in the rectangle basis.
    pub(crate) fn reduce(&self, spec: Coefficients, nu: &Partition) -> Arc<Expansion> {
        if nu.len() > self.ctx.rows() {
            return Arc::new(Expansion::new());
        }
        if nu.first() <= self.ctx.cols() {
            return Arc::new(Expansion::from([(nu.clone(), CoeffPoly::one())]));
        }
        let key = (spec, nu.clone());
        if let Some(hit) = self.reductions.read().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let mut out = Expansion::new();
        let mut seq: Vec<i64> = nu.parts().iter().map(|&x| x as i64).collect();
        let top = seq[0];
        for i in 1..=self.ctx.n() {
            let c = self.coefficient(spec, i);
            if c.is_zero() {
                continue;
            }
            seq[0] = top - i as i64;
            let Some((sign, lambda)) = straighten(&seq) else {
                continue;
            };
            let factor = if sign > 0 { -&c } else { c };
            for (p, x) in self.reduce(spec, &lambda).iter() {
                accumulate(&mut out, p, &(&factor * x));
            }
        }
        let out = Arc::new(out);
        self.reductions
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&out));
        out
    }

    /// `σ̂_λ · σ̂_μ` for rectangle partitions, under the given specialization.
    pub(crate) fn basis_product(
        &self,
        spec: Coefficients,
        lambda: &Partition,
        mu: &Partition,
    ) -> Arc<Expansion> {
        let (a, b) = if lambda <= mu {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        let key = (spec, a.clone(), b.clone());
        if let Some(hit) = self.products.read().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let mut out = Expansion::new();
        for (nu, c) in expand_product_infinite(a, b, self.ctx.rows()) {
            let c = CoeffPoly::constant(c);
            for (p, x) in self.reduce(spec, &nu).iter() {
                accumulate(&mut out, p, &(&c * x));
            }
        }
        let out = Arc::new(out);
        self.products
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&out));
        out
    }

    pub(crate) fn to_expr(&self, ring: Ring, e: &Expansion) -> ClassExpr {
        let mut out = ClassExpr::zero(self.ctx, ring);
        for (p, c) in e {
            out.add_unchecked(p.clone(), c);
        }
        out
    }

    /// `σ̂_ν` for an arbitrary partition, in the equivariant basis.
    pub fn reduce_hat(&self, nu: &Partition) -> ClassExpr {
        self.to_expr(
            Ring::Equivariant,
            &self.reduce(Coefficients::Equivariant, nu),
        )
    }

    /// `σ̂_r` written in `σ̂_0..σ̂_{n-k}`.
    pub fn hat_sigma_r_reduced(&self, r: usize) -> ClassExpr {
        self.reduce_hat(&Partition::row(r))
    }

    /// `σ̂_λ · σ̂_μ` in the equivariant cohomology ring.
    pub fn product_equivariant(&self, lambda: &Partition, mu: &Partition) -> Result<ClassExpr> {
        self.ctx.check(lambda)?;
        self.ctx.check(mu)?;
        Ok(self.to_expr(
            Ring::Equivariant,
            &self.basis_product(Coefficients::Equivariant, lambda, mu),
        ))
    }

    /// Product of basis classes in the requested ring.
    pub fn product(&self, ring: Ring, lambda: &Partition, mu: &Partition) -> Result<ClassExpr> {
        match ring {
            Ring::Equivariant => self.product_equivariant(lambda, mu),
            Ring::Quantum => self.product_quantum(lambda, mu),
            Ring::Classical => self.product_classical(lambda, mu),
            Ring::EquivariantQuantum => self.product_eq_quantum(lambda, mu),
        }
    }

    /// Bilinear extension of [`Grassmannian::product`].
    pub fn multiply(&self, a: &ClassExpr, b: &ClassExpr) -> Result<ClassExpr> {
        let ring = a.ring();
        a.add(&ClassExpr::zero(self.ctx, ring))?;
        b.add(&ClassExpr::zero(self.ctx, ring))?;
        let mut out = ClassExpr::zero(self.ctx, ring);
        for (l, x) in a.terms() {
            for (m, y) in b.terms() {
                let xy = x * y;
                for (p, c) in self.product(ring, l, m)?.terms() {
                    out.add_unchecked(p.clone(), &(&xy * c));
                }
            }
        }
        Ok(out)
    }

    /// Closed form for `σ̂_λ · σ̂_1`.
    pub fn equivariant_pieri(&self, lambda: &Partition) -> Result<ClassExpr> {
        let ctx = self.ctx;
        ctx.check(lambda)?;
        let mut out = ClassExpr::zero(ctx, Ring::Equivariant);
        for p in lambda.add_strip(1, Orientation::Vertical, &ctx) {
            out.add_unchecked(p, &CoeffPoly::one());
        }
        if lambda.first() != ctx.cols() {
            return Ok(out);
        }
        let l = lambda.len();
        let w = ctx.cols();
        let part = |i: usize| lambda.part(i - 1);
        for j in 0..l.saturating_sub(1) {
            let row = l - j;
            let sign = if (l - j).is_multiple_of(2) { 1 } else { -1 };
            for m in part(row + 1)..part(row) {
                let mut parts: Vec<usize> = (2..=row).map(|i| part(i) - 1).collect();
                parts.push(m);
                parts.extend((row + 1..=l).map(part));
                let coeff = e_index(w + l - m - j).scale(&BigInt::from(sign));
                out.add_unchecked(Partition::new(parts)?, &coeff);
            }
        }
        for m in part(2)..=w {
            let mut parts = vec![m];
            parts.extend((2..=l).map(part));
            out.add_unchecked(Partition::new(parts)?, &-e_index(w - m + 1));
        }
        Ok(out)
    }

    /// `σ̃_r = Σ_{i=0}^{r} e_i σ̂_{r-i}`, with out-of-range `σ̂` reduced.
    pub fn tilde_sigma(&self, r: i64) -> ClassExpr {
        let mut out = ClassExpr::zero(self.ctx, Ring::Equivariant);
        if r < 0 {
            return out;
        }
        let r = r as usize;
        for i in 0..=r.min(self.ctx.n()) {
            let c = e_index(i);
            for (p, x) in self
                .reduce(Coefficients::Equivariant, &Partition::row(r - i))
                .iter()
            {
                out.add_unchecked(p.clone(), &(&c * x));
            }
        }
        out
    }

    fn equivariant_ring(&self) -> ExprRing<'_> {
        ExprRing {
            gr: self,
            ring: Ring::Equivariant,
        }
    }

    /// `σ′_{1^r} = det(σ̃_{1+j-i})`.
    pub fn prime_column(&self, r: i64) -> ClassExpr {
        let ring = self.equivariant_ring();
        if r < 0 {
            return ring.zero();
        }
        let r = r as usize;
        let matrix: Vec<Vec<ClassExpr>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.tilde_sigma(1 + j as i64 - i as i64))
                    .collect()
            })
            .collect();
        determinant(&ring, &matrix)
    }

    /// `σ′_λ = det(σ′_{1^{λᵀ_i + j - i}})` evaluated literally.
    pub fn prime_determinant(&self, lambda: &Partition) -> ClassExpr {
        let ring = self.equivariant_ring();
        let conj = lambda.conjugate();
        let size = conj.len();
        let mut columns: HashMap<i64, ClassExpr> = HashMap::new();
        let matrix: Vec<Vec<ClassExpr>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let m = conj.part(i) as i64 + j as i64 - i as i64;
                        columns
                            .entry(m)
                            .or_insert_with(|| self.prime_column(m))
                            .clone()
                    })
                    .collect()
            })
            .collect();
        determinant(&ring, &matrix)
    }

    /// The dual class `σ′_λ` in the `σ̂` basis; zero once `λ_1 > n-k`.
    pub fn prime_class(&self, lambda: &Partition) -> ClassExpr {
        if lambda.first() > self.ctx.cols() {
            return ClassExpr::zero(self.ctx, Ring::Equivariant);
        }
        self.prime_determinant(lambda)
    }
}

/// `e_i`, with `e_0 = 1`.
fn e_index(i: usize) -> CoeffPoly {
    if i == 0 {
        CoeffPoly::one()
    } else {
        CoeffPoly::e(i)
    }
}

fn accumulate(out: &mut Expansion, p: &Partition, c: &CoeffPoly) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(p.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        out.remove(p);
    }
}

/// Class expressions of one ring as a [`RingOps`] instance, with products
/// computed by the engine.
pub struct ExprRing<'a> {
    pub gr: &'a Grassmannian,
    pub ring: Ring,
}

impl RingOps for ExprRing<'_> {
    type Elem = ClassExpr;

    fn zero(&self) -> ClassExpr {
        ClassExpr::zero(self.gr.ctx(), self.ring)
    }
    fn one(&self) -> ClassExpr {
        ClassExpr::basis(self.gr.ctx(), self.ring, &Partition::empty()).expect("unit fits")
    }
    fn add(&self, a: &ClassExpr, b: &ClassExpr) -> ClassExpr {
        a.add(b).expect("same ring")
    }
    fn neg(&self, a: &ClassExpr) -> ClassExpr {
        a.neg()
    }
    fn mul(&self, a: &ClassExpr, b: &ClassExpr) -> ClassExpr {
        self.gr.multiply(a, b).expect("same ring")
    }
    fn is_zero(&self, a: &ClassExpr) -> bool {
        a.is_zero()
    }
}

/// `e_i -> (-1)^i e_i` and `t_i -> -t_i`.
pub fn weight_negation(n: usize) -> VarSubstitution {
    (1..=n).fold(VarSubstitution::e_sign_twist(n), |s, i| {
        s.with(Var::T(i), -CoeffPoly::t(i))
    })
}

/// The duality isomorphism from `Gr(k,n)` to `Gr(n-k,n)`:
/// `σ̂_λ -> σ′_{λᵀ}` on classes, with torus weights negated on coefficients
/// (`t_i -> -t_i`, so `e_i -> (-1)^i e_i`).
pub fn inv_star(x: &ClassExpr, target: &Grassmannian) -> Result<ClassExpr> {
    x.require_ring(Ring::Equivariant)?;
    let ctx = x.ctx();
    if target.ctx() != ctx.dual() {
        return Err(crate::error::Error::ContextMismatch {
            left: ctx.dual().to_string(),
            right: target.ctx().to_string(),
        });
    }
    let twist = weight_negation(ctx.n());
    let mut out = ClassExpr::zero(target.ctx(), Ring::Equivariant);
    for (lambda, c) in x.terms() {
        let image = target.prime_class(&lambda.conjugate());
        let c = c.substitute(&twist);
        for (p, y) in image.terms() {
            out.add_unchecked(p.clone(), &(&c * y));
        }
    }
    Ok(out)
}
