//! Small quantum cohomology `QH*(Gr(k, n))`.
//!
//! Quantum products come from equivariant ones through the ring map that
//! sends `e_i` to zero for `i < n` and `e_n` to `(-1)^k q`. The reduction
//! engine is run directly under that specialization, which gives the same
//! numbers without carrying the full `e`-polynomials around.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::det::determinant;
use crate::equivariant::{Coefficients, ExprRing, Grassmannian};
use crate::error::{Error, Result};
use crate::expr::{ClassExpr, Ring};
use crate::lr::{expand_product_infinite, lr_coefficient};
use crate::partition::{GrContext, Orientation, Partition};
use crate::poly::{CoeffPoly, Monomial, VarSubstitution};

/// `sign · q^q_power · σ_partition`, or zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RimHookOutcome {
    Zero,
    Term {
        sign: i8,
        q_power: u32,
        partition: Partition,
    },
}

impl RimHookOutcome {
    pub fn to_expr(&self, ctx: GrContext) -> ClassExpr {
        let mut out = ClassExpr::zero(ctx, Ring::Quantum);
        if let RimHookOutcome::Term {
            sign,
            q_power,
            partition,
        } = self
        {
            let c = CoeffPoly::term(
                *sign as i64,
                Monomial::from_exponents(vec![], vec![], *q_power),
            );
            out.add_unchecked(partition.clone(), &c);
        }
        out
    }
}

impl fmt::Display for RimHookOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RimHookOutcome::Zero => write!(f, "0"),
            RimHookOutcome::Term {
                sign,
                q_power,
                partition,
            } => {
                if *sign < 0 {
                    write!(f, "-")?;
                }
                match q_power {
                    0 => {}
                    1 => write!(f, "q · ")?,
                    d => write!(f, "q^{d} · ")?,
                }
                write!(f, "σ{partition}")
            }
        }
    }
}

/// One member of the set Π in the quantum LR computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTerm {
    pub pi: Partition,
    /// Rows occupied by each adjoined hook, in the order they were added.
    pub hook_rows: Vec<usize>,
    /// `(-1)^{kd - Σ w}`.
    pub sign: i8,
    pub lr: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumLr {
    pub d: u32,
    pub pi: Vec<PiTerm>,
    /// `q^d · Σ sign · c^π_{λμ}`.
    pub value: CoeffPoly,
}

fn sign_of(exp: usize) -> i8 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Grassmannian {
    /// Coefficient map `e_i -> 0` (`i < n`), `e_n -> (-1)^k q`; `σ̂_ν -> σ_ν`.
    pub fn f_map(&self, x: &ClassExpr) -> Result<ClassExpr> {
        x.require_ring(Ring::Equivariant)?;
        x.substitute(&VarSubstitution::forgetful(&self.ctx()), Ring::Quantum)
    }

    /// `σ_λ * σ_μ` in quantum cohomology.
    pub fn product_quantum(&self, lambda: &Partition, mu: &Partition) -> Result<ClassExpr> {
        self.ctx().check(lambda)?;
        self.ctx().check(mu)?;
        Ok(self.to_expr(
            Ring::Quantum,
            &self.basis_product(Coefficients::Quantum, lambda, mu),
        ))
    }

    /// `σ_λ · σ_μ` in ordinary cohomology.
    pub fn product_classical(&self, lambda: &Partition, mu: &Partition) -> Result<ClassExpr> {
        self.ctx().check(lambda)?;
        self.ctx().check(mu)?;
        Ok(self.to_expr(
            Ring::Classical,
            &self.basis_product(Coefficients::Classical, lambda, mu),
        ))
    }

    /// Coefficient of `q^d σ_ν` in `σ_λ * σ_μ`.
    pub fn gw_invariant(
        &self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        d: u32,
    ) -> Result<BigInt> {
        self.ctx().check(nu)?;
        let n = self.ctx().n();
        if lambda.weight() + mu.weight() != nu.weight() + d as usize * n {
            self.ctx().check(lambda)?;
            self.ctx().check(mu)?;
            return Ok(BigInt::zero());
        }
        Ok(self.product_quantum(lambda, mu)?.q_power_coefficient(nu, d))
    }

    /// `σ_λ * σ_{1^r}` by the quantum Pieri rule.
    pub fn quantum_pieri_column(&self, lambda: &Partition, r: usize) -> Result<ClassExpr> {
        let ctx = self.ctx();
        ctx.check(lambda)?;
        if r == 0 || r > ctx.k() {
            return Err(Error::StripOutOfRange { r, max: ctx.k() });
        }
        let mut out = ClassExpr::zero(ctx, Ring::Quantum);
        for p in lambda.add_strip(r, Orientation::Vertical, &ctx) {
            out.add_unchecked(p, &CoeffPoly::one());
        }
        if lambda.first() == ctx.cols() {
            for p in lambda
                .without_first_row()
                .remove_vertical_strip(ctx.k() - r)
            {
                out.add_unchecked(p, &CoeffPoly::q());
            }
        }
        Ok(out)
    }

    /// `σ_λ * σ_r` by the row version of the quantum Pieri rule.
    pub fn quantum_pieri_row(&self, lambda: &Partition, r: usize) -> Result<ClassExpr> {
        let ctx = self.ctx();
        ctx.check(lambda)?;
        if r == 0 || r > ctx.cols() {
            return Err(Error::StripOutOfRange { r, max: ctx.cols() });
        }
        let mut out = ClassExpr::zero(ctx, Ring::Quantum);
        for p in lambda.add_strip(r, Orientation::Horizontal, &ctx) {
            out.add_unchecked(p, &CoeffPoly::one());
        }
        if lambda.len() == ctx.k() {
            let inner = lambda
                .minus_column(ctx.k())
                .expect("all k rows are nonempty");
            for p in inner.remove_horizontal_strip(ctx.cols() - r) {
                out.add_unchecked(p, &CoeffPoly::q());
            }
        }
        Ok(out)
    }

    /// Remove `n`-rim hooks until the diagram fits, always taking the hook
    /// that starts in the topmost row.
    pub fn rim_hook_reduce(&self, lambda: &Partition) -> RimHookOutcome {
        let ctx = self.ctx();
        if lambda.len() > ctx.k() {
            return RimHookOutcome::Zero;
        }
        let mut cur = lambda.clone();
        let mut sign = 1i8;
        let mut q_power = 0;
        while cur.first() > ctx.cols() {
            let Some(hook) = cur.find_rim_hooks(ctx.n()).into_iter().next() else {
                return RimHookOutcome::Zero;
            };
            sign *= sign_of(ctx.k() - hook.rows);
            q_power += 1;
            cur = hook.remainder;
        }
        RimHookOutcome::Term {
            sign,
            q_power,
            partition: cur,
        }
    }

    /// The outcomes reached over every order of hook removal.
    pub fn rim_hook_reduce_all_orders(&self, lambda: &Partition) -> BTreeSet<RimHookOutcome> {
        let mut out = BTreeSet::new();
        self.all_orders(lambda, 1, 0, &mut out);
        out
    }

    fn all_orders(
        &self,
        cur: &Partition,
        sign: i8,
        q_power: u32,
        out: &mut BTreeSet<RimHookOutcome>,
    ) {
        let ctx = self.ctx();
        if cur.len() > ctx.k() {
            out.insert(RimHookOutcome::Zero);
            return;
        }
        if cur.first() <= ctx.cols() {
            out.insert(RimHookOutcome::Term {
                sign,
                q_power,
                partition: cur.clone(),
            });
            return;
        }
        let hooks = cur.find_rim_hooks(ctx.n());
        if hooks.is_empty() {
            out.insert(RimHookOutcome::Zero);
        }
        for h in hooks {
            self.all_orders(
                &h.remainder,
                sign * sign_of(ctx.k() - h.rows),
                q_power + 1,
                out,
            );
        }
    }

    /// `σ_λ * σ_μ` via classical LR followed by rim-hook reduction of every
    /// out-of-rectangle term.
    pub fn product_quantum_by_rim_hooks(
        &self,
        lambda: &Partition,
        mu: &Partition,
    ) -> Result<ClassExpr> {
        let ctx = self.ctx();
        ctx.check(lambda)?;
        ctx.check(mu)?;
        let mut out = ClassExpr::zero(ctx, Ring::Quantum);
        for (nu, c) in expand_product_infinite(lambda, mu, ctx.k()) {
            let term = self.rim_hook_reduce(&nu).to_expr(ctx);
            out = out.add(&term.scale(&CoeffPoly::constant(c))?)?;
        }
        Ok(out)
    }

    /// `σ_r` for any `r >= 0`: with `r = ℓn + p`, `0 <= p < n`, this is
    /// `(-1)^{ℓ(k+1)} q^ℓ σ_p`, and `σ_p = 0` for `n-k < p < n`.
    pub fn quantum_row_class(&self, r: usize) -> ClassExpr {
        let ctx = self.ctx();
        let (l, p) = (r / ctx.n(), r % ctx.n());
        let mut out = ClassExpr::zero(ctx, Ring::Quantum);
        if p <= ctx.cols() {
            let c = CoeffPoly::term(
                sign_of(l * (ctx.k() + 1)) as i64,
                Monomial::from_exponents(vec![], vec![], l as u32),
            );
            out.add_unchecked(Partition::row(p), &c);
        }
        out
    }

    /// `σ_λ = det(σ_{λ_i + j - i})` evaluated with quantum products.
    pub fn quantum_giambelli(&self, lambda: &Partition) -> ClassExpr {
        let ring = ExprRing {
            gr: self,
            ring: Ring::Quantum,
        };
        let len = lambda.len();
        let matrix: Vec<Vec<ClassExpr>> = (0..len)
            .map(|i| {
                (0..len)
                    .map(|j| {
                        let m = lambda.part(i) as i64 + j as i64 - i as i64;
                        if m < 0 {
                            ClassExpr::zero(self.ctx(), Ring::Quantum)
                        } else {
                            self.quantum_row_class(m as usize)
                        }
                    })
                    .collect()
            })
            .collect();
        determinant(&ring, &matrix)
    }

    /// Quantum LR coefficient of `σ_ν` in `σ_λ * σ_μ` by adjoining `n`-rim
    /// hooks to `ν`.
    pub fn quantum_lr(
        &self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<QuantumLr> {
        let ctx = self.ctx();
        for p in [lambda, mu, nu] {
            ctx.check(p)?;
        }
        let n = ctx.n();
        let total = lambda.weight() + mu.weight();
        let mismatch = || Error::DegreeMismatch {
            total,
            target: nu.weight(),
            n,
        };
        if total < nu.weight() || !(total - nu.weight()).is_multiple_of(n) {
            return Err(mismatch());
        }
        let d = (total - nu.weight()) / n;
        let mut level: BTreeMap<Partition, Vec<usize>> = BTreeMap::from([(nu.clone(), Vec::new())]);
        for _ in 0..d {
            let mut next = BTreeMap::new();
            for (p, rows) in &level {
                for (big, w) in p.add_rim_hooks(n) {
                    if big.len() > ctx.k() {
                        continue;
                    }
                    next.entry(big).or_insert_with(|| {
                        let mut r = rows.clone();
                        r.push(w);
                        r
                    });
                }
            }
            level = next;
        }
        let mut pi = Vec::new();
        let mut sum = BigInt::zero();
        for (p, hook_rows) in level {
            if p.first() > lambda.first() + mu.first() || !p.contains(lambda) {
                continue;
            }
            let sign = sign_of(ctx.k() * d + hook_rows.iter().sum::<usize>());
            let lr = lr_coefficient(lambda, mu, &p);
            sum += BigInt::from(sign) * BigInt::from(lr);
            pi.push(PiTerm {
                pi: p,
                hook_rows,
                sign,
                lr,
            });
        }
        let value = CoeffPoly::term(sum, Monomial::from_exponents(vec![], vec![], d as u32));
        Ok(QuantumLr {
            d: d as u32,
            pi,
            value,
        })
    }
}

/// `σ_λ -> σ_{λᵀ}`, `q -> q`: from `Gr(k,n)` to `Gr(n-k,n)`.
pub fn qinv(x: &ClassExpr) -> Result<ClassExpr> {
    if x.ring().is_equivariant() {
        return Err(Error::WrongRing {
            expected: "quantum".into(),
            found: x.ring().to_string(),
        });
    }
    ClassExpr::from_terms(
        x.ctx().dual(),
        x.ring(),
        x.terms().map(|(p, c)| (p.conjugate(), c.clone())),
    )
}
