//! Equivariant quantum cohomology `QH*_T(Gr(k, n))` in the `σ̂` basis.
//!
//! Structure constants are the equivariant ones with `e_n` replaced by
//! `e_n + (-1)^k q`.

use num_traits::One;

use crate::det::determinant;
use crate::equivariant::{Coefficients, ExprRing, Grassmannian};
use crate::error::Result;
use crate::expr::{ClassExpr, Ring};
use crate::partition::Partition;
use crate::poly::{CoeffPoly, VarSubstitution};

/// Both Jacobi-Trudi determinants of `σ̂_λ`, evaluated with quantum products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiambelliCheck {
    pub rows: ClassExpr,
    pub columns: ClassExpr,
    pub holds: bool,
}

impl Grassmannian {
    /// Coefficient map `e_n -> e_n + (-1)^k q`; basis classes are fixed.
    pub fn f_tilde_map(&self, x: &ClassExpr) -> Result<ClassExpr> {
        x.require_ring(Ring::Equivariant)?;
        x.substitute(
            &VarSubstitution::quantum_shift(&self.ctx()),
            Ring::EquivariantQuantum,
        )
    }

    /// `σ̂_λ * σ̂_μ` in equivariant quantum cohomology.
    pub fn product_eq_quantum(&self, lambda: &Partition, mu: &Partition) -> Result<ClassExpr> {
        self.f_tilde_map(&self.product_equivariant(lambda, mu)?)
    }

    /// `σ̂_λ * σ̂_μ` by reducing with the deformed relation
    /// `σ̃_n = (-1)^{k+1} q` in place of `σ̃_n = 0`, without going through
    /// the equivariant product.
    pub fn product_eq_quantum_direct(
        &self,
        lambda: &Partition,
        mu: &Partition,
    ) -> Result<ClassExpr> {
        let ctx = self.ctx();
        ctx.check(lambda)?;
        ctx.check(mu)?;
        Ok(self.to_expr(
            Ring::EquivariantQuantum,
            &self.basis_product(Coefficients::EquivariantQuantum, lambda, mu),
        ))
    }

    /// Closed form for `σ̂_λ * σ̂_1`: the equivariant Pieri rule plus
    /// `q σ̂_{(λ_2 - 1, .., λ_ℓ - 1)}` when `λ_1 = n-k` and `ℓ(λ) = k`.
    pub fn eq_quantum_pieri(&self, lambda: &Partition) -> Result<ClassExpr> {
        let ctx = self.ctx();
        let mut out = self
            .equivariant_pieri(lambda)?
            .into_ring(Ring::EquivariantQuantum)?;
        if lambda.first() == ctx.cols() && lambda.len() == ctx.k() {
            let inner = lambda
                .minus_column(ctx.k())
                .expect("all k rows are nonempty");
            out.add_unchecked(inner.without_first_row(), &CoeffPoly::q());
        }
        Ok(out)
    }

    /// `σ̂_r` as an element of the equivariant quantum ring, any `r >= 0`.
    pub fn eq_quantum_row_class(&self, r: usize) -> ClassExpr {
        self.f_tilde_map(&self.hat_sigma_r_reduced(r))
            .expect("equivariant input")
    }

    /// `σ̂_{1^r}`: a basis class for `r <= k`, zero beyond.
    pub fn eq_quantum_column_class(&self, r: usize) -> ClassExpr {
        let ctx = self.ctx();
        let mut out = ClassExpr::zero(ctx, Ring::EquivariantQuantum);
        if r <= ctx.k() {
            out.add_unchecked(Partition::column(r), &CoeffPoly::one());
        }
        out
    }

    /// Evaluate `det(σ̂_{λ_i + j - i})` and `det(σ̂_{1^{λᵀ_i + j - i}})` with
    /// products in `QH*_T`, and compare both with the bare `σ̂_λ`.
    pub fn giambelli_check(&self, lambda: &Partition) -> Result<GiambelliCheck> {
        let ctx = self.ctx();
        ctx.check(lambda)?;
        let ring = ExprRing {
            gr: self,
            ring: Ring::EquivariantQuantum,
        };
        let jt = |shape: &Partition, entry: &dyn Fn(usize) -> ClassExpr| {
            let len = shape.len();
            let matrix: Vec<Vec<ClassExpr>> = (0..len)
                .map(|i| {
                    (0..len)
                        .map(|j| {
                            let m = shape.part(i) as i64 + j as i64 - i as i64;
                            if m < 0 {
                                ClassExpr::zero(ctx, Ring::EquivariantQuantum)
                            } else {
                                entry(m as usize)
                            }
                        })
                        .collect()
                })
                .collect();
            determinant(&ring, &matrix)
        };
        let rows = jt(lambda, &|m| self.eq_quantum_row_class(m));
        let columns = jt(&lambda.conjugate(), &|m| self.eq_quantum_column_class(m));
        let bare = ClassExpr::basis(ctx, Ring::EquivariantQuantum, lambda)?;
        let holds = rows == bare && columns == bare;
        Ok(GiambelliCheck {
            rows,
            columns,
            holds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn gr(k: usize, n: usize) -> Grassmannian {
        Grassmannian::from_kn(k, n).unwrap()
    }

    fn eqq(g: &Grassmannian, terms: &[(&str, &str)]) -> ClassExpr {
        ClassExpr::parse_terms(g.ctx(), Ring::EquivariantQuantum, terms).unwrap()
    }

    #[test]
    fn shift_examples() {
        let g = gr(2, 4);
        let x = ClassExpr::parse_terms(g.ctx(), Ring::Equivariant, &[("[]", "e4"), ("[1]", "e1")])
            .unwrap();
        assert_eq!(
            g.f_tilde_map(&x).unwrap(),
            eqq(&g, &[("[]", "e4 + q"), ("[1]", "e1")])
        );
        let g = gr(3, 6);
        let x = ClassExpr::parse_terms(g.ctx(), Ring::Equivariant, &[("[]", "e6")]).unwrap();
        assert_eq!(g.f_tilde_map(&x).unwrap(), eqq(&g, &[("[]", "e6 - q")]));
    }

    #[test]
    fn worked_products() {
        let g = gr(2, 4);
        assert_eq!(
            g.product_eq_quantum(&p("[2,2]"), &p("[2,1]")).unwrap(),
            eqq(
                &g,
                &[
                    ("[2,2]", "e3 - e1 e2"),
                    ("[2,1]", "e4 + q - e1 e3"),
                    ("[2]", "-e1 (e4 + q)")
                ]
            )
        );
        assert_eq!(
            g.product_eq_quantum(&p("[2,2]"), &p("[2,2]")).unwrap(),
            eqq(
                &g,
                &[
                    ("[2,2]", "e2^2 - e1 e3"),
                    ("[2,1]", "e2 e3 - e1 (e4 + q)"),
                    ("[1,1]", "e3^2 - e2 (e4 + q)"),
                    ("[2]", "e2 (e4 + q)"),
                    ("[1]", "e3 (e4 + q)"),
                    ("[]", "(e4 + q)^2"),
                ]
            )
        );
        assert_eq!(
            g.product_eq_quantum(&p("[]"), &p("[2,1]")).unwrap(),
            eqq(&g, &[("[2,1]", "1")])
        );
    }

    #[test]
    fn pieri_examples() {
        let g = gr(2, 4);
        assert_eq!(
            g.eq_quantum_pieri(&p("[2,1]")).unwrap(),
            eqq(
                &g,
                &[
                    ("[2,2]", "1"),
                    ("[2,1]", "-e1"),
                    ("[1,1]", "-e2"),
                    ("[]", "e4 + q")
                ]
            )
        );
        assert_eq!(
            g.eq_quantum_pieri(&p("[2,2]")).unwrap(),
            eqq(&g, &[("[2,2]", "-e1"), ("[1,1]", "e3"), ("[1]", "e4 + q")])
        );
        assert_eq!(
            g.eq_quantum_pieri(&p("[1]")).unwrap(),
            eqq(&g, &[("[2]", "1"), ("[1,1]", "1")])
        );
    }

    #[test]
    fn pieri_matches_engine_without_mixed_terms() {
        for (k, n) in [(2, 4), (2, 5), (3, 6)] {
            let g = gr(k, n);
            for lam in g.ctx().basis() {
                let closed = g.eq_quantum_pieri(&lam).unwrap();
                assert_eq!(
                    closed,
                    g.product_eq_quantum(&lam, &p("[1]")).unwrap(),
                    "{lam}"
                );
                assert_eq!(closed.at_q_zero(), g.equivariant_pieri(&lam).unwrap());
                for (_, c) in closed.terms() {
                    for (m, _) in c.terms() {
                        assert!(
                            !(m.q_exponent() > 0 && !m.e_exponents().is_empty()),
                            "{lam}: {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn specialization_square() {
        for (k, n) in [(2, 4), (2, 5)] {
            let g = gr(k, n);
            for a in g.ctx().basis() {
                for b in g.ctx().basis() {
                    let x = g.product_eq_quantum(&a, &b).unwrap();
                    assert_eq!(x.at_e_zero(), g.product_quantum(&a, &b).unwrap());
                    assert_eq!(x.at_q_zero(), g.product_equivariant(&a, &b).unwrap());
                    assert_eq!(x, g.product_eq_quantum_direct(&a, &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn commutative_associative_homogeneous() {
        let g = gr(2, 4);
        let basis = g.ctx().basis();
        let one = |l: &Partition| ClassExpr::basis(g.ctx(), Ring::EquivariantQuantum, l).unwrap();
        for a in &basis {
            for b in &basis {
                let ab = g.product_eq_quantum(a, b).unwrap();
                assert_eq!(ab, g.product_eq_quantum(b, a).unwrap());
                for (nu, c) in ab.terms() {
                    assert!(
                        c.is_homogeneous_of(a.weight() + b.weight() - nu.weight(), 4),
                        "{a} {b} {nu}"
                    );
                }
                for c in &basis {
                    let left = g.multiply(&ab, &one(c)).unwrap();
                    let right = g
                        .multiply(&one(a), &g.product_eq_quantum(b, c).unwrap())
                        .unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn giambelli_without_deformation() {
        for (k, n) in [(2, 4), (2, 5), (3, 6)] {
            let g = gr(k, n);
            for lam in g.ctx().basis() {
                let check = g.giambelli_check(&lam).unwrap();
                assert!(
                    check.holds,
                    "{lam} in Gr({k},{n}): rows {} columns {}",
                    check.rows, check.columns
                );
            }
        }
    }
}
