//! Restriction of equivariant classes to the torus fixed points of
//! `Gr(k, n)`, labelled by 01-strings.
//!
//! At the fixed point spanned by the coordinate vectors at the zero
//! positions `i_1..i_k` of `b`, the Chern roots of the dual tautological
//! bundle are `-t_{i_1}, .., -t_{i_k}`, so `σ̂_λ` restricts to
//! `s_λ(-t_{i_1}, .., -t_{i_k})`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::det::{determinant, Polynomials};
use crate::error::{Error, Result};
use crate::expr::{ClassExpr, Ring};
use crate::partition::{FixedPoint, GrContext, Partition};
use crate::poly::{
    elementary_prefix, elementary_symmetric, expand_e_in_t, CoeffPoly, Var, VarSubstitution,
};

/// All fixed points, ordered by the weight of their partition and then
/// lexicographically.
pub fn fixed_points(ctx: &GrContext) -> Vec<FixedPoint> {
    ctx.basis()
        .iter()
        .map(|p| p.to_01_string(ctx).expect("basis fits"))
        .collect()
}

/// Bruhat order read off the strings: `b >= c` when every prefix of `b`
/// holds at most as many zeros as the same prefix of `c`.
pub fn bruhat_geq(b: &FixedPoint, c: &FixedPoint) -> bool {
    let (mut zb, mut zc) = (0, 0);
    for (&x, &y) in b.bits().iter().zip(c.bits()) {
        zb += (x == 0) as usize;
        zc += (y == 0) as usize;
        if zb > zc {
            return false;
        }
    }
    true
}

/// `σ̂_λ` at the point `b`, as `det((-1)^m e_m(t_{zeros}))` with
/// `m = λᵀ_i + j - i`.
pub fn restrict_hat_class(lambda: &Partition, b: &FixedPoint) -> CoeffPoly {
    let zeros = b.zero_positions();
    let conj = lambda.conjugate();
    let size = conj.len();
    let matrix: Vec<Vec<CoeffPoly>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let m = conj.part(i) as i64 + j as i64 - i as i64;
                    let e = elementary_symmetric(&zeros, m);
                    if m % 2 == 0 {
                        e
                    } else {
                        -e
                    }
                })
                .collect()
        })
        .collect();
    determinant(&Polynomials, &matrix)
}

/// Values of one class at every fixed point, in [`fixed_points`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionTable {
    ctx: GrContext,
    entries: Vec<(FixedPoint, CoeffPoly)>,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    point: String,
    value: CoeffPoly,
}

impl RestrictionTable {
    /// Build a table from a value function.
    pub fn from_fn(ctx: GrContext, mut value: impl FnMut(&FixedPoint) -> CoeffPoly) -> Self {
        let entries = fixed_points(&ctx)
            .into_iter()
            .map(|b| {
                let v = value(&b);
                (b, v)
            })
            .collect();
        RestrictionTable { ctx, entries }
    }

    pub fn ctx(&self) -> GrContext {
        self.ctx
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&FixedPoint, &CoeffPoly)> {
        self.entries.iter().map(|(b, v)| (b, v))
    }

    pub fn get(&self, b: &FixedPoint) -> Option<&CoeffPoly> {
        self.entries.iter().find(|(x, _)| x == b).map(|(_, v)| v)
    }

    /// The value at the point labelled by `mu`.
    pub fn at(&self, mu: &Partition) -> Option<&CoeffPoly> {
        let b = mu.to_01_string(&self.ctx).ok()?;
        self.get(&b)
    }

    /// Pointwise product.
    pub fn pointwise_mul(&self, other: &RestrictionTable) -> Result<RestrictionTable> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|((b, x), (_, y))| (b.clone(), x * y))
            .collect();
        Ok(RestrictionTable {
            ctx: self.ctx,
            entries,
        })
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.entries
            .iter()
            .all(|(_, v)| v.is_zero() || v.is_homogeneous_of(degree, self.ctx.n()))
    }

    pub fn to_json(&self) -> Result<String> {
        let raw: Vec<RawEntry> = self
            .entries
            .iter()
            .map(|(b, v)| RawEntry {
                point: b.to_string(),
                value: v.clone(),
            })
            .collect();
        Ok(serde_json::to_string(&raw)?)
    }

    /// Parse the JSON array form; every fixed point must appear exactly once.
    pub fn from_json(text: &str, ctx: GrContext) -> Result<Self> {
        let raw: Vec<RawEntry> = serde_json::from_str(text)?;
        let mut parsed = Vec::with_capacity(raw.len());
        for r in raw {
            parsed.push((FixedPoint::parse(&r.point, &ctx)?, r.value));
        }
        let points = fixed_points(&ctx);
        if parsed.len() != points.len() {
            return Err(Error::OutOfRange(format!(
                "expected {} fixed points, found {}",
                points.len(),
                parsed.len()
            )));
        }
        let mut entries = Vec::with_capacity(points.len());
        for b in points {
            let v = parsed
                .iter()
                .find(|(x, _)| *x == b)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::OutOfRange(format!("missing fixed point {b}")))?;
            entries.push((b, v));
        }
        Ok(RestrictionTable { ctx, entries })
    }
}

impl fmt::Display for RestrictionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, v) in &self.entries {
            writeln!(f, "{b}  {}  {v}", b.partition())?;
        }
        Ok(())
    }
}

/// Restriction of an equivariant class, with each `e_i` read as
/// `e_i(t_1..t_n)`.
pub fn restrict_expr(x: &ClassExpr) -> Result<RestrictionTable> {
    x.require_ring(Ring::Equivariant)?;
    let ctx = x.ctx();
    let coeffs: Vec<(Partition, CoeffPoly)> = x
        .terms()
        .map(|(p, c)| (p.clone(), expand_e_in_t(c, &ctx)))
        .collect();
    Ok(RestrictionTable::from_fn(ctx, |b| {
        let mut acc = CoeffPoly::zero();
        for (p, c) in &coeffs {
            acc += &(c * &restrict_hat_class(p, b));
        }
        acc
    }))
}

/// Every pair of points joined by an edge, i.e. strings differing by one
/// transposition `(i, j)`, has values differing by a multiple of `t_i - t_j`.
pub fn gkm_check(table: &RestrictionTable) -> bool {
    let entries = &table.entries;
    for (a, (b1, v1)) in entries.iter().enumerate() {
        for (b2, v2) in &entries[a + 1..] {
            if let Some((i, j)) = b1.differs_by_transposition(b2) {
                if !(v1 - v2).divisible_by_difference(i, j) {
                    return false;
                }
            }
        }
    }
    true
}

/// `∏ (t_i - t_j)` over `i < j` with `b_i = 1`, `b_j = 0`.
pub fn inversion_product(b: &FixedPoint) -> CoeffPoly {
    let bits = b.bits();
    let mut out = CoeffPoly::one();
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            if bits[i] == 1 && bits[j] == 0 {
                out = &out * &(&CoeffPoly::t(i + 1) - &CoeffPoly::t(j + 1));
            }
        }
    }
    out
}

/// The canonical class of the column `1^r` in the `σ̂` basis, solved from
/// `σ̂_{1^r} = Σ_{i=0}^{r} (-1)^{r-i} e_{r-i}(t_1..t_{k-i}) σ^can_{1^i}`.
pub fn canonical_column_expr(r: usize, ctx: &GrContext) -> Result<ClassExpr> {
    let k = ctx.k();
    if r > k {
        return Err(Error::OutOfRange(format!(
            "column length {r} exceeds k = {k}"
        )));
    }
    let mut solved: Vec<ClassExpr> = Vec::with_capacity(r + 1);
    for s in 0..=r {
        let mut x = ClassExpr::basis(*ctx, Ring::Equivariant, &Partition::column(s))?;
        for (i, can) in solved.iter().enumerate() {
            let c = elementary_prefix(k - i, (s - i) as i64);
            let c = if (s - i) % 2 == 0 { -c } else { c };
            x = x.add(&can.scale(&c)?)?;
        }
        solved.push(x);
    }
    Ok(solved.pop().expect("at least the unit"))
}

pub fn canonical_column_class(r: usize, ctx: &GrContext) -> Result<RestrictionTable> {
    restrict_expr(&canonical_column_expr(r, ctx)?)
}

/// The four conditions characterizing the canonical class of `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KtReport {
    /// Zero at every point whose partition does not contain `lambda`.
    pub supported_above: bool,
    /// The value at `lambda` is its inversion product.
    pub value_at_lambda: bool,
    /// Every value is homogeneous of degree `|lambda|` in `t`.
    pub homogeneous: bool,
    pub gkm: bool,
}

impl KtReport {
    pub fn all(&self) -> bool {
        self.supported_above && self.value_at_lambda && self.homogeneous && self.gkm
    }
}

pub fn kt_conditions(table: &RestrictionTable, lambda: &Partition) -> Result<KtReport> {
    let ctx = table.ctx();
    let b = lambda.to_01_string(&ctx)?;
    let supported_above = table
        .entries()
        .all(|(p, v)| p.partition().contains(lambda) || v.is_zero());
    let value_at_lambda = table.get(&b) == Some(&inversion_product(&b));
    let homogeneous = table
        .entries()
        .all(|(_, v)| !v.contains_e() && !v.contains_q())
        && table.is_homogeneous_of(lambda.weight());
    Ok(KtReport {
        supported_above,
        value_at_lambda,
        homogeneous,
        gkm: gkm_check(table),
    })
}

/// Check `σ̂_λ · σ̂_μ = result` pointwise at every fixed point.
pub fn verify_product_by_localization(
    lambda: &Partition,
    mu: &Partition,
    result: &ClassExpr,
) -> Result<bool> {
    result.require_ring(Ring::Equivariant)?;
    let ctx = result.ctx();
    let a = restrict_expr(&ClassExpr::basis(ctx, Ring::Equivariant, lambda)?)?;
    let b = restrict_expr(&ClassExpr::basis(ctx, Ring::Equivariant, mu)?)?;
    Ok(a.pointwise_mul(&b)? == restrict_expr(result)?)
}

/// `t_i <-> t_j`.
pub fn swap_weights(i: usize, j: usize) -> VarSubstitution {
    VarSubstitution::identity()
        .with(Var::T(i), CoeffPoly::t(j))
        .with(Var::T(j), CoeffPoly::t(i))
}

/// Evaluate a table at integer weights; handy for spot checks.
pub fn evaluate_table(table: &RestrictionTable, weights: &[i64]) -> Vec<BigInt> {
    table
        .entries()
        .map(|(_, v)| {
            v.evaluate(|var| match var {
                Var::T(i) => BigInt::from(weights[i - 1]),
                _ => BigInt::one(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::Grassmannian;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ctx(k: usize, n: usize) -> GrContext {
        GrContext::new(k, n).unwrap()
    }

    fn fp(s: &str, c: &GrContext) -> FixedPoint {
        FixedPoint::parse(s, c).unwrap()
    }

    fn hat(c: GrContext, l: &str) -> ClassExpr {
        ClassExpr::basis(c, Ring::Equivariant, &p(l)).unwrap()
    }

    #[test]
    fn fixed_point_lists() {
        let names: Vec<String> = fixed_points(&ctx(1, 2))
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(names, ["01", "10"]);
        assert_eq!(fixed_points(&ctx(2, 4)).len(), 6);
        assert_eq!(fixed_points(&ctx(3, 7)).len(), 35);
    }

    #[test]
    fn bruhat_order_is_containment() {
        let c = ctx(2, 4);
        let pts = fixed_points(&c);
        for b in &pts {
            for d in &pts {
                assert_eq!(
                    bruhat_geq(b, d),
                    b.partition().contains(&d.partition()),
                    "{b} {d}"
                );
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let c = ctx(2, 4);
        assert_eq!(
            restrict_hat_class(&p("[1]"), &fp("0011", &c)),
            "-t1 - t2".parse().unwrap()
        );
        assert_eq!(
            restrict_hat_class(&p("[1,1]"), &fp("0101", &c)),
            "t1 t3".parse().unwrap()
        );
        assert_eq!(
            restrict_hat_class(&p("[]"), &fp("1010", &c)),
            CoeffPoly::one()
        );
        // s_2(-t1, -t2) = t1^2 + t1 t2 + t2^2.
        assert_eq!(
            restrict_hat_class(&p("[2]"), &fp("0011", &c)),
            "t1^2 + t1 t2 + t2^2".parse().unwrap()
        );
        let x =
            ClassExpr::parse_terms(c, Ring::Equivariant, &[("[1]", "1"), ("[]", "e1")]).unwrap();
        assert_eq!(
            restrict_expr(&x).unwrap().at(&p("[]")).unwrap(),
            &"t3 + t4".parse().unwrap()
        );
        let c5 = ctx(2, 5);
        let x = ClassExpr::parse_terms(c5, Ring::Equivariant, &[("[]", "e5")]).unwrap();
        let t = restrict_expr(&x).unwrap();
        assert!(t
            .entries()
            .all(|(_, v)| *v == "t1 t2 t3 t4 t5".parse().unwrap()));
        let q = ClassExpr::parse_terms(c, Ring::EquivariantQuantum, &[("[]", "q")]).unwrap();
        assert!(restrict_expr(&q).is_err());
    }

    #[test]
    fn gkm_examples() {
        let c = ctx(2, 4);
        for lam in c.basis() {
            assert!(
                gkm_check(&restrict_expr(&hat(c, &lam.to_string())).unwrap()),
                "{lam}"
            );
        }
        let bad = RestrictionTable::from_fn(c, |b| {
            if b.to_string() == "0101" {
                CoeffPoly::t(1)
            } else {
                CoeffPoly::zero()
            }
        });
        assert!(!gkm_check(&bad));
        assert!(gkm_check(&RestrictionTable::from_fn(c, |_| "e1 + 3"
            .parse()
            .unwrap())));
    }

    #[test]
    fn canonical_columns() {
        for (k, n) in [(2, 4), (3, 6), (2, 5)] {
            let c = ctx(k, n);
            for r in 0..=k {
                let table = canonical_column_class(r, &c).unwrap();
                let report = kt_conditions(&table, &Partition::column(r)).unwrap();
                assert!(report.all(), "r = {r} in {c}: {report:?}");
                let at = table.at(&Partition::column(r)).unwrap();
                let mut expected = CoeffPoly::one();
                for q in 1..=r {
                    expected =
                        &expected * &(&CoeffPoly::t(k - r + 1) - &CoeffPoly::t(k - r + 1 + q));
                }
                assert_eq!(at, &expected);
            }
            assert!(canonical_column_class(k + 1, &c).is_err());
        }
        let c = ctx(2, 4);
        assert!(restrict_expr(&canonical_column_expr(0, &c).unwrap())
            .unwrap()
            .entries()
            .all(|(_, v)| v.is_one()));
        assert_eq!(
            canonical_column_expr(1, &c).unwrap(),
            ClassExpr::parse_terms(c, Ring::Equivariant, &[("[1]", "1"), ("[]", "t1 + t2")])
                .unwrap()
        );
        // The plain characteristic class is not supported above its diagram.
        let plain = restrict_expr(&hat(c, "[1]")).unwrap();
        assert!(!kt_conditions(&plain, &p("[1]")).unwrap().supported_above);
    }

    #[test]
    fn products_verified_pointwise() {
        for (k, n) in [(2, 4), (2, 5)] {
            let g = Grassmannian::from_kn(k, n).unwrap();
            for a in g.ctx().basis() {
                for b in g.ctx().basis() {
                    let prod = g.product_equivariant(&a, &b).unwrap();
                    assert!(
                        verify_product_by_localization(&a, &b, &prod).unwrap(),
                        "{a} {b}"
                    );
                }
            }
        }
        let g = Grassmannian::from_kn(2, 5).unwrap();
        let prod = g.product_equivariant(&p("[2,1]"), &p("[2]")).unwrap();
        let mut bad = prod.clone();
        bad.add_term(p("[3,1]"), &CoeffPoly::one()).unwrap();
        assert!(!verify_product_by_localization(&p("[2,1]"), &p("[2]"), &bad).unwrap());
    }

    #[test]
    fn restriction_is_faithful_on_the_basis() {
        let c = ctx(2, 4);
        let tables: Vec<_> = c
            .basis()
            .iter()
            .map(|l| restrict_expr(&hat(c, &l.to_string())).unwrap())
            .collect();
        for i in 0..tables.len() {
            for j in i + 1..tables.len() {
                assert_ne!(tables[i], tables[j]);
            }
        }
    }

    #[test]
    fn weyl_symmetry() {
        let c = ctx(2, 4);
        let pts = fixed_points(&c);
        for lam in c.basis() {
            let table = restrict_expr(&hat(c, &lam.to_string())).unwrap();
            for b in &pts {
                for i in 1..=4 {
                    for j in i + 1..=4 {
                        let swapped = b.transposed(i, j);
                        let expected = table.get(b).unwrap().substitute(&swap_weights(i, j));
                        assert_eq!(
                            table.get(&swapped).unwrap(),
                            &expected,
                            "{lam} at {b}, ({i} {j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(2, 4);
        let table = canonical_column_class(2, &c).unwrap();
        let text = table.to_json().unwrap();
        assert!(text.starts_with("[{\"point\":\"0011\""));
        assert_eq!(RestrictionTable::from_json(&text, c).unwrap(), table);
        assert!(RestrictionTable::from_json("[]", c).is_err());
    }

    #[test]
    fn evaluation_at_integer_weights() {
        let c = ctx(1, 2);
        let table = restrict_expr(&hat(c, "[1]")).unwrap();
        assert_eq!(
            evaluate_table(&table, &[2, 5]),
            vec![BigInt::from(-2), BigInt::from(-5)]
        );
    }
}
