//! Linear combinations of Schubert-type classes with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{GrContext, Partition};
use crate::poly::{CoeffPoly, VarSubstitution};

/// Which ring an expression lives in; decides the allowed coefficient
/// variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ring {
    Classical,
    Quantum,
    Equivariant,
    EquivariantQuantum,
}

impl Ring {
    pub const ALL: [Ring; 4] = [
        Ring::Classical,
        Ring::Quantum,
        Ring::Equivariant,
        Ring::EquivariantQuantum,
    ];

    /// Equivariant parameters `e_i` and `t_i` are allowed.
    pub fn is_equivariant(self) -> bool {
        matches!(self, Ring::Equivariant | Ring::EquivariantQuantum)
    }

    pub fn is_quantum(self) -> bool {
        matches!(self, Ring::Quantum | Ring::EquivariantQuantum)
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Classical => "classical",
            Ring::Quantum => "quantum",
            Ring::Equivariant => "equivariant",
            Ring::EquivariantQuantum => "equivariant-quantum",
        }
    }

    /// The ring reached by setting `q = 0`.
    pub fn without_q(self) -> Ring {
        match self {
            Ring::Quantum => Ring::Classical,
            Ring::EquivariantQuantum => Ring::Equivariant,
            r => r,
        }
    }

    /// The ring reached by setting the equivariant parameters to zero.
    pub fn without_e(self) -> Ring {
        match self {
            Ring::Equivariant => Ring::Classical,
            Ring::EquivariantQuantum => Ring::Quantum,
            r => r,
        }
    }

    fn check(self, coeff: &CoeffPoly) -> Result<()> {
        let bad = |var: &str| {
            Err(Error::RingDiscipline {
                ring: self.name().to_string(),
                var: var.to_string(),
            })
        };
        if !self.is_equivariant() && coeff.contains_e() {
            return bad("e");
        }
        if !self.is_equivariant() && coeff.contains_t() {
            return bad("t");
        }
        if !self.is_quantum() && coeff.contains_q() {
            return bad("q");
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ring::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown ring {s:?}")))
    }
}

/// `sum coeff_nu * sigma_nu` over partitions in the rectangle.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassExpr {
    ctx: GrContext,
    ring: Ring,
    terms: BTreeMap<Partition, CoeffPoly>,
}

impl ClassExpr {
    pub fn zero(ctx: GrContext, ring: Ring) -> Self {
        ClassExpr {
            ctx,
            ring,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis class.
    pub fn basis(ctx: GrContext, ring: Ring, lambda: &Partition) -> Result<Self> {
        let mut out = Self::zero(ctx, ring);
        out.add_term(lambda.clone(), &CoeffPoly::one())?;
        Ok(out)
    }

    /// A multiple of the unit class.
    pub fn scalar(ctx: GrContext, ring: Ring, c: CoeffPoly) -> Result<Self> {
        let mut out = Self::zero(ctx, ring);
        out.add_term(Partition::empty(), &c)?;
        Ok(out)
    }

    pub fn from_terms<I>(ctx: GrContext, ring: Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, CoeffPoly)>,
    {
        let mut out = Self::zero(ctx, ring);
        for (p, c) in terms {
            out.add_term(p, &c)?;
        }
        Ok(out)
    }

    /// Fixture helper: `[("[2,1]", "e1 - q"), ...]`.
    pub fn parse_terms(ctx: GrContext, ring: Ring, terms: &[(&str, &str)]) -> Result<Self> {
        let mut out = Self::zero(ctx, ring);
        for (p, c) in terms {
            out.add_term(p.parse()?, &c.parse()?)?;
        }
        Ok(out)
    }

    pub fn ctx(&self) -> GrContext {
        self.ctx
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(
        &self,
    ) -> impl ExactSizeIterator<Item = (&Partition, &CoeffPoly)> + DoubleEndedIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> CoeffPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: &CoeffPoly) -> Result<()> {
        self.ctx.check(&lambda)?;
        self.ring.check(coeff)?;
        self.add_unchecked(lambda, coeff);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, lambda: Partition, coeff: &CoeffPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn same_space(&self, other: &ClassExpr) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        if self.ring != other.ring {
            return Err(Error::WrongRing {
                expected: self.ring.to_string(),
                found: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn require_ring(&self, ring: Ring) -> Result<()> {
        if self.ring == ring {
            Ok(())
        } else {
            Err(Error::WrongRing {
                expected: ring.to_string(),
                found: self.ring.to_string(),
            })
        }
    }

    pub fn add(&self, other: &ClassExpr) -> Result<ClassExpr> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_unchecked(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ClassExpr) -> Result<ClassExpr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ClassExpr {
        self.map_coefficients(|c| -c)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &CoeffPoly) -> Result<ClassExpr> {
        self.ring.check(c)?;
        Ok(self.map_coefficients(|x| x * c))
    }

    pub(crate) fn map_coefficients(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> ClassExpr {
        let mut out = ClassExpr::zero(self.ctx, self.ring);
        for (p, c) in &self.terms {
            out.add_unchecked(p.clone(), &f(c));
        }
        out
    }

    /// Apply a coefficient substitution and move to `ring`.
    pub fn substitute(&self, s: &VarSubstitution, ring: Ring) -> Result<ClassExpr> {
        let mut out = ClassExpr::zero(self.ctx, ring);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), &c.substitute(s))?;
        }
        Ok(out)
    }

    /// Reinterpret in another ring; fails if a coefficient uses a variable
    /// the target does not allow.
    pub fn into_ring(self, ring: Ring) -> Result<ClassExpr> {
        for c in self.terms.values() {
            ring.check(c)?;
        }
        Ok(ClassExpr { ring, ..self })
    }

    /// Set `q = 0`.
    pub fn at_q_zero(&self) -> ClassExpr {
        let mut out = self.map_coefficients(CoeffPoly::q_to_zero);
        out.ring = self.ring.without_q();
        out
    }

    /// Set every `e_i` and `t_i` to zero.
    pub fn at_e_zero(&self) -> ClassExpr {
        let mut out = self.map_coefficients(|c| c.e_to_zero().substitute(&t_to_zero(c)));
        out.ring = self.ring.without_e();
        out
    }

    /// Terms `q^d sigma_nu` split by `d`, for quantum expressions with
    /// integer coefficients.
    pub fn q_power_coefficient(&self, lambda: &Partition, d: u32) -> BigInt {
        let c = self.coefficient(lambda);
        c.terms()
            .filter(|(m, _)| {
                m.q_exponent() == d && m.e_exponents().is_empty() && m.t_exponents().is_empty()
            })
            .map(|(_, x)| x.clone())
            .sum()
    }

    pub fn to_latex(&self) -> String {
        let sym = if self.ring.is_equivariant() {
            "\\widehat{\\sigma}"
        } else {
            "\\sigma"
        };
        let mut out = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (idx, (p, c)) in self.terms.iter().rev().enumerate() {
            let basis = if p.is_empty() {
                String::new()
            } else {
                let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
                format!("{sym}_{{{}}}", parts.join(","))
            };
            write_term(
                &mut out,
                idx == 0,
                c,
                &basis,
                &CoeffPoly::to_latex,
                "\\left(",
                "\\right)",
                "",
            );
        }
        out
    }
}

fn t_to_zero(c: &CoeffPoly) -> VarSubstitution {
    (1..=c.max_t_index()).fold(VarSubstitution::identity(), |s, i| {
        s.with(crate::poly::Var::T(i), CoeffPoly::zero())
    })
}

/// Appends one `coeff * basis` term with sign handling.
#[allow(clippy::too_many_arguments)]
fn write_term(
    out: &mut String,
    first: bool,
    c: &CoeffPoly,
    basis: &str,
    render: &dyn Fn(&CoeffPoly) -> String,
    open: &str,
    close: &str,
    dot: &str,
) {
    if basis.is_empty() {
        let text = render(c);
        match (first, text.strip_prefix('-')) {
            (true, _) => out.push_str(&text),
            (false, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (false, None) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
        }
        return;
    }
    let single = c.len() == 1;
    let negative = single && c.terms().next().is_some_and(|(_, x)| x.is_negative());
    let shown = if negative { -c } else { c.clone() };
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if shown.is_one() {
        out.push_str(basis);
    } else if single {
        out.push_str(&render(&shown));
        out.push_str(dot);
        out.push_str(basis);
    } else {
        out.push_str(open);
        out.push_str(&render(&shown));
        out.push_str(close);
        out.push_str(dot);
        out.push_str(basis);
    }
}

/// Plain text, largest basis element first: `σ[3,2] - e1 · σ[3,1] + e5`.
impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = if self.ring.is_equivariant() {
            "σ̂"
        } else {
            "σ"
        };
        let mut out = String::new();
        for (idx, (p, c)) in self.terms.iter().rev().enumerate() {
            let basis = if p.is_empty() {
                String::new()
            } else {
                format!("{sym}{p}")
            };
            write_term(
                &mut out,
                idx == 0,
                c,
                &basis,
                &|x| x.to_string(),
                "(",
                ")",
                " · ",
            );
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {} {}", self, self.ring, self.ctx)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: CoeffPoly,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    ctx: GrContext,
    ring: Ring,
    terms: Vec<TermJson>,
}

impl Serialize for ClassExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExprJson {
            ctx: self.ctx,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClassExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ExprJson::deserialize(deserializer)?;
        ClassExpr::from_terms(
            raw.ctx,
            raw.ring,
            raw.terms.into_iter().map(|t| (t.partition, t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}
