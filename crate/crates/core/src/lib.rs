//! Exact Schubert calculus on Grassmannians `Gr(k, n)`: classical,
//! quantum, equivariant and equivariant quantum products in the basis of
//! characteristic classes, with rim-hook reduction and a fixed-point
//! localization oracle.

pub mod det;
pub mod eq_quantum;
pub mod equivariant;
pub mod error;
pub mod expr;
pub mod localization;
pub mod lr;
pub mod partition;
pub mod poly;
pub mod quantum;
pub mod table;

pub use eq_quantum::GiambelliCheck;
pub use equivariant::{inv_star, weight_negation, Grassmannian};
pub use error::{Error, Result};
pub use expr::{ClassExpr, Ring};
pub use localization::{
    canonical_column_class, canonical_column_expr, fixed_points, gkm_check, kt_conditions,
    restrict_expr, restrict_hat_class, verify_product_by_localization, KtReport, RestrictionTable,
};
pub use lr::{expand_product_infinite, lr_coefficient};
pub use partition::{straighten, FixedPoint, GrContext, Orientation, Partition, RimHook};
pub use poly::{CoeffPoly, Monomial, Var, VarSubstitution};
pub use quantum::{qinv, PiTerm, QuantumLr, RimHookOutcome};
pub use table::{multiplication_table, table_to_latex, table_to_text, TableEntry};
