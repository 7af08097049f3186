//! Multiplication tables of basis classes.

use serde::Serialize;

use crate::equivariant::Grassmannian;
use crate::error::Result;
use crate::expr::{ClassExpr, Ring};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub left: Partition,
    pub right: Partition,
    pub product: ClassExpr,
}

/// Products `left * right` for `left <= right` in basis order. The unit
/// row is skipped unless `include_unit` is set.
pub fn multiplication_table(
    gr: &Grassmannian,
    ring: Ring,
    include_unit: bool,
) -> Result<Vec<TableEntry>> {
    let basis: Vec<Partition> = gr
        .ctx()
        .basis()
        .into_iter()
        .filter(|p| include_unit || !p.is_empty())
        .collect();
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            out.push(TableEntry {
                left: a.clone(),
                right: b.clone(),
                product: gr.product(ring, a, b)?,
            });
        }
    }
    Ok(out)
}

fn symbol(ring: Ring) -> &'static str {
    if ring.is_equivariant() {
        "σ̂"
    } else {
        "σ"
    }
}

/// One line per entry: `σ̂[1] * σ̂[2] = ...`.
pub fn table_to_text(ring: Ring, entries: &[TableEntry]) -> String {
    let sym = symbol(ring);
    entries
        .iter()
        .map(|e| format!("{sym}{} * {sym}{} = {}\n", e.left, e.right, e.product))
        .collect()
}

fn latex_basis(ring: Ring, p: &Partition) -> String {
    let sym = if ring.is_equivariant() {
        "\\widehat{\\sigma}"
    } else {
        "\\sigma"
    };
    if p.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
    format!("${sym}_{{{}}}$", parts.join(","))
}

/// An upper-triangular `tabular` with the row and column classes as headers.
pub fn table_to_latex(ring: Ring, entries: &[TableEntry]) -> String {
    let mut heads: Vec<Partition> = Vec::new();
    for e in entries {
        if !heads.contains(&e.left) {
            heads.push(e.left.clone());
        }
    }
    let mut out = format!(
        "\\begin{{tabular}}{{|c|{}}}\n\\hline\n",
        "c|".repeat(heads.len())
    );
    let header: Vec<String> = heads.iter().map(|p| latex_basis(ring, p)).collect();
    out.push_str(&format!(" & {} \\\\\n\\hline\n", header.join(" & ")));
    for (i, row) in heads.iter().enumerate() {
        let mut cells = vec![latex_basis(ring, row)];
        for (j, col) in heads.iter().enumerate() {
            if j < i {
                cells.push(String::new());
                continue;
            }
            let cell = entries
                .iter()
                .find(|e| &e.left == row && &e.right == col)
                .map(|e| format!("${}$", e.product.to_latex()))
                .unwrap_or_default();
            cells.push(cell);
        }
        out.push_str(&cells.join(" & "));
        out.push_str(" \\\\\n\\hline\n");
    }
    out.push_str("\\end{tabular}\n");
    out
}
