//! Acceptance criteria 1-14. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use schubert_core::{
    canonical_column_class, gkm_check, kt_conditions, restrict_expr,
    verify_product_by_localization, ClassExpr, CoeffPoly, GrContext, Grassmannian, Partition,
    RimHookOutcome, Ring,
};
use serde::Deserialize;

type Outcome = Result<String, String>;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn gr(k: usize, n: usize) -> Grassmannian {
    Grassmannian::from_kn(k, n).unwrap()
}

fn expr(g: &Grassmannian, ring: Ring, terms: &[(&str, &str)]) -> ClassExpr {
    ClassExpr::parse_terms(g.ctx(), ring, terms).unwrap()
}

fn expect_eq(what: &str, got: &ClassExpr, want: &ClassExpr) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn criterion_1() -> Outcome {
    let g = gr(2, 5);
    let got = g
        .product_equivariant(&p("[2,1]"), &p("[2]"))
        .map_err(|e| e.to_string())?;
    let want = expr(
        &g,
        Ring::Equivariant,
        &[
            ("[3,2]", "1"),
            ("[3,1]", "-e1"),
            ("[2,1]", "-e2"),
            ("[1,1]", "-e3"),
            ("[]", "e5"),
        ],
    );
    expect_eq("σ̂21·σ̂2 in Gr(2,5)", &got, &want)?;
    Ok(got.to_string())
}

fn criterion_2() -> Outcome {
    let g = gr(2, 5);
    let got = g
        .product_quantum(&p("[2,1]"), &p("[2]"))
        .map_err(|e| e.to_string())?;
    expect_eq(
        "σ21*σ2 in Gr(2,5)",
        &got,
        &expr(&g, Ring::Quantum, &[("[3,2]", "1"), ("[]", "q")]),
    )?;
    Ok(got.to_string())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let g = gr(5, 10);
    let got = g
        .quantum_pieri_column(&p("[5,5,4,3,3]"), 2)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let want = expr(
        &g,
        Ring::Quantum,
        &[
            ("[5,5,5,4,3]", "1"),
            ("[5,5,4,4,4]", "1"),
            ("[4,3,3,2]", "q"),
            ("[4,4,2,2]", "q"),
            ("[5,3,2,2]", "q"),
        ],
    );
    expect_eq("quantum Pieri in Gr(5,10)", &got, &want)?;
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{got} in {elapsed:?}"))
}

fn criterion_4() -> Outcome {
    let g = gr(5, 10);
    let out = g
        .quantum_lr(&p("[5,4,4,2,2]"), &p("[3,2,1]"), &p("[2,1]"))
        .map_err(|e| e.to_string())?;
    let pis: Vec<(Partition, u64)> = out.pi.iter().map(|t| (t.pi.clone(), t.lr)).collect();
    if out.value != "q^2".parse().unwrap() || pis != vec![(p("[7,7,4,3,2]"), 1)] {
        return Err(format!("value {} with Π {pis:?}", out.value));
    }
    Ok(format!("{} via Π = {{[7,7,4,3,2]}}", out.value))
}

fn criterion_5() -> Outcome {
    let (lam, mu, nu) = (p("[3,3,2,1]"), p("[4,3,2,1]"), p("[4,2,2,1]"));
    let small = gr(4, 10)
        .quantum_lr(&lam, &mu, &nu)
        .map_err(|e| e.to_string())?;
    if !small.value.is_zero() || !small.pi.is_empty() {
        return Err(format!(
            "Gr(4,10): value {} with {} members of Π",
            small.value,
            small.pi.len()
        ));
    }
    let big = gr(5, 10)
        .quantum_lr(&lam, &mu, &nu)
        .map_err(|e| e.to_string())?;
    let pis: Vec<(Partition, u64)> = big.pi.iter().map(|t| (t.pi.clone(), t.lr)).collect();
    if big.value != "6q".parse().unwrap() || pis != vec![(p("[6,5,3,3,2]"), 6)] {
        return Err(format!("Gr(5,10): value {} with Π {pis:?}", big.value));
    }
    Ok("0 in Gr(4,10), 6q in Gr(5,10)".into())
}

#[derive(Deserialize)]
struct TableFixture {
    k: usize,
    n: usize,
    entries: Vec<FixtureEntry>,
}

#[derive(Deserialize)]
struct FixtureEntry {
    left: Partition,
    right: Partition,
    printed: Vec<(Partition, String)>,
    engine: Option<Vec<(Partition, String)>>,
}

fn fixture_expr(ctx: GrContext, terms: &[(Partition, String)]) -> ClassExpr {
    ClassExpr::from_terms(
        ctx,
        Ring::EquivariantQuantum,
        terms
            .iter()
            .map(|(p, c)| (p.clone(), c.parse::<CoeffPoly>().unwrap())),
    )
    .unwrap()
}

fn criterion_6() -> Outcome {
    let fixture: TableFixture =
        serde_json::from_str(include_str!("fixtures/gr24_eq_quantum_table.json"))
            .map_err(|e| e.to_string())?;
    let g = gr(fixture.k, fixture.n);
    if fixture.entries.len() != 15 {
        return Err(format!("fixture has {} entries", fixture.entries.len()));
    }
    let mut mismatches = Vec::new();
    let mut notes = Vec::new();
    for entry in &fixture.entries {
        let got = g
            .product_eq_quantum(&entry.left, &entry.right)
            .map_err(|e| e.to_string())?;
        let printed = fixture_expr(g.ctx(), &entry.printed);
        match &entry.engine {
            Some(engine) => {
                // The printed value is not even homogeneous; the engine value
                // is asserted and checked pointwise at q = 0.
                let want = fixture_expr(g.ctx(), engine);
                if got != want {
                    mismatches.push(format!(
                        "σ̂{}*σ̂{}: got {got}, expected {want}",
                        entry.left, entry.right
                    ));
                }
                let ok =
                    verify_product_by_localization(&entry.left, &entry.right, &got.at_q_zero())
                        .map_err(|e| e.to_string())?;
                if !ok {
                    mismatches.push(format!(
                        "σ̂{}*σ̂{}: localization disagrees",
                        entry.left, entry.right
                    ));
                }
                notes.push(format!(
                    "σ̂{}*σ̂{} = {got} (printed {printed})",
                    entry.left, entry.right
                ));
            }
            None => {
                if got != printed {
                    let diff = got.sub(&printed).map_err(|e| e.to_string())?;
                    let local =
                        verify_product_by_localization(&entry.left, &entry.right, &got.at_q_zero())
                            .map_err(|e| e.to_string())?;
                    let printed_local = verify_product_by_localization(
                        &entry.left,
                        &entry.right,
                        &printed.at_q_zero(),
                    )
                    .map_err(|e| e.to_string())?;
                    let at_e_zero = got.at_e_zero();
                    mismatches.push(format!(
                        "σ̂{}*σ̂{}: engine {got}; printed {printed}; engine minus printed = {diff}; \
                         engine passes localization at q=0: {local}; printed passes: {printed_local}; \
                         engine at e=0: {at_e_zero}",
                        entry.left, entry.right
                    ));
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!("15 entries; {}", notes.join("; ")))
    } else {
        Err(mismatches.join(" | "))
    }
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for (k, n) in [(2, 4), (2, 5)] {
        let g = gr(k, n);
        for a in g.ctx().basis() {
            for b in g.ctx().basis() {
                let eq = g.product_equivariant(&a, &b).map_err(|e| e.to_string())?;
                let f = g.f_map(&eq).map_err(|e| e.to_string())?;
                expect_eq(
                    &format!("f square {a}*{b}"),
                    &f,
                    &g.product_quantum(&a, &b).unwrap(),
                )?;
                expect_eq(
                    &format!("rim hooks {a}*{b}"),
                    &f,
                    &g.product_quantum_by_rim_hooks(&a, &b).unwrap(),
                )?;
                let ft = g.f_tilde_map(&eq).map_err(|e| e.to_string())?;
                expect_eq(
                    &format!("f̃ square {a}*{b}"),
                    &ft,
                    &g.product_eq_quantum_direct(&a, &b).unwrap(),
                )?;
                expect_eq(&format!("q→0 {a}*{b}"), &ft.at_q_zero(), &eq)?;
                expect_eq(&format!("e→0 {a}*{b}"), &ft.at_e_zero(), &f)?;
                expect_eq(
                    &format!("classical {a}*{b}"),
                    &eq.at_e_zero(),
                    &f.at_q_zero(),
                )?;
                expect_eq(
                    &format!("classical engine {a}*{b}"),
                    &f.at_q_zero(),
                    &g.product_classical(&a, &b).unwrap(),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ordered pairs"))
}

fn criterion_8() -> Outcome {
    let mut pairs = 0;
    for (k, n) in [(2, 4), (2, 5)] {
        let g = gr(k, n);
        let basis = g.ctx().basis();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let prod = g.product_equivariant(a, b).map_err(|e| e.to_string())?;
                if !verify_product_by_localization(a, b, &prod).map_err(|e| e.to_string())? {
                    return Err(format!("σ̂{a}·σ̂{b} in Gr({k},{n}) fails localization"));
                }
                pairs += 1;
            }
            let table =
                restrict_expr(&ClassExpr::basis(g.ctx(), Ring::Equivariant, a).unwrap()).unwrap();
            if !gkm_check(&table) {
                return Err(format!("σ̂{a} in Gr({k},{n}) fails GKM"));
            }
        }
    }
    Ok(format!("{pairs} unordered pairs (21 + 55)"))
}

fn criterion_9() -> Outcome {
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        let g = gr(k, n);
        for lam in g.ctx().basis() {
            let one = p("[1]");
            expect_eq(
                &format!("equivariant Pieri {lam} in Gr({k},{n})"),
                &g.equivariant_pieri(&lam).unwrap(),
                &g.product_equivariant(&lam, &one).unwrap(),
            )?;
            let closed = g.eq_quantum_pieri(&lam).unwrap();
            expect_eq(
                &format!("equivariant quantum Pieri {lam} in Gr({k},{n})"),
                &closed,
                &g.product_eq_quantum(&lam, &one).unwrap(),
            )?;
            for (_, c) in closed.terms() {
                for (m, _) in c.terms() {
                    if m.q_exponent() > 0
                        && (!m.e_exponents().is_empty() || !m.t_exponents().is_empty())
                    {
                        return Err(format!("mixed term in σ̂{lam}*σ̂1 of Gr({k},{n}): {c}"));
                    }
                }
            }
        }
    }
    Ok("all λ in Gr(2,4), Gr(2,5), Gr(3,6)".into())
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for (k, n) in [(2, 4), (2, 5)] {
        let g = gr(k, n);
        for lam in g.ctx().basis() {
            let check = g.giambelli_check(&lam).map_err(|e| e.to_string())?;
            if !check.holds {
                return Err(format!(
                    "σ̂{lam} in Gr({k},{n}): rows {}, columns {}",
                    check.rows, check.columns
                ));
            }
            count += 1;
        }
    }
    Ok(format!("{count} classes"))
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for (k, n) in [(2, 4), (2, 6)] {
        let g = gr(k, n);
        for w in 0..=12 {
            for lam in Partition::of_weight(w, k, w) {
                let orders = g.rim_hook_reduce_all_orders(&lam);
                if orders.len() != 1 {
                    return Err(format!("{lam} in Gr({k},{n}) reduces to {orders:?}"));
                }
                let outcome: &RimHookOutcome = orders.iter().next().unwrap();
                if *outcome != g.rim_hook_reduce(&lam) {
                    return Err(format!("{lam}: default order differs"));
                }
                let det_route = g.f_map(&g.reduce_hat(&lam)).map_err(|e| e.to_string())?;
                expect_eq(
                    &format!("{lam} in Gr({k},{n})"),
                    &outcome.to_expr(g.ctx()),
                    &det_route,
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} partitions"))
}

fn criterion_12() -> Outcome {
    let g = gr(2, 4);
    let basis = g.ctx().basis();
    let one = |l: &Partition| ClassExpr::basis(g.ctx(), Ring::EquivariantQuantum, l).unwrap();
    let mul = |a: &ClassExpr, b: &ClassExpr| g.multiply(a, b).unwrap();
    for a in &basis {
        for b in &basis {
            expect_eq(
                &format!("{a}*{b}"),
                &g.product_eq_quantum(a, b).unwrap(),
                &g.product_eq_quantum(b, a).unwrap(),
            )?;
        }
    }
    let mut triples = 0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            for c in &basis[j..] {
                let (x, y, z) = (one(a), one(b), one(c));
                let ab_c = mul(&mul(&x, &y), &z);
                expect_eq(
                    &format!("({a}*{b})*{c} vs {a}*({b}*{c})"),
                    &ab_c,
                    &mul(&x, &mul(&y, &z)),
                )?;
                expect_eq(
                    &format!("({a}*{b})*{c} vs ({a}*{c})*{b}"),
                    &ab_c,
                    &mul(&mul(&x, &z), &y),
                )?;
                triples += 1;
            }
        }
    }
    if triples != 56 {
        return Err(format!("{triples} triples"));
    }
    Ok("36 ordered pairs, 56 triples".into())
}

fn criterion_13() -> Outcome {
    for (k, n) in [(2, 4), (3, 6)] {
        let ctx = GrContext::new(k, n).unwrap();
        for r in 0..=k {
            let table = canonical_column_class(r, &ctx).map_err(|e| e.to_string())?;
            let report = kt_conditions(&table, &Partition::column(r)).map_err(|e| e.to_string())?;
            if !report.all() {
                return Err(format!("r = {r} in {ctx}: {report:?}"));
            }
        }
    }
    Ok("r = 0..k in Gr(2,4), Gr(3,6)".into())
}

fn criterion_14() -> Outcome {
    let g = gr(2, 5);
    let (k, cols) = (g.ctx().k(), g.ctx().cols());
    let mut count = 0;
    for a in g.ctx().basis() {
        for b in g.ctx().basis() {
            if a.first() + b.first() <= cols || a.len() + b.len() <= k {
                let prod = g.product_quantum(&a, &b).unwrap();
                if prod.terms().any(|(_, c)| c.contains_q()) {
                    return Err(format!("σ{a}*σ{b} = {prod}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} ordered pairs without q"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        (1, "Gr(2,5) equivariant product", criterion_1),
        (2, "Gr(2,5) quantum product", criterion_2),
        (3, "Gr(5,10) quantum Pieri", criterion_3),
        (4, "quantum LR, first worked example", criterion_4),
        (5, "quantum LR, second worked example", criterion_5),
        (6, "Gr(2,4) equivariant quantum table", criterion_6),
        (7, "homomorphism squares", criterion_7),
        (8, "localization oracle", criterion_8),
        (9, "Pieri closed forms", criterion_9),
        (10, "Giambelli without deformation", criterion_10),
        (11, "rim hook invariance", criterion_11),
        (12, "ring axioms", criterion_12),
        (13, "canonical column classes", criterion_13),
        (14, "no deformation for small products", criterion_14),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {reason}");
            }
        }
    }
    println!("{} of 14 criteria passed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
