use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubert_core::{
    expand_product_infinite, lr_coefficient, multiplication_table, restrict_expr, table_to_latex,
    table_to_text, verify_product_by_localization, ClassExpr, Error, FixedPoint, GrContext,
    Grassmannian, Partition, Ring,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "schubert",
    version,
    about = "Exact Schubert calculus on Grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct Common {
    /// The Grassmannian Gr(K, N).
    #[arg(long, num_args = 2, value_names = ["K", "N"], required = true)]
    gr: Vec<usize>,
    /// classical, quantum, equivariant or equivariant-quantum.
    #[arg(long, value_parser = parse_ring)]
    ring: Option<Ring>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Only emit the result document.
    #[arg(short, long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two basis classes.
    Product {
        #[command(flatten)]
        common: Common,
        lambda: String,
        mu: String,
    },
    /// Pieri product with a column (default) or row class.
    Pieri {
        #[command(flatten)]
        common: Common,
        lambda: String,
        /// Size of the column or row.
        #[arg(default_value_t = 1)]
        r: usize,
        #[arg(long)]
        row: bool,
    },
    /// Littlewood-Richardson coefficient, or the full expansion without NU.
    Lr {
        #[command(flatten)]
        common: Common,
        lambda: String,
        mu: String,
        nu: Option<String>,
    },
    /// Quantum Littlewood-Richardson coefficient by adjoining rim hooks.
    Qlr {
        #[command(flatten)]
        common: Common,
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Rewrite a class indexed by any partition in the rectangle basis.
    Reduce {
        #[command(flatten)]
        common: Common,
        lambda: String,
    },
    /// Multiplication table of the basis.
    Table {
        #[command(flatten)]
        common: Common,
        /// Include products with the unit class.
        #[arg(long)]
        with_unit: bool,
    },
    /// Restrictions of a characteristic class to the torus fixed points.
    Restrict {
        #[command(flatten)]
        common: Common,
        lambda: String,
        /// Only this fixed point, given as a 01-string.
        #[arg(long)]
        point: Option<String>,
    },
    /// Check a product against an independent computation.
    Verify {
        #[command(flatten)]
        common: Common,
        lambda: String,
        mu: String,
    },
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse::<Ring>().map_err(|e| e.to_string())
}

/// A domain failure: reported on stderr with exit status 1.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    document: String,
    ok: bool,
}

impl Output {
    fn done(document: String) -> Self {
        Output { document, ok: true }
    }
}

fn partition(text: &str) -> Result<Partition, Failure> {
    Ok(text.parse()?)
}

fn fitted(text: &str, ctx: &GrContext) -> Result<Partition, Failure> {
    let p = partition(text)?;
    ctx.check(&p)?;
    Ok(p)
}

fn render(x: &ClassExpr, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Text => x.to_string(),
        Format::Json => serde_json::to_string(x)?,
        Format::Latex => x.to_latex(),
    })
}

fn engine(common: &Common) -> Result<Grassmannian, Failure> {
    Ok(Grassmannian::from_kn(common.gr[0], common.gr[1])?)
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Product { common, lambda, mu } => {
            let g = engine(common)?;
            let ring = common.ring.unwrap_or(Ring::Classical);
            let (a, b) = (fitted(lambda, &g.ctx())?, fitted(mu, &g.ctx())?);
            Ok(Output::done(render(
                &g.product(ring, &a, &b)?,
                common.format,
            )?))
        }
        Command::Pieri {
            common,
            lambda,
            r,
            row,
        } => {
            let g = engine(common)?;
            let ring = common.ring.unwrap_or(Ring::Classical);
            let lam = fitted(lambda, &g.ctx())?;
            let x = match ring {
                Ring::Classical | Ring::Quantum => {
                    let x = if *row {
                        g.quantum_pieri_row(&lam, *r)?
                    } else {
                        g.quantum_pieri_column(&lam, *r)?
                    };
                    if ring == Ring::Classical {
                        x.at_q_zero()
                    } else {
                        x
                    }
                }
                _ if *r != 1 => {
                    return Err(Failure(format!(
                        "the {ring} Pieri rule is implemented for r = 1 only"
                    )));
                }
                Ring::Equivariant => g.equivariant_pieri(&lam)?,
                Ring::EquivariantQuantum => g.eq_quantum_pieri(&lam)?,
            };
            Ok(Output::done(render(&x, common.format)?))
        }
        Command::Lr {
            common,
            lambda,
            mu,
            nu,
        } => {
            GrContext::new(common.gr[0], common.gr[1])?;
            let (a, b) = (partition(lambda)?, partition(mu)?);
            let document = match nu {
                Some(nu) => {
                    let c = partition(nu)?;
                    let value = lr_coefficient(&a, &b, &c);
                    match common.format {
                        Format::Json => {
                            json!({"lambda": a, "mu": b, "nu": c, "coefficient": value}).to_string()
                        }
                        _ => value.to_string(),
                    }
                }
                None => {
                    let terms = expand_product_infinite(&a, &b, common.gr[0]);
                    match common.format {
                        Format::Json => {
                            let list: Vec<_> = terms
                                .iter()
                                .rev()
                                .map(|(p, c)| json!({"partition": p, "coefficient": c}))
                                .collect();
                            serde_json::to_string(&list)?
                        }
                        _ => {
                            let list: Vec<String> = terms
                                .iter()
                                .rev()
                                .map(|(p, c)| {
                                    if *c == 1 {
                                        format!("s{p}")
                                    } else {
                                        format!("{c} s{p}")
                                    }
                                })
                                .collect();
                            if list.is_empty() {
                                "0".into()
                            } else {
                                list.join(" + ")
                            }
                        }
                    }
                }
            };
            Ok(Output::done(document))
        }
        Command::Qlr {
            common,
            lambda,
            mu,
            nu,
        } => {
            let g = engine(common)?;
            let ctx = g.ctx();
            let out = g.quantum_lr(
                &fitted(lambda, &ctx)?,
                &fitted(mu, &ctx)?,
                &fitted(nu, &ctx)?,
            )?;
            let document = match common.format {
                Format::Json => {
                    let pi: Vec<_> = out
                        .pi
                        .iter()
                        .map(|t| json!({"pi": t.pi, "hook_rows": t.hook_rows, "sign": t.sign, "lr": t.lr}))
                        .collect();
                    json!({"d": out.d, "pi": pi, "value": out.value}).to_string()
                }
                Format::Latex => out.value.to_latex(),
                Format::Text => {
                    let mut s = out.value.to_string();
                    if !common.quiet {
                        for t in &out.pi {
                            let sign = if t.sign < 0 { '-' } else { '+' };
                            s.push_str(&format!(
                                "\n  π = {}  sign {sign}  c = {}  hook rows {:?}",
                                t.pi, t.lr, t.hook_rows
                            ));
                        }
                    }
                    s
                }
            };
            Ok(Output::done(document))
        }
        Command::Reduce { common, lambda } => {
            let g = engine(common)?;
            let lam = partition(lambda)?;
            let ring = common.ring.unwrap_or(Ring::Quantum);
            let x = match ring {
                Ring::Quantum if common.format == Format::Text => {
                    return Ok(Output::done(g.rim_hook_reduce(&lam).to_string()));
                }
                Ring::Quantum => g.rim_hook_reduce(&lam).to_expr(g.ctx()),
                Ring::Classical => g.rim_hook_reduce(&lam).to_expr(g.ctx()).at_q_zero(),
                Ring::Equivariant => g.reduce_hat(&lam),
                Ring::EquivariantQuantum => g.f_tilde_map(&g.reduce_hat(&lam))?,
            };
            Ok(Output::done(render(&x, common.format)?))
        }
        Command::Table { common, with_unit } => {
            let g = engine(common)?;
            let ring = common.ring.unwrap_or(Ring::Classical);
            let entries = multiplication_table(&g, ring, *with_unit)?;
            let document = match common.format {
                Format::Text => table_to_text(ring, &entries).trim_end().to_string(),
                Format::Json => serde_json::to_string(&entries)?,
                Format::Latex => table_to_latex(ring, &entries).trim_end().to_string(),
            };
            Ok(Output::done(document))
        }
        Command::Restrict {
            common,
            lambda,
            point,
        } => {
            let g = engine(common)?;
            let ring = common.ring.unwrap_or(Ring::Equivariant);
            if ring != Ring::Equivariant {
                return Err(Failure(format!(
                    "restriction is defined for the equivariant ring, not {ring}"
                )));
            }
            let lam = fitted(lambda, &g.ctx())?;
            let table = restrict_expr(&ClassExpr::basis(g.ctx(), Ring::Equivariant, &lam)?)?;
            if let Some(point) = point {
                let b = FixedPoint::parse(point, &g.ctx())?;
                let value = table.get(&b).expect("every fixed point is listed");
                let document = match common.format {
                    Format::Text => value.to_string(),
                    Format::Json => json!({"point": b.to_string(), "value": value}).to_string(),
                    Format::Latex => value.to_latex(),
                };
                return Ok(Output::done(document));
            }
            let document = match common.format {
                Format::Json => table.to_json()?,
                _ => table.to_string().trim_end().to_string(),
            };
            Ok(Output::done(document))
        }
        Command::Verify { common, lambda, mu } => {
            let g = engine(common)?;
            let ring = common.ring.unwrap_or(Ring::Classical);
            let (a, b) = (fitted(lambda, &g.ctx())?, fitted(mu, &g.ctx())?);
            let checks = verify(&g, ring, &a, &b)?;
            let ok = checks.iter().all(|(_, pass)| *pass);
            let document = match common.format {
                Format::Json => {
                    let list: Vec<_> = checks
                        .iter()
                        .map(|(name, pass)| json!({"check": name, "pass": pass}))
                        .collect();
                    json!({"checks": list, "pass": ok}).to_string()
                }
                _ => {
                    let mut lines: Vec<String> = if common.quiet {
                        Vec::new()
                    } else {
                        checks
                            .iter()
                            .map(|(name, pass)| {
                                format!("{} {name}", if *pass { "PASS" } else { "FAIL" })
                            })
                            .collect()
                    };
                    lines.push(if ok {
                        "all checks passed".into()
                    } else {
                        "some checks failed".into()
                    });
                    lines.join("\n")
                }
            };
            Ok(Output { document, ok })
        }
    }
}

fn verify(
    g: &Grassmannian,
    ring: Ring,
    a: &Partition,
    b: &Partition,
) -> Result<Vec<(String, bool)>, Failure> {
    let mut checks = Vec::new();
    match ring {
        Ring::Classical => {
            let prod = g.product_classical(a, b)?;
            let mut lr = ClassExpr::zero(g.ctx(), Ring::Classical);
            for (nu, c) in expand_product_infinite(a, b, g.ctx().k()) {
                if nu.fits(&g.ctx()) {
                    lr.add_term(nu, &(c as i64).into())?;
                }
            }
            checks.push((
                "engine agrees with Littlewood-Richardson".to_string(),
                prod == lr,
            ));
        }
        Ring::Quantum => {
            let prod = g.product_quantum(a, b)?;
            checks.push((
                "rim-hook pipeline".into(),
                prod == g.product_quantum_by_rim_hooks(a, b)?,
            ));
            checks.push((
                "forgetful map of the equivariant product".into(),
                prod == g.f_map(&g.product_equivariant(a, b)?)?,
            ));
        }
        Ring::Equivariant => {
            let prod = g.product_equivariant(a, b)?;
            checks.push((
                "localization at every fixed point".into(),
                verify_product_by_localization(a, b, &prod)?,
            ));
        }
        Ring::EquivariantQuantum => {
            let prod = g.product_eq_quantum(a, b)?;
            checks.push((
                "deformed relation reduction".into(),
                prod == g.product_eq_quantum_direct(a, b)?,
            ));
            checks.push((
                "q = 0 gives the equivariant product".into(),
                prod.at_q_zero() == g.product_equivariant(a, b)?,
            ));
            checks.push((
                "e = 0 gives the quantum product".into(),
                prod.at_e_zero() == g.product_quantum(a, b)?,
            ));
            checks.push((
                "localization of the q = 0 part".into(),
                verify_product_by_localization(a, b, &prod.at_q_zero())?,
            ));
        }
    }
    Ok(checks)
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Product { common, .. }
        | Command::Pieri { common, .. }
        | Command::Lr { common, .. }
        | Command::Qlr { common, .. }
        | Command::Reduce { common, .. }
        | Command::Table { common, .. }
        | Command::Restrict { common, .. }
        | Command::Verify { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common(&cli.command);
    let result = run(&cli.command).and_then(|out| {
        let mut document = out.document;
        document.push('\n');
        match &common.out {
            Some(path) => {
                fs::write(path, &document)?;
                if !common.quiet {
                    eprintln!("wrote {path}");
                }
            }
            None => io::stdout().write_all(document.as_bytes())?,
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
