//! Command-line front end. Every verb parses its input, calls the library
//! and prints either text or a JSON report of the form
//! `{"command", "inputs", "result", "checks"}`.
//!
//! Exit codes: 0 success, 1 domain error or failed verification, 2 usage
//! or parse error, 3 guard tripped.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::duality::{
    madsen_generator_degrees, milnor_generator_degrees, pair, poincare_series, DualMonomial,
};
use crate::error::{Error, Result};
use crate::expr::{
    element_json, format_element, format_sequence, parse_element, parse_vector, Style,
};
use crate::freealg::{coproduct, Element, TensorElement};
use crate::limit::{phi_r_with, phi_u_to_a2, pi_with, Lifter, DEFAULT_LIFT_STEPS};
use crate::nishida::sq_act_with;
use crate::par::Exec;
use crate::quotients::{
    basis, madsen_decompose, milnor_decompose, AlgebraId, Normalizer, DEFAULT_MAX_STEPS,
};
use crate::seq::Sequence;
use crate::verify::run_all;

#[derive(Debug, Parser)]
#[command(
    name = "qalg",
    version,
    about = "Mod-2 Steenrod and Dyer-Lashof algebra calculator"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on rewrite steps per monomial.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    F0,
    F,
    A2,
    U,
    R,
}

impl From<Alg> for AlgebraId {
    fn from(a: Alg) -> Self {
        match a {
            Alg::F0 => AlgebraId::F0,
            Alg::F => AlgebraId::F,
            Alg::A2 => AlgebraId::A2,
            Alg::U => AlgebraId::U,
            Alg::R => AlgebraId::R,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeStyle {
    Madsen,
    Milnor,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce an element to normal form.
    Normalize {
        #[arg(long)]
        algebra: Alg,
        expr: String,
    },
    /// Coproduct, with each tensor factor reduced in the chosen algebra.
    Coproduct {
        #[arg(long, default_value = "f0")]
        algebra: Alg,
        expr: String,
    },
    /// Excess of every monomial.
    Excess { expr: String },
    /// Apply the opposite Steenrod operation Sq^A.
    Action {
        #[arg(long)]
        sq: u32,
        #[arg(long)]
        algebra: Alg,
        expr: String,
    },
    /// List basis monomials in one degree.
    Basis {
        #[arg(long)]
        algebra: Alg,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        length: Option<usize>,
    },
    /// Dimension table up to a degree.
    Dims {
        #[arg(long)]
        algebra: Alg,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        length: Option<usize>,
        /// Compare with the Poincare series of the polynomial dual.
        #[arg(long)]
        check_dual: bool,
    },
    /// Kronecker pairing of a dual monomial with an element.
    Pair {
        /// Exponents (l_1,...,l_k) of y_{k,1},...,y_{k,k}.
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u32>,
        expr: String,
    },
    /// Madsen or Milnor coefficients of a sequence.
    Decompose {
        #[arg(long)]
        style: DecomposeStyle,
        #[arg(long)]
        length: Option<usize>,
        /// Comma-separated entries, leftmost first.
        vector: String,
    },
    /// A preimage under pi of a Dyer-Lashof element.
    Lift {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_LIFT_STEPS)]
        max_iterations: usize,
        expr: String,
    },
    /// Pad with Q^0 to the given length and reduce in r.
    Pi {
        #[arg(long)]
        length: usize,
        expr: String,
    },
    /// Append Q^0 (algebra r) or drop trailing Q^0s (algebra u).
    Phi {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "r")]
        algebra: Alg,
        expr: String,
    },
    /// Run the property suites.
    Verify {
        /// Run sweeps on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

struct Report {
    command: &'static str,
    inputs: Value,
    text: String,
    result: Value,
    checks: Vec<Value>,
    status: i32,
}

impl Report {
    fn new(command: &'static str, inputs: Value, text: String, result: Value) -> Self {
        Report {
            command,
            inputs,
            text,
            result,
            checks: Vec::new(),
            status: 0,
        }
    }

    fn element(command: &'static str, inputs: Value, x: &Element) -> Self {
        Report::new(
            command,
            inputs,
            format_element(x, Style::Text),
            element_json(x),
        )
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => 1,
        Error::Range(_) | Error::Precondition(_) | Error::Parse { .. } => 2,
        Error::Guard(_) => 3,
    }
}

fn tensor_text(t: &TensorElement) -> String {
    if t.is_empty() {
        return "0".to_string();
    }
    t.terms()
        .map(|slots| {
            slots
                .iter()
                .map(format_sequence)
                .collect::<Vec<_>>()
                .join(" ⊗ ")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn tensor_json(t: &TensorElement) -> Value {
    let terms: Vec<Vec<&[u32]>> = t
        .terms()
        .map(|slots| slots.iter().map(Sequence::entries).collect())
        .collect();
    json!({ "terms": terms })
}

fn execute(cli: &Cli) -> Result<Report> {
    let norm = Normalizer::with_max_steps(cli.max_steps);
    Ok(match &cli.command {
        Command::Normalize { algebra, expr } => {
            let alg = AlgebraId::from(*algebra);
            let x = norm.normalize(&parse_element(expr)?, alg)?;
            Report::element(
                "normalize",
                json!({ "algebra": alg.name(), "expr": expr }),
                &x,
            )
        }
        Command::Coproduct { algebra, expr } => {
            let alg = AlgebraId::from(*algebra);
            let x = norm.normalize(&parse_element(expr)?, alg)?;
            let t = norm.normalize_tensor(&coproduct(&x), alg)?;
            Report::new(
                "coproduct",
                json!({ "algebra": alg.name(), "expr": expr }),
                tensor_text(&t),
                tensor_json(&t),
            )
        }
        Command::Excess { expr } => {
            let x = parse_element(expr)?;
            let rows: Vec<(String, String)> = x
                .terms()
                .map(|s| (format_sequence(s), s.excess().to_string()))
                .collect();
            let text = rows
                .iter()
                .map(|(m, e)| format!("{m}: {e}"))
                .collect::<Vec<_>>()
                .join("\n");
            let result: Vec<Value> = x
                .terms()
                .zip(&rows)
                .map(|(s, (_, e))| json!({ "monomial": s.entries(), "excess": e }))
                .collect();
            Report::new("excess", json!({ "expr": expr }), text, json!(result))
        }
        Command::Action { sq, algebra, expr } => {
            let alg = AlgebraId::from(*algebra);
            let x = sq_act_with(&norm, *sq, &parse_element(expr)?, alg)?;
            Report::element(
                "action",
                json!({ "sq": sq, "algebra": alg.name(), "expr": expr }),
                &x,
            )
        }
        Command::Basis {
            algebra,
            degree,
            length,
        } => {
            let alg = AlgebraId::from(*algebra);
            let b = basis(alg, *degree, *length)?;
            let text = b.iter().map(format_sequence).collect::<Vec<_>>().join("\n");
            let result: Vec<&[u32]> = b.iter().map(Sequence::entries).collect();
            Report::new(
                "basis",
                json!({ "algebra": alg.name(), "degree": degree, "length": length }),
                text,
                json!(result),
            )
        }
        Command::Dims {
            algebra,
            max_degree,
            length,
            check_dual,
        } => dims(AlgebraId::from(*algebra), *max_degree, *length, *check_dual)?,
        Command::Pair { lambda, expr } => {
            let xi = DualMonomial::new(lambda.clone())?;
            let x = parse_element(expr)?;
            let mut bit = 0u8;
            for s in x.terms() {
                bit ^= pair(&xi, s)?;
            }
            Report::new(
                "pair",
                json!({ "lambda": lambda, "expr": expr }),
                bit.to_string(),
                json!(bit),
            )
        }
        Command::Decompose {
            style,
            length,
            vector,
        } => {
            let s = Sequence::new(parse_vector(vector)?);
            let (name, values) = match style {
                DecomposeStyle::Madsen => ("madsen", madsen_decompose(&s)?.values),
                DecomposeStyle::Milnor => (
                    "milnor",
                    milnor_decompose(&s, length.unwrap_or(s.len()))?.values,
                ),
            };
            let text = values
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            Report::new(
                "decompose",
                json!({ "style": name, "length": length, "vector": s.entries() }),
                text,
                json!(values),
            )
        }
        Command::Lift {
            length,
            max_iterations,
            expr,
        } => {
            let lifter = Lifter {
                max_iterations: *max_iterations,
                normalizer: norm,
            };
            let x = parse_element(expr)?;
            let lifted = x.try_linear(|s| lifter.lift(*length, s).map(|l| l.element))?;
            Report::element("lift", json!({ "length": length, "expr": expr }), &lifted)
        }
        Command::Pi { length, expr } => {
            let x = pi_with(&norm, *length, &parse_element(expr)?)?;
            Report::element("pi", json!({ "length": length, "expr": expr }), &x)
        }
        Command::Phi {
            length,
            algebra,
            expr,
        } => {
            let input = parse_element(expr)?;
            let alg = AlgebraId::from(*algebra);
            let x = match alg {
                AlgebraId::R => phi_r_with(&norm, *length, &input)?,
                AlgebraId::U => phi_u_to_a2(&input, *length)?,
                _ => {
                    return Err(Error::Precondition(format!(
                        "phi is defined on r and u, not {alg}"
                    )))
                }
            };
            Report::element(
                "phi",
                json!({ "length": length, "algebra": alg.name(), "expr": expr }),
                &x,
            )
        }
        Command::Verify { sequential } => {
            let exec = if *sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            let suites = run_all(exec);
            let passed = suites.iter().filter(|s| s.pass()).count();
            let mut lines = Vec::new();
            let mut checks = Vec::new();
            for s in &suites {
                let n = s.checks.len();
                lines.push(format!(
                    "suite {} {}: {} ({}/{n} checks)",
                    s.id,
                    s.title,
                    if s.pass() { "PASS" } else { "FAIL" },
                    n - s.failures()
                ));
                for c in &s.checks {
                    if !c.pass {
                        lines.push(format!("  FAIL {}: {}", c.name, c.detail));
                    }
                    checks.push(json!({
                        "name": format!("suite {} / {}", s.id, c.name),
                        "pass": c.pass,
                        "detail": c.detail,
                    }));
                }
            }
            lines.push(format!("{passed} of {} suites passed", suites.len()));
            let mut r = Report::new(
                "verify",
                json!({ "sequential": sequential }),
                lines.join("\n"),
                json!({ "suites": suites.len(), "passed": passed }),
            );
            r.checks = checks;
            r.status = i32::from(passed != suites.len());
            r
        }
    })
}

fn dims(
    alg: AlgebraId,
    max_degree: u32,
    length: Option<usize>,
    check_dual: bool,
) -> Result<Report> {
    let series = if check_dual {
        let gens = match (alg, length) {
            (AlgebraId::A2, _) => milnor_generator_degrees(max_degree),
            (AlgebraId::R, Some(k)) => madsen_generator_degrees(k),
            _ => {
                return Err(Error::Precondition(
                    "--check-dual needs --algebra a2, or r with --length".into(),
                ))
            }
        };
        Some(poincare_series(&gens, max_degree as usize))
    } else {
        None
    };
    let mut text = vec![if check_dual {
        "degree\tdim\tseries\tmatch"
    } else {
        "degree\tdim"
    }
    .to_string()];
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for d in 0..=max_degree {
        let dim = basis(alg, d, length)?.len() as u64;
        match &series {
            Some(s) => {
                let want = s[d as usize];
                let ok = dim == want;
                text.push(format!(
                    "{d}\t{dim}\t{want}\t{}",
                    if ok { "yes" } else { "no" }
                ));
                rows.push(json!({ "degree": d, "dim": dim, "series": want, "match": ok }));
                checks.push(json!({
                    "name": format!("degree {d}"),
                    "pass": ok,
                    "detail": format!("{dim} vs {want}"),
                }));
            }
            None => {
                text.push(format!("{d}\t{dim}"));
                rows.push(json!({ "degree": d, "dim": dim }));
            }
        }
    }
    let mismatch = checks.iter().any(|c| c["pass"] == json!(false));
    let mut r = Report::new(
        "dims",
        json!({ "algebra": alg.name(), "max_degree": max_degree, "length": length, "check_dual": check_dual }),
        text.join("\n"),
        json!(rows),
    );
    r.checks = checks;
    r.status = i32::from(mismatch);
    Ok(r)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let written = if cli.json {
                let doc = json!({
                    "command": report.command,
                    "inputs": report.inputs,
                    "result": report.result,
                    "checks": report.checks,
                });
                writeln!(out, "{doc}")
            } else {
                writeln!(out, "{}", report.text)
            };
            if written.is_err() {
                return 2;
            }
            report.status
        }
        Err(e) => {
            let _ = writeln!(err, "qalg: {e}");
            exit_code(&e)
        }
    }
}
