//! `nilclean`: decide, decompose and cross-check nil-cleanness of matrix
//! rings over finite rings.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use nilclean::nilclean::{decompose_bruteforce, Decomposition, MatrixWitness, Method, StructuredDecomposer};
use nilclean::predicates::{ring_is_abelian, ring_is_boolean};
use nilclean::radical::{ideal_nil_index, j_star, jacobson_radical, quotient_ring};
use nilclean::ring::{parse_matrix_literal, parse_ring_spec_with_cap, ring_axioms_check};
use nilclean::theorem::{
    decide_matrix_nil_clean, default_corpus, matrix_ring_within_budget, parse_corpus, run_all_suites, survey_zm,
    DecisionMethod,
};
use nilclean::{Config, Error, Matrix, Ring};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "nilclean", version, about = "Nil-clean matrix rings over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Element budget for exhaustive scans.
    #[arg(long)]
    budget: Option<u64>,
    /// Report the first counterexample found instead of the smallest.
    #[arg(long)]
    first_found: bool,
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Render the report as indented text.
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DecideChoice {
    Auto,
    Theorem,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DecomposeChoice {
    Auto,
    Oracle,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Is M_n(R) nil-clean?
    Decide {
        #[arg(long)]
        ring: String,
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DecideChoice::Auto)]
        method: DecideChoice,
        #[command(flatten)]
        common: Common,
    },
    /// Write a matrix as idempotent plus nilpotent.
    Decompose {
        #[arg(long)]
        ring: String,
        #[arg(short, default_value_t = 2)]
        n: usize,
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = DecomposeChoice::Auto)]
        method: DecomposeChoice,
        #[command(flatten)]
        common: Common,
    },
    /// Jacobson radical, J*, nil index and the quotient's Boolean flag.
    Radical {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide M_n(Z/m) for 2 ≤ m ≤ max-m.
    Survey {
        #[arg(long, default_value_t = 16)]
        max_m: u64,
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Cross-validate and run every property suite over a corpus.
    Verify {
        /// `default` or a file with one ring spec per line.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check the ring axioms exhaustively.
    CheckRing {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decide { .. } => "decide",
            Command::Decompose { .. } => "decompose",
            Command::Radical { .. } => "radical",
            Command::Survey { .. } => "survey",
            Command::Verify { .. } => "verify",
            Command::CheckRing { .. } => "check-ring",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Decide { common, .. }
            | Command::Decompose { common, .. }
            | Command::Radical { common, .. }
            | Command::Survey { common, .. }
            | Command::Verify { common, .. }
            | Command::CheckRing { common, .. } => common,
        }
    }

    fn inputs(&self) -> Value {
        let c = self.common();
        let flags = json!({ "budget": c.budget, "first_found": c.first_found });
        let mut v = match self {
            Command::Decide { ring, n, method, .. } => json!({ "ring": ring, "n": n, "method": method }),
            Command::Decompose { ring, n, matrix, method, .. } => {
                json!({ "ring": ring, "n": n, "matrix": matrix, "method": method })
            }
            Command::Radical { ring, .. } | Command::CheckRing { ring, .. } => json!({ "ring": ring }),
            Command::Survey { max_m, n, .. } => json!({ "max_m": max_m, "n": n }),
            Command::Verify { corpus, n, .. } => json!({ "corpus": corpus, "n": n }),
        };
        if let (Value::Object(m), Value::Object(f)) = (&mut v, flags) {
            m.extend(f);
        }
        v
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::BudgetExceeded { .. } => (2, "budget_exceeded"),
            Error::Discrepancy(_) => (3, "discrepancy"),
            Error::Parse { .. } => (1, "parse"),
            Error::Refused(_) => (1, "refused"),
            Error::NotBooleanQuotient { .. } => (1, "not_boolean_quotient"),
            Error::Matrix(_) => (1, "matrix"),
            _ => (1, "invalid_input"),
        };
        let mut error = json!({ "kind": kind, "message": e.to_string() });
        let extra = match &e {
            Error::Parse { offset, expected } => json!({ "offset": offset, "expected": expected }),
            Error::BudgetExceeded { needed, budget, .. } => json!({ "needed": needed.to_string(), "budget": budget }),
            Error::NotBooleanQuotient { witness } => json!({ "witness": witness }),
            _ => json!({}),
        };
        if let (Value::Object(m), Value::Object(x)) = (&mut error, extra) {
            m.extend(x);
        }
        Failure { code, error }
    }
}

/// Outputs plus an exit code; a property violation still prints its
/// report but exits with 3.
struct Outcome {
    outputs: Value,
    violated: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn config(common: &Common, threads: usize) -> Config {
    let mut cfg = Config::default().with_threads(threads);
    if let Some(b) = common.budget {
        cfg = cfg.with_budget(b);
    }
    cfg.first_found = common.first_found;
    cfg
}

fn parse_ring(spec: &str, cfg: &Config) -> Result<Ring, Failure> {
    Ok(parse_ring_spec_with_cap(spec, cfg.order_cap)?)
}

fn decide(spec: &str, n: usize, choice: DecideChoice, cfg: &Config) -> Result<Outcome, Failure> {
    let ring = parse_ring(spec, cfg)?;
    let method = match choice {
        DecideChoice::Theorem => DecisionMethod::Theorem,
        DecideChoice::Brute => DecisionMethod::Bruteforce,
        DecideChoice::Both => DecisionMethod::Both,
        DecideChoice::Auto if ring_is_abelian(&ring, cfg)?.holds => DecisionMethod::Theorem,
        DecideChoice::Auto => DecisionMethod::Bruteforce,
    };
    let report = decide_matrix_nil_clean(&ring, n, method, cfg)?;
    let mut outputs = to_value(&report);
    if method == DecisionMethod::Both {
        outputs["agree"] = Value::Bool(true);
    }
    Ok(Outcome {
        outputs,
        violated: false,
    })
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum DecomposeOutput {
    Witness {
        #[serde(flatten)]
        witness: MatrixWitness,
        verified: bool,
    },
    NotNilClean {
        target: u64,
        target_matrix: Matrix,
        idempotents_scanned: usize,
        verified: bool,
    },
}

fn decompose(spec: &str, n: usize, literal: &str, choice: DecomposeChoice, cfg: &Config) -> Result<Outcome, Failure> {
    let ring = parse_ring(spec, cfg)?;
    let a = parse_matrix_literal(literal, &ring, n)?;
    let structured = match choice {
        DecomposeChoice::Structured => true,
        DecomposeChoice::Oracle => false,
        DecomposeChoice::Auto => {
            let j = jacobson_radical(&ring, cfg)?;
            n <= 4 && ring_is_boolean(quotient_ring(&ring, &j)?.ring(), cfg)?.holds
        }
    };
    let output = if structured {
        let witness = StructuredDecomposer::new(&ring, n, cfg)?.decompose(&a)?;
        DecomposeOutput::Witness {
            verified: witness.verify(),
            witness,
        }
    } else {
        let m = matrix_ring_within_budget(&ring, n, cfg)?;
        let target = a.index().expect("matrix ring within budget is indexable");
        match decompose_bruteforce(&m, target, cfg)? {
            Decomposition::Witness(w) => {
                let witness = MatrixWitness {
                    target: a,
                    e: Matrix::from_index(&m, w.e)?,
                    w: Matrix::from_index(&m, w.w)?,
                    nil_index: w.nil_index,
                    method: Method::Oracle,
                    lift_iterations: 0,
                };
                DecomposeOutput::Witness {
                    verified: witness.verify() && w.verify(),
                    witness,
                }
            }
            Decomposition::NotNilClean(c) => DecomposeOutput::NotNilClean {
                verified: c.verify(&m),
                target: c.target,
                target_matrix: a,
                idempotents_scanned: c.idempotents_scanned,
            },
        }
    };
    let violated = match &output {
        DecomposeOutput::Witness { verified, .. } | DecomposeOutput::NotNilClean { verified, .. } => !verified,
    };
    Ok(Outcome {
        outputs: to_value(&output),
        violated,
    })
}

fn radical(spec: &str, cfg: &Config) -> Result<Outcome, Failure> {
    let ring = parse_ring(spec, cfg)?;
    let j = jacobson_radical(&ring, cfg)?;
    let jstar = match j_star(&ring, cfg) {
        Ok(js) => Some(js),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let q = quotient_ring(&ring, &j)?;
    let boolean = ring_is_boolean(q.ring(), cfg)?;
    Ok(Outcome {
        outputs: json!({
            "ring": ring.name(),
            "order": ring.order(),
            "radical": j.elements(),
            "radical_size": j.len(),
            "nil_index": ideal_nil_index(&j),
            "j_star": jstar.as_ref().map(|js| js.elements()),
            "j_star_equals_radical": jstar.as_ref().map(|js| *js == j),
            "quotient_order": q.ring().order(),
            "quotient_boolean": boolean.holds,
            "boolean_witness": boolean.witness,
        }),
        violated: false,
    })
}

fn survey(max_m: u64, n: usize, cfg: &Config) -> Result<Outcome, Failure> {
    let s = survey_zm(max_m, n, cfg)?;
    Ok(Outcome {
        violated: s.discrepancies > 0,
        outputs: to_value(&s),
    })
}

fn verify(corpus: &str, n: usize, cfg: &Config) -> Result<Outcome, Failure> {
    let entries = if corpus == "default" {
        default_corpus(cfg)?
    } else {
        let path = PathBuf::from(corpus);
        let text = std::fs::read_to_string(&path).map_err(|e| Failure {
            code: 1,
            error: json!({ "kind": "io", "message": format!("{}: {e}", path.display()) }),
        })?;
        parse_corpus(&text, cfg)?
    };
    let report = run_all_suites(&entries, n, cfg)?;
    Ok(Outcome {
        violated: !report.passed,
        outputs: to_value(&report),
    })
}

fn check_ring(spec: &str, cfg: &Config) -> Result<Outcome, Failure> {
    let ring = parse_ring(spec, cfg)?;
    let report = ring_axioms_check(&ring, cfg.axiom_cap)?;
    Ok(Outcome {
        violated: !report.passed,
        outputs: to_value(&report),
    })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render_text(item, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {x}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

fn threads_from_env() -> Result<usize, Failure> {
    match std::env::var("NILCLEAN_THREADS") {
        Ok(s) => s.trim().parse().map_err(|_| Failure {
            code: 1,
            error: json!({ "kind": "invalid_input", "message": format!("NILCLEAN_THREADS must be an integer, got {s:?}") }),
        }),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command = cli.command.name();
    let inputs = cli.command.inputs();
    let text = cli.command.common().text;

    let result = threads_from_env().and_then(|threads| {
        if threads > 0 {
            // a second initialisation can only fail if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
        let cfg = config(cli.command.common(), threads);
        match &cli.command {
            Command::Decide { ring, n, method, .. } => decide(ring, *n, *method, &cfg),
            Command::Decompose { ring, n, matrix, method, .. } => decompose(ring, *n, matrix, *method, &cfg),
            Command::Radical { ring, .. } => radical(ring, &cfg),
            Command::Survey { max_m, n, .. } => survey(*max_m, *n, &cfg),
            Command::Verify { corpus, n, .. } => verify(corpus, *n, &cfg),
            Command::CheckRing { ring, .. } => check_ring(ring, &cfg),
        }
    });

    let (body, code) = match result {
        Ok(o) => ((Some(o.outputs), None), if o.violated { 3 } else { 0 }),
        Err(f) => ((None, Some(f.error)), f.code),
    };
    let mut report = json!({ "schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs });
    match body {
        (Some(outputs), _) => report["outputs"] = outputs,
        (_, Some(error)) => report["error"] = error,
        _ => unreachable!(),
    }
    report["timing_ms"] = json!(start.elapsed().as_millis() as u64);

    if text {
        let mut out = String::new();
        render_text(&report, 0, &mut out);
        print!("{out}");
    } else {
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    }
    ExitCode::from(code)
}
