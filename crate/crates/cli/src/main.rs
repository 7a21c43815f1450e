use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use serde_json::{json, Value};

use qfp_core::audit::{run_classical_audit, run_strict_audit, AuditConfig};
use qfp_core::qlin::{Operator2, TwoQubitState};
use qfp_core::reproduce::{asymmetric_example, table1};
use qfp_core::schemefile::{
    pairs_csv, state_to_pair, PairEntry, ReportFile, Scheme, SchemeFile, SchemeFileError,
};
use qfp_core::strictq::{StrictError, DEFAULT_PACK_ITERS};
use qfp_core::{canonicalize, optimize_c, pack_states, FingerprintSet};

#[derive(Parser)]
#[command(
    name = "qfp",
    version,
    about = "Evaluate, audit and optimize one-bit and one-qubit equality fingerprints"
)]
struct Cli {
    #[command(flatten)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// Emit JSON (default).
    #[arg(long, global = true)]
    json: bool,
    /// Emit alpha,beta,accept_prob rows where a pair matrix exists.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scheme file exhaustively.
    Eval {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Symmetric error table for the triangle, tetrahedron and octahedron, plus a packed-set trend.
    Table1 {
        #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Worked example analysis.
    Example {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        #[arg(long, default_value_t = 200)]
        refine: usize,
    },
    /// Seeded audit of the one-bit invariants.
    AuditClassical {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8")]
        sizes: Vec<usize>,
    },
    /// Seeded audit of the strict-scheme structure.
    AuditStrict {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Canonical form of a strict scheme.
    Canonicalize {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Optimize the asymmetry C for the Alice states of a strict scheme.
    OptimizeC {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        #[arg(long, default_value_t = 200)]
        refine: usize,
    },
    /// Packed Bloch-sphere fingerprints as a symmetric scheme fragment.
    Pack {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PACK_ITERS)]
        iters: usize,
    },
}

struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<SchemeFileError> for Failure {
    fn from(e: SchemeFileError) -> Self {
        Failure::new(e.code(), e.to_string())
    }
}

impl From<StrictError> for Failure {
    fn from(e: StrictError) -> Self {
        Failure::new("invalid-strict-scheme", e.to_string())
    }
}

enum Output {
    Report(Value),
    /// A report whose audit assertions failed.
    Violations(Value),
}

fn load(path: &PathBuf) -> Result<SchemeFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new("unreadable-file", format!("{}: {e}", path.display())))?;
    Ok(SchemeFile::from_json(&text)?)
}

fn load_strict(path: &PathBuf) -> Result<qfp_core::StrictScheme, Failure> {
    match load(path)?.to_scheme()? {
        Scheme::Strict(s) => Ok(s),
        Scheme::Classical(_) => Err(Failure::new(
            "wrong-scheme-kind",
            "command needs a strict scheme",
        )),
    }
}

fn operator_json(op: &Operator2) -> Value {
    json!([
        [
            [op[(0, 0)].re, op[(0, 0)].im],
            [op[(0, 1)].re, op[(0, 1)].im]
        ],
        [
            [op[(1, 0)].re, op[(1, 0)].im],
            [op[(1, 1)].re, op[(1, 1)].im]
        ]
    ])
}

fn two_qubit_json(s: &TwoQubitState) -> Value {
    Value::Array(s.amps().iter().map(|z| json!([z.re, z.im])).collect())
}

fn states_json(set: &FingerprintSet) -> Value {
    json!(set.states().iter().map(state_to_pair).collect::<Vec<_>>())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}

fn matrix_pairs(strings: &[String], accept: &[Vec<f64>]) -> Vec<PairEntry> {
    let mut out = Vec::new();
    for (a, row) in accept.iter().enumerate() {
        for (b, &p) in row.iter().enumerate() {
            out.push(PairEntry {
                alpha: strings[a].clone(),
                beta: strings[b].clone(),
                accept_prob: p,
            });
        }
    }
    out
}

fn run(command: Command, csv: bool) -> Result<(Output, Option<String>), Failure> {
    let mut csv_text = None;
    let out = match command {
        Command::Eval { scheme } => {
            let report = ReportFile::evaluate(&load(&scheme)?)?;
            csv_text = Some(report.to_csv());
            Output::Report(to_value(&report))
        }
        Command::Table1 { sizes, seed } => Output::Report(to_value(&table1(&sizes, seed)?)),
        Command::Example { name, grid, refine } => {
            if name != "asymmetric-3" {
                return Err(Failure::new(
                    "unknown-example",
                    format!("unknown example {name:?}; known: asymmetric-3"),
                ));
            }
            let ex = asymmetric_example(Some((grid, refine)))?;
            csv_text = Some(pairs_csv(&matrix_pairs(&ex.strings, &ex.accept)));
            let mut v = to_value(&ex);
            if let Some(opt) = v.get_mut("optimum").and_then(Value::as_object_mut) {
                opt.remove("curve");
            }
            Output::Report(v)
        }
        Command::AuditClassical {
            trials,
            seed,
            sizes,
        } => {
            if sizes.is_empty() || sizes.iter().any(|&s| s < 3) {
                return Err(Failure::new(
                    "invalid-flag",
                    "--sizes entries must be at least 3",
                ));
            }
            let report = run_classical_audit(&AuditConfig {
                trials,
                seed,
                sizes,
            });
            if report.passed {
                Output::Report(to_value(&report))
            } else {
                Output::Violations(to_value(&report))
            }
        }
        Command::AuditStrict { trials, seed } => {
            let report = run_strict_audit(trials, seed);
            if report.passed {
                Output::Report(to_value(&report))
            } else {
                Output::Violations(to_value(&report))
            }
        }
        Command::Canonicalize { scheme } => {
            let canon = canonicalize(&load_strict(&scheme)?)?;
            Output::Report(json!({
                "C": canon.c,
                "U": operator_json(&canon.u),
                "V": operator_json(&canon.v),
                "strings": canon.canon_alice.strings(),
                "alice": states_json(&canon.canon_alice),
                "bob": states_json(&canon.canon_bob),
                "reject_state": two_qubit_json(&canon.canon_reject),
                "K": canon.k_values(),
            }))
        }
        Command::OptimizeC {
            scheme,
            grid,
            refine,
        } => {
            let result = optimize_c(load_strict(&scheme)?.alice(), grid, refine)?;
            let mut text = String::from("c,worst_error\n");
            for (cv, w) in &result.curve {
                writeln!(text, "{cv},{w}").expect("writing to a String");
            }
            csv_text = Some(text);
            Output::Report(to_value(&result))
        }
        Command::Pack { n, seed, iters } => {
            let alice = pack_states(n, seed, iters)?;
            Output::Report(to_value(&SchemeFile::symmetric_fragment(&alice)))
        }
    };
    if csv && csv_text.is_none() {
        return Err(Failure::new(
            "unsupported-format",
            "--csv is available for eval, example and optimize-c",
        ));
    }
    Ok((out, if csv { csv_text } else { None }))
}

fn print_failure(f: &Failure, exit: u8) -> ExitCode {
    let obj = json!({ "error": { "code": f.code, "message": f.message } });
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&obj).expect("error objects serialize")
    );
    ExitCode::from(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            return print_failure(&Failure::new("invalid-arguments", message.trim_end()), 1);
        }
    };
    match run(cli.command, cli.format.csv) {
        Ok((output, csv)) => {
            let (value, code) = match output {
                Output::Report(v) => (v, 0),
                Output::Violations(v) => (v, 2),
            };
            let text = match csv {
                Some(text) => text,
                None => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
            };
            // A closed downstream pipe is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => print_failure(&f, 1),
    }
}
