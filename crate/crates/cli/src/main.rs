//! `gdk`: batch front end for nonabelian H¹, Galois descent, twisted forms
//! and finite G-categories.

mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use commands::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "gdk", version, about)]
struct Cli {
    /// Emit the JSON report (default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit an aligned key/value table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Z¹ and H¹ of a built-in coefficient family.
    H1 {
        /// `1`, `Z<n>`, `S<n>`, or an extension such as `gal(p,m)`.
        #[arg(long, required_unless_present = "file")]
        group: Option<String>,
        /// `Z<k>`, `S<k>`, `S` (with --n), `units`, `GL` or `PGL`.
        #[arg(long, required_unless_present = "file")]
        coeff: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// `trivial`, `inverse`, or `galois` (matrix coefficients only).
        #[arg(long)]
        action: Option<String>,
        /// A G-group as JSON instead of a descriptor.
        #[arg(long, conflicts_with_all = ["group", "coeff"])]
        file: Option<PathBuf>,
    },
    /// Decide whether a ring with group action is Galois.
    GaloisCheck {
        /// `gal(p,m)`, `split(p,G)` or `fixed(p,m,G)`.
        #[arg(long)]
        ext: String,
        /// Fail unless the verdict equals this.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// The semilinear module `E ⊗ B^d`.
    Ascend {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        dim: usize,
    },
    /// Fixed points of a semilinear module given as JSON.
    Descend {
        #[arg(long)]
        input: PathBuf,
    },
    /// Twist `E ⊗ B^n` by a GLₙ cocycle given as JSON.
    Twist {
        #[arg(long)]
        input: PathBuf,
    },
    /// H¹(G, GLₙ(E)) with cobounding witnesses.
    Hilbert90 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Étale algebras of degree n split by F_{p^m}.
    Etale {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Azumaya algebras of degree n split by F_{p^m}.
    Azumaya {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Cocycles against algebras of the orbit-coproduct monad.
    MonadCheck {
        #[arg(long)]
        input: Option<PathBuf>,
        /// One of the bundled fixtures, e.g. `powerset-z2`.
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
    },
    /// Print a bundled monad-check fixture as JSON.
    Fixture {
        /// e.g. `powerset-z2` or `broken-coproducts`.
        name: String,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long)]
        fast: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        criterion: Option<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::H1 { .. } => "h1",
            Command::GaloisCheck { .. } => "galois-check",
            Command::Ascend { .. } => "ascend",
            Command::Descend { .. } => "descend",
            Command::Twist { .. } => "twist",
            Command::Hilbert90 { .. } => "hilbert90",
            Command::Etale { .. } => "etale",
            Command::Azumaya { .. } => "azumaya",
            Command::MonadCheck { .. } => "monad-check",
            Command::Selftest { .. } => "selftest",
            Command::Fixture { .. } => "fixture",
        }
    }

    /// Argument echo used when the command fails before producing inputs.
    fn echo(&self) -> Value {
        match self {
            Command::H1 { group, coeff, n, action, file } => {
                json!({ "group": group, "coeff": coeff, "n": n, "action": action, "file": file })
            }
            Command::GaloisCheck { ext, expect } => json!({ "ext": ext, "expect": expect }),
            Command::Ascend { ext, dim } => json!({ "ext": ext, "dim": dim }),
            Command::Descend { input } | Command::Twist { input } => json!({ "file": input }),
            Command::Hilbert90 { p, m, n } | Command::Etale { p, m, n } | Command::Azumaya { p, m, n } => {
                json!({ "p": p, "m": m, "n": n })
            }
            Command::MonadCheck { input, builtin } => json!({ "file": input, "builtin": builtin }),
            Command::Selftest { fast, criterion } => json!({ "fast": fast, "criterion": criterion }),
            Command::Fixture { name } => json!({ "name": name }),
        }
    }

    fn run(&self) -> Result<Outcome, Failure> {
        match self {
            Command::H1 { file: Some(f), .. } => commands::h1_file(f),
            Command::H1 { group, coeff, n, action, .. } => commands::h1(
                group.as_deref().unwrap_or_default(),
                coeff.as_deref().unwrap_or_default(),
                *n,
                action.as_deref(),
            ),
            Command::GaloisCheck { ext, expect } => commands::galois_check(ext, *expect),
            Command::Ascend { ext, dim } => commands::ascend_cmd(ext, *dim),
            Command::Descend { input } => commands::descend_cmd(input),
            Command::Twist { input } => commands::twist_cmd(input),
            Command::Hilbert90 { p, m, n } => commands::hilbert90(*p, *m, *n),
            Command::Etale { p, m, n } => commands::etale(*p, *m, *n),
            Command::Azumaya { p, m, n } => commands::azumaya(*p, *m, *n),
            Command::MonadCheck { input, builtin } => {
                commands::monad_check_cmd(input.as_deref(), builtin.as_deref())
            }
            Command::Selftest { fast, criterion } => commands::selftest_cmd(*fast, *criterion),
            Command::Fixture { name } => commands::fixture_cmd(name),
        }
    }
}

#[derive(Serialize)]
struct Timings {
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    version: &'static str,
    inputs: Value,
    results: Value,
    passed: bool,
    failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    guard_notices: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Timings>,
}

fn guard_notices(failure: Option<&Failure>) -> Vec<String> {
    let mut out = Vec::new();
    let factor = gdk_core::guard::factor();
    if factor > 1 {
        out.push(format!("GDK_GUARD_OVERRIDE raises every size guard by a factor of {factor}"));
    }
    if let Some(Failure::Core(e @ gdk_core::error::Error::Guard { .. })) = failure {
        out.push(e.to_string());
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn print_table(r: &RunReport) {
    let mut rows: Vec<(String, String)> = vec![
        ("command".into(), r.command.into()),
        ("version".into(), r.version.into()),
        ("passed".into(), r.passed.to_string()),
    ];
    let mut section = |prefix: &str, v: &Value| match v {
        Value::Object(map) => {
            for (k, x) in map {
                rows.push((format!("{prefix}.{k}"), scalar(x)));
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                rows.push((format!("{prefix}[{i}]"), scalar(x)));
            }
        }
        other => rows.push((prefix.into(), scalar(other))),
    };
    section("inputs", &r.inputs);
    section("results", &r.results);
    for f in &r.failures {
        rows.push(("failure".into(), f.clone()));
    }
    if let Some(e) = &r.error {
        rows.push(("error".into(), e.clone()));
    }
    for n in &r.guard_notices {
        rows.push(("guard".into(), n.clone()));
    }
    if let Some(t) = &r.timings {
        rows.push(("elapsed_ms".into(), t.elapsed_ms.to_string()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        println!("{k:<width$}  {v}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("gdk: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = cli.command.run();
    let elapsed_ms = start.elapsed().as_millis();
    let (inputs, results, failures, error) = match &outcome {
        Ok(o) => (o.inputs.clone(), o.results.clone(), o.failures.clone(), None),
        Err(e) => (cli.command.echo(), Value::Null, Vec::new(), Some(e.to_string())),
    };
    let report = RunReport {
        command: cli.command.name(),
        version: env!("CARGO_PKG_VERSION"),
        passed: error.is_none() && failures.is_empty(),
        guard_notices: guard_notices(outcome.as_ref().err()),
        inputs,
        results,
        failures,
        error,
        timings: cli.timings.then_some(Timings { elapsed_ms }),
    };
    if cli.table {
        print_table(&report);
    } else {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    match (&report.error, report.passed) {
        (Some(_), _) => ExitCode::from(2),
        (None, false) => ExitCode::from(1),
        (None, true) => ExitCode::SUCCESS,
    }
}
