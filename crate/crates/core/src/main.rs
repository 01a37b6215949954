//! Command-line driver: decide single formulas, fuzz against the oracle, and
//! tabulate proof sizes over a formula list.
//!
//! Exit status: 0 for valid/unsatisfiable (as queried), 1 for
//! invalid/satisfiable, 2 for input errors, 3 for internal invariant
//! violations (including oracle disagreement under `--oracle`).

use clap::{Parser, Subcommand, ValueEnum};
use sci_tableau::export::{model_to_json, proof_to_dot, proof_to_json, RunReport};
use sci_tableau::formula::{render, Formula};
use sci_tableau::harness::{BatchConfig, CheckOutcome};
use sci_tableau::oracle::{oracle_sat, OracleError};
use sci_tableau::tableau::{branch_application_bound, branch_rule_applications, decide, stats};
use sci_tableau::transform::transform_t;
use sci_tableau::{parse, Mode, Options};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "sci-tableau", version, about = "Labelled-tableau decision procedure for the sentential calculus with identity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a single formula.
    Decide {
        /// Formula text; alternatively use --file.
        formula: Option<String>,
        /// Read the formula from a file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Question to decide.
        #[arg(long, value_enum, default_value_t = ModeArg::Valid)]
        mode: ModeArg,
        /// Enable urfather blocking.
        #[arg(long)]
        ub: bool,
        /// Cross-check the verdict against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Decide the identity-chain transformation of the formula instead.
        #[arg(long = "transform-t")]
        transform: bool,
        /// Emit the derivation tree.
        #[arg(long, value_enum)]
        proof: Option<ProofFormat>,
        /// Emit the extracted model (open tableaux only).
        #[arg(long, value_enum)]
        model: Option<ModelFormat>,
        /// Emit a run report with depth, size, and rule-application counts.
        #[arg(long)]
        stats: bool,
    },
    /// Differential run of the engine against the oracle on random formulas.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enable urfather blocking in the engine under test.
        #[arg(long)]
        ub: bool,
    },
    /// Decide every formula in a file and tabulate depth/size with and
    /// without urfather blocking.
    Bench {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Valid)]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Valid,
    Sat,
}

impl From<ModeArg> for Mode {
    fn from(mode: ModeArg) -> Mode {
        match mode {
            ModeArg::Valid => Mode::Validity,
            ModeArg::Sat => Mode::Satisfiability,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProofFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelFormat {
    Json,
}

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INPUT)
}

fn internal_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("internal error: {message}");
    ExitCode::from(EXIT_INTERNAL)
}

fn read_formula(formula: Option<String>, file: Option<PathBuf>) -> Result<String, String> {
    match (formula, file) {
        (Some(text), None) => Ok(text),
        (None, Some(path)) => std::fs::read_to_string(&path)
            .map(|text| text.trim().to_string())
            .map_err(|e| format!("cannot read {}: {e}", path.display())),
        (Some(_), Some(_)) => Err("give a formula or --file, not both".into()),
        (None, None) => Err("no formula given; pass one as an argument or use --file".into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_decide(
    formula: Option<String>,
    file: Option<PathBuf>,
    mode: ModeArg,
    ub: bool,
    oracle: bool,
    transform: bool,
    proof: Option<ProofFormat>,
    model: Option<ModelFormat>,
    want_stats: bool,
) -> ExitCode {
    let text = match read_formula(formula, file) {
        Ok(text) => text,
        Err(message) => return input_error(message),
    };
    let parsed = match parse(&text) {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let decided = if transform {
        transform_t(&parsed)
    } else {
        parsed.clone()
    };
    let options = Options {
        urfather_blocking: ub,
    };
    let start = Instant::now();
    let verdict = match decide(&decided, mode.into(), &options) {
        Ok(v) => v,
        Err(e) => return internal_error(e),
    };
    let wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;

    // The oracle always judges the input formula; under --transform-t this
    // checks provability preservation as well.
    let oracle_outcome = if oracle {
        let question = match mode {
            ModeArg::Valid => Formula::neg(parsed.clone()),
            ModeArg::Sat => parsed.clone(),
        };
        match oracle_sat(&question) {
            Ok(answer) => {
                let engine_affirmed = verdict.affirmed();
                let agrees = engine_affirmed == !answer.is_satisfiable();
                Some((answer.is_satisfiable(), agrees))
            }
            Err(e @ OracleError::WitnessRejected(_)) => return internal_error(e),
            Err(guard) => return input_error(format!("oracle cannot check this input: {guard}")),
        }
    } else {
        None
    };

    if proof == Some(ProofFormat::Dot) {
        if model.is_some() || want_stats {
            return input_error("--proof dot cannot be combined with JSON outputs");
        }
        print!("{}", proof_to_dot(verdict.proof()));
        eprintln!("verdict: {}", verdict.tag());
    } else if proof.is_some() || model.is_some() || want_stats {
        let mut out = serde_json::Map::new();
        out.insert("verdict".into(), verdict.tag().into());
        if let Some((oracle_sat, agrees)) = oracle_outcome {
            out.insert(
                "oracle".into(),
                serde_json::json!({
                    "satisfiable": oracle_sat,
                    "agreement": agrees,
                }),
            );
        }
        if proof == Some(ProofFormat::Json) {
            let tree = proof_to_json(verdict.proof());
            out.insert("proof".into(), serde_json::to_value(tree).expect("proof serializes"));
        }
        if model.is_some() {
            if let Some((m, valuation)) = verdict.model() {
                let m = model_to_json(m, valuation);
                out.insert("model".into(), serde_json::to_value(m).expect("model serializes"));
            }
        }
        if want_stats {
            let tree_stats = stats(verdict.proof());
            let report = RunReport {
                formula: text.clone(),
                mode: match mode {
                    ModeArg::Valid => "valid",
                    ModeArg::Sat => "sat",
                },
                urfather_blocking: ub,
                transform_t: transform,
                verdict: verdict.tag(),
                depth: tree_stats.depth,
                size: tree_stats.size,
                branch_rule_applications: branch_rule_applications(verdict.proof()),
                rule_application_bound: branch_application_bound(&decided),
                wall_time_ms,
            };
            out.insert("stats".into(), serde_json::to_value(report).expect("report serializes"));
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(out)).expect("valid json")
        );
    } else {
        println!("{}", verdict.tag());
        if let Some((oracle_sat, agrees)) = oracle_outcome {
            println!(
                "oracle: {} ({})",
                if oracle_sat { "sat" } else { "unsat" },
                if agrees { "agrees" } else { "DISAGREES" }
            );
        }
    }

    if let Some((_, false)) = oracle_outcome {
        eprintln!("internal error: engine and oracle disagree on {text}");
        return ExitCode::from(EXIT_INTERNAL);
    }
    if verdict.affirmed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NEGATIVE)
    }
}

fn run_fuzz(count: usize, atoms: usize, depth: usize, seed: u64, ub: bool) -> ExitCode {
    if count == 0 || atoms == 0 || depth == 0 {
        return input_error("--count, --atoms, and --depth must be positive");
    }
    let mut config = BatchConfig::new(count, atoms, depth, seed);
    config.options.urfather_blocking = ub;
    let report = sci_tableau::harness::run_batch(&config);
    for checked in &report.checked {
        match &checked.outcome {
            CheckOutcome::Disagree {
                engine_sat,
                oracle_sat,
            } => println!(
                "disagreement on {}: engine={}, oracle={}",
                render(&checked.formula),
                if *engine_sat { "sat" } else { "unsat" },
                if *oracle_sat { "sat" } else { "unsat" },
            ),
            CheckOutcome::Error { message } => {
                println!("error on {}: {message}", render(&checked.formula))
            }
            CheckOutcome::Skipped { reason } => {
                eprintln!("skipped {}: {reason}", render(&checked.formula))
            }
            CheckOutcome::Agree { .. } => {}
        }
    }
    println!("{}", report.summary());
    if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INTERNAL)
    }
}

fn run_bench(file: PathBuf, mode: ModeArg) -> ExitCode {
    let text = match std::fs::read_to_string(&file) {
        Ok(text) => text,
        Err(e) => return input_error(format!("cannot read {}: {e}", file.display())),
    };
    let mut rows = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = match parse(line) {
            Ok(f) => f,
            Err(e) => return input_error(format!("line {}: {e}", number + 1)),
        };
        let mut cells = Vec::new();
        for ub in [false, true] {
            let options = Options {
                urfather_blocking: ub,
            };
            match decide(&f, mode.into(), &options) {
                Ok(verdict) => {
                    let s = stats(verdict.proof());
                    cells.push((verdict.tag(), s.depth, s.size));
                }
                Err(e) => return internal_error(e),
            }
        }
        rows.push((line.to_string(), cells));
    }
    let width = rows
        .iter()
        .map(|(text, _)| text.len())
        .chain(["formula".len()])
        .max()
        .unwrap_or(7);
    println!("{:width$}  {:>14}  {:>14}  verdict", "formula", "plain", "blocking");
    for (text, cells) in &rows {
        let plain = format!("{}/{}", cells[0].1, cells[0].2);
        let blocking = format!("{}/{}", cells[1].1, cells[1].2);
        println!("{text:width$}  {plain:>14}  {blocking:>14}  {}", cells[0].0);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Decide {
            formula,
            file,
            mode,
            ub,
            oracle,
            transform,
            proof,
            model,
            stats,
        } => run_decide(formula, file, mode, ub, oracle, transform, proof, model, stats),
        Command::Fuzz {
            count,
            atoms,
            depth,
            seed,
            ub,
        } => run_fuzz(count, atoms, depth, seed, ub),
        Command::Bench { file, mode } => run_bench(file, mode),
    }
}
