use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use vsc_lab::classify::classify;
use vsc_lab::harness::{report_json, run_experiment, run_suite, EXPERIMENTS, SUITES};
use vsc_lab::rewrite::{evaluate, Outcome, Strategy};
use vsc_lab::syntax::{parse, Ident, Term};
use vsc_lab::transform::{infer, Inference, Mode};
use vsc_lab::types::{check_derivation, deriv_size, is_shrinking, Derivation};

#[derive(Parser)]
#[command(name = "vsc-lab", version, about = "Strong call-by-value workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a term with a deterministic strategy.
    Eval {
        term: String,
        #[arg(long, default_value = "external")]
        strategy: Strategy,
        #[arg(long, default_value_t = 200)]
        fuel: usize,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Report membership in every syntactic class.
    Classify {
        term: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a typing derivation by evaluating and expanding back.
    Type {
        term: String,
        #[arg(long, default_value = "open")]
        mode: Mode,
        #[arg(long, default_value_t = 200)]
        fuel: usize,
        /// Write the derivation as JSON to this file.
        #[arg(long)]
        emit_derivation: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Validate a derivation stored as JSON.
    CheckDerivation { file: PathBuf },
    /// Run property suites over enumerated terms.
    Props {
        /// Suite to run; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        #[arg(long, default_value_t = 200)]
        fuel: usize,
        /// Free variables allowed in enumerated terms (comma separated; empty for closed terms).
        #[arg(long, default_value = "y", value_delimiter = ',')]
        free: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Replay a canned experiment (or `all`).
    Demo {
        experiment: String,
        #[arg(long)]
        json: bool,
    },
}

fn term_arg(text: &str) -> Result<Term, String> {
    parse(text).map_err(|e| format!("cannot parse {text:?}: {e}"))
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<bool, String> {
    match cmd {
        Cmd::Eval {
            term,
            strategy,
            fuel,
            trace,
            json,
        } => {
            let t = term_arg(&term)?;
            let out = evaluate(&t, strategy, fuel).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "start": t, "strategy": strategy, "result": out })).unwrap());
                return Ok(true);
            }
            if trace {
                println!("   {t}");
                for st in out.trace() {
                    println!("→{} {}", st.rule, st.reduct);
                }
            }
            match &out {
                Outcome::Normal { result, counts, .. } => println!(
                    "normal form {result} after {} steps (m {}, e {}, βv {}, βi {})",
                    counts.total(),
                    counts.m,
                    counts.e,
                    counts.beta_v,
                    counts.beta_i
                ),
                Outcome::Cycle { prefix, loop_start } => println!(
                    "diverges: step {} returns to the term after step {loop_start}",
                    prefix.len()
                ),
                Outcome::Exhausted { trace } => println!("unknown: fuel ran out after {} steps", trace.len()),
            }
            Ok(true)
        }
        Cmd::Classify { term, json } => {
            let t = term_arg(&term)?;
            let rows = classify(&t);
            if json {
                let map: serde_json::Map<_, _> = rows.iter().map(|(c, v)| (c.name().to_string(), json!(v))).collect();
                println!("{}", serde_json::to_string_pretty(&map).unwrap());
            } else {
                for (c, v) in rows {
                    let shown = v.map_or("n/a (explicit substitutions)".to_string(), |b| b.to_string());
                    println!("{:<18} {shown}", c.name());
                }
            }
            Ok(true)
        }
        Cmd::Type {
            term,
            mode,
            fuel,
            emit_derivation,
            json,
        } => {
            let t = term_arg(&term)?;
            let inf = infer(&t, mode, fuel).map_err(|e| e.to_string())?;
            if let (Some(path), Some(d)) = (&emit_derivation, inf.derivation()) {
                std::fs::write(path, serde_json::to_string_pretty(d).unwrap())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&inf).unwrap());
                return Ok(inf.derivation().is_some());
            }
            match &inf {
                Inference::Derived { derivation, evaluation } => {
                    print!("{}", derivation.pretty());
                    println!("conclusion {}", derivation.conclusion);
                    println!(
                        "size {}, {} evaluation steps, shrinking: {}",
                        deriv_size(derivation),
                        evaluation.trace().len(),
                        is_shrinking(derivation)
                    );
                }
                Inference::Diverges { evaluation } => println!(
                    "no derivation: {} evaluation cycles after {} steps",
                    mode.strategy(),
                    evaluation.trace().len()
                ),
                Inference::Unknown { .. } => println!("unknown: fuel ran out before a normal form"),
            }
            Ok(inf.derivation().is_some())
        }
        Cmd::CheckDerivation { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| format!("reading {}: {e}", file.display()))?;
            let d: Derivation = serde_json::from_str(&text).map_err(|e| format!("malformed derivation: {e}"))?;
            match check_derivation(&d) {
                Ok(j) => {
                    println!("valid: {j}");
                    println!("size {}, shrinking: {}", deriv_size(&d), is_shrinking(&d));
                    Ok(true)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(false)
                }
            }
        }
        Cmd::Props {
            suite,
            max_size,
            fuel,
            free,
            json,
        } => {
            let pool: Vec<Ident> = free.iter().filter(|s| !s.is_empty()).map(|s| Ident::new(s)).collect();
            let names: Vec<&str> = match &suite {
                Some(s) => vec![s.as_str()],
                None => SUITES.to_vec(),
            };
            let mut ok = true;
            let mut reports = Vec::new();
            for name in names {
                let r = run_suite(name, max_size, &pool, fuel).map_err(|e| e.to_string())?;
                ok &= r.ok();
                if json {
                    reports.push(r);
                } else {
                    println!("{}", r.summary());
                }
            }
            if json {
                match reports.as_slice() {
                    [one] => println!("{}", report_json(one)),
                    many => println!("{}", serde_json::to_string_pretty(many).unwrap()),
                }
            }
            Ok(ok)
        }
        Cmd::Demo { experiment, json } => {
            let names: Vec<&str> = if experiment == "all" {
                EXPERIMENTS.to_vec()
            } else {
                vec![experiment.as_str()]
            };
            let mut ok = true;
            for name in names {
                let r = run_experiment(name).map_err(|e| e.to_string())?;
                ok &= r.passed;
                if json {
                    println!("{}", r.json());
                } else {
                    print!("{}", r.render());
                }
            }
            Ok(ok)
        }
    }
}
