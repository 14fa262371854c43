//! `stacklogic`: model checking, translation, reducts and law suites for
//! stacked logics such as `H(L(PL))`.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stacklogic::baselogic::{def_ext_comorphism, renaming_equivalence};
use stacklogic::comorphism::{identity_comorphism, Comorphism};
use stacklogic::institution::{mod_reduct, satisfies};
use stacklogic::lifting::lift_through;
use stacklogic::modelfile::{
    check_model_shape, infer_signature, model_from_str, model_to_string, morphism_from_str, signature_from_str,
};
use stacklogic::par::Execution;
use stacklogic::props::{run_suite_with, GenConfig};
use stacklogic::syntax::{parse_sentence, print_sentence};
use stacklogic::transform::tau_alpha_sentence;
use stacklogic::{Error, LayerKind, LogicStack, Result, Sentence, Signature};

#[derive(Parser)]
#[command(
    name = "stacklogic",
    version,
    about = "Stacked temporal, probabilistic and hybrid logics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `model ⊨ formula`; exits 0 on SAT, 1 on UNSAT.
    Check {
        #[arg(long)]
        logic: String,
        /// Signature file; inferred from the formula and model when absent.
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        model: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Translate a formula along a lifted comorphism or along τ.
    Translate {
        #[arg(long)]
        logic: String,
        /// `tau`, `lift:identity`, `lift:defext:<symbol>` or
        /// `lift:rename:<a>=<b>,…`.
        #[arg(long)]
        via: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        sig: Option<String>,
    },
    /// Print the reduct of a model along a signature morphism.
    Reduct {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        model: String,
    },
    /// Run a law suite; exits 0 iff every check passes.
    Laws {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        sequential: bool,
    },
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))
}

fn parse_logic(text: &str) -> Result<LogicStack> {
    text.parse()
}

fn signature(
    stack: &LogicStack,
    file: Option<&str>,
    rho: &Sentence,
    models: &[&stacklogic::Model],
) -> Result<Signature> {
    match file {
        Some(path) => {
            let sig = signature_from_str(&read(path)?)?;
            sig.expect_stack(stack)?;
            Ok(sig)
        }
        None => infer_signature(stack, &[rho], models),
    }
}

fn check(logic: &str, sig: Option<&str>, model: &str, formula: &str, json: bool) -> Result<ExitCode> {
    let stack = parse_logic(logic)?;
    let rho = parse_sentence(&stack, formula)?;
    let m = model_from_str(&read(model)?)?;
    check_model_shape(&stack, &m)?;
    let sig = signature(&stack, sig, &rho, &[&m])?;
    let sat = satisfies(&sig, &m, &rho)?;
    let verdict = if sat { "SAT" } else { "UNSAT" };
    if json {
        let doc = serde_json::json!({ "logic": stack.to_string(), "formula": rho.to_string(), "verdict": verdict });
        println!("{doc}");
    } else {
        println!("{verdict}");
    }
    Ok(if sat { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn rename_map(spec: &str) -> Result<BTreeMap<String, String>> {
    spec.split(',')
        .map(|pair| match pair.split_once('=') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((a.trim().to_string(), b.trim().to_string()))
            }
            _ => Err(Error::Usage(format!("bad renaming pair {pair:?}; expected a=b"))),
        })
        .collect()
}

/// The base comorphism named by `via` and the base signature it starts from.
fn base_comorphism(via: &str, base: &Signature, sig_given: bool) -> Result<(Comorphism, Signature)> {
    let spec = via
        .strip_prefix("lift:")
        .ok_or_else(|| Error::Usage(format!("unknown translation {via:?}")))?;
    if spec == "identity" {
        return Ok((identity_comorphism(LogicStack::base()), base.clone()));
    }
    if let Some(x) = spec.strip_prefix("defext:") {
        return Ok((def_ext_comorphism(base, x)?, base.clone()));
    }
    if let Some(pairs) = spec.strip_prefix("rename:") {
        let given = rename_map(pairs)?;
        let mut props = base.props().clone();
        if !sig_given {
            props.extend(given.keys().cloned());
        }
        let base = Signature::propositional(props);
        let mut bij = given.clone();
        for p in base.props() {
            bij.entry(p.clone()).or_insert_with(|| p.clone());
        }
        return Ok((renaming_equivalence(&base, &bij)?, base));
    }
    Err(Error::Usage(format!("unknown comorphism {spec:?}")))
}

fn translate(logic: &str, via: &str, formula: &str, sig_file: Option<&str>) -> Result<ExitCode> {
    let stack = parse_logic(logic)?;
    let rho = parse_sentence(&stack, formula)?;
    let sig = signature(&stack, sig_file, &rho, &[])?;
    let out = if via == "tau" {
        if stack.outer() != Some(LayerKind::Temporal) {
            return Err(Error::Usage(format!("tau translates temporal logics, not {stack}")));
        }
        tau_alpha_sentence(&rho)?
    } else {
        let inner_base = Signature::propositional(sig.props().clone());
        let (c, base) = base_comorphism(via, &inner_base, sig_file.is_some())?;
        let sig = Signature::new(sig.layers().to_vec(), base.props().clone());
        let innermost_first: Vec<LayerKind> = stack.layers().iter().rev().copied().collect();
        lift_through(&innermost_first, &c).alpha(&sig, &rho)?
    };
    println!("{}", print_sentence(&out));
    Ok(ExitCode::SUCCESS)
}

fn reduct(logic: &str, morphism: &str, model: &str) -> Result<ExitCode> {
    let stack = parse_logic(logic)?;
    let phi = morphism_from_str(&read(morphism)?)?;
    phi.source().expect_stack(&stack)?;
    let m = model_from_str(&read(model)?)?;
    check_model_shape(&stack, &m)?;
    println!("{}", model_to_string(&mod_reduct(&phi, &m)?));
    Ok(ExitCode::SUCCESS)
}

fn laws(suite: &str, seed: u64, samples: usize, json: bool, sequential: bool) -> Result<ExitCode> {
    let cfg = GenConfig::default().with_seed(seed).with_samples(samples);
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let report = run_suite_with(suite, &cfg, exec)?;
    if json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| Error::Schema(e.to_string()))?;
        println!("{text}");
    } else {
        println!("{report}");
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check {
            logic,
            sig,
            model,
            formula,
            json,
        } => check(&logic, sig.as_deref(), &model, &formula, json),
        Command::Translate {
            logic,
            via,
            formula,
            sig,
        } => translate(&logic, &via, &formula, sig.as_deref()),
        Command::Reduct { logic, morphism, model } => reduct(&logic, &morphism, &model),
        Command::Laws {
            suite,
            seed,
            samples,
            json,
            sequential,
        } => laws(&suite, seed, samples, json, sequential),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
