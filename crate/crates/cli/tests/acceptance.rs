//! Acceptance criteria 1–10, one PASS/FAIL line each. Runs without the test
//! harness so that every line is printed; exits non-zero if any criterion
//! fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use stacklogic::baselogic::Valuation;
use stacklogic::lifting::{check_functor_laws_using, lift_comorphism, LiftFn};
use stacklogic::par::Execution;
use stacklogic::props::gen::{gen_sentence, gen_signature};
use stacklogic::props::suites::{suite_def_ext, suite_renaming, LAYERS};
use stacklogic::props::{run_suite, sample_rng, sample_seed, CheckReport, GenConfig, LawReport};
use stacklogic::syntax::{parse_sentence, print_sentence};
use stacklogic::transform::{exhaustive_x_fragment, until_diagnostic};
use stacklogic::{Comorphism, LayerKind, LogicStack, Model};

const SEED: u64 = 42;
const SUITE_SAMPLES: usize = 500;
const FUNCTOR_SAMPLES: usize = 200;
const NATURALITY_SAMPLES: usize = 200;
const ROUND_TRIPS: usize = 1000;
const MAX_FAILURES: usize = 0;
/// Criterion 8: lassos of length ≤ 4 over two atoms, X/¬/∧ formulas of depth ≤ 3.
const EXHAUSTIVE_LEN: usize = 4;
const EXHAUSTIVE_DEPTH: usize = 3;
const EXHAUSTIVE_LASSOS: usize = 1252;
const EXHAUSTIVE_FORMULAS: usize = 15130;
/// Criterion 9: required stable fraction and agreement among stable samples.
const REQUIRED_STABLE: f64 = 1.0;
const REQUIRED_AGREEMENT: f64 = 1.0;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn cfg(samples: usize) -> GenConfig {
    GenConfig::default().with_seed(SEED).with_samples(samples)
}

fn suite(name: &str, samples: usize) -> LawReport {
    run_suite(name, &cfg(samples)).expect("built-in suite")
}

/// Checks whose name starts with `prefix`: all ran `samples` samples and at
/// most `MAX_FAILURES` failed.
#[allow(clippy::absurd_extreme_comparisons)]
fn judge(report: &LawReport, prefix: &str, samples: usize) -> Outcome {
    let picked: Vec<&CheckReport> = report.checks.iter().filter(|c| c.name.starts_with(prefix)).collect();
    let failed: usize = picked.iter().map(|c| c.failed).sum();
    let complete = !picked.is_empty() && picked.iter().all(|c| c.samples == samples);
    let mut detail = format!("{} checks x {samples} samples, {failed} failures", picked.len());
    for c in picked.iter().filter(|c| !c.passed()) {
        detail.push_str(&format!("; {} failed {}", c.name, c.failed));
        if let Some(f) = c.failures.first() {
            detail.push_str(&format!(" (first: {})", f.counterexample.detail));
        }
    }
    Outcome {
        pass: complete && failed <= MAX_FAILURES,
        detail,
    }
}

fn criterion_1() -> Outcome {
    judge(
        &suite("institution", SUITE_SAMPLES),
        "institution/satisfaction/",
        SUITE_SAMPLES,
    )
}

fn criterion_2() -> Outcome {
    judge(
        &suite("institution", SUITE_SAMPLES),
        "institution/terms/",
        SUITE_SAMPLES,
    )
}

/// Drops the smallest true atom of every inner valuation after the real β.
fn faulty_lift() -> Box<LiftFn> {
    Box::new(|layer: LayerKind, c: &Comorphism| {
        let lifted = lift_comorphism(layer, c).into_comorphism();
        let honest = lifted.clone();
        lifted.with_beta(move |sig, m| {
            honest.beta(sig, m)?.map_inner(&mut |inner| {
                Ok(match inner {
                    Model::Valuation(v) => Model::Valuation(Valuation::new(v.true_atoms().iter().skip(1).cloned())),
                    other => other.clone(),
                })
            })
        })
    })
}

fn criterion_3() -> Outcome {
    let mut out = judge(
        &suite("functor-laws", FUNCTOR_SAMPLES),
        "functor-laws/",
        FUNCTOR_SAMPLES,
    );
    let c = cfg(FUNCTOR_SAMPLES);
    let (c1, c2) = (suite_def_ext(&c).unwrap(), suite_renaming(&c).unwrap());
    let lift = faulty_lift();
    let mut detected = Vec::new();
    for layer in LAYERS {
        let reports = check_functor_laws_using(layer, &c1, &c2, lift.as_ref(), &c, Execution::default()).unwrap();
        detected.push((layer, reports.iter().map(|r| r.failed).sum::<usize>()));
    }
    let all_detected = detected.iter().all(|(_, n)| *n > 0);
    out.detail.push_str("; injected bug caught:");
    for (layer, n) in detected {
        out.detail.push_str(&format!(" {}={n}", layer.letter()));
    }
    out.pass &= all_detected;
    out
}

fn criterion_4() -> Outcome {
    let report = suite("comorphism", SUITE_SAMPLES);
    let mut out = judge(&report, "comorphism/", SUITE_SAMPLES);
    let terms = report
        .checks
        .iter()
        .any(|c| c.name.starts_with("comorphism/P/") && c.name.ends_with("/terms"));
    out.pass &= terms;
    out
}

fn criterion_5() -> Outcome {
    judge(
        &suite("conservativity", SUITE_SAMPLES),
        "conservativity/",
        SUITE_SAMPLES,
    )
}

fn criterion_6() -> Outcome {
    judge(&suite("equivalence", SUITE_SAMPLES), "equivalence/", SUITE_SAMPLES)
}

fn criterion_7() -> Outcome {
    judge(&suite("tau", NATURALITY_SAMPLES), "tau/naturality/", NATURALITY_SAMPLES)
}

fn criterion_8() -> Outcome {
    let props = vec!["p".to_string(), "q".to_string()];
    let r = exhaustive_x_fragment(&props, EXHAUSTIVE_LEN, EXHAUSTIVE_DEPTH, Execution::default());
    let complete = r.lassos == EXHAUSTIVE_LASSOS && r.formulas == EXHAUSTIVE_FORMULAS;
    let mut detail = format!(
        "{} lassos x {} formulas = {} pairs, {} disagreements, {} errors",
        r.lassos, r.formulas, r.checked, r.disagreements, r.errors
    );
    if let Some(ex) = r.examples.first() {
        detail.push_str(&format!(
            " (first: {} {})",
            ex.formula.as_deref().unwrap_or(""),
            ex.detail
        ));
    }
    Outcome {
        pass: complete && r.passed(),
        detail,
    }
}

fn criterion_9() -> Outcome {
    let d = until_diagnostic(&cfg(SUITE_SAMPLES), Execution::default());
    let mut detail = format!(
        "{} samples, stable {}/{} ({:.2}%), agree when stable {}/{} ({:.2}%), {} errors",
        d.samples,
        d.stable,
        d.samples,
        100.0 * d.stable_fraction(),
        d.agree_when_stable,
        d.stable,
        100.0 * d.agreement_fraction(),
        d.errors
    );
    if let Some(ex) = d.examples.first() {
        detail.push_str(&format!(" (first: {})", ex.detail));
    }
    Outcome {
        pass: d.samples == SUITE_SAMPLES
            && d.errors == 0
            && d.stable_fraction() >= REQUIRED_STABLE
            && d.agreement_fraction() >= REQUIRED_AGREEMENT,
        detail,
    }
}

fn round_trips() -> (usize, Vec<String>) {
    let stacks: Vec<LogicStack> = ["PL", "L(PL)", "P(PL)", "H(PL)", "H(L(PL))", "P(H(L(PL)))", "L(P(PL))"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let c = cfg(ROUND_TRIPS);
    let mut bad = Vec::new();
    for i in 0..ROUND_TRIPS {
        let mut rng = sample_rng(sample_seed(SEED, "round-trip", i));
        let stack = &stacks[i % stacks.len()];
        let sig = gen_signature(stack, &c, &mut rng);
        let ast = gen_sentence(&sig, &c, &mut rng);
        let text = print_sentence(&ast);
        match parse_sentence(stack, &text) {
            Ok(back) if back == ast => {}
            _ => bad.push(text),
        }
    }
    (ROUND_TRIPS, bad)
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

/// `(logic, formula, model file, expected stdout, expected exit code)`.
const GOLDENS: [(&str, &str, &str, &str, i32); 3] = [
    ("L(PL)", "X {p}", "lasso_x.json", "SAT\n", 0),
    ("PL", "p & ~p", "valuation_p.json", "UNSAT\n", 1),
    ("P(PL)", "Int{p} < 0.7", "coin.json", "SAT\n", 0),
];

fn criterion_10() -> Outcome {
    let (total, bad) = round_trips();
    let mut detail = format!("{}/{total} ASTs round-trip", total - bad.len());
    if let Some(text) = bad.first() {
        detail.push_str(&format!(" (first failure: {text})"));
    }
    let mut goldens_ok = 0;
    for (logic, formula, model, expected, code) in GOLDENS {
        let out = Command::new(env!("CARGO_BIN_EXE_stacklogic"))
            .args(["check", "--logic", logic, "--formula", formula, "--model", &data(model)])
            .output()
            .expect("run stacklogic");
        if out.stdout == expected.as_bytes() && out.status.code() == Some(code) {
            goldens_ok += 1;
        } else {
            detail.push_str(&format!(
                "; {formula:?} gave {:?} exit {:?}",
                String::from_utf8_lossy(&out.stdout),
                out.status.code()
            ));
        }
    }
    detail.push_str(&format!(", {goldens_ok}/{} check goldens exact", GOLDENS.len()));
    Outcome {
        pass: bad.is_empty() && goldens_ok == GOLDENS.len(),
        detail,
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("institution satisfaction condition", criterion_1),
        ("term lemma", criterion_2),
        ("lifting functor laws", criterion_3),
        ("lifted satisfaction condition", criterion_4),
        ("conservativity preservation", criterion_5),
        ("equivalence preservation", criterion_6),
        ("tau naturality", criterion_7),
        ("tau X-fragment, exhaustive", criterion_8),
        ("until diagnostic", criterion_9),
        ("parser round trip and CLI goldens", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict}: {name}: {} [{:.1}s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 10 criteria fail: {failed:?}", failed.len());
        ExitCode::FAILURE
    }
}
