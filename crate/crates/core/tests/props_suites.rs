use num_traits::One;
use proptest::prelude::*;
use stacklogic::baselogic::Valuation;
use stacklogic::lifting::{check_functor_laws_using, lift_comorphism, LiftFn};
use stacklogic::modelfile::{model_from_str, model_to_string};
use stacklogic::par::Execution;
use stacklogic::props::gen::{gen_model, gen_prop_signature, gen_sentence, gen_signature, gen_space};
use stacklogic::props::suites::{suite_def_ext, suite_renaming, LAYERS};
use stacklogic::props::{run_suite, run_suite_with, sample_rng, GenConfig};
use stacklogic::syntax::{parse_sentence, print_sentence};
use stacklogic::{Comorphism, LayerKind, LogicStack, Model, Signature};

const STACKS: [&str; 8] = [
    "PL",
    "L(PL)",
    "P(PL)",
    "H(PL)",
    "H(L(PL))",
    "L(H(PL))",
    "P(H(L(PL)))",
    "L(P(PL))",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_sentences_parse_back(seed in any::<u64>(), stack in prop::sample::select(STACKS.to_vec())) {
        let stack: LogicStack = stack.parse().unwrap();
        let cfg = GenConfig::default();
        let mut rng = sample_rng(seed);
        let sig = gen_signature(&stack, &cfg, &mut rng);
        let rho = gen_sentence(&sig, &cfg, &mut rng);
        let text = print_sentence(&rho);
        prop_assert_eq!(parse_sentence(&stack, &text).unwrap(), rho, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn model_files_round_trip(seed in any::<u64>(), stack in prop::sample::select(STACKS.to_vec())) {
        let stack: LogicStack = stack.parse().unwrap();
        let cfg = GenConfig::default();
        let mut rng = sample_rng(seed);
        let sig = gen_signature(&stack, &cfg, &mut rng);
        let m = gen_model(&sig, &cfg, &mut rng);
        prop_assert_eq!(model_from_str(&model_to_string(&m)).unwrap(), m);
    }

    #[test]
    fn same_seed_same_values(seed in any::<u64>()) {
        let stack: LogicStack = "P(H(L(PL)))".parse().unwrap();
        let cfg = GenConfig::default();
        let draw = || {
            let mut rng = sample_rng(seed);
            let sig = gen_signature(&stack, &cfg, &mut rng);
            (gen_sentence(&sig, &cfg, &mut rng), gen_model(&sig, &cfg, &mut rng), sig)
        };
        prop_assert_eq!(draw(), draw());
    }
}

#[test]
fn one_symbol_bound_is_respected() {
    let cfg = GenConfig {
        max_prop_symbols: 1,
        ..GenConfig::default()
    };
    for i in 0..200 {
        let sig = gen_prop_signature(&cfg, &mut sample_rng(i));
        assert!(sig.props().iter().all(|p| p == "p1"), "{:?}", sig.props());
    }
}

#[test]
fn generated_weights_sum_to_one() {
    let cfg = GenConfig::default();
    let inner = Signature::propositional(["p1", "p2"]);
    for i in 0..1000 {
        let space = gen_space(&inner, &cfg, &mut sample_rng(i));
        let total: num_rational::BigRational = space.outcomes().iter().map(|o| o.weight.clone()).sum();
        assert!(total.is_one());
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = GenConfig::default().with_seed(7).with_samples(40);
    for suite in ["institution", "comorphism", "functor-laws", "tau"] {
        let seq = run_suite_with(suite, &cfg, Execution::Sequential).unwrap();
        let par = run_suite_with(suite, &cfg, Execution::Parallel).unwrap();
        assert_eq!(seq, par, "{suite}");
        assert_eq!(seq, run_suite(suite, &cfg).unwrap(), "{suite}");
    }
}

#[test]
fn default_suites_pass() {
    let cfg = GenConfig::default().with_samples(100);
    for suite in [
        "institution",
        "comorphism",
        "functor-laws",
        "conservativity",
        "equivalence",
    ] {
        let report = run_suite(suite, &cfg).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn smoke_all() {
    let cfg = GenConfig::default().with_samples(1);
    let report = run_suite("all", &cfg).unwrap();
    assert!(report.checks.iter().all(|c| c.samples == 1));
    assert_eq!(report, run_suite("all", &cfg).unwrap());
}

/// Lifts honestly, then turns every inner valuation false.
fn blank_lift() -> Box<LiftFn> {
    Box::new(|layer: LayerKind, c: &Comorphism| {
        let honest = lift_comorphism(layer, c).into_comorphism();
        let beta = honest.clone();
        honest.with_beta(move |sig, m| {
            beta.beta(sig, m)?.map_inner(&mut |inner| {
                Ok(match inner {
                    Model::Valuation(_) => Valuation::default().into(),
                    other => other.clone(),
                })
            })
        })
    })
}

#[test]
fn faulty_lift_is_caught() {
    let cfg = GenConfig::default().with_samples(200);
    let (c1, c2) = (suite_def_ext(&cfg).unwrap(), suite_renaming(&cfg).unwrap());
    let lift = blank_lift();
    for layer in LAYERS {
        let reports = check_functor_laws_using(layer, &c1, &c2, lift.as_ref(), &cfg, Execution::default()).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty(), "{layer:?}");
        let first = &failed[0].failures[0].counterexample;
        assert!(!first.detail.is_empty());
        assert!(first.model.is_some(), "{first:?}");
    }
}
