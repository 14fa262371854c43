use std::collections::BTreeMap;

use stacklogic::baselogic::{
    def_ext_comorphism, enumerate_models, renaming_equivalence, semantically_equivalent, Valuation,
};
use stacklogic::comorphism::{compose_comorphisms, identity_comorphism};
use stacklogic::hybrid::KripkeModel;
use stacklogic::institution::{mod_reduct, satisfies, sen_translate};
use stacklogic::props::gen::{gen_model, gen_prop_signature, gen_sentence};
use stacklogic::props::{sample_rng, GenConfig};
use stacklogic::signature::HybridMap;
use stacklogic::syntax::parse_sentence;
use stacklogic::{HybridSig, LayerMap, LayerSig, LogicStack, Model, Sentence, Signature, SignatureMorphism};

fn stack(s: &str) -> LogicStack {
    s.parse().unwrap()
}

fn parse(s: &str, text: &str) -> Sentence {
    parse_sentence(&stack(s), text).unwrap()
}

fn p_to_q() -> SignatureMorphism {
    SignatureMorphism::propositional(
        Signature::propositional(["p"]),
        Signature::propositional(["q"]),
        BTreeMap::from([("p".into(), "q".into())]),
    )
    .unwrap()
}

fn hybrid_i_to_j() -> SignatureMorphism {
    let src = Signature::propositional(["p"]).wrap(LayerSig::Hybrid(HybridSig::new(["i"], ["l"])));
    let tgt = Signature::propositional(["p"]).wrap(LayerSig::Hybrid(HybridSig::new(["i", "j"], ["l"])));
    let map = HybridMap {
        nominals: BTreeMap::from([("i".into(), "j".into())]),
        modalities: BTreeMap::from([("l".into(), "l".into())]),
    };
    SignatureMorphism::new(
        src,
        tgt,
        vec![LayerMap::Hybrid(map)],
        BTreeMap::from([("p".into(), "p".into())]),
    )
    .unwrap()
}

#[test]
fn sentence_translation_examples() {
    let temporal = p_to_q()
        .wrap(LayerSig::Temporal, LayerSig::Temporal, LayerMap::Unit)
        .unwrap();
    assert_eq!(
        sen_translate(&temporal, &parse("L(PL)", "X {p}")).unwrap(),
        parse("L(PL)", "X {q}")
    );
    assert_eq!(
        sen_translate(&hybrid_i_to_j(), &parse("H(PL)", "@ i {p}")).unwrap(),
        parse("H(PL)", "@ j {p}")
    );
    let id = SignatureMorphism::identity(&Signature::propositional(["p", "q"]));
    let rho = parse("PL", "p & ~q");
    assert_eq!(sen_translate(&id, &rho).unwrap(), rho);
}

#[test]
fn sentence_outside_the_domain_is_rejected() {
    assert!(sen_translate(&p_to_q(), &parse("PL", "r")).is_err());
}

#[test]
fn reduct_examples() {
    assert_eq!(
        mod_reduct(&p_to_q(), &Valuation::new(["q"]).into()).unwrap(),
        Model::Valuation(Valuation::new(["p"]))
    );
    let m = KripkeModel::indexed(
        vec![Valuation::default().into(), Valuation::new(["p"]).into()],
        BTreeMap::from([("i".into(), 0), ("j".into(), 1)]),
        BTreeMap::from([("l".into(), vec![(0, 1)])]),
    )
    .unwrap();
    let Model::Kripke(reduced) = mod_reduct(&hybrid_i_to_j(), &m.clone().into()).unwrap() else {
        panic!()
    };
    assert_eq!(reduced.nominal("i"), m.nominal("j"));
    assert_eq!(reduced.world_count(), 2);
    assert_eq!(reduced.pairs("l"), m.pairs("l"));
}

#[test]
fn satisfaction_dispatches_to_the_outer_layer() {
    let sig = Signature::propositional(["p", "q"]);
    assert!(satisfies(&sig, &Valuation::new(["p"]).into(), &parse("PL", "p & ~q")).unwrap());
    assert!(!satisfies(&sig, &Valuation::new(["p", "q"]).into(), &parse("PL", "p & ~q")).unwrap());
}

#[test]
fn enumeration_counts() {
    for n in 0..5 {
        let sig = Signature::propositional((0..n).map(|i| format!("p{i}")));
        let all: Vec<Valuation> = enumerate_models(&sig).unwrap().collect();
        let distinct: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!((all.len(), distinct.len()), (1 << n, 1 << n));
    }
}

/// Extensional comparison of two comorphisms on sampled PL inputs.
fn same_on_samples(a: &stacklogic::Comorphism, b: &stacklogic::Comorphism, samples: usize) {
    let cfg = GenConfig::default();
    for i in 0..samples {
        let mut rng = sample_rng(i as u64);
        let sig = gen_prop_signature(&cfg, &mut rng);
        let rho = gen_sentence(&sig, &cfg, &mut rng);
        let target = a.phi_sig(&sig).unwrap();
        assert_eq!(target, b.phi_sig(&sig).unwrap());
        assert_eq!(a.alpha(&sig, &rho).unwrap(), b.alpha(&sig, &rho).unwrap());
        let m = gen_model(&target, &cfg, &mut rng);
        assert_eq!(a.beta(&sig, &m).unwrap(), b.beta(&sig, &m).unwrap());
    }
}

fn pool() -> Signature {
    Signature::propositional(["p1", "p2", "p3", "p4"])
}

#[test]
fn identity_is_neutral_for_composition() {
    let c = def_ext_comorphism(&pool(), "x").unwrap();
    let id = identity_comorphism(LogicStack::base());
    same_on_samples(&compose_comorphisms(&id, &c).unwrap(), &c, 200);
    same_on_samples(&compose_comorphisms(&c, &id).unwrap(), &c, 200);
}

#[test]
fn two_definitional_extensions_compose() {
    let dx = def_ext_comorphism(&pool(), "x").unwrap();
    let mut extended = pool().props().clone();
    extended.insert("x".into());
    let dy = def_ext_comorphism(&Signature::propositional(extended), "y").unwrap();
    let both = compose_comorphisms(&dy, &dx).unwrap();
    let cfg = GenConfig::default();
    for i in 0..200 {
        let mut rng = sample_rng(i);
        let sig = gen_prop_signature(&cfg, &mut rng);
        let rho = gen_sentence(&sig, &cfg, &mut rng);
        let mut props = sig.props().clone();
        props.extend(["x".to_string(), "y".to_string()]);
        assert_eq!(both.phi_sig(&sig).unwrap(), Signature::propositional(props.clone()));
        assert_eq!(both.alpha(&sig, &rho).unwrap(), rho);
        let Model::Valuation(v) = gen_model(&Signature::propositional(props), &cfg, &mut rng) else {
            panic!()
        };
        let forgotten = Valuation::new(v.true_atoms().iter().filter(|a| sig.props().contains(*a)).cloned());
        assert_eq!(both.beta(&sig, &v.into()).unwrap(), forgotten.into());
    }
}

#[test]
fn def_ext_examples() {
    let sig = Signature::propositional(["p"]);
    let c = def_ext_comorphism(&sig, "x").unwrap();
    assert_eq!(
        c.beta(&sig, &Valuation::new(["p", "x"]).into()).unwrap(),
        Valuation::new(["p"]).into()
    );
    let pre = c.beta_preimage(&sig, &Valuation::new(["p"]).into()).unwrap().unwrap();
    assert_eq!(pre, Valuation::new(["p"]).into());
    assert_eq!(c.beta(&sig, &pre).unwrap(), Valuation::new(["p"]).into());
    assert!(def_ext_comorphism(&sig, "p").is_err());
    // Satisfaction condition for ρ = p over all four extended models.
    let rho = parse("PL", "p");
    let ext = c.phi_sig(&sig).unwrap();
    for v in enumerate_models(&ext).unwrap() {
        let m: Model = v.into();
        assert_eq!(
            satisfies(&sig, &c.beta(&sig, &m).unwrap(), &rho).unwrap(),
            satisfies(&ext, &m, &c.alpha(&sig, &rho).unwrap()).unwrap()
        );
    }
}

#[test]
fn renaming_examples() {
    let sig = Signature::propositional(["p", "q"]);
    let swap = BTreeMap::from([("p".into(), "q".into()), ("q".into(), "p".into())]);
    let c = renaming_equivalence(&sig, &swap).unwrap();
    let rho = parse("PL", "p & q");
    let image = c.alpha(&sig, &rho).unwrap();
    assert_eq!(image, parse("PL", "q & p"));
    let back = c.alpha_inv(&sig, &image).unwrap().unwrap();
    let (Sentence::Prop(a), Sentence::Prop(b)) = (&back, &rho) else {
        panic!()
    };
    assert!(semantically_equivalent(&sig, a, b).unwrap());
    for v in enumerate_models(&sig).unwrap() {
        let m: Model = v.into();
        let there = c.beta(&sig, &m).unwrap();
        assert_eq!(c.beta_inv(&sig, &there).unwrap().unwrap(), m);
    }
    let collapse = BTreeMap::from([("p".into(), "q".into()), ("q".into(), "q".into())]);
    assert!(renaming_equivalence(&sig, &collapse).is_err());
}

#[test]
fn identity_renaming_is_extensionally_identity() {
    let bij = pool().props().iter().map(|p| (p.clone(), p.clone())).collect();
    let c = renaming_equivalence(&pool(), &bij).unwrap();
    same_on_samples(&c, &identity_comorphism(LogicStack::base()), 200);
}
