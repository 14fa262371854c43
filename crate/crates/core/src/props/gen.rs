//! Random generators for every layered value.
//!
//! Symbols come from fixed pools: propositions `p1…`, renaming targets
//! `r1…`, nominals `i1…i3`, modalities `l1…l3` and bound variables `x1…x3`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::baselogic::{Prop, Valuation};
use crate::hybrid::{HybridSentence, KripkeModel};
use crate::model::Model;
use crate::prob::{FiniteSpace, Outcome, ProbSentence, ProbTerm};
use crate::sentence::{Connectives, Sentence};
use crate::signature::{HybridMap, HybridSig, LayerMap, LayerSig, Signature, SignatureMorphism, Symbol};
use crate::stack::{LayerKind, LogicStack};
use crate::temporal::{Lasso, TemporalSentence};

use super::config::GenConfig;

/// Upper bound on nominals, modalities and bound variables per layer.
pub const MAX_LAYER_SYMBOLS: usize = 3;

/// Depth budget for sentences below the outermost layer.
pub const INNER_DEPTH: usize = 2;

const LEAF_PROBABILITY: f64 = 0.25;

pub fn prop_pool(cfg: &GenConfig) -> Vec<Symbol> {
    (1..=cfg.max_prop_symbols).map(|i| format!("p{i}")).collect()
}

fn pool(prefix: &str, n: usize) -> Vec<Symbol> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn subset<R: Rng + ?Sized>(rng: &mut R, from: &[Symbol], min: usize) -> BTreeSet<Symbol> {
    let k = rng.gen_range(min.min(from.len())..=from.len());
    from.choose_multiple(rng, k).cloned().collect()
}

/// A non-empty subset of the proposition pool.
pub fn gen_prop_signature<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Signature {
    Signature::propositional(subset(rng, &prop_pool(cfg), 1))
}

pub fn gen_layer_sig<R: Rng + ?Sized>(kind: LayerKind, rng: &mut R) -> LayerSig {
    match kind {
        LayerKind::Temporal => LayerSig::Temporal,
        LayerKind::Prob => LayerSig::Prob,
        LayerKind::Hybrid => LayerSig::Hybrid(HybridSig {
            nominals: subset(rng, &pool("i", MAX_LAYER_SYMBOLS), 0),
            modalities: subset(rng, &pool("l", MAX_LAYER_SYMBOLS), 0),
            quantified: rng.gen_bool(0.5),
        }),
    }
}

pub fn gen_signature<R: Rng + ?Sized>(stack: &LogicStack, cfg: &GenConfig, rng: &mut R) -> Signature {
    let mut sig = gen_prop_signature(cfg, rng);
    for kind in stack.layers().iter().rev() {
        sig = sig.wrap(gen_layer_sig(*kind, rng));
    }
    sig
}

fn gen_map<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &BTreeSet<Symbol>,
    codomain_pool: &[Symbol],
) -> (BTreeMap<Symbol, Symbol>, BTreeSet<Symbol>) {
    let map: BTreeMap<_, _> = domain
        .iter()
        .map(|s| (s.clone(), codomain_pool.choose(rng).expect("non-empty pool").clone()))
        .collect();
    let mut target = subset(rng, codomain_pool, 0);
    target.extend(map.values().cloned());
    (map, target)
}

/// A random total morphism out of `source`, layer by layer.
pub fn gen_morphism<R: Rng + ?Sized>(source: &Signature, cfg: &GenConfig, rng: &mut R) -> SignatureMorphism {
    let (props, target_props) = gen_map(rng, source.props(), &prop_pool(cfg));
    let mut target_layers = Vec::new();
    let mut maps = Vec::new();
    for layer in source.layers() {
        match layer {
            LayerSig::Hybrid(h) => {
                let (nominals, nom_target) = gen_map(rng, &h.nominals, &pool("i", MAX_LAYER_SYMBOLS));
                let (modalities, mod_target) = gen_map(rng, &h.modalities, &pool("l", MAX_LAYER_SYMBOLS));
                target_layers.push(LayerSig::Hybrid(HybridSig {
                    nominals: nom_target,
                    modalities: mod_target,
                    quantified: h.quantified || rng.gen_bool(0.5),
                }));
                maps.push(LayerMap::Hybrid(HybridMap { nominals, modalities }));
            }
            other => {
                target_layers.push(other.clone());
                maps.push(LayerMap::Unit);
            }
        }
    }
    SignatureMorphism::new(source.clone(), Signature::new(target_layers, target_props), maps, props)
        .expect("generated maps are total into the generated target")
}

/// A bijection from `props` onto symbols drawn from `p…` and `r…`.
pub fn gen_bijection<R: Rng + ?Sized>(
    props: &BTreeSet<Symbol>,
    cfg: &GenConfig,
    rng: &mut R,
) -> BTreeMap<Symbol, Symbol> {
    let mut candidates = prop_pool(cfg);
    candidates.extend(pool("r", cfg.max_prop_symbols));
    candidates.extend(props.iter().cloned());
    candidates.sort();
    candidates.dedup();
    let images: Vec<Symbol> = candidates.choose_multiple(rng, props.len()).cloned().collect();
    props.iter().cloned().zip(images).collect()
}

fn stop<R: Rng + ?Sized>(depth: usize, rng: &mut R) -> bool {
    depth == 0 || rng.gen_bool(LEAF_PROBABILITY)
}

/// A sentence over `sig` whose outermost layer has depth at most
/// `cfg.max_formula_depth`; inner layers use [`INNER_DEPTH`].
pub fn gen_sentence<R: Rng + ?Sized>(sig: &Signature, cfg: &GenConfig, rng: &mut R) -> Sentence {
    gen_sentence_depth(sig, cfg.max_formula_depth, rng)
}

pub fn gen_sentence_depth<R: Rng + ?Sized>(sig: &Signature, depth: usize, rng: &mut R) -> Sentence {
    match sig.split() {
        None => Sentence::Prop(gen_prop(sig.props(), depth, rng)),
        Some((LayerSig::Temporal, inner)) => Sentence::Temporal(gen_temporal(&inner, depth, true, rng)),
        Some((LayerSig::Prob, inner)) => Sentence::Prob(gen_prob(&inner, depth, rng)),
        Some((LayerSig::Hybrid(h), inner)) => Sentence::Hybrid(gen_hybrid(h, &inner, depth, &mut Vec::new(), rng)),
    }
}

fn inner_sentence<R: Rng + ?Sized>(inner: &Signature, rng: &mut R) -> Sentence {
    gen_sentence_depth(inner, INNER_DEPTH, rng)
}

pub fn gen_prop<R: Rng + ?Sized>(props: &BTreeSet<Symbol>, depth: usize, rng: &mut R) -> Prop {
    let atoms: Vec<&Symbol> = props.iter().collect();
    if stop(depth, rng) {
        return Prop::atom(
            atoms
                .choose(rng)
                .expect("propositional signatures are non-empty")
                .as_str(),
        );
    }
    if rng.gen_bool(0.4) {
        Prop::not(gen_prop(props, depth - 1, rng))
    } else {
        Prop::and(gen_prop(props, depth - 1, rng), gen_prop(props, depth - 1, rng))
    }
}

/// A temporal sentence; `until` enables `U` nodes.
pub fn gen_temporal<R: Rng + ?Sized>(inner: &Signature, depth: usize, until: bool, rng: &mut R) -> TemporalSentence {
    if stop(depth, rng) {
        return TemporalSentence::Base(Box::new(inner_sentence(inner, rng)));
    }
    let choices = if until { 4 } else { 3 };
    let d = depth - 1;
    match rng.gen_range(0..choices) {
        0 => TemporalSentence::not(gen_temporal(inner, d, until, rng)),
        1 => TemporalSentence::and(gen_temporal(inner, d, until, rng), gen_temporal(inner, d, until, rng)),
        2 => TemporalSentence::next(gen_temporal(inner, d, until, rng)),
        _ => TemporalSentence::until(gen_temporal(inner, d, until, rng), gen_temporal(inner, d, until, rng)),
    }
}

pub fn gen_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let d: i64 = *[1, 2, 3, 4, 5, 10].choose(rng).expect("non-empty");
    let n = rng.gen_range(0..=d);
    BigRational::new(n.into(), d.into())
}

pub fn gen_term<R: Rng + ?Sized>(inner: &Signature, depth: usize, rng: &mut R) -> ProbTerm {
    if stop(depth, rng) {
        return if rng.gen_bool(0.4) {
            ProbTerm::Const(gen_rational(rng))
        } else {
            ProbTerm::Integral(Box::new(inner_sentence(inner, rng)))
        };
    }
    let (a, b) = (gen_term(inner, depth - 1, rng), gen_term(inner, depth - 1, rng));
    if rng.gen_bool(0.5) {
        ProbTerm::add(a, b)
    } else {
        ProbTerm::mul(a, b)
    }
}

fn gen_prob<R: Rng + ?Sized>(inner: &Signature, depth: usize, rng: &mut R) -> ProbSentence {
    if stop(depth, rng) {
        return ProbSentence::less(gen_term(inner, 2, rng), gen_term(inner, 2, rng));
    }
    if rng.gen_bool(0.4) {
        ProbSentence::not(gen_prob(inner, depth - 1, rng))
    } else {
        ProbSentence::and(gen_prob(inner, depth - 1, rng), gen_prob(inner, depth - 1, rng))
    }
}

fn gen_hybrid<R: Rng + ?Sized>(
    h: &HybridSig,
    inner: &Signature,
    depth: usize,
    bound: &mut Vec<Symbol>,
    rng: &mut R,
) -> HybridSentence {
    let names: Vec<Symbol> = h.nominals.iter().chain(bound.iter()).cloned().collect();
    if stop(depth, rng) {
        return match names.choose(rng) {
            Some(i) if rng.gen_bool(0.4) => HybridSentence::nominal(i.clone()),
            _ => HybridSentence::Base(Box::new(inner_sentence(inner, rng))),
        };
    }
    let d = depth - 1;
    loop {
        match rng.gen_range(0..5) {
            0 => return HybridSentence::not(gen_hybrid(h, inner, d, bound, rng)),
            1 => {
                let a = gen_hybrid(h, inner, d, bound, rng);
                return HybridSentence::and(a, gen_hybrid(h, inner, d, bound, rng));
            }
            2 => {
                if let Some(i) = names.choose(rng) {
                    return HybridSentence::at(i.clone(), gen_hybrid(h, inner, d, bound, rng));
                }
            }
            3 => {
                let modalities: Vec<&Symbol> = h.modalities.iter().collect();
                if let Some(l) = modalities.choose(rng) {
                    return HybridSentence::diamond((*l).clone(), gen_hybrid(h, inner, d, bound, rng));
                }
            }
            _ => {
                if h.quantified {
                    let x = format!("x{}", rng.gen_range(1..=MAX_LAYER_SYMBOLS));
                    bound.push(x.clone());
                    let body = gen_hybrid(h, inner, d, bound, rng);
                    bound.pop();
                    return HybridSentence::exists(x, body);
                }
            }
        }
    }
}

/// A model of `sig` with every carrier of size at most `cfg.max_carrier`.
pub fn gen_model<R: Rng + ?Sized>(sig: &Signature, cfg: &GenConfig, rng: &mut R) -> Model {
    match sig.split() {
        None => Model::Valuation(gen_valuation(sig.props(), rng)),
        Some((LayerSig::Temporal, inner)) => Model::Lasso(gen_lasso(&inner, cfg, rng)),
        Some((LayerSig::Prob, inner)) => Model::Space(gen_space(&inner, cfg, rng)),
        Some((LayerSig::Hybrid(h), inner)) => Model::Kripke(gen_kripke(h, &inner, cfg, rng)),
    }
}

pub fn gen_valuation<R: Rng + ?Sized>(props: &BTreeSet<Symbol>, rng: &mut R) -> Valuation {
    Valuation::new(props.iter().filter(|_| rng.gen_bool(0.5)).cloned())
}

pub fn gen_lasso<R: Rng + ?Sized>(inner: &Signature, cfg: &GenConfig, rng: &mut R) -> Lasso {
    let n = rng.gen_range(1..=cfg.max_carrier);
    let k = rng.gen_range(0..n);
    let states = (0..n).map(|_| gen_model(inner, cfg, rng)).collect();
    Lasso::new(states, k).expect("k < n")
}

/// Integer weights in `0..=4`, at least one positive, normalised exactly.
pub fn gen_space<R: Rng + ?Sized>(inner: &Signature, cfg: &GenConfig, rng: &mut R) -> FiniteSpace {
    let n = rng.gen_range(1..=cfg.max_carrier);
    let mut weights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    if weights.iter().all(|w| *w == 0) {
        let i = rng.gen_range(0..n);
        weights[i] = 1;
    }
    let total: i64 = weights.iter().sum();
    let outcomes = weights
        .into_iter()
        .map(|w| Outcome {
            weight: BigRational::new(w.into(), total.into()),
            model: gen_model(inner, cfg, rng),
        })
        .collect();
    FiniteSpace::new(outcomes).expect("normalised weights")
}

pub fn gen_kripke<R: Rng + ?Sized>(h: &HybridSig, inner: &Signature, cfg: &GenConfig, rng: &mut R) -> KripkeModel {
    let n = rng.gen_range(1..=cfg.max_carrier);
    let nominals = h.nominals.iter().map(|i| (i.clone(), rng.gen_range(0..n))).collect();
    let relations = h
        .modalities
        .iter()
        .map(|l| {
            let pairs = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.35))
                .collect::<Vec<_>>();
            (l.clone(), pairs)
        })
        .collect();
    let models = (0..n).map(|_| gen_model(inner, cfg, rng)).collect();
    KripkeModel::indexed(models, nominals, relations).expect("generated indices are in range")
}
