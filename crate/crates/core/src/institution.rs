//! The layered institution kernel: well-formedness, `Sen(φ)`, `Mod(φ)` and
//! satisfaction, dispatched on the outermost layer.
//!
//! The `_unchecked` variants assume well-formed input and are what the layer
//! modules call recursively; the public entry points validate first.

use crate::baselogic::{eval_prop, Valuation};
use crate::error::{contract, malformed, Result};
use crate::hybrid::{self, HybridSentence, KripkeModel};
use crate::model::Model;
use crate::prob::{self, ProbTerm};
use crate::sentence::Sentence;
use crate::signature::{LayerSig, Signature, SignatureMorphism};
use crate::temporal;

/// Checks that every symbol of `rho` is declared in `sig` (or bound).
pub fn check_sentence(sig: &Signature, rho: &Sentence) -> Result<()> {
    match (sig.split(), rho) {
        (None, Sentence::Prop(p)) => {
            if let Some(a) = p.atoms().iter().find(|a| !sig.props().contains(*a)) {
                return Err(malformed(format!("undeclared proposition {a}")));
            }
            Ok(())
        }
        (Some((LayerSig::Temporal, inner)), Sentence::Temporal(t)) => {
            let mut result = Ok(());
            t.for_each_base(&mut |psi| {
                if result.is_ok() {
                    result = check_sentence(&inner, psi);
                }
            });
            result
        }
        (Some((LayerSig::Prob, inner)), Sentence::Prob(p)) => {
            let mut result = Ok(());
            p.for_each_base(&mut |psi| {
                if result.is_ok() {
                    result = check_sentence(&inner, psi);
                }
            });
            result
        }
        (Some((LayerSig::Hybrid(h), inner)), Sentence::Hybrid(rho)) => check_hybrid(h, &inner, rho, &mut Vec::new()),
        _ => Err(malformed(format!("sentence does not belong to {}", sig.stack()))),
    }
}

fn check_hybrid(
    h: &crate::signature::HybridSig,
    inner: &Signature,
    rho: &HybridSentence,
    bound: &mut Vec<String>,
) -> Result<()> {
    let name = |i: &String, bound: &Vec<String>| {
        if bound.contains(i) || h.nominals.contains(i) {
            Ok(())
        } else {
            Err(malformed(format!("undeclared nominal {i}")))
        }
    };
    match rho {
        HybridSentence::Nominal(i) => name(i, bound),
        HybridSentence::Base(psi) => check_sentence(inner, psi),
        HybridSentence::Not(a) => check_hybrid(h, inner, a, bound),
        HybridSentence::And(a, b) => {
            check_hybrid(h, inner, a, bound)?;
            check_hybrid(h, inner, b, bound)
        }
        HybridSentence::At(i, a) => {
            name(i, bound)?;
            check_hybrid(h, inner, a, bound)
        }
        HybridSentence::Diamond(l, a) => {
            if !h.modalities.contains(l) {
                return Err(malformed(format!("undeclared modality {l}")));
            }
            check_hybrid(h, inner, a, bound)
        }
        HybridSentence::Exists(x, a) => {
            if !h.quantified {
                return Err(malformed("nominal quantification is not enabled for this signature"));
            }
            bound.push(x.clone());
            let r = check_hybrid(h, inner, a, bound);
            bound.pop();
            r
        }
    }
}

/// Checks that `m` is a model of `sig`: nesting matches the stack and every
/// layer interprets exactly the declared symbols.
pub fn check_model(sig: &Signature, m: &Model) -> Result<()> {
    match (sig.split(), m) {
        (None, Model::Valuation(v)) => check_valuation(sig, v),
        (Some((LayerSig::Temporal, inner)), Model::Lasso(l)) => {
            l.states().iter().try_for_each(|s| check_model(&inner, s))
        }
        (Some((LayerSig::Prob, inner)), Model::Space(s)) => {
            s.outcomes().iter().try_for_each(|o| check_model(&inner, &o.model))
        }
        (Some((LayerSig::Hybrid(h), inner)), Model::Kripke(k)) => {
            check_kripke(h, k)?;
            k.models().iter().try_for_each(|s| check_model(&inner, s))
        }
        _ => Err(malformed(format!("model does not belong to {}", sig.stack()))),
    }
}

fn check_valuation(sig: &Signature, v: &Valuation) -> Result<()> {
    if let Some(a) = v.true_atoms().iter().find(|a| !sig.props().contains(*a)) {
        return Err(malformed(format!("valuation mentions undeclared proposition {a}")));
    }
    Ok(())
}

fn check_kripke(h: &crate::signature::HybridSig, k: &KripkeModel) -> Result<()> {
    if !k.nominals().keys().eq(h.nominals.iter()) {
        return Err(malformed(
            "Kripke model does not interpret exactly the declared nominals",
        ));
    }
    if !k.relation_names().eq(h.modalities.iter()) {
        return Err(malformed(
            "Kripke model does not interpret exactly the declared modalities",
        ));
    }
    Ok(())
}

/// `Sen(φ)(ρ)`.
pub fn sen_translate(phi: &SignatureMorphism, rho: &Sentence) -> Result<Sentence> {
    check_sentence(phi.source(), rho)?;
    sen_translate_unchecked(phi, rho)
}

pub fn sen_translate_unchecked(phi: &SignatureMorphism, rho: &Sentence) -> Result<Sentence> {
    Ok(match rho {
        Sentence::Prop(p) => {
            if !phi.layer_maps().is_empty() {
                return Err(malformed("propositional sentence under a layered morphism"));
            }
            Sentence::Prop(p.rename(&|a| phi.map_prop(a).cloned())?)
        }
        Sentence::Temporal(t) => Sentence::Temporal(temporal::temporal_sen_translate(phi, t)?),
        Sentence::Prob(p) => Sentence::Prob(prob::prob_sen_translate(phi, p)?),
        Sentence::Hybrid(h) => Sentence::Hybrid(hybrid::hybrid_sen_translate(phi, h)?),
    })
}

/// `T(φ)(t)` for terms of a probabilistic stack.
pub fn term_translate(phi: &SignatureMorphism, t: &ProbTerm) -> Result<ProbTerm> {
    prob::prob_term_translate(phi, t)
}

/// `Mod(φ)(M)`, the reduct of a model of `φ`'s target.
pub fn mod_reduct(phi: &SignatureMorphism, m: &Model) -> Result<Model> {
    check_model(phi.target(), m).map_err(|e| contract(format!("reduct of a model outside the target: {e}")))?;
    mod_reduct_unchecked(phi, m)
}

pub fn mod_reduct_unchecked(phi: &SignatureMorphism, m: &Model) -> Result<Model> {
    Ok(match m {
        Model::Valuation(v) => {
            if !phi.layer_maps().is_empty() {
                return Err(contract("valuation under a layered morphism"));
            }
            Model::Valuation(Valuation::new(
                phi.prop_map()
                    .iter()
                    .filter(|(_, to)| v.is_true(to))
                    .map(|(from, _)| from.clone()),
            ))
        }
        Model::Lasso(l) => Model::Lasso(temporal::temporal_reduct(phi, l)?),
        Model::Space(s) => Model::Space(prob::prob_reduct(phi, s)?),
        Model::Kripke(k) => Model::Kripke(hybrid::hy_reduct(phi, k)?),
    })
}

/// `M ⊨_Σ ρ`, after checking both are over `sig`.
pub fn satisfies(sig: &Signature, m: &Model, rho: &Sentence) -> Result<bool> {
    check_sentence(sig, rho)?;
    check_model(sig, m)?;
    holds(m, rho)
}

/// Satisfaction without signature checks; fails only if model and sentence
/// belong to different layers or a name is unbound.
pub fn holds(m: &Model, rho: &Sentence) -> Result<bool> {
    match (m, rho) {
        (Model::Valuation(v), Sentence::Prop(p)) => Ok(eval_prop(v, p)),
        (Model::Lasso(l), Sentence::Temporal(t)) => temporal::ltl_satisfies(l, t),
        (Model::Space(s), Sentence::Prob(p)) => prob::prob_satisfies(s, p),
        (Model::Kripke(k), Sentence::Hybrid(h)) => hybrid::hy_satisfies(k, h),
        _ => Err(malformed("model and sentence belong to different layers")),
    }
}
