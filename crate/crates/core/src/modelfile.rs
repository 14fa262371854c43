//! JSON formats for models, signatures and signature morphisms.
//!
//! Models are discriminated by `"kind"`:
//!
//! ```json
//! {"kind": "valuation", "true": ["p"]}
//! {"kind": "lasso", "states": [ … ], "loop": 1}
//! {"kind": "space", "outcomes": [{"weight": "1/2", "model": { … }}]}
//! {"kind": "kripke", "worlds": ["w0", "w1"], "nominals": {"i": "w0"},
//!  "relations": {"l": [["w0", "w1"]]}, "models": {"w0": { … }, "w1": { … }}}
//! ```
//!
//! Weights are strings holding an exact rational (`"1/3"`, `"0.25"`); JSON
//! numbers are rejected so no value ever passes through binary floating point.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::baselogic::Valuation;
use crate::error::{Error, Result};
use crate::hybrid::KripkeModel;
use crate::model::Model;
use crate::prob::{FiniteSpace, Outcome};
use crate::sentence::Sentence;
use crate::signature::{HybridMap, HybridSig, LayerMap, LayerSig, Signature, SignatureMorphism, Symbol};
use crate::stack::{LayerKind, LogicStack};
use crate::syntax::parse_rational;
use crate::temporal::Lasso;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ModelDoc {
    Valuation {
        #[serde(rename = "true")]
        true_atoms: Vec<Symbol>,
    },
    Lasso {
        states: Vec<ModelDoc>,
        #[serde(rename = "loop")]
        loop_index: usize,
    },
    Space {
        outcomes: Vec<OutcomeDoc>,
    },
    Kripke {
        worlds: Vec<Symbol>,
        #[serde(default)]
        nominals: BTreeMap<Symbol, Symbol>,
        #[serde(default)]
        relations: BTreeMap<Symbol, Vec<(Symbol, Symbol)>>,
        models: BTreeMap<Symbol, ModelDoc>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct OutcomeDoc {
    weight: String,
    model: ModelDoc,
}

fn to_doc(m: &Model) -> ModelDoc {
    match m {
        Model::Valuation(v) => ModelDoc::Valuation {
            true_atoms: v.true_atoms().iter().cloned().collect(),
        },
        Model::Lasso(l) => ModelDoc::Lasso {
            states: l.states().iter().map(to_doc).collect(),
            loop_index: l.loop_index(),
        },
        Model::Space(s) => ModelDoc::Space {
            outcomes: s
                .outcomes()
                .iter()
                .map(|o| OutcomeDoc {
                    weight: o.weight.to_string(),
                    model: to_doc(&o.model),
                })
                .collect(),
        },
        Model::Kripke(k) => {
            let name = |w: usize| k.worlds()[w].clone();
            let names: Vec<Symbol> = k.relation_names().cloned().collect();
            ModelDoc::Kripke {
                worlds: k.worlds().to_vec(),
                nominals: k.nominals().iter().map(|(i, w)| (i.clone(), name(*w))).collect(),
                relations: names
                    .into_iter()
                    .map(|l| {
                        let pairs = k.pairs(&l).unwrap_or_default();
                        (l, pairs.into_iter().map(|(a, b)| (name(a), name(b))).collect())
                    })
                    .collect(),
                models: k
                    .worlds()
                    .iter()
                    .zip(k.models())
                    .map(|(w, m)| (w.clone(), to_doc(m)))
                    .collect(),
            }
        }
    }
}

fn from_doc(doc: ModelDoc) -> Result<Model> {
    Ok(match doc {
        ModelDoc::Valuation { true_atoms } => {
            let set: BTreeSet<_> = true_atoms.iter().collect();
            if set.len() != true_atoms.len() {
                return Err(schema("valuation lists an atom twice"));
            }
            Model::Valuation(Valuation::new(true_atoms))
        }
        ModelDoc::Lasso { states, loop_index } => {
            let states = states.into_iter().map(from_doc).collect::<Result<_>>()?;
            Model::Lasso(Lasso::new(states, loop_index).map_err(|e| schema(e.to_string()))?)
        }
        ModelDoc::Space { outcomes } => {
            let outcomes = outcomes
                .into_iter()
                .map(|o| {
                    let weight = parse_rational(o.weight.trim())
                        .ok_or_else(|| schema(format!("weight `{}` is not an exact rational", o.weight)))?;
                    Ok(Outcome {
                        weight,
                        model: from_doc(o.model)?,
                    })
                })
                .collect::<Result<_>>()?;
            Model::Space(FiniteSpace::new(outcomes).map_err(|e| schema(e.to_string()))?)
        }
        ModelDoc::Kripke {
            worlds,
            nominals,
            relations,
            mut models,
        } => {
            let index: BTreeMap<&Symbol, usize> = worlds.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let world = |w: &Symbol| {
                index
                    .get(w)
                    .copied()
                    .ok_or_else(|| schema(format!("unknown world `{w}`")))
            };
            let nominals = nominals
                .iter()
                .map(|(i, w)| Ok((i.clone(), world(w)?)))
                .collect::<Result<_>>()?;
            let relations = relations
                .iter()
                .map(|(l, pairs)| {
                    let pairs = pairs
                        .iter()
                        .map(|(a, b)| Ok((world(a)?, world(b)?)))
                        .collect::<Result<_>>()?;
                    Ok((l.clone(), pairs))
                })
                .collect::<Result<_>>()?;
            if let Some(extra) = models.keys().find(|w| !index.contains_key(w)) {
                return Err(schema(format!("model given for unknown world `{extra}`")));
            }
            let inner = worlds
                .iter()
                .map(|w| {
                    models
                        .remove(w)
                        .ok_or_else(|| schema(format!("world `{w}` has no model")))
                        .and_then(from_doc)
                })
                .collect::<Result<_>>()?;
            Model::Kripke(KripkeModel::new(worlds, nominals, relations, inner).map_err(|e| schema(e.to_string()))?)
        }
    })
}

pub fn model_to_json(m: &Model) -> Value {
    serde_json::to_value(to_doc(m)).expect("model documents always serialise")
}

pub fn model_from_json(v: &Value) -> Result<Model> {
    let doc: ModelDoc = serde_json::from_value(v.clone()).map_err(|e| schema(e.to_string()))?;
    from_doc(doc)
}

pub fn model_from_str(text: &str) -> Result<Model> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    model_from_json(&v)
}

pub fn model_to_string(m: &Model) -> String {
    serde_json::to_string_pretty(&model_to_json(m)).expect("model documents always serialise")
}

/// Checks that the model's nesting matches `stack`.
pub fn check_model_shape(stack: &LogicStack, m: &Model) -> Result<()> {
    if m.kind() != stack.outer() {
        return Err(schema(format!("model does not have the shape of {stack}")));
    }
    if stack.outer().is_some() {
        for inner in m.inner_models() {
            check_model_shape(&stack.inner(), inner)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum LayerDoc {
    Temporal,
    Prob,
    Hybrid {
        #[serde(default)]
        nominals: Vec<Symbol>,
        #[serde(default)]
        modalities: Vec<Symbol>,
        #[serde(default)]
        quantified: bool,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SignatureDoc {
    #[serde(default)]
    layers: Vec<LayerDoc>,
    props: Vec<Symbol>,
}

fn sig_to_doc(sig: &Signature) -> SignatureDoc {
    SignatureDoc {
        layers: sig
            .layers()
            .iter()
            .map(|l| match l {
                LayerSig::Temporal => LayerDoc::Temporal,
                LayerSig::Prob => LayerDoc::Prob,
                LayerSig::Hybrid(h) => LayerDoc::Hybrid {
                    nominals: h.nominals.iter().cloned().collect(),
                    modalities: h.modalities.iter().cloned().collect(),
                    quantified: h.quantified,
                },
            })
            .collect(),
        props: sig.props().iter().cloned().collect(),
    }
}

fn sig_from_doc(doc: SignatureDoc) -> Signature {
    let layers = doc
        .layers
        .into_iter()
        .map(|l| match l {
            LayerDoc::Temporal => LayerSig::Temporal,
            LayerDoc::Prob => LayerSig::Prob,
            LayerDoc::Hybrid {
                nominals,
                modalities,
                quantified,
            } => LayerSig::Hybrid(HybridSig {
                nominals: nominals.into_iter().collect(),
                modalities: modalities.into_iter().collect(),
                quantified,
            }),
        })
        .collect();
    Signature::new(layers, doc.props.into_iter().collect())
}

pub fn signature_to_json(sig: &Signature) -> Value {
    serde_json::to_value(sig_to_doc(sig)).expect("signature documents always serialise")
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let doc: SignatureDoc = serde_json::from_value(v.clone()).map_err(|e| schema(e.to_string()))?;
    Ok(sig_from_doc(doc))
}

pub fn signature_from_str(text: &str) -> Result<Signature> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    signature_from_json(&v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum LayerMapDoc {
    Unit,
    Hybrid {
        #[serde(default)]
        nominals: BTreeMap<Symbol, Symbol>,
        #[serde(default)]
        modalities: BTreeMap<Symbol, Symbol>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MorphismDoc {
    source: SignatureDoc,
    target: SignatureDoc,
    #[serde(default)]
    layers: Vec<LayerMapDoc>,
    props: BTreeMap<Symbol, Symbol>,
}

pub fn morphism_to_json(phi: &SignatureMorphism) -> Value {
    let doc = MorphismDoc {
        source: sig_to_doc(phi.source()),
        target: sig_to_doc(phi.target()),
        layers: phi
            .layer_maps()
            .iter()
            .map(|m| match m {
                LayerMap::Unit => LayerMapDoc::Unit,
                LayerMap::Hybrid(h) => LayerMapDoc::Hybrid {
                    nominals: h.nominals.clone(),
                    modalities: h.modalities.clone(),
                },
            })
            .collect(),
        props: phi.prop_map().clone(),
    };
    serde_json::to_value(doc).expect("morphism documents always serialise")
}

/// Reads a morphism; layer maps of temporal and probabilistic layers may be
/// omitted when the source has no hybrid layers.
pub fn morphism_from_json(v: &Value) -> Result<SignatureMorphism> {
    let doc: MorphismDoc = serde_json::from_value(v.clone()).map_err(|e| schema(e.to_string()))?;
    let source = sig_from_doc(doc.source);
    let target = sig_from_doc(doc.target);
    let layers = if doc.layers.is_empty() && source.layers().iter().all(|l| l.as_hybrid().is_none()) {
        vec![LayerMap::Unit; source.layers().len()]
    } else {
        doc.layers
            .into_iter()
            .map(|m| match m {
                LayerMapDoc::Unit => LayerMap::Unit,
                LayerMapDoc::Hybrid { nominals, modalities } => LayerMap::Hybrid(HybridMap { nominals, modalities }),
            })
            .collect()
    };
    SignatureMorphism::new(source, target, layers, doc.props).map_err(|e| schema(e.to_string()))
}

pub fn morphism_from_str(text: &str) -> Result<SignatureMorphism> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    morphism_from_json(&v)
}

/// The smallest signature of `stack` declaring every symbol that occurs in
/// the given sentences and models. Hybrid layers are quantified exactly when
/// a sentence uses `E` at that layer.
pub fn infer_signature(stack: &LogicStack, sentences: &[&Sentence], models: &[&Model]) -> Result<Signature> {
    let mut props = BTreeSet::new();
    let mut layers: Vec<LayerSig> = stack
        .layers()
        .iter()
        .map(|k| match k {
            LayerKind::Temporal => LayerSig::Temporal,
            LayerKind::Prob => LayerSig::Prob,
            LayerKind::Hybrid => LayerSig::Hybrid(HybridSig::default()),
        })
        .collect();
    for s in sentences {
        collect_sentence(s, 0, &mut layers, &mut props)?;
    }
    for m in models {
        check_model_shape(stack, m)?;
        collect_model(m, 0, &mut layers, &mut props);
    }
    Ok(Signature::new(layers, props))
}

fn collect_sentence(s: &Sentence, depth: usize, layers: &mut [LayerSig], props: &mut BTreeSet<Symbol>) -> Result<()> {
    let expected = layers.get(depth).map(LayerSig::kind);
    if s.kind() != expected {
        return Err(Error::Malformed("sentence nesting does not match the logic".into()));
    }
    let mut inner: Vec<&Sentence> = Vec::new();
    match s {
        Sentence::Prop(p) => props.extend(p.atoms()),
        Sentence::Temporal(t) => t.for_each_base(&mut |psi| inner.push(psi)),
        Sentence::Prob(p) => p.for_each_base(&mut |psi| inner.push(psi)),
        Sentence::Hybrid(h) => {
            if let LayerSig::Hybrid(sig) = &mut layers[depth] {
                sig.nominals.extend(h.free_names());
                sig.quantified |= h.contains_exists();
                collect_modalities(h, &mut sig.modalities);
            }
            h.for_each_base(&mut |psi| inner.push(psi));
        }
    }
    for psi in inner {
        collect_sentence(psi, depth + 1, layers, props)?;
    }
    Ok(())
}

fn collect_modalities(h: &crate::hybrid::HybridSentence, out: &mut BTreeSet<Symbol>) {
    use crate::hybrid::HybridSentence as H;
    match h {
        H::Nominal(_) | H::Base(_) => {}
        H::Not(a) | H::At(_, a) | H::Exists(_, a) => collect_modalities(a, out),
        H::Diamond(l, a) => {
            out.insert(l.clone());
            collect_modalities(a, out);
        }
        H::And(a, b) => {
            collect_modalities(a, out);
            collect_modalities(b, out);
        }
    }
}

fn collect_model(m: &Model, depth: usize, layers: &mut [LayerSig], props: &mut BTreeSet<Symbol>) {
    match m {
        Model::Valuation(v) => props.extend(v.true_atoms().iter().cloned()),
        Model::Kripke(k) => {
            if let LayerSig::Hybrid(sig) = &mut layers[depth] {
                sig.nominals.extend(k.nominals().keys().cloned());
                sig.modalities.extend(k.relation_names().cloned());
            }
        }
        _ => {}
    }
    for inner in m.inner_models() {
        collect_model(inner, depth + 1, layers, props);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_nested() {
        let doc = json!({
            "kind": "kripke",
            "worlds": ["a", "b"],
            "nominals": {"i": "a"},
            "relations": {"l": [["a", "b"], ["b", "b"]]},
            "models": {
                "a": {"kind": "space", "outcomes": [
                    {"weight": "0.25", "model": {"kind": "valuation", "true": ["p"]}},
                    {"weight": "3/4", "model": {"kind": "valuation", "true": []}}
                ]},
                "b": {"kind": "space", "outcomes": [
                    {"weight": "1", "model": {"kind": "valuation", "true": []}}
                ]}
            }
        });
        let m = model_from_json(&doc).unwrap();
        assert_eq!(model_from_json(&model_to_json(&m)).unwrap(), m);
        check_model_shape(&"H(P(PL))".parse().unwrap(), &m).unwrap();
        assert!(check_model_shape(&"H(PL)".parse().unwrap(), &m).is_err());
    }

    #[test]
    fn weights_are_exact_strings() {
        let float = json!({"kind": "space", "outcomes": [{"weight": 1, "model": {"kind": "valuation", "true": []}}]});
        assert!(matches!(model_from_json(&float), Err(Error::Schema(_))));
        let short =
            json!({"kind": "space", "outcomes": [{"weight": "0.3", "model": {"kind": "valuation", "true": []}}]});
        assert!(matches!(model_from_json(&short), Err(Error::Schema(_))));
    }

    #[test]
    fn lasso_loop_checked() {
        let bad = json!({"kind": "lasso", "states": [{"kind": "valuation", "true": []}], "loop": 1});
        assert!(matches!(model_from_json(&bad), Err(Error::Schema(_))));
    }

    #[test]
    fn signatures_and_morphisms() {
        let sig = json!({"props": ["p"], "layers": [{"kind": "hybrid", "nominals": ["i"], "modalities": ["l"]}]});
        let s = signature_from_json(&sig).unwrap();
        assert_eq!(signature_from_json(&signature_to_json(&s)).unwrap(), s);
        let phi = SignatureMorphism::identity(&s);
        assert_eq!(morphism_from_json(&morphism_to_json(&phi)).unwrap(), phi);
        let lphi = json!({
            "source": {"props": ["p"], "layers": [{"kind": "temporal"}]},
            "target": {"props": ["q"], "layers": [{"kind": "temporal"}]},
            "props": {"p": "q"}
        });
        assert!(morphism_from_json(&lphi).is_ok());
    }
}
