//! Layered signatures and signature morphisms.
//!
//! A signature for a stack `C1(C2(...(PL)))` is a list of layer signatures,
//! outermost first, plus the propositional symbols of the base. Temporal and
//! probabilistic layers contribute the one-object signature category, so they
//! carry no data; hybrid layers carry nominals and modalities.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{contract, malformed, Result};
use crate::stack::{LayerKind, LogicStack};

pub type Symbol = String;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HybridSig {
    pub nominals: BTreeSet<Symbol>,
    pub modalities: BTreeSet<Symbol>,
    /// Enables the `E x . ρ` nominal quantifier in sentences.
    pub quantified: bool,
}

impl HybridSig {
    pub fn new<N, M>(nominals: N, modalities: M) -> Self
    where
        N: IntoIterator,
        N::Item: Into<Symbol>,
        M: IntoIterator,
        M::Item: Into<Symbol>,
    {
        Self {
            nominals: nominals.into_iter().map(Into::into).collect(),
            modalities: modalities.into_iter().map(Into::into).collect(),
            quantified: false,
        }
    }

    pub fn with_quantifiers(mut self) -> Self {
        self.quantified = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LayerSig {
    Temporal,
    Prob,
    Hybrid(HybridSig),
}

impl LayerSig {
    pub fn kind(&self) -> LayerKind {
        match self {
            LayerSig::Temporal => LayerKind::Temporal,
            LayerSig::Prob => LayerKind::Prob,
            LayerSig::Hybrid(_) => LayerKind::Hybrid,
        }
    }

    pub fn as_hybrid(&self) -> Option<&HybridSig> {
        match self {
            LayerSig::Hybrid(h) => Some(h),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    layers: Vec<LayerSig>,
    props: BTreeSet<Symbol>,
}

impl Signature {
    /// A bare propositional signature.
    pub fn propositional<I>(props: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Symbol>,
    {
        Self {
            layers: Vec::new(),
            props: props.into_iter().map(Into::into).collect(),
        }
    }

    pub fn new(layers: Vec<LayerSig>, props: BTreeSet<Symbol>) -> Self {
        Self { layers, props }
    }

    /// Puts `layer` on top of this signature.
    pub fn wrap(&self, layer: LayerSig) -> Signature {
        let mut layers = Vec::with_capacity(self.layers.len() + 1);
        layers.push(layer);
        layers.extend(self.layers.iter().cloned());
        Signature {
            layers,
            props: self.props.clone(),
        }
    }

    pub fn layers(&self) -> &[LayerSig] {
        &self.layers
    }

    pub fn props(&self) -> &BTreeSet<Symbol> {
        &self.props
    }

    pub fn outer(&self) -> Option<&LayerSig> {
        self.layers.first()
    }

    /// The signature of the inner logic (outermost layer removed).
    pub fn inner(&self) -> Signature {
        Signature {
            layers: self.layers.iter().skip(1).cloned().collect(),
            props: self.props.clone(),
        }
    }

    pub fn split(&self) -> Option<(&LayerSig, Signature)> {
        self.layers.first().map(|l| (l, self.inner()))
    }

    pub fn stack(&self) -> LogicStack {
        LogicStack::new(self.layers.iter().map(LayerSig::kind).collect())
    }

    pub fn expect_stack(&self, stack: &LogicStack) -> Result<()> {
        if self.stack() != *stack {
            return Err(malformed(format!(
                "signature is for {} but {} was expected",
                self.stack(),
                stack
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HybridMap {
    pub nominals: BTreeMap<Symbol, Symbol>,
    pub modalities: BTreeMap<Symbol, Symbol>,
}

impl HybridMap {
    pub fn identity(sig: &HybridSig) -> Self {
        Self {
            nominals: sig.nominals.iter().map(|s| (s.clone(), s.clone())).collect(),
            modalities: sig.modalities.iter().map(|s| (s.clone(), s.clone())).collect(),
        }
    }
}

/// Per-layer part of a signature morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LayerMap {
    /// The unique arrow of the one-object category.
    Unit,
    Hybrid(HybridMap),
}

impl LayerMap {
    pub fn identity(sig: &LayerSig) -> Self {
        match sig {
            LayerSig::Hybrid(h) => LayerMap::Hybrid(HybridMap::identity(h)),
            _ => LayerMap::Unit,
        }
    }
}

/// An arrow between two signatures of the same stack.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignatureMorphism {
    source: Signature,
    target: Signature,
    layers: Vec<LayerMap>,
    props: BTreeMap<Symbol, Symbol>,
}

fn check_total(
    what: &str,
    map: &BTreeMap<Symbol, Symbol>,
    domain: &BTreeSet<Symbol>,
    codomain: &BTreeSet<Symbol>,
) -> Result<()> {
    if map.len() != domain.len() || !domain.iter().all(|s| map.contains_key(s)) {
        return Err(contract(format!(
            "{what} map is not defined on exactly the source symbols"
        )));
    }
    if let Some((from, to)) = map.iter().find(|(_, to)| !codomain.contains(*to)) {
        return Err(contract(format!("{what} map sends {from} to undeclared {to}")));
    }
    Ok(())
}

impl SignatureMorphism {
    pub fn new(
        source: Signature,
        target: Signature,
        layers: Vec<LayerMap>,
        props: BTreeMap<Symbol, Symbol>,
    ) -> Result<Self> {
        if source.layers.len() != target.layers.len() || layers.len() != source.layers.len() {
            return Err(contract("signature morphism layer counts differ"));
        }
        for ((src, tgt), map) in source.layers.iter().zip(&target.layers).zip(&layers) {
            match (src, tgt, map) {
                (LayerSig::Temporal, LayerSig::Temporal, LayerMap::Unit)
                | (LayerSig::Prob, LayerSig::Prob, LayerMap::Unit) => {}
                (LayerSig::Hybrid(s), LayerSig::Hybrid(t), LayerMap::Hybrid(m)) => {
                    check_total("nominal", &m.nominals, &s.nominals, &t.nominals)?;
                    check_total("modality", &m.modalities, &s.modalities, &t.modalities)?;
                    if s.quantified && !t.quantified {
                        return Err(contract("quantified hybrid layer mapped to unquantified one"));
                    }
                }
                _ => return Err(contract("signature morphism layer kinds do not line up")),
            }
        }
        check_total("proposition", &props, &source.props, &target.props)?;
        Ok(Self {
            source,
            target,
            layers,
            props,
        })
    }

    pub fn identity(sig: &Signature) -> Self {
        Self {
            source: sig.clone(),
            target: sig.clone(),
            layers: sig.layers.iter().map(LayerMap::identity).collect(),
            props: sig.props.iter().map(|p| (p.clone(), p.clone())).collect(),
        }
    }

    /// Propositional morphism from a symbol map; source and target are given
    /// explicitly.
    pub fn propositional(source: Signature, target: Signature, props: BTreeMap<Symbol, Symbol>) -> Result<Self> {
        Self::new(source, target, Vec::new(), props)
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn layer_maps(&self) -> &[LayerMap] {
        &self.layers
    }

    pub fn prop_map(&self) -> &BTreeMap<Symbol, Symbol> {
        &self.props
    }

    pub fn map_prop(&self, p: &str) -> Result<&Symbol> {
        self.props
            .get(p)
            .ok_or_else(|| malformed(format!("proposition {p} is not in the morphism's domain")))
    }

    /// `self` followed by `next`, i.e. `next · self`.
    pub fn then(&self, next: &SignatureMorphism) -> Result<SignatureMorphism> {
        if self.target != next.source {
            return Err(contract("composed morphisms do not meet at a common signature"));
        }
        let compose = |a: &BTreeMap<Symbol, Symbol>, b: &BTreeMap<Symbol, Symbol>| {
            a.iter()
                .map(|(k, v)| (k.clone(), b[v].clone()))
                .collect::<BTreeMap<_, _>>()
        };
        let layers = self
            .layers
            .iter()
            .zip(&next.layers)
            .map(|(a, b)| match (a, b) {
                (LayerMap::Hybrid(a), LayerMap::Hybrid(b)) => LayerMap::Hybrid(HybridMap {
                    nominals: compose(&a.nominals, &b.nominals),
                    modalities: compose(&a.modalities, &b.modalities),
                }),
                _ => LayerMap::Unit,
            })
            .collect();
        Ok(SignatureMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            layers,
            props: compose(&self.props, &next.props),
        })
    }

    /// The morphism between the inner signatures.
    pub fn inner(&self) -> SignatureMorphism {
        SignatureMorphism {
            source: self.source.inner(),
            target: self.target.inner(),
            layers: self.layers.iter().skip(1).cloned().collect(),
            props: self.props.clone(),
        }
    }

    /// Splits off the outermost layer map.
    pub fn split(&self) -> Option<(&LayerMap, SignatureMorphism)> {
        self.layers.first().map(|m| (m, self.inner()))
    }

    /// Extends an inner morphism by an outer layer: `map` from `source_layer`
    /// to `target_layer`, placed on top of `self`.
    pub fn wrap(&self, source_layer: LayerSig, target_layer: LayerSig, map: LayerMap) -> Result<SignatureMorphism> {
        let mut layers = Vec::with_capacity(self.layers.len() + 1);
        layers.push(map);
        layers.extend(self.layers.iter().cloned());
        SignatureMorphism::new(
            self.source.wrap(source_layer),
            self.target.wrap(target_layer),
            layers,
            self.props.clone(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == SignatureMorphism::identity(&self.source)
    }
}
