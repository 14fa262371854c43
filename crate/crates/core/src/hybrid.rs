//! Hybridisation: nominals, `@`, modalities `⟨λ⟩` and an optional nominal
//! quantifier `∃x` over finite Kripke models whose worlds carry inner models.
//!
//! Local satisfaction `M ⊨^w ρ` takes an environment for bound variables.
//! A bound variable shadows a nominal of the same name. Global satisfaction
//! holds when every world satisfies the sentence.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{contract, malformed, Result};
use crate::institution;
use crate::model::Model;
use crate::sentence::{Connectives, Sentence};
use crate::signature::{HybridMap, LayerMap, LayerSig, SignatureMorphism, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HybridSentence {
    /// A nominal, or a variable bound by an enclosing `Exists`.
    Nominal(Symbol),
    Base(Box<Sentence>),
    Not(Box<HybridSentence>),
    And(Box<HybridSentence>, Box<HybridSentence>),
    At(Symbol, Box<HybridSentence>),
    Diamond(Symbol, Box<HybridSentence>),
    Exists(Symbol, Box<HybridSentence>),
}

impl HybridSentence {
    pub fn nominal(i: impl Into<Symbol>) -> Self {
        HybridSentence::Nominal(i.into())
    }

    pub fn base(inner: impl Into<Sentence>) -> Self {
        HybridSentence::Base(Box::new(inner.into()))
    }

    pub fn at(i: impl Into<Symbol>, a: HybridSentence) -> Self {
        HybridSentence::At(i.into(), Box::new(a))
    }

    pub fn diamond(l: impl Into<Symbol>, a: HybridSentence) -> Self {
        HybridSentence::Diamond(l.into(), Box::new(a))
    }

    /// `[λ]ρ`, as `¬⟨λ⟩¬ρ`.
    pub fn boxed(l: impl Into<Symbol>, a: HybridSentence) -> Self {
        Self::not(Self::diamond(l, Self::not(a)))
    }

    pub fn exists(x: impl Into<Symbol>, a: HybridSentence) -> Self {
        HybridSentence::Exists(x.into(), Box::new(a))
    }

    /// Recognises `¬⟨λ⟩¬ρ` and returns `(λ, ρ)`.
    pub fn as_box(&self) -> Option<(&Symbol, &HybridSentence)> {
        match self {
            HybridSentence::Not(d) => match d.as_ref() {
                HybridSentence::Diamond(l, n) => match n.as_ref() {
                    HybridSentence::Not(a) => Some((l, a)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    pub fn contains_exists(&self) -> bool {
        match self {
            HybridSentence::Nominal(_) | HybridSentence::Base(_) => false,
            HybridSentence::Not(a) | HybridSentence::At(_, a) | HybridSentence::Diamond(_, a) => a.contains_exists(),
            HybridSentence::And(a, b) => a.contains_exists() || b.contains_exists(),
            HybridSentence::Exists(..) => true,
        }
    }

    pub fn map_base(&self, f: &mut dyn FnMut(&Sentence) -> Result<Sentence>) -> Result<Self> {
        Ok(match self {
            HybridSentence::Nominal(i) => HybridSentence::Nominal(i.clone()),
            HybridSentence::Base(psi) => HybridSentence::Base(Box::new(f(psi)?)),
            HybridSentence::Not(a) => Self::not(a.map_base(f)?),
            HybridSentence::And(a, b) => Self::and(a.map_base(f)?, b.map_base(f)?),
            HybridSentence::At(i, a) => Self::at(i.clone(), a.map_base(f)?),
            HybridSentence::Diamond(l, a) => Self::diamond(l.clone(), a.map_base(f)?),
            HybridSentence::Exists(x, a) => Self::exists(x.clone(), a.map_base(f)?),
        })
    }

    pub fn for_each_base<'a>(&'a self, f: &mut dyn FnMut(&'a Sentence)) {
        match self {
            HybridSentence::Nominal(_) => {}
            HybridSentence::Base(psi) => f(psi),
            HybridSentence::Not(a)
            | HybridSentence::At(_, a)
            | HybridSentence::Diamond(_, a)
            | HybridSentence::Exists(_, a) => a.for_each_base(f),
            HybridSentence::And(a, b) => {
                a.for_each_base(f);
                b.for_each_base(f);
            }
        }
    }

    /// Names used as nominals or variables that are not bound inside `self`.
    pub fn free_names(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }
}

fn collect_free(rho: &HybridSentence, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
    let mut note = |i: &Symbol, bound: &Vec<Symbol>| {
        if !bound.contains(i) {
            out.insert(i.clone());
        }
    };
    match rho {
        HybridSentence::Nominal(i) => note(i, bound),
        HybridSentence::Base(_) => {}
        HybridSentence::Not(a) | HybridSentence::Diamond(_, a) => collect_free(a, bound, out),
        HybridSentence::At(i, a) => {
            note(i, bound);
            collect_free(a, bound, out);
        }
        HybridSentence::And(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        HybridSentence::Exists(x, a) => {
            bound.push(x.clone());
            collect_free(a, bound, out);
            bound.pop();
        }
    }
}

impl Connectives for HybridSentence {
    fn not(a: Self) -> Self {
        HybridSentence::Not(Box::new(a))
    }

    fn and(a: Self, b: Self) -> Self {
        HybridSentence::And(Box::new(a), Box::new(b))
    }

    fn as_not(&self) -> Option<&Self> {
        match self {
            HybridSentence::Not(a) => Some(a),
            _ => None,
        }
    }

    fn as_and(&self) -> Option<(&Self, &Self)> {
        match self {
            HybridSentence::And(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

/// A finite Kripke model `(S, (R_i), (R_λ), m)`.
///
/// Worlds are indexed `0..n`; their names only matter for the file format.
/// Each relation is stored as sorted, duplicate-free successor lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    worlds: Vec<Symbol>,
    nominals: BTreeMap<Symbol, usize>,
    relations: BTreeMap<Symbol, Vec<Vec<usize>>>,
    models: Vec<Model>,
}

impl KripkeModel {
    pub fn new(
        worlds: Vec<Symbol>,
        nominals: BTreeMap<Symbol, usize>,
        relations: BTreeMap<Symbol, Vec<(usize, usize)>>,
        models: Vec<Model>,
    ) -> Result<Self> {
        let n = worlds.len();
        if n == 0 {
            return Err(contract("a Kripke model needs at least one world"));
        }
        if worlds.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(contract("world names are not distinct"));
        }
        if models.len() != n {
            return Err(contract(format!("{} worlds but {} inner models", n, models.len())));
        }
        if let Some((i, w)) = nominals.iter().find(|(_, w)| **w >= n) {
            return Err(contract(format!("nominal {i} denotes missing world {w}")));
        }
        let mut adjacency = BTreeMap::new();
        for (l, pairs) in relations {
            let mut succ = vec![Vec::new(); n];
            for (a, b) in pairs {
                if a >= n || b >= n {
                    return Err(contract(format!("relation {l} mentions a missing world")));
                }
                succ[a].push(b);
            }
            for s in &mut succ {
                s.sort_unstable();
                s.dedup();
            }
            adjacency.insert(l, succ);
        }
        Ok(Self {
            worlds,
            nominals,
            relations: adjacency,
            models,
        })
    }

    /// A model whose worlds are named `w0, w1, …`.
    pub fn indexed(
        models: Vec<Model>,
        nominals: BTreeMap<Symbol, usize>,
        relations: BTreeMap<Symbol, Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let worlds = (0..models.len()).map(|i| format!("w{i}")).collect();
        Self::new(worlds, nominals, relations, models)
    }

    pub fn worlds(&self) -> &[Symbol] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn nominals(&self) -> &BTreeMap<Symbol, usize> {
        &self.nominals
    }

    pub fn nominal(&self, i: &str) -> Option<usize> {
        self.nominals.get(i).copied()
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &Symbol> {
        self.relations.keys()
    }

    pub fn successors(&self, l: &str, w: usize) -> Option<&[usize]> {
        self.relations.get(l).map(|succ| succ[w].as_slice())
    }

    /// The pairs of `R_λ` in lexicographic order.
    pub fn pairs(&self, l: &str) -> Option<Vec<(usize, usize)>> {
        self.relations.get(l).map(|succ| {
            succ.iter()
                .enumerate()
                .flat_map(|(a, bs)| bs.iter().map(move |b| (a, *b)))
                .collect()
        })
    }

    pub fn models(&self) -> &[Model] {
        &self.models
    }

    pub fn map_models(&self, f: &mut dyn FnMut(&Model) -> Result<Model>) -> Result<KripkeModel> {
        Ok(KripkeModel {
            worlds: self.worlds.clone(),
            nominals: self.nominals.clone(),
            relations: self.relations.clone(),
            models: self.models.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

type MemoKey = (usize, usize, Vec<Option<usize>>);

struct Evaluator<'a> {
    model: &'a KripkeModel,
    env: Vec<(&'a str, usize)>,
    /// Free names per node, keyed by node address; present only when memoising.
    free: HashMap<usize, Vec<&'a str>>,
    memo: HashMap<MemoKey, bool>,
    memoise: bool,
}

fn address(rho: &HybridSentence) -> usize {
    rho as *const HybridSentence as usize
}

impl<'a> Evaluator<'a> {
    fn new(model: &'a KripkeModel, rho: &'a HybridSentence, env: &'a BTreeMap<Symbol, usize>) -> Self {
        let memoise = rho.contains_exists();
        let mut ev = Self {
            model,
            env: env.iter().map(|(k, v)| (k.as_str(), *v)).collect(),
            free: HashMap::new(),
            memo: HashMap::new(),
            memoise,
        };
        if memoise {
            ev.index_free(rho);
        }
        ev
    }

    fn index_free(&mut self, rho: &'a HybridSentence) -> Vec<&'a str> {
        let mut names: Vec<&'a str> = match rho {
            HybridSentence::Nominal(i) => vec![i.as_str()],
            HybridSentence::Base(_) => Vec::new(),
            HybridSentence::Not(a) | HybridSentence::Diamond(_, a) => self.index_free(a),
            HybridSentence::At(i, a) => {
                let mut v = self.index_free(a);
                v.push(i.as_str());
                v
            }
            HybridSentence::And(a, b) => {
                let mut v = self.index_free(a);
                v.extend(self.index_free(b));
                v
            }
            HybridSentence::Exists(x, a) => {
                let mut v = self.index_free(a);
                v.retain(|n| *n != x.as_str());
                v
            }
        };
        names.sort_unstable();
        names.dedup();
        self.free.insert(address(rho), names.clone());
        names
    }

    fn resolve(&self, i: &str) -> Result<usize> {
        if let Some((_, w)) = self.env.iter().rev().find(|(x, _)| *x == i) {
            return Ok(*w);
        }
        self.model
            .nominal(i)
            .ok_or_else(|| malformed(format!("unbound nominal or variable {i}")))
    }

    fn lookup(&self, i: &str) -> Option<usize> {
        self.env.iter().rev().find(|(x, _)| *x == i).map(|(_, w)| *w)
    }

    fn successors(&self, l: &str, w: usize) -> Result<&'a [usize]> {
        self.model
            .successors(l, w)
            .ok_or_else(|| malformed(format!("undeclared modality {l}")))
    }

    fn eval(&mut self, rho: &'a HybridSentence, w: usize) -> Result<bool> {
        if !self.memoise {
            return self.eval_node(rho, w);
        }
        let key = {
            let free = &self.free[&address(rho)];
            (address(rho), w, free.iter().map(|n| self.lookup(n)).collect())
        };
        if let Some(v) = self.memo.get(&key) {
            return Ok(*v);
        }
        let v = self.eval_node(rho, w)?;
        self.memo.insert(key, v);
        Ok(v)
    }

    fn eval_node(&mut self, rho: &'a HybridSentence, w: usize) -> Result<bool> {
        Ok(match rho {
            HybridSentence::Nominal(i) => self.resolve(i)? == w,
            HybridSentence::Base(psi) => institution::holds(&self.model.models[w], psi)?,
            HybridSentence::Not(a) => !self.eval(a, w)?,
            HybridSentence::And(a, b) => self.eval(a, w)? && self.eval(b, w)?,
            HybridSentence::At(i, a) => {
                let target = self.resolve(i)?;
                self.eval(a, target)?
            }
            HybridSentence::Diamond(l, a) => {
                let succ = self.successors(l, w)?;
                match a.as_ref() {
                    // ⟨λ⟩i and ⟨λ⟩(i ∧ ρ) only need the one world i names.
                    HybridSentence::Nominal(i) => succ.binary_search(&self.resolve(i)?).is_ok(),
                    HybridSentence::And(n, b) if let HybridSentence::Nominal(i) = n.as_ref() => {
                        let t = self.resolve(i)?;
                        succ.binary_search(&t).is_ok() && self.eval(b, t)?
                    }
                    _ => {
                        let mut any = false;
                        for &v in succ {
                            if self.eval(a, v)? {
                                any = true;
                                break;
                            }
                        }
                        any
                    }
                }
            }
            HybridSentence::Exists(x, a) => {
                let mut any = false;
                for s in 0..self.model.world_count() {
                    self.env.push((x.as_str(), s));
                    let v = self.eval(a, w);
                    self.env.pop();
                    if v? {
                        any = true;
                        break;
                    }
                }
                any
            }
        })
    }
}

/// `M ⊨^w ρ` under an assignment `env` of bound variables to worlds.
pub fn hy_eval_at(model: &KripkeModel, w: usize, rho: &HybridSentence, env: &BTreeMap<Symbol, usize>) -> Result<bool> {
    if w >= model.world_count() {
        return Err(contract(format!(
            "world {w} is outside a model with {} worlds",
            model.world_count()
        )));
    }
    Evaluator::new(model, rho, env).eval(rho, w)
}

/// `M ⊨ ρ` iff `M ⊨^w ρ` at every world.
pub fn hy_satisfies(model: &KripkeModel, rho: &HybridSentence) -> Result<bool> {
    let env = BTreeMap::new();
    let mut ev = Evaluator::new(model, rho, &env);
    for w in 0..model.world_count() {
        if !ev.eval(rho, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn expect_hybrid_layer(phi: &SignatureMorphism) -> Result<(&HybridMap, SignatureMorphism)> {
    match phi.split() {
        Some((LayerMap::Hybrid(map), inner)) => Ok((map, inner)),
        _ => Err(malformed("morphism is not one of a hybrid stack")),
    }
}

/// `R_i = R′_{φ1(i)}`, `R_λ = R′_{φ2(λ)}`; worlds kept, inner models reduced.
pub fn hy_reduct(phi: &SignatureMorphism, model: &KripkeModel) -> Result<KripkeModel> {
    let (map, inner) = expect_hybrid_layer(phi)?;
    let mut nominals = BTreeMap::new();
    for (i, j) in &map.nominals {
        let w = model
            .nominal(j)
            .ok_or_else(|| contract(format!("model does not interpret nominal {j}")))?;
        nominals.insert(i.clone(), w);
    }
    let mut relations = BTreeMap::new();
    for (l, l2) in &map.modalities {
        let succ = model
            .relations
            .get(l2)
            .ok_or_else(|| contract(format!("model does not interpret modality {l2}")))?;
        relations.insert(l.clone(), succ.clone());
    }
    Ok(KripkeModel {
        worlds: model.worlds.clone(),
        nominals,
        relations,
        models: model
            .models
            .iter()
            .map(|m| institution::mod_reduct_unchecked(&inner, m))
            .collect::<Result<_>>()?,
    })
}

/// Renames nominals by `φ1`, modalities by `φ2` and base sentences by the
/// inner translation. A bound variable is renamed only when it would capture
/// a translated free name.
pub fn hybrid_sen_translate(phi: &SignatureMorphism, rho: &HybridSentence) -> Result<HybridSentence> {
    let (map, inner) = expect_hybrid_layer(phi)?;
    if !matches!(phi.target().outer(), Some(LayerSig::Hybrid(_))) {
        return Err(malformed("morphism target is not a hybrid signature"));
    }
    let mut tr = Translator {
        map,
        inner: &inner,
        scope: Vec::new(),
    };
    tr.translate(rho)
}

struct Translator<'a> {
    map: &'a HybridMap,
    inner: &'a SignatureMorphism,
    /// Bound variables in scope, innermost last, with their new names.
    scope: Vec<(Symbol, Symbol)>,
}

impl Translator<'_> {
    fn nominal(&self, i: &str) -> Result<Symbol> {
        if let Some((_, new)) = self.scope.iter().rev().find(|(old, _)| old == i) {
            return Ok(new.clone());
        }
        self.map
            .nominals
            .get(i)
            .cloned()
            .ok_or_else(|| malformed(format!("nominal {i} is not in the morphism's domain")))
    }

    /// Keeps `x` unless it would capture the image of a free name of `body`.
    fn fresh(&self, x: &str, body: &HybridSentence) -> Result<Symbol> {
        let mut avoid = BTreeSet::new();
        for n in body.free_names() {
            if n != x {
                avoid.insert(self.nominal(&n)?);
            }
        }
        if !avoid.contains(x) {
            return Ok(x.to_string());
        }
        Ok((1..)
            .map(|n| format!("{x}_{n}"))
            .find(|s| !avoid.contains(s))
            .expect("infinitely many candidates"))
    }

    fn translate(&mut self, rho: &HybridSentence) -> Result<HybridSentence> {
        Ok(match rho {
            HybridSentence::Nominal(i) => HybridSentence::Nominal(self.nominal(i)?),
            HybridSentence::Base(psi) => {
                HybridSentence::Base(Box::new(institution::sen_translate_unchecked(self.inner, psi)?))
            }
            HybridSentence::Not(a) => HybridSentence::not(self.translate(a)?),
            HybridSentence::And(a, b) => HybridSentence::and(self.translate(a)?, self.translate(b)?),
            HybridSentence::At(i, a) => HybridSentence::at(self.nominal(i)?, self.translate(a)?),
            HybridSentence::Diamond(l, a) => {
                let l2 = self
                    .map
                    .modalities
                    .get(l)
                    .ok_or_else(|| malformed(format!("modality {l} is not in the morphism's domain")))?;
                HybridSentence::diamond(l2.clone(), self.translate(a)?)
            }
            HybridSentence::Exists(x, a) => {
                let name = self.fresh(x, a)?;
                self.scope.push((x.clone(), name.clone()));
                let body = self.translate(a);
                self.scope.pop();
                HybridSentence::exists(name, body?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselogic::{Prop, Valuation};
    use crate::signature::{HybridSig, Signature};

    fn val(atoms: &[&str]) -> Model {
        Model::Valuation(Valuation::new(atoms.iter().copied()))
    }

    fn p() -> HybridSentence {
        HybridSentence::base(Prop::atom("p"))
    }

    /// Worlds w0, w1; R_i = w0; R_l = {(w0, w1)}; p holds at w1 only.
    fn two_worlds() -> KripkeModel {
        KripkeModel::indexed(
            vec![val(&[]), val(&["p"])],
            [("i".to_string(), 0)].into_iter().collect(),
            [("l".to_string(), vec![(0, 1)])].into_iter().collect(),
        )
        .unwrap()
    }

    fn eval(m: &KripkeModel, w: usize, rho: &HybridSentence) -> bool {
        hy_eval_at(m, w, rho, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn table() {
        let m = two_worlds();
        let at_diamond = HybridSentence::at("i", HybridSentence::diamond("l", p()));
        assert!(eval(&m, 1, &at_diamond));
        assert!(eval(&m, 0, &HybridSentence::nominal("i")));
        assert!(!eval(&m, 1, &HybridSentence::nominal("i")));
        let x = HybridSentence::exists("x", HybridSentence::nominal("x"));
        assert!(eval(&m, 0, &x) && eval(&m, 1, &x));
        assert!(!eval(&m, 1, &HybridSentence::diamond("l", p())));
    }

    #[test]
    fn global() {
        let m = two_worlds();
        assert!(!hy_satisfies(&m, &HybridSentence::nominal("i")).unwrap());
        let at_self = HybridSentence::at("i", HybridSentence::nominal("i"));
        assert!(hy_satisfies(&m, &at_self).unwrap());
        let single = KripkeModel::indexed(
            vec![val(&[])],
            [("i".to_string(), 0)].into_iter().collect(),
            BTreeMap::new(),
        )
        .unwrap();
        assert!(hy_satisfies(&single, &HybridSentence::nominal("i")).unwrap());
    }

    #[test]
    fn unbound_names_are_errors() {
        let m = two_worlds();
        assert!(hy_eval_at(&m, 0, &HybridSentence::nominal("j"), &BTreeMap::new()).is_err());
        assert!(hy_eval_at(&m, 0, &HybridSentence::diamond("k", p()), &BTreeMap::new()).is_err());
        assert!(hy_eval_at(&m, 2, &p(), &BTreeMap::new()).is_err());
    }

    #[test]
    fn variables_shadow_nominals() {
        let m = two_worlds();
        // ∃i. ⟨l⟩i holds at w0 with i bound to w1, although R_i = w0.
        let rho = HybridSentence::exists("i", HybridSentence::diamond("l", HybridSentence::nominal("i")));
        assert!(eval(&m, 0, &rho));
        let env: BTreeMap<_, _> = [("i".to_string(), 1)].into_iter().collect();
        assert!(hy_eval_at(&m, 1, &HybridSentence::nominal("i"), &env).unwrap());
    }

    #[test]
    fn reduct_reindexes_nominals() {
        let src_layer = HybridSig::new(["i"], ["l"]);
        let tgt_layer = HybridSig::new(["i", "j"], ["l"]);
        let base = SignatureMorphism::identity(&Signature::propositional(["p"]));
        let phi = base
            .wrap(
                LayerSig::Hybrid(src_layer),
                LayerSig::Hybrid(tgt_layer),
                LayerMap::Hybrid(HybridMap {
                    nominals: [("i".to_string(), "j".to_string())].into_iter().collect(),
                    modalities: [("l".to_string(), "l".to_string())].into_iter().collect(),
                }),
            )
            .unwrap();
        let m = KripkeModel::indexed(
            vec![val(&[]), val(&["p"])],
            [("i".to_string(), 0), ("j".to_string(), 1)].into_iter().collect(),
            [("l".to_string(), vec![(0, 1)])].into_iter().collect(),
        )
        .unwrap();
        let r = hy_reduct(&phi, &m).unwrap();
        assert_eq!(r.nominal("i"), Some(1));
        assert_eq!(r.nominal("j"), None);
        let t = hybrid_sen_translate(&phi, &HybridSentence::at("i", p())).unwrap();
        assert_eq!(t, HybridSentence::at("j", p()));
    }

    #[test]
    fn translation_avoids_capture() {
        let src = HybridSig::new(["i"], Vec::<String>::new()).with_quantifiers();
        let tgt = HybridSig::new(["x"], Vec::<String>::new()).with_quantifiers();
        let base = SignatureMorphism::identity(&Signature::propositional(["p"]));
        let phi = base
            .wrap(
                LayerSig::Hybrid(src),
                LayerSig::Hybrid(tgt),
                LayerMap::Hybrid(HybridMap {
                    nominals: [("i".to_string(), "x".to_string())].into_iter().collect(),
                    modalities: BTreeMap::new(),
                }),
            )
            .unwrap();
        // ∃x. (x ∧ ¬i): the free nominal i becomes x and must stay free.
        let rho = HybridSentence::exists(
            "x",
            HybridSentence::and(
                HybridSentence::nominal("x"),
                HybridSentence::not(HybridSentence::nominal("i")),
            ),
        );
        let t = hybrid_sen_translate(&phi, &rho).unwrap();
        let expected = HybridSentence::exists(
            "x_1",
            HybridSentence::and(
                HybridSentence::nominal("x_1"),
                HybridSentence::not(HybridSentence::nominal("x")),
            ),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn identity_translation_keeps_shadowing_binders() {
        let h = HybridSig::new(["x"], ["l"]).with_quantifiers();
        let sig = Signature::propositional(["p"]).wrap(LayerSig::Hybrid(h));
        // ∃x. ⟨l⟩(∃x. x) ∧ x, with the nominal x shadowed throughout.
        let rho = HybridSentence::exists(
            "x",
            HybridSentence::and(
                HybridSentence::diamond("l", HybridSentence::exists("x", HybridSentence::nominal("x"))),
                HybridSentence::nominal("x"),
            ),
        );
        let t = hybrid_sen_translate(&SignatureMorphism::identity(&sig), &rho).unwrap();
        assert_eq!(t, rho);
    }
}
