//! Propositional base logic and the witness comorphisms over it.
//!
//! Two comorphisms PL → PL serve as concrete instances for the preservation
//! results: a definitional extension by a fresh symbol (conservative, with an
//! explicit section of β) and a bijective renaming (an equivalence, with
//! explicit inverses).

use std::collections::{BTreeMap, BTreeSet};

use crate::comorphism::Comorphism;
use crate::error::{contract, malformed, Error, Result};
use crate::model::Model;
use crate::sentence::{Connectives, Sentence};
use crate::signature::{Signature, SignatureMorphism, Symbol};
use crate::stack::LogicStack;

/// Upper bound on `|P|` for exhaustive model enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// Propositional sentences: atoms, negation and conjunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Prop {
    Atom(Symbol),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn atom(p: impl Into<Symbol>) -> Self {
        Prop::Atom(p.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Prop) -> Self {
        Prop::Not(Box::new(p))
    }

    pub fn and(a: Prop, b: Prop) -> Self {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Self {
        <Prop as Connectives>::or(a, b)
    }

    pub fn implies(a: Prop, b: Prop) -> Self {
        <Prop as Connectives>::implies(a, b)
    }

    pub fn atoms(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Prop::Atom(p) => {
                out.insert(p.clone());
            }
            Prop::Not(a) => a.collect_atoms(out),
            Prop::And(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Substitutes every atom by `f(atom)`.
    pub fn rename(&self, f: &dyn Fn(&str) -> Result<Symbol>) -> Result<Prop> {
        Ok(match self {
            Prop::Atom(p) => Prop::Atom(f(p)?),
            Prop::Not(a) => Prop::not(a.rename(f)?),
            Prop::And(a, b) => Prop::and(a.rename(f)?, b.rename(f)?),
        })
    }
}

impl Connectives for Prop {
    fn not(a: Self) -> Self {
        Prop::Not(Box::new(a))
    }

    fn and(a: Self, b: Self) -> Self {
        Prop::And(Box::new(a), Box::new(b))
    }

    fn as_not(&self) -> Option<&Self> {
        match self {
            Prop::Not(a) => Some(a),
            _ => None,
        }
    }

    fn as_and(&self) -> Option<(&Self, &Self)> {
        match self {
            Prop::And(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

/// A propositional model: the set of atoms that are true.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    true_atoms: BTreeSet<Symbol>,
}

impl Valuation {
    pub fn new<I>(atoms: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Symbol>,
    {
        Self {
            true_atoms: atoms.into_iter().map(Into::into).collect(),
        }
    }

    pub fn true_atoms(&self) -> &BTreeSet<Symbol> {
        &self.true_atoms
    }

    pub fn is_true(&self, p: &str) -> bool {
        self.true_atoms.contains(p)
    }
}

/// Classical truth-table evaluation.
pub fn eval_prop(v: &Valuation, psi: &Prop) -> bool {
    match psi {
        Prop::Atom(p) => v.is_true(p),
        Prop::Not(a) => !eval_prop(v, a),
        Prop::And(a, b) => eval_prop(v, a) && eval_prop(v, b),
    }
}

/// Checked evaluation: every atom of `psi` and of `v` must be declared in `sig`.
pub fn eval_prop_checked(sig: &Signature, v: &Valuation, psi: &Prop) -> Result<bool> {
    let props = propositional_props(sig)?;
    if let Some(p) = psi.atoms().iter().find(|p| !props.contains(*p)) {
        return Err(malformed(format!("undeclared atom {p}")));
    }
    if let Some(p) = v.true_atoms().iter().find(|p| !props.contains(*p)) {
        return Err(malformed(format!("valuation mentions undeclared atom {p}")));
    }
    Ok(eval_prop(v, psi))
}

fn propositional_props(sig: &Signature) -> Result<&BTreeSet<Symbol>> {
    if !sig.layers().is_empty() {
        return Err(malformed(format!(
            "expected a propositional signature, got one for {}",
            sig.stack()
        )));
    }
    Ok(sig.props())
}

/// Iterator over all valuations of a propositional signature, in binary
/// counting order over the sorted symbols.
#[derive(Debug, Clone)]
pub struct Valuations {
    symbols: Vec<Symbol>,
    next: u64,
    end: u64,
}

impl Iterator for Valuations {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        if self.next >= self.end {
            return None;
        }
        let bits = self.next;
        self.next += 1;
        Some(Valuation::new(
            self.symbols
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, s)| s.clone()),
        ))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Valuations {}

pub fn enumerate_models(sig: &Signature) -> Result<Valuations> {
    enumerate_models_bounded(sig, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_models_bounded(sig: &Signature, bound: usize) -> Result<Valuations> {
    let props = propositional_props(sig)?;
    if props.len() > bound || props.len() >= 63 {
        return Err(Error::Resource(format!(
            "{} propositional symbols exceed the enumeration bound {bound}",
            props.len()
        )));
    }
    Ok(Valuations {
        symbols: props.iter().cloned().collect(),
        next: 0,
        end: 1u64 << props.len(),
    })
}

/// `a ⊨⫤ b` over `sig`, decided by exhaustive enumeration.
pub fn semantically_equivalent(sig: &Signature, a: &Prop, b: &Prop) -> Result<bool> {
    for v in enumerate_models(sig)? {
        if eval_prop(&v, a) != eval_prop(&v, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn expect_prop(rho: &Sentence) -> Result<&Prop> {
    rho.as_prop()
        .ok_or_else(|| malformed("expected a propositional sentence"))
}

fn expect_valuation(m: &Model) -> Result<&Valuation> {
    match m {
        Model::Valuation(v) => Ok(v),
        _ => Err(malformed("expected a propositional valuation")),
    }
}

fn extend_signature(sig: &Signature, fresh: &str) -> Result<Signature> {
    let props = propositional_props(sig)?;
    if props.contains(fresh) {
        return Err(contract(format!(
            "fresh symbol {fresh} already occurs in the signature"
        )));
    }
    let mut extended = props.clone();
    extended.insert(fresh.to_string());
    Ok(Signature::new(Vec::new(), extended))
}

/// The definitional extension PL → PL adding `fresh`.
///
/// Φ(Σ) = Σ ∪ {fresh}, α is the inclusion, β restricts a valuation to Σ, and
/// the section of β extends a valuation with `fresh` false.
pub fn def_ext_comorphism(sig: &Signature, fresh: &str) -> Result<Comorphism> {
    extend_signature(sig, fresh)?;
    let fresh: Symbol = fresh.to_string();
    let f_sig = fresh.clone();
    let f_mor = fresh.clone();
    let base = LogicStack::base();
    Ok(Comorphism::new(
        format!("def_ext({fresh})"),
        base.clone(),
        base,
        move |sig| extend_signature(sig, &f_sig),
        move |phi| {
            let source = extend_signature(phi.source(), &f_mor)?;
            let target = extend_signature(phi.target(), &f_mor)?;
            let mut props = phi.prop_map().clone();
            props.insert(f_mor.clone(), f_mor.clone());
            SignatureMorphism::propositional(source, target, props)
        },
        |_, rho| Ok(Sentence::Prop(expect_prop(rho)?.clone())),
        |sig, m| {
            let v = expect_valuation(m)?;
            let props = propositional_props(sig)?;
            Ok(Model::Valuation(Valuation::new(
                v.true_atoms().iter().filter(|p| props.contains(*p)).cloned(),
            )))
        },
    )
    .with_beta_preimage(|_, m| Ok(Model::Valuation(expect_valuation(m)?.clone()))))
}

/// A finite permutation of symbols, stored together with its inverse.
#[derive(Debug, Clone)]
struct Permutation {
    forward: BTreeMap<Symbol, Symbol>,
    backward: BTreeMap<Symbol, Symbol>,
}

impl Permutation {
    /// Completes a bijection `P → P'` to a permutation of `P ∪ P'` by sending
    /// `P' \ P` onto `P \ P'` in sorted order.
    fn complete(domain: &BTreeSet<Symbol>, bij: &BTreeMap<Symbol, Symbol>) -> Result<Self> {
        if bij.len() != domain.len() || !domain.iter().all(|p| bij.contains_key(p)) {
            return Err(contract("renaming must be defined on exactly the signature's symbols"));
        }
        let image: BTreeSet<Symbol> = bij.values().cloned().collect();
        if image.len() != bij.len() {
            return Err(contract("renaming is not injective"));
        }
        let mut forward = bij.clone();
        let dangling = image.iter().filter(|s| !domain.contains(*s));
        let free = domain.iter().filter(|s| !image.contains(*s));
        for (from, to) in dangling.zip(free) {
            forward.insert(from.clone(), to.clone());
        }
        let backward = forward.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        Ok(Self { forward, backward })
    }

    fn apply<'a>(&'a self, s: &'a str) -> &'a str {
        self.forward.get(s).map(String::as_str).unwrap_or(s)
    }

    fn unapply<'a>(&'a self, s: &'a str) -> &'a str {
        self.backward.get(s).map(String::as_str).unwrap_or(s)
    }

    fn rename_set(&self, set: &BTreeSet<Symbol>, inverse: bool) -> BTreeSet<Symbol> {
        set.iter()
            .map(|s| if inverse { self.unapply(s) } else { self.apply(s) }.to_string())
            .collect()
    }
}

/// The equivalence PL → PL induced by a bijective renaming `bij : P → P'`.
///
/// The bijection is completed to a permutation of symbols so that Φ is
/// defined on every propositional signature.
pub fn renaming_equivalence(sig: &Signature, bij: &BTreeMap<Symbol, Symbol>) -> Result<Comorphism> {
    let perm = Permutation::complete(propositional_props(sig)?, bij)?;
    let name = format!(
        "rename({})",
        bij.iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect::<Vec<_>>()
            .join(",")
    );
    let base = LogicStack::base();
    let rename_sig = |perm: &Permutation, sig: &Signature, inverse: bool| -> Result<Signature> {
        Ok(Signature::new(
            Vec::new(),
            perm.rename_set(propositional_props(sig)?, inverse),
        ))
    };
    let rename_sen = |perm: &Permutation, rho: &Sentence, inverse: bool| -> Result<Sentence> {
        let renamed =
            expect_prop(rho)?.rename(&|p| Ok(if inverse { perm.unapply(p) } else { perm.apply(p) }.to_string()))?;
        Ok(Sentence::Prop(renamed))
    };
    let rename_mod = |perm: &Permutation, m: &Model, inverse: bool| -> Result<Model> {
        Ok(Model::Valuation(Valuation {
            true_atoms: perm.rename_set(expect_valuation(m)?.true_atoms(), inverse),
        }))
    };

    let (p1, p2, p3, p4, p5, p6, p7) = (
        perm.clone(),
        perm.clone(),
        perm.clone(),
        perm.clone(),
        perm.clone(),
        perm.clone(),
        perm,
    );
    Ok(Comorphism::new(
        name,
        base.clone(),
        base,
        move |sig| rename_sig(&p1, sig, false),
        move |phi| {
            let props = phi
                .prop_map()
                .iter()
                .map(|(a, b)| (p2.apply(a).to_string(), p2.apply(b).to_string()))
                .collect();
            SignatureMorphism::propositional(
                rename_sig(&p2, phi.source(), false)?,
                rename_sig(&p2, phi.target(), false)?,
                props,
            )
        },
        move |_, rho| rename_sen(&p3, rho, false),
        move |_, m| rename_mod(&p4, m, true),
    )
    .with_beta_preimage(move |_, m| rename_mod(&p5, m, false))
    .with_inverses(
        move |_, rho| rename_sen(&p6, rho, true),
        move |_, m| rename_mod(&p7, m, false),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::institution::satisfies;

    fn p(s: &str) -> Prop {
        Prop::atom(s)
    }

    fn pq() -> Signature {
        Signature::propositional(["p", "q"])
    }

    #[test]
    fn truth_tables() {
        assert!(eval_prop(&Valuation::new(["p"]), &p("p")));
        assert!(eval_prop(&Valuation::default(), &Prop::not(p("p"))));
        assert!(!eval_prop(
            &Valuation::new(["p", "q"]),
            &Prop::and(p("p"), Prop::not(p("q")))
        ));
        assert!(eval_prop(&Valuation::new(["q"]), &Prop::or(p("p"), p("q"))));
        assert!(eval_prop(&Valuation::default(), &Prop::implies(p("p"), p("q"))));
    }

    #[test]
    fn checked_evaluation_rejects_undeclared_atoms() {
        let sig = Signature::propositional(["p"]);
        assert!(eval_prop_checked(&sig, &Valuation::default(), &p("q")).is_err());
        assert!(eval_prop_checked(&sig, &Valuation::new(["q"]), &p("p")).is_err());
        assert!(eval_prop_checked(&sig, &Valuation::new(["p"]), &p("p")).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let empty: Vec<_> = enumerate_models(&Signature::propositional(Vec::<String>::new()))
            .unwrap()
            .collect();
        assert_eq!(empty, vec![Valuation::default()]);
        let one: Vec<_> = enumerate_models(&Signature::propositional(["p"])).unwrap().collect();
        assert_eq!(one, vec![Valuation::default(), Valuation::new(["p"])]);
        for n in 0..=6 {
            let sig = Signature::propositional((0..n).map(|i| format!("p{i}")));
            let all: BTreeSet<_> = enumerate_models(&sig).unwrap().collect();
            assert_eq!(all.len(), 1 << n);
        }
    }

    #[test]
    fn enumeration_bound() {
        let sig = Signature::propositional((0..17).map(|i| format!("p{i}")));
        assert!(matches!(enumerate_models(&sig), Err(Error::Resource(_))));
        assert!(enumerate_models_bounded(&sig, 20).is_ok());
    }

    #[test]
    fn def_ext_restriction_and_section() {
        let sig = Signature::propositional(["p"]);
        let c = def_ext_comorphism(&sig, "fresh").unwrap();
        let big = Model::Valuation(Valuation::new(["p", "fresh"]));
        assert_eq!(c.beta(&sig, &big).unwrap(), Model::Valuation(Valuation::new(["p"])));
        let small = Model::Valuation(Valuation::new(["p"]));
        let pre = c.beta_preimage(&sig, &small).unwrap().unwrap();
        assert_eq!(pre, small);
        assert_eq!(c.beta(&sig, &pre).unwrap(), small);
        assert!(def_ext_comorphism(&sig, "p").is_err());
    }

    #[test]
    fn def_ext_satisfaction_exhaustive() {
        let sig = Signature::propositional(["p"]);
        let c = def_ext_comorphism(&sig, "fresh").unwrap();
        let target = c.phi_sig(&sig).unwrap();
        let rho = Sentence::Prop(p("p"));
        let translated = c.alpha(&sig, &rho).unwrap();
        let mut seen = 0;
        for v in enumerate_models(&target).unwrap() {
            let m = Model::Valuation(v);
            let reduced = c.beta(&sig, &m).unwrap();
            assert_eq!(
                satisfies(&sig, &reduced, &rho).unwrap(),
                satisfies(&target, &m, &translated).unwrap()
            );
            seen += 1;
        }
        assert_eq!(seen, 4);
        // β is onto the two models of Σ.
        let image: BTreeSet<_> = enumerate_models(&target)
            .unwrap()
            .map(|v| match c.beta(&sig, &Model::Valuation(v)).unwrap() {
                Model::Valuation(v) => v,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(image.len(), 2);
    }

    #[test]
    fn renaming_swaps_and_inverts() {
        let bij: BTreeMap<_, _> = [("p", "q"), ("q", "p")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let c = renaming_equivalence(&pq(), &bij).unwrap();
        let rho = Sentence::Prop(Prop::and(p("p"), p("q")));
        let image = c.alpha(&pq(), &rho).unwrap();
        assert_eq!(image, Sentence::Prop(Prop::and(p("q"), p("p"))));
        let back = c.alpha_inv(&pq(), &image).unwrap().unwrap();
        assert!(semantically_equivalent(&pq(), back.as_prop().unwrap(), rho.as_prop().unwrap()).unwrap());
        for v in enumerate_models(&pq()).unwrap() {
            let m = Model::Valuation(v);
            let there = c.beta(&pq(), &m).unwrap();
            assert_eq!(c.beta_inv(&pq(), &there).unwrap().unwrap(), m);
        }
    }

    #[test]
    fn renaming_into_new_symbols_is_completed() {
        let bij: BTreeMap<_, _> = [("p".to_string(), "r".to_string())].into_iter().collect();
        let sig = Signature::propositional(["p"]);
        let c = renaming_equivalence(&sig, &bij).unwrap();
        assert_eq!(c.phi_sig(&sig).unwrap(), Signature::propositional(["r"]));
        // r is sent back onto p, so Φ stays a bijection on signatures.
        assert_eq!(
            c.phi_sig(&Signature::propositional(["r"])).unwrap(),
            Signature::propositional(["p"])
        );
        let m = Model::Valuation(Valuation::new(["r"]));
        assert_eq!(c.beta(&sig, &m).unwrap(), Model::Valuation(Valuation::new(["p"])));
    }

    #[test]
    fn renaming_must_be_bijective() {
        let bij: BTreeMap<_, _> = [("p", "r"), ("q", "r")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert!(renaming_equivalence(&pq(), &bij).is_err());
        let partial: BTreeMap<_, _> = [("p".to_string(), "q".to_string())].into_iter().collect();
        assert!(renaming_equivalence(&pq(), &partial).is_err());
    }

    #[test]
    fn identity_renaming_is_identity() {
        let bij: BTreeMap<_, _> = [("p", "p"), ("q", "q")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let c = renaming_equivalence(&pq(), &bij).unwrap();
        let rho = Sentence::Prop(Prop::and(p("p"), Prop::not(p("q"))));
        assert_eq!(c.alpha(&pq(), &rho).unwrap(), rho);
        for v in enumerate_models(&pq()).unwrap() {
            let m = Model::Valuation(v);
            assert_eq!(c.beta(&pq(), &m).unwrap(), m);
        }
    }
}
