//! Probabilisation: terms `r | ∫ψ | t + t | t · t` compared with strict `<`
//! over finite probability spaces whose outcomes carry inner models.
//!
//! All arithmetic is exact ([`BigRational`]); a space is only constructed
//! when its weights are non-negative and sum to exactly one.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{contract, malformed, Result};
use crate::institution;
use crate::model::Model;
use crate::sentence::{Connectives, Sentence};
use crate::signature::{LayerMap, SignatureMorphism};
use crate::stack::LayerKind;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProbTerm {
    Const(BigRational),
    /// `∫ψ`, the probability of the event described by an inner sentence.
    Integral(Box<Sentence>),
    Add(Box<ProbTerm>, Box<ProbTerm>),
    Mul(Box<ProbTerm>, Box<ProbTerm>),
}

#[allow(clippy::should_implement_trait)]
impl ProbTerm {
    pub fn constant(r: BigRational) -> Self {
        ProbTerm::Const(r)
    }

    /// `n / d` as a constant. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        ProbTerm::Const(BigRational::new(n.into(), d.into()))
    }

    pub fn integral(psi: impl Into<Sentence>) -> Self {
        ProbTerm::Integral(Box::new(psi.into()))
    }

    pub fn add(a: ProbTerm, b: ProbTerm) -> Self {
        ProbTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ProbTerm, b: ProbTerm) -> Self {
        ProbTerm::Mul(Box::new(a), Box::new(b))
    }

    /// `T(φ)`-style substitution of the sentences under `∫`.
    pub fn map_base(&self, f: &mut dyn FnMut(&Sentence) -> Result<Sentence>) -> Result<Self> {
        Ok(match self {
            ProbTerm::Const(r) => ProbTerm::Const(r.clone()),
            ProbTerm::Integral(psi) => ProbTerm::Integral(Box::new(f(psi)?)),
            ProbTerm::Add(a, b) => Self::add(a.map_base(f)?, b.map_base(f)?),
            ProbTerm::Mul(a, b) => Self::mul(a.map_base(f)?, b.map_base(f)?),
        })
    }

    pub fn for_each_base<'a>(&'a self, f: &mut dyn FnMut(&'a Sentence)) {
        match self {
            ProbTerm::Const(_) => {}
            ProbTerm::Integral(psi) => f(psi),
            ProbTerm::Add(a, b) | ProbTerm::Mul(a, b) => {
                a.for_each_base(f);
                b.for_each_base(f);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProbSentence {
    Less(ProbTerm, ProbTerm),
    Not(Box<ProbSentence>),
    And(Box<ProbSentence>, Box<ProbSentence>),
}

impl ProbSentence {
    pub fn less(a: ProbTerm, b: ProbTerm) -> Self {
        ProbSentence::Less(a, b)
    }

    pub fn map_base(&self, f: &mut dyn FnMut(&Sentence) -> Result<Sentence>) -> Result<Self> {
        Ok(match self {
            ProbSentence::Less(a, b) => ProbSentence::Less(a.map_base(f)?, b.map_base(f)?),
            ProbSentence::Not(a) => Self::not(a.map_base(f)?),
            ProbSentence::And(a, b) => Self::and(a.map_base(f)?, b.map_base(f)?),
        })
    }

    pub fn for_each_base<'a>(&'a self, f: &mut dyn FnMut(&'a Sentence)) {
        match self {
            ProbSentence::Less(a, b) => {
                a.for_each_base(f);
                b.for_each_base(f);
            }
            ProbSentence::Not(a) => a.for_each_base(f),
            ProbSentence::And(a, b) => {
                a.for_each_base(f);
                b.for_each_base(f);
            }
        }
    }
}

impl Connectives for ProbSentence {
    fn not(a: Self) -> Self {
        ProbSentence::Not(Box::new(a))
    }

    fn and(a: Self, b: Self) -> Self {
        ProbSentence::And(Box::new(a), Box::new(b))
    }

    fn as_not(&self) -> Option<&Self> {
        match self {
            ProbSentence::Not(a) => Some(a),
            _ => None,
        }
    }

    fn as_and(&self) -> Option<(&Self, &Self)> {
        match self {
            ProbSentence::And(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub weight: BigRational,
    pub model: Model,
}

/// A finite probability space `(S, p, m)`; `p` is stored pointwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    outcomes: Vec<Outcome>,
}

impl FiniteSpace {
    pub fn new(outcomes: Vec<Outcome>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(contract("a probability space needs at least one outcome"));
        }
        if let Some(o) = outcomes.iter().find(|o| o.weight.is_negative()) {
            return Err(contract(format!("negative weight {}", o.weight)));
        }
        let total: BigRational = outcomes.iter().map(|o| &o.weight).sum();
        if !total.is_one() {
            return Err(contract(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { outcomes })
    }

    /// Equal weight on every model.
    pub fn uniform(models: Vec<Model>) -> Result<Self> {
        if models.is_empty() {
            return Err(contract("a probability space needs at least one outcome"));
        }
        let w = BigRational::new(1.into(), models.len().into());
        Self::new(
            models
                .into_iter()
                .map(|model| Outcome {
                    weight: w.clone(),
                    model,
                })
                .collect(),
        )
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn map_models(&self, f: &mut dyn FnMut(&Model) -> Result<Model>) -> Result<FiniteSpace> {
        Ok(FiniteSpace {
            outcomes: self
                .outcomes
                .iter()
                .map(|o| {
                    Ok(Outcome {
                        weight: o.weight.clone(),
                        model: f(&o.model)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }
}

/// `p(m⁻¹[ψ])`: total weight of the outcomes whose model satisfies `psi`.
pub fn event_probability(space: &FiniteSpace, psi: &Sentence) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for o in &space.outcomes {
        if institution::holds(&o.model, psi)? {
            total += &o.weight;
        }
    }
    Ok(total)
}

/// `M_t`, by structural recursion.
pub fn interp_term(space: &FiniteSpace, t: &ProbTerm) -> Result<BigRational> {
    Ok(match t {
        ProbTerm::Const(r) => r.clone(),
        ProbTerm::Integral(psi) => event_probability(space, psi)?,
        ProbTerm::Add(a, b) => interp_term(space, a)? + interp_term(space, b)?,
        ProbTerm::Mul(a, b) => interp_term(space, a)? * interp_term(space, b)?,
    })
}

pub fn prob_satisfies(space: &FiniteSpace, rho: &ProbSentence) -> Result<bool> {
    Ok(match rho {
        ProbSentence::Less(a, b) => interp_term(space, a)? < interp_term(space, b)?,
        ProbSentence::Not(a) => !prob_satisfies(space, a)?,
        ProbSentence::And(a, b) => prob_satisfies(space, a)? && prob_satisfies(space, b)?,
    })
}

fn expect_prob_layer(phi: &SignatureMorphism) -> Result<SignatureMorphism> {
    match phi.split() {
        Some((LayerMap::Unit, inner)) if phi.source().outer().map(|l| l.kind()) == Some(LayerKind::Prob) => Ok(inner),
        _ => Err(malformed("morphism is not one of a probabilistic stack")),
    }
}

/// `T(φ)`: substitutes `Sen(φ)(ψ)` for every `ψ` under `∫`.
pub fn prob_term_translate(phi: &SignatureMorphism, t: &ProbTerm) -> Result<ProbTerm> {
    let inner = expect_prob_layer(phi)?;
    t.map_base(&mut |psi| institution::sen_translate_unchecked(&inner, psi))
}

pub fn prob_sen_translate(phi: &SignatureMorphism, rho: &ProbSentence) -> Result<ProbSentence> {
    let inner = expect_prob_layer(phi)?;
    rho.map_base(&mut |psi| institution::sen_translate_unchecked(&inner, psi))
}

/// Outcomes and weights are kept; inner models are reduced pointwise.
pub fn prob_reduct(phi: &SignatureMorphism, space: &FiniteSpace) -> Result<FiniteSpace> {
    let inner = expect_prob_layer(phi)?;
    space.map_models(&mut |m| institution::mod_reduct_unchecked(&inner, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselogic::{Prop, Valuation};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p() -> Sentence {
        Sentence::Prop(Prop::atom("p"))
    }

    fn coin() -> FiniteSpace {
        FiniteSpace::uniform(vec![
            Model::Valuation(Valuation::new(["p"])),
            Model::Valuation(Valuation::default()),
        ])
        .unwrap()
    }

    #[test]
    fn weights_must_be_a_distribution() {
        let v = Model::Valuation(Valuation::default());
        let half = |w| Outcome {
            weight: w,
            model: v.clone(),
        };
        assert!(FiniteSpace::new(vec![]).is_err());
        assert!(FiniteSpace::new(vec![half(q(1, 2))]).is_err());
        assert!(FiniteSpace::new(vec![half(q(3, 2)), half(q(-1, 2))]).is_err());
        assert!(FiniteSpace::new(vec![half(q(1, 3)), half(q(2, 3))]).is_ok());
    }

    #[test]
    fn events() {
        let s = coin();
        assert_eq!(event_probability(&s, &p()).unwrap(), q(1, 2));
        let contradiction = Sentence::Prop(Prop::and(Prop::atom("p"), Prop::not(Prop::atom("p"))));
        assert_eq!(event_probability(&s, &contradiction).unwrap(), q(0, 1));
        let tautology = Sentence::Prop(Prop::not(Prop::and(Prop::atom("p"), Prop::not(Prop::atom("p")))));
        assert_eq!(event_probability(&s, &tautology).unwrap(), q(1, 1));
    }

    #[test]
    fn terms() {
        let s = coin();
        assert_eq!(interp_term(&s, &ProbTerm::ratio(3, 10)).unwrap(), q(3, 10));
        let twice = ProbTerm::add(ProbTerm::integral(p()), ProbTerm::integral(p()));
        assert_eq!(interp_term(&s, &twice).unwrap(), q(1, 1));
        let prod = ProbTerm::mul(ProbTerm::ratio(2, 1), ProbTerm::ratio(1, 4));
        assert_eq!(interp_term(&s, &prod).unwrap(), q(1, 2));
    }

    #[test]
    fn strict_comparison() {
        let s = coin();
        let lt = ProbSentence::less(ProbTerm::integral(p()), ProbTerm::ratio(7, 10));
        assert!(prob_satisfies(&s, &lt).unwrap());
        let refl = ProbSentence::less(ProbTerm::integral(p()), ProbTerm::integral(p()));
        assert!(!prob_satisfies(&s, &refl).unwrap());
        assert!(prob_satisfies(&s, &ProbSentence::not(refl)).unwrap());
        let tie = ProbSentence::less(ProbTerm::integral(p()), ProbTerm::ratio(1, 2));
        assert!(!prob_satisfies(&s, &tie).unwrap());
    }
}
