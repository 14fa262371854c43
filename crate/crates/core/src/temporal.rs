//! Temporalisation: `X` and `U` over ultimately periodic traces.
//!
//! A [`Lasso`] with states `m(0..n)` and loop index `k` stands for the
//! infinite trace `m(0), …, m(n−1), m(k), m(k+1), …`. Satisfaction at every
//! position is computed in one bottom-up pass; `U` is the least fixpoint of
//! `a U b = b ∨ (a ∧ X(a U b))` over the `n` lasso positions.

use crate::error::{contract, malformed, Result};
use crate::institution;
use crate::model::Model;
use crate::sentence::{Connectives, Sentence};
use crate::signature::{LayerMap, SignatureMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TemporalSentence {
    /// A sentence of the inner logic.
    Base(Box<Sentence>),
    Not(Box<TemporalSentence>),
    And(Box<TemporalSentence>, Box<TemporalSentence>),
    Next(Box<TemporalSentence>),
    Until(Box<TemporalSentence>, Box<TemporalSentence>),
}

impl TemporalSentence {
    pub fn base(inner: impl Into<Sentence>) -> Self {
        TemporalSentence::Base(Box::new(inner.into()))
    }

    pub fn next(a: TemporalSentence) -> Self {
        TemporalSentence::Next(Box::new(a))
    }

    pub fn until(a: TemporalSentence, b: TemporalSentence) -> Self {
        TemporalSentence::Until(Box::new(a), Box::new(b))
    }

    /// `F a`, as `¬(a ∧ ¬a) U a`.
    pub fn eventually(a: TemporalSentence) -> Self {
        let top = Self::not(Self::and(a.clone(), Self::not(a.clone())));
        Self::until(top, a)
    }

    /// `G a`, as `¬F¬a`.
    pub fn always(a: TemporalSentence) -> Self {
        Self::not(Self::eventually(Self::not(a)))
    }

    /// `a R b`, as `¬(¬a U ¬b)`.
    pub fn release(a: TemporalSentence, b: TemporalSentence) -> Self {
        Self::not(Self::until(Self::not(a), Self::not(b)))
    }

    /// Nesting depth of `X` and `U`.
    pub fn temporal_depth(&self) -> usize {
        match self {
            TemporalSentence::Base(_) => 0,
            TemporalSentence::Not(a) => a.temporal_depth(),
            TemporalSentence::And(a, b) => a.temporal_depth().max(b.temporal_depth()),
            TemporalSentence::Next(a) => 1 + a.temporal_depth(),
            TemporalSentence::Until(a, b) => 1 + a.temporal_depth().max(b.temporal_depth()),
        }
    }

    pub fn contains_until(&self) -> bool {
        match self {
            TemporalSentence::Base(_) => false,
            TemporalSentence::Not(a) | TemporalSentence::Next(a) => a.contains_until(),
            TemporalSentence::And(a, b) => a.contains_until() || b.contains_until(),
            TemporalSentence::Until(..) => true,
        }
    }

    pub fn map_base(&self, f: &mut dyn FnMut(&Sentence) -> Result<Sentence>) -> Result<Self> {
        Ok(match self {
            TemporalSentence::Base(psi) => TemporalSentence::Base(Box::new(f(psi)?)),
            TemporalSentence::Not(a) => Self::not(a.map_base(f)?),
            TemporalSentence::And(a, b) => Self::and(a.map_base(f)?, b.map_base(f)?),
            TemporalSentence::Next(a) => Self::next(a.map_base(f)?),
            TemporalSentence::Until(a, b) => Self::until(a.map_base(f)?, b.map_base(f)?),
        })
    }

    /// Visits every base sentence.
    pub fn for_each_base<'a>(&'a self, f: &mut dyn FnMut(&'a Sentence)) {
        match self {
            TemporalSentence::Base(psi) => f(psi),
            TemporalSentence::Not(a) | TemporalSentence::Next(a) => a.for_each_base(f),
            TemporalSentence::And(a, b) | TemporalSentence::Until(a, b) => {
                a.for_each_base(f);
                b.for_each_base(f);
            }
        }
    }
}

impl Connectives for TemporalSentence {
    fn not(a: Self) -> Self {
        TemporalSentence::Not(Box::new(a))
    }

    fn and(a: Self, b: Self) -> Self {
        TemporalSentence::And(Box::new(a), Box::new(b))
    }

    fn as_not(&self) -> Option<&Self> {
        match self {
            TemporalSentence::Not(a) => Some(a),
            _ => None,
        }
    }

    fn as_and(&self) -> Option<(&Self, &Self)> {
        match self {
            TemporalSentence::And(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

/// Finite presentation of an ultimately periodic trace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    states: Vec<Model>,
    loop_index: usize,
}

impl Lasso {
    pub fn new(states: Vec<Model>, loop_index: usize) -> Result<Self> {
        if states.is_empty() {
            return Err(contract("a lasso needs at least one state"));
        }
        if loop_index >= states.len() {
            return Err(contract(format!(
                "loop index {loop_index} is outside a lasso of length {}",
                states.len()
            )));
        }
        Ok(Self { states, loop_index })
    }

    pub fn states(&self) -> &[Model] {
        &self.states
    }

    pub fn loop_index(&self) -> usize {
        self.loop_index
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Length of the repeating part, `n − k`.
    pub fn period(&self) -> usize {
        self.states.len() - self.loop_index
    }

    /// Lasso position of the unfolded trace position `j`.
    pub fn fold(&self, j: usize) -> usize {
        let n = self.states.len();
        if j < n {
            j
        } else {
            self.loop_index + (j - self.loop_index) % self.period()
        }
    }

    /// The state at position `j` of the infinite unfolding.
    pub fn unfolded(&self, j: usize) -> &Model {
        &self.states[self.fold(j)]
    }

    pub fn map_states(&self, f: &mut dyn FnMut(&Model) -> Result<Model>) -> Result<Lasso> {
        Ok(Lasso {
            states: self.states.iter().map(f).collect::<Result<_>>()?,
            loop_index: self.loop_index,
        })
    }
}

/// Successor on lasso positions: `j + 1`, looping back to `k` from `n − 1`.
pub fn lasso_succ(lasso: &Lasso, j: usize) -> Result<usize> {
    let n = lasso.len();
    if j >= n {
        return Err(contract(format!("position {j} is outside a lasso of length {n}")));
    }
    Ok(if j + 1 < n { j + 1 } else { lasso.loop_index })
}

fn succ(lasso: &Lasso, j: usize) -> usize {
    if j + 1 < lasso.len() {
        j + 1
    } else {
        lasso.loop_index
    }
}

/// Truth value of `rho` at every lasso position.
pub fn eval_positions(lasso: &Lasso, rho: &TemporalSentence) -> Result<Vec<bool>> {
    let n = lasso.len();
    Ok(match rho {
        TemporalSentence::Base(psi) => lasso
            .states
            .iter()
            .map(|m| institution::holds(m, psi))
            .collect::<Result<_>>()?,
        TemporalSentence::Not(a) => eval_positions(lasso, a)?.into_iter().map(|v| !v).collect(),
        TemporalSentence::And(a, b) => {
            let (a, b) = (eval_positions(lasso, a)?, eval_positions(lasso, b)?);
            a.into_iter().zip(b).map(|(x, y)| x && y).collect()
        }
        TemporalSentence::Next(a) => {
            let a = eval_positions(lasso, a)?;
            (0..n).map(|j| a[succ(lasso, j)]).collect()
        }
        TemporalSentence::Until(a, b) => {
            let (a, b) = (eval_positions(lasso, a)?, eval_positions(lasso, b)?);
            let mut u = vec![false; n];
            // Each sweep fixes at least one more position; n + 1 sweeps suffice.
            for _ in 0..=n {
                let mut changed = false;
                for j in (0..n).rev() {
                    let v = b[j] || (a[j] && u[succ(lasso, j)]);
                    if v != u[j] {
                        u[j] = v;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            u
        }
    })
}

/// `M ⊨^j ρ` on the unfolding of `lasso`.
pub fn ltl_eval_at(lasso: &Lasso, j: usize, rho: &TemporalSentence) -> Result<bool> {
    if j >= lasso.len() {
        return Err(contract(format!(
            "position {j} is outside a lasso of length {}",
            lasso.len()
        )));
    }
    Ok(eval_positions(lasso, rho)?[j])
}

/// `M ⊨ ρ` iff `M ⊨^0 ρ`.
pub fn ltl_satisfies(lasso: &Lasso, rho: &TemporalSentence) -> Result<bool> {
    ltl_eval_at(lasso, 0, rho)
}

fn expect_temporal_layer(phi: &SignatureMorphism) -> Result<SignatureMorphism> {
    match phi.split() {
        Some((LayerMap::Unit, inner)) if phi.source().outer().map(|l| l.kind()) == Some(crate::LayerKind::Temporal) => {
            Ok(inner)
        }
        _ => Err(malformed("morphism is not one of a temporal stack")),
    }
}

/// `Sen(φ)`: the layer map is trivial, base sentences are translated by the
/// inner `Sen(φ)`.
pub fn temporal_sen_translate(phi: &SignatureMorphism, rho: &TemporalSentence) -> Result<TemporalSentence> {
    let inner = expect_temporal_layer(phi)?;
    rho.map_base(&mut |psi| institution::sen_translate_unchecked(&inner, psi))
}

/// `Mod(φ)`: states are reduced pointwise; length and loop are kept.
pub fn temporal_reduct(phi: &SignatureMorphism, lasso: &Lasso) -> Result<Lasso> {
    let inner = expect_temporal_layer(phi)?;
    lasso.map_states(&mut |m| institution::mod_reduct_unchecked(&inner, m))
}
