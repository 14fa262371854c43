//! Layered sentences.
//!
//! A sentence of `C(I)` is a sentence of the outer layer's grammar whose base
//! atoms carry sentences of `I`. The innermost sentences are propositional.

use crate::baselogic::Prop;
use crate::error::{malformed, Result};
use crate::hybrid::HybridSentence;
use crate::prob::ProbSentence;
use crate::stack::LayerKind;
use crate::temporal::TemporalSentence;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sentence {
    Prop(Prop),
    Temporal(TemporalSentence),
    Prob(ProbSentence),
    Hybrid(HybridSentence),
}

/// Boolean structure shared by every layer grammar. Disjunction and
/// implication are derived forms.
pub trait Connectives: Sized {
    fn not(a: Self) -> Self;
    fn and(a: Self, b: Self) -> Self;
    fn as_not(&self) -> Option<&Self>;
    fn as_and(&self) -> Option<(&Self, &Self)>;

    fn or(a: Self, b: Self) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    fn implies(a: Self, b: Self) -> Self {
        Self::not(Self::and(a, Self::not(b)))
    }
}

impl Sentence {
    /// The layer this sentence belongs to; `None` for propositional sentences.
    pub fn kind(&self) -> Option<LayerKind> {
        match self {
            Sentence::Prop(_) => None,
            Sentence::Temporal(_) => Some(LayerKind::Temporal),
            Sentence::Prob(_) => Some(LayerKind::Prob),
            Sentence::Hybrid(_) => Some(LayerKind::Hybrid),
        }
    }

    /// Replaces every base sentence of the outermost layer by `f(base)`,
    /// keeping the outer structure. This is the substitution hook used by
    /// sentence translation and comorphism lifting.
    pub fn map_base(&self, f: &mut dyn FnMut(&Sentence) -> Result<Sentence>) -> Result<Sentence> {
        Ok(match self {
            Sentence::Prop(_) => {
                return Err(malformed("propositional sentences have no base layer"));
            }
            Sentence::Temporal(t) => Sentence::Temporal(t.map_base(f)?),
            Sentence::Prob(p) => Sentence::Prob(p.map_base(f)?),
            Sentence::Hybrid(h) => Sentence::Hybrid(h.map_base(f)?),
        })
    }

    pub fn as_prop(&self) -> Option<&Prop> {
        match self {
            Sentence::Prop(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_temporal(&self) -> Option<&TemporalSentence> {
        match self {
            Sentence::Temporal(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_prob(&self) -> Option<&ProbSentence> {
        match self {
            Sentence::Prob(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_hybrid(&self) -> Option<&HybridSentence> {
        match self {
            Sentence::Hybrid(h) => Some(h),
            _ => None,
        }
    }
}

impl From<Prop> for Sentence {
    fn from(p: Prop) -> Self {
        Sentence::Prop(p)
    }
}

impl From<TemporalSentence> for Sentence {
    fn from(t: TemporalSentence) -> Self {
        Sentence::Temporal(t)
    }
}

impl From<ProbSentence> for Sentence {
    fn from(p: ProbSentence) -> Self {
        Sentence::Prob(p)
    }
}

impl From<HybridSentence> for Sentence {
    fn from(h: HybridSentence) -> Self {
        Sentence::Hybrid(h)
    }
}

impl std::fmt::Display for Sentence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::syntax::print_sentence(self))
    }
}
