//! Layered models: each layer's structure carries inner models at its points.

use crate::baselogic::Valuation;
use crate::error::{malformed, Result};
use crate::hybrid::KripkeModel;
use crate::prob::FiniteSpace;
use crate::stack::LayerKind;
use crate::temporal::Lasso;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Model {
    Valuation(Valuation),
    Lasso(Lasso),
    Space(FiniteSpace),
    Kripke(KripkeModel),
}

impl Model {
    pub fn kind(&self) -> Option<LayerKind> {
        match self {
            Model::Valuation(_) => None,
            Model::Lasso(_) => Some(LayerKind::Temporal),
            Model::Space(_) => Some(LayerKind::Prob),
            Model::Kripke(_) => Some(LayerKind::Hybrid),
        }
    }

    /// Applies `f` to every inner model of the outermost layer, keeping the
    /// carrier and the layer structure.
    pub fn map_inner(&self, f: &mut dyn FnMut(&Model) -> Result<Model>) -> Result<Model> {
        Ok(match self {
            Model::Valuation(_) => return Err(malformed("valuations have no inner models")),
            Model::Lasso(l) => Model::Lasso(l.map_states(f)?),
            Model::Space(s) => Model::Space(s.map_models(f)?),
            Model::Kripke(k) => Model::Kripke(k.map_models(f)?),
        })
    }

    /// Inner models in carrier order.
    pub fn inner_models(&self) -> Vec<&Model> {
        match self {
            Model::Valuation(_) => Vec::new(),
            Model::Lasso(l) => l.states().iter().collect(),
            Model::Space(s) => s.outcomes().iter().map(|o| &o.model).collect(),
            Model::Kripke(k) => k.models().iter().collect(),
        }
    }
}

impl From<Valuation> for Model {
    fn from(v: Valuation) -> Self {
        Model::Valuation(v)
    }
}

impl From<Lasso> for Model {
    fn from(l: Lasso) -> Self {
        Model::Lasso(l)
    }
}

impl From<FiniteSpace> for Model {
    fn from(s: FiniteSpace) -> Self {
        Model::Space(s)
    }
}

impl From<KripkeModel> for Model {
    fn from(k: KripkeModel) -> Self {
        Model::Kripke(k)
    }
}
