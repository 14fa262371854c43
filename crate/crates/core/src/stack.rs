//! Logic stacks: which combinators are applied, outermost first, over the
//! propositional base.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LayerKind {
    Temporal,
    Prob,
    Hybrid,
}

impl LayerKind {
    pub const ALL: [LayerKind; 3] = [LayerKind::Temporal, LayerKind::Prob, LayerKind::Hybrid];

    /// The descriptor letter: `L`, `P` or `H`.
    pub fn letter(self) -> char {
        match self {
            LayerKind::Temporal => 'L',
            LayerKind::Prob => 'P',
            LayerKind::Hybrid => 'H',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'L' => Some(LayerKind::Temporal),
            'P' => Some(LayerKind::Prob),
            'H' => Some(LayerKind::Hybrid),
            _ => None,
        }
    }
}

impl fmt::Display for LayerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LayerKind::Temporal => "temporal",
            LayerKind::Prob => "prob",
            LayerKind::Hybrid => "hybrid",
        };
        f.write_str(name)
    }
}

/// Ordered combinator layers over propositional logic. An empty stack is
/// bare propositional logic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LogicStack {
    layers: Vec<LayerKind>,
}

impl LogicStack {
    pub fn base() -> Self {
        Self::default()
    }

    pub fn new(layers: Vec<LayerKind>) -> Self {
        Self { layers }
    }

    pub fn layers(&self) -> &[LayerKind] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn outer(&self) -> Option<LayerKind> {
        self.layers.first().copied()
    }

    /// The stack below the outermost layer.
    pub fn inner(&self) -> LogicStack {
        Self {
            layers: self.layers.iter().skip(1).copied().collect(),
        }
    }

    /// Applies `layer` on top of this stack.
    pub fn wrap(&self, layer: LayerKind) -> LogicStack {
        let mut layers = Vec::with_capacity(self.layers.len() + 1);
        layers.push(layer);
        layers.extend_from_slice(&self.layers);
        Self { layers }
    }
}

impl fmt::Display for LogicStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            write!(f, "{}(", layer.letter())?;
        }
        f.write_str("PL")?;
        for _ in &self.layers {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for LogicStack {
    type Err = Error;

    /// Parses `D ::= "PL" | "L(" D ")" | "P(" D ")" | "H(" D ")"`, ignoring
    /// whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut layers = Vec::new();
        let mut pos = 0;
        let fail = |pos: usize, msg: &str| Error::Parse {
            line: 1,
            column: pos + 1,
            message: format!("{msg} in logic descriptor {s:?}"),
        };
        loop {
            if text[pos..].starts_with(&['P', 'L']) {
                pos += 2;
                break;
            }
            match text.get(pos).copied().and_then(LayerKind::from_letter) {
                Some(kind) if text.get(pos + 1) == Some(&'(') => {
                    layers.push(kind);
                    pos += 2;
                }
                _ => return Err(fail(pos, "expected PL, L(, P( or H(")),
            }
        }
        for _ in 0..layers.len() {
            if text.get(pos) != Some(&')') {
                return Err(fail(pos, "expected )"));
            }
            pos += 1;
        }
        if pos != text.len() {
            return Err(fail(pos, "trailing input"));
        }
        Ok(Self { layers })
    }
}
