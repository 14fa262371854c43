use crate::baselogic::Prop;
use crate::error::{Error, Result};
use crate::hybrid::HybridSentence;
use crate::prob::{ProbSentence, ProbTerm};
use crate::sentence::{Connectives, Sentence};
use crate::stack::{LayerKind, LogicStack};
use crate::temporal::TemporalSentence;

use super::lexer::{tokenize, Tok, Token};

/// Parses `text` as a sentence of `stack`.
pub fn parse_sentence(stack: &LogicStack, text: &str) -> Result<Sentence> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let s = p.sentence(stack)?;
    p.expect(&Tok::Eof)?;
    Ok(s)
}

/// Parses a term of the probabilistic layer on top of `stack.inner()`.
pub fn parse_term(stack: &LogicStack, text: &str) -> Result<ProbTerm> {
    if stack.outer() != Some(LayerKind::Prob) {
        return Err(Error::Usage(format!("{stack} has no probabilistic terms")));
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let t = p.term(stack)?;
    p.expect(&Tok::Eof)?;
    Ok(t)
}

type Unary<T> = fn(&mut Parser, &LogicStack) -> Result<T>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn sentence(&mut self, stack: &LogicStack) -> Result<Sentence> {
        Ok(match stack.outer() {
            None => Sentence::Prop(self.or_level(stack, Parser::prop_unary)?),
            Some(LayerKind::Temporal) => Sentence::Temporal(self.until_level(stack)?),
            Some(LayerKind::Prob) => Sentence::Prob(self.or_level(stack, Parser::prob_unary)?),
            Some(LayerKind::Hybrid) => Sentence::Hybrid(self.or_level(stack, Parser::hybrid_unary)?),
        })
    }

    /// `{ inner }`, the opening brace already consumed.
    fn braced_inner(&mut self, stack: &LogicStack) -> Result<Sentence> {
        let inner = self.sentence(&stack.inner())?;
        self.expect(&Tok::RBrace)?;
        Ok(inner)
    }

    fn or_level<T: Connectives>(&mut self, stack: &LogicStack, unary: Unary<T>) -> Result<T> {
        let left = self.and_level(stack, unary)?;
        match self.peek() {
            Tok::Pipe => {
                self.advance();
                Ok(T::or(left, self.or_level(stack, unary)?))
            }
            Tok::Arrow => {
                self.advance();
                Ok(T::implies(left, self.or_level(stack, unary)?))
            }
            _ => Ok(left),
        }
    }

    fn and_level<T: Connectives>(&mut self, stack: &LogicStack, unary: Unary<T>) -> Result<T> {
        let mut acc = unary(self, stack)?;
        while self.peek() == &Tok::Amp {
            self.advance();
            acc = T::and(acc, unary(self, stack)?);
        }
        Ok(acc)
    }

    fn prop_unary(&mut self, stack: &LogicStack) -> Result<Prop> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.advance();
                Ok(Prop::not(self.prop_unary(stack)?))
            }
            Tok::LParen => {
                self.advance();
                let f = self.or_level(stack, Parser::prop_unary)?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) => {
                self.advance();
                Ok(Prop::atom(s))
            }
            _ => Err(self.unexpected("a proposition")),
        }
    }

    fn until_level(&mut self, stack: &LogicStack) -> Result<TemporalSentence> {
        let left = self.or_level(stack, Parser::temporal_unary)?;
        if self.is_keyword("U") {
            self.advance();
            Ok(TemporalSentence::until(left, self.until_level(stack)?))
        } else if self.is_keyword("R") {
            self.advance();
            Ok(TemporalSentence::release(left, self.until_level(stack)?))
        } else {
            Ok(left)
        }
    }

    fn temporal_unary(&mut self, stack: &LogicStack) -> Result<TemporalSentence> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.advance();
                Ok(TemporalSentence::not(self.temporal_unary(stack)?))
            }
            Tok::Ident(s) if s == "X" || s == "F" || s == "G" => {
                self.advance();
                let a = self.temporal_unary(stack)?;
                Ok(match s.as_str() {
                    "X" => TemporalSentence::next(a),
                    "F" => TemporalSentence::eventually(a),
                    _ => TemporalSentence::always(a),
                })
            }
            Tok::LParen => {
                self.advance();
                let f = self.until_level(stack)?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::LBrace => {
                self.advance();
                Ok(TemporalSentence::Base(Box::new(self.braced_inner(stack)?)))
            }
            _ => Err(self.unexpected("a temporal formula")),
        }
    }

    fn prob_unary(&mut self, stack: &LogicStack) -> Result<ProbSentence> {
        if self.peek() == &Tok::Tilde {
            self.advance();
            return Ok(ProbSentence::not(self.prob_unary(stack)?));
        }
        let start = self.pos;
        let comparison = self.comparison(stack);
        match comparison {
            Ok(c) => Ok(c),
            Err(first) if self.toks[start].tok == Tok::LParen => {
                self.pos = start;
                self.advance();
                let nested = self
                    .or_level(stack, Parser::prob_unary)
                    .and_then(|f| self.expect(&Tok::RParen).map(|_| f));
                nested.map_err(|second| further(first, second))
            }
            Err(e) => Err(e),
        }
    }

    fn comparison(&mut self, stack: &LogicStack) -> Result<ProbSentence> {
        let a = self.term(stack)?;
        self.expect(&Tok::Lt)?;
        let b = self.term(stack)?;
        Ok(ProbSentence::less(a, b))
    }

    fn term(&mut self, stack: &LogicStack) -> Result<ProbTerm> {
        let mut acc = self.product(stack)?;
        while self.peek() == &Tok::Plus {
            self.advance();
            acc = ProbTerm::add(acc, self.product(stack)?);
        }
        Ok(acc)
    }

    fn product(&mut self, stack: &LogicStack) -> Result<ProbTerm> {
        let mut acc = self.term_atom(stack)?;
        while self.peek() == &Tok::Star {
            self.advance();
            acc = ProbTerm::mul(acc, self.term_atom(stack)?);
        }
        Ok(acc)
    }

    fn term_atom(&mut self, stack: &LogicStack) -> Result<ProbTerm> {
        match self.peek().clone() {
            Tok::Number(r) => {
                self.advance();
                Ok(ProbTerm::Const(r))
            }
            Tok::Ident(s) if s == "Int" && self.peek_at(1) == &Tok::LBrace => {
                self.advance();
                self.advance();
                Ok(ProbTerm::Integral(Box::new(self.braced_inner(stack)?)))
            }
            Tok::LParen => {
                self.advance();
                let t = self.term(stack)?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn hybrid_unary(&mut self, stack: &LogicStack) -> Result<HybridSentence> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.advance();
                Ok(HybridSentence::not(self.hybrid_unary(stack)?))
            }
            Tok::At => {
                self.advance();
                let i = self.ident("a nominal after `@`")?;
                Ok(HybridSentence::at(i, self.hybrid_unary(stack)?))
            }
            Tok::Lt => {
                self.advance();
                let l = self.ident("a modality")?;
                self.expect(&Tok::Gt)?;
                Ok(HybridSentence::diamond(l, self.hybrid_unary(stack)?))
            }
            Tok::LBracket => {
                self.advance();
                let l = self.ident("a modality")?;
                self.expect(&Tok::RBracket)?;
                Ok(HybridSentence::boxed(l, self.hybrid_unary(stack)?))
            }
            Tok::Ident(s) if s == "E" => {
                self.advance();
                let x = self.ident("a variable after `E`")?;
                self.expect(&Tok::Dot)?;
                Ok(HybridSentence::exists(x, self.or_level(stack, Parser::hybrid_unary)?))
            }
            Tok::Ident(s) if s == "nom" => {
                self.advance();
                Ok(HybridSentence::nominal(self.ident("a nominal after `nom`")?))
            }
            Tok::LParen => {
                self.advance();
                let f = self.or_level(stack, Parser::hybrid_unary)?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::LBrace => {
                self.advance();
                Ok(HybridSentence::Base(Box::new(self.braced_inner(stack)?)))
            }
            _ => Err(self.unexpected("a hybrid formula")),
        }
    }
}

/// Of two alternative parse errors, the one that got further.
fn further(a: Error, b: Error) -> Error {
    let key = |e: &Error| match e {
        Error::Parse { line, column, .. } => (*line, *column),
        _ => (0, 0),
    };
    if key(&b) >= key(&a) {
        b
    } else {
        a
    }
}
