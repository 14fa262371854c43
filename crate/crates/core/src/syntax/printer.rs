use crate::baselogic::Prop;
use crate::hybrid::HybridSentence;
use crate::prob::{ProbSentence, ProbTerm};
use crate::sentence::{Connectives, Sentence};
use crate::temporal::TemporalSentence;

use super::lexer::format_rational;

// Binding levels, loosest first.
const UNTIL: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const PREFIX: u8 = 3;

/// Renders a sentence in the concrete syntax accepted by
/// [`parse_sentence`](super::parse_sentence). `∨`, `→` and `[λ]` patterns are
/// printed as sugar; the parser expands them back to the same tree.
pub fn print_sentence(s: &Sentence) -> String {
    let mut out = String::new();
    sentence(&mut out, s);
    out
}

pub fn print_term(t: &ProbTerm) -> String {
    let mut out = String::new();
    term(&mut out, t, 0);
    out
}

fn sentence(out: &mut String, s: &Sentence) {
    match s {
        Sentence::Prop(p) => print(out, p, UNTIL, true),
        Sentence::Temporal(t) => print(out, t, UNTIL, true),
        Sentence::Prob(p) => print(out, p, UNTIL, true),
        Sentence::Hybrid(h) => print(out, h, UNTIL, true),
    }
}

/// Layer-specific nodes: everything except `¬`, `∧` and the `∨`/`→` sugar.
trait Layer: Connectives {
    /// Binding level of a layer-specific node and whether it must sit in
    /// tail position (it extends as far right as possible).
    fn special(&self) -> Option<(u8, bool)>;
    fn render_special(&self, out: &mut String, rightmost: bool);
}

enum Shape<'a, T> {
    Or(&'a T, &'a T),
    Implies(&'a T, &'a T),
    Special(u8, bool),
    Not(&'a T),
    And(&'a T, &'a T),
}

fn shape<T: Layer>(t: &T) -> Shape<'_, T> {
    if let Some(inner) = t.as_not() {
        if let Some((a, b)) = inner.as_and() {
            match (a.as_not(), b.as_not()) {
                (Some(a), Some(b)) => return Shape::Or(a, b),
                (_, Some(b)) => return Shape::Implies(a, b),
                _ => {}
            }
        }
    }
    if let Some((level, tail)) = t.special() {
        return Shape::Special(level, tail);
    }
    if let Some(a) = t.as_not() {
        return Shape::Not(a);
    }
    let (a, b) = t.as_and().expect("every node is a connective or layer-specific");
    Shape::And(a, b)
}

fn print<T: Layer>(out: &mut String, t: &T, min: u8, rightmost: bool) {
    let (level, tail) = match shape(t) {
        Shape::Or(..) | Shape::Implies(..) => (OR, false),
        Shape::And(..) => (AND, false),
        Shape::Not(_) => (PREFIX, false),
        Shape::Special(level, tail) => (level, tail),
    };
    if level < min || (tail && !rightmost) {
        out.push('(');
        render(out, t, true);
        out.push(')');
    } else {
        render(out, t, rightmost);
    }
}

fn render<T: Layer>(out: &mut String, t: &T, rightmost: bool) {
    match shape(t) {
        Shape::Or(a, b) => {
            print(out, a, AND, false);
            out.push_str(" | ");
            print(out, b, OR, rightmost);
        }
        Shape::Implies(a, b) => {
            print(out, a, AND, false);
            out.push_str(" -> ");
            print(out, b, OR, rightmost);
        }
        Shape::And(a, b) => {
            print(out, a, AND, false);
            out.push_str(" & ");
            print(out, b, PREFIX, rightmost);
        }
        Shape::Not(a) => {
            out.push('~');
            print(out, a, PREFIX, rightmost);
        }
        Shape::Special(..) => t.render_special(out, rightmost),
    }
}

fn braced(out: &mut String, open: &str, s: &Sentence) {
    out.push_str(open);
    sentence(out, s);
    out.push('}');
}

impl Layer for Prop {
    fn special(&self) -> Option<(u8, bool)> {
        matches!(self, Prop::Atom(_)).then_some((PREFIX, false))
    }

    fn render_special(&self, out: &mut String, _: bool) {
        if let Prop::Atom(p) = self {
            out.push_str(p);
        }
    }
}

impl Layer for TemporalSentence {
    fn special(&self) -> Option<(u8, bool)> {
        match self {
            TemporalSentence::Base(_) | TemporalSentence::Next(_) => Some((PREFIX, false)),
            TemporalSentence::Until(..) => Some((UNTIL, false)),
            _ => None,
        }
    }

    fn render_special(&self, out: &mut String, rightmost: bool) {
        match self {
            TemporalSentence::Base(psi) => braced(out, "{", psi),
            TemporalSentence::Next(a) => {
                out.push_str("X ");
                print(out, a.as_ref(), PREFIX, rightmost);
            }
            TemporalSentence::Until(a, b) => {
                print(out, a.as_ref(), OR, false);
                out.push_str(" U ");
                print(out, b.as_ref(), UNTIL, rightmost);
            }
            _ => unreachable!("not a temporal special form"),
        }
    }
}

impl Layer for ProbSentence {
    fn special(&self) -> Option<(u8, bool)> {
        matches!(self, ProbSentence::Less(..)).then_some((PREFIX, false))
    }

    fn render_special(&self, out: &mut String, _: bool) {
        if let ProbSentence::Less(a, b) = self {
            term(out, a, 0);
            out.push_str(" < ");
            term(out, b, 0);
        }
    }
}

fn term(out: &mut String, t: &ProbTerm, min: u8) {
    let level = match t {
        ProbTerm::Add(..) => 0,
        ProbTerm::Mul(..) => 1,
        _ => 2,
    };
    if level < min {
        out.push('(');
        term(out, t, 0);
        out.push(')');
        return;
    }
    match t {
        ProbTerm::Const(r) => out.push_str(&format_rational(r)),
        ProbTerm::Integral(psi) => braced(out, "Int{", psi),
        ProbTerm::Add(a, b) => {
            term(out, a, 0);
            out.push_str(" + ");
            term(out, b, 1);
        }
        ProbTerm::Mul(a, b) => {
            term(out, a, 1);
            out.push_str(" * ");
            term(out, b, 2);
        }
    }
}

impl Layer for HybridSentence {
    fn special(&self) -> Option<(u8, bool)> {
        if self.as_box().is_some() {
            return Some((PREFIX, false));
        }
        match self {
            HybridSentence::Not(_) | HybridSentence::And(..) => None,
            HybridSentence::Exists(..) => Some((PREFIX, true)),
            _ => Some((PREFIX, false)),
        }
    }

    fn render_special(&self, out: &mut String, rightmost: bool) {
        if let Some((l, a)) = self.as_box() {
            out.push('[');
            out.push_str(l);
            out.push_str("] ");
            print(out, a, PREFIX, rightmost);
            return;
        }
        match self {
            HybridSentence::Nominal(i) => {
                out.push_str("nom ");
                out.push_str(i);
            }
            HybridSentence::Base(psi) => braced(out, "{", psi),
            HybridSentence::At(i, a) => {
                out.push_str("@ ");
                out.push_str(i);
                out.push(' ');
                print(out, a.as_ref(), PREFIX, rightmost);
            }
            HybridSentence::Diamond(l, a) => {
                out.push('<');
                out.push_str(l);
                out.push_str("> ");
                print(out, a.as_ref(), PREFIX, rightmost);
            }
            HybridSentence::Exists(x, a) => {
                out.push_str("E ");
                out.push_str(x);
                out.push_str(" . ");
                print(out, a.as_ref(), UNTIL, true);
            }
            _ => unreachable!("not a hybrid special form"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_sentence;
    use super::*;
    use crate::stack::LogicStack;

    fn round_trip(stack: &str, text: &str) -> String {
        let st: LogicStack = stack.parse().unwrap();
        let s = parse_sentence(&st, text).unwrap();
        let printed = print_sentence(&s);
        assert_eq!(parse_sentence(&st, &printed).unwrap(), s, "{printed}");
        printed
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(round_trip("PL", "p|q"), "p | q");
        assert_eq!(round_trip("PL", "~(p & ~q)"), "p -> q");
        assert_eq!(round_trip("PL", "(p & q) & r"), "p & q & r");
        assert_eq!(round_trip("PL", "p & (q & r)"), "p & (q & r)");
        assert_eq!(round_trip("L(PL)", "X{p}U{q}U{r}"), "X {p} U {q} U {r}");
        assert_eq!(round_trip("L(PL)", "({p} U {q}) U {r}"), "({p} U {q}) U {r}");
        assert_eq!(round_trip("P(PL)", "Int{p}*(0.5+1/3) < 1"), "Int{p} * (0.5 + 1/3) < 1");
        assert_eq!(round_trip("H(PL)", "[l]~nom i"), "[l] ~nom i");
    }

    #[test]
    fn exists_is_parenthesised_outside_tail_position() {
        assert_eq!(round_trip("H(PL)", "(E x . nom x) & {p}"), "(E x . nom x) & {p}");
        assert_eq!(
            round_trip("H(PL)", "{p} & E x . nom x & {p}"),
            "{p} & E x . nom x & {p}"
        );
        assert_eq!(round_trip("H(PL)", "~(E x . nom x) | {p}"), "~(E x . nom x) | {p}");
    }

    #[test]
    fn nested_layers() {
        assert_eq!(round_trip("H(L(PL))", "@ i {X {p | q}}"), "@ i {X {p | q}}");
        assert_eq!(round_trip("P(H(PL))", "Int{<l> {p}} < 0.25"), "Int{<l> {p}} < 0.25");
    }
}
