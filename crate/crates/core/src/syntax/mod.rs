//! Concrete text syntax for every layer.
//!
//! Inner sentences are delimited by braces: `{…}` in temporal and hybrid
//! formulas, `Int{…}` in probabilistic terms. Binding, tightest first:
//! `~` and the prefix operators (`X`, `F`, `G`, `@ i`, `<l>`, `[l]`), then
//! `&` (left-associative), then `|` and `->` (right-associative), then `U`
//! and `R` (right-associative, temporal only). `E x . ρ` extends as far right
//! as possible. Numbers are exact: `0.7`, `-3`, `1/3`.

mod lexer;
mod parser;
mod printer;

pub use lexer::{format_rational, parse_rational};
pub use parser::{parse_sentence, parse_term};
pub use printer::{print_sentence, print_term};
