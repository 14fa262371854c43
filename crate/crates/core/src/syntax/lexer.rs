use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(BigRational),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    At,
    Dot,
    Plus,
    Star,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(r) => format!("number {r}"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::At => "`@`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let err = |message: String| Error::Parse {
            line: start_line,
            column: start_col,
            message,
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            '@' => Some(Tok::At),
            '.' => Some(Tok::Dot),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            _ => None,
        };
        let (tok, len) = if let Some(t) = single {
            (t, 1)
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            (Tok::Arrow, 2)
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut j = i + 1;
            let digits = |j: &mut usize| {
                let s = *j;
                while *j < chars.len() && chars[*j].is_ascii_digit() {
                    *j += 1;
                }
                *j > s
            };
            digits(&mut j);
            if chars.get(j) == Some(&'.') && chars.get(j + 1).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
                digits(&mut j);
            }
            if chars.get(j) == Some(&'/') {
                j += 1;
                if !digits(&mut j) {
                    return Err(err("expected digits after `/`".into()));
                }
            }
            let literal: String = chars[i..j].iter().collect();
            let value = parse_rational(&literal).ok_or_else(|| err(format!("invalid number `{literal}`")))?;
            (Tok::Number(value), j - i)
        } else if is_ident_start(c) {
            let mut j = i + 1;
            while j < chars.len() && is_ident_continue(chars[j]) {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Parses `-?digits(.digits)?(/digits)?` exactly. Returns `None` on a zero
/// denominator or any other malformed literal.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let (neg, num) = match num.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, num),
    };
    let (int, frac) = match num.split_once('.') {
        Some((i, f)) => (i, f),
        None => (num, ""),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int) || (num.contains('.') && !all_digits(frac)) {
        return None;
    }
    let mantissa: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let mut value = BigRational::new(mantissa, scale);
    if let Some(d) = den {
        if !all_digits(d) {
            return None;
        }
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        value /= BigRational::from_integer(d);
    }
    Some(if neg { -value } else { value })
}

/// Shortest exact text for `r`: a decimal when the reduced denominator has
/// no prime factors besides 2 and 5, `n/d` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    let (num, den) = (r.numer(), r.denom());
    if den.is_one() {
        return num.to_string();
    }
    let (two, five) = (BigInt::from(2u32), BigInt::from(5u32));
    let mut rest = den.clone();
    let (mut a, mut b) = (0u32, 0u32);
    while (&rest % &two).is_zero() {
        rest /= &two;
        a += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        b += 1;
    }
    if !rest.is_one() {
        return format!("{num}/{den}");
    }
    let k = a.max(b) as usize;
    let scaled = num * BigInt::from(10u32).pow(k as u32) / den;
    let neg = scaled < BigInt::zero();
    let digits = scaled.magnitude().to_string();
    let digits = format!("{digits:0>width$}", width = k + 1);
    let (int, frac) = digits.split_at(digits.len() - k);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}
