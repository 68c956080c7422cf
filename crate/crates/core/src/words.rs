//! Group-word expressions: parsing, printing, substitution, and evaluation.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! word   := factor+
//! factor := base ('^' int)?
//! base   := 'a' | 'b' | 'e' | '(' word ')'
//! int    := '-'? digit+
//! ```
//!
//! Juxtaposition is group multiplication; `e` is the identity.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::group::{GroupElement, TorusGroup, SIDE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "a",
            Letter::B => "b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordExpr {
    Identity,
    Letter(Letter),
    Inverse(Box<WordExpr>),
    Power(Box<WordExpr>, i64),
    /// Non-empty; at least two factors when built by the parser.
    Concat(Vec<WordExpr>),
}

impl WordExpr {
    pub fn a() -> Self {
        WordExpr::Letter(Letter::A)
    }

    pub fn b() -> Self {
        WordExpr::Letter(Letter::B)
    }

    pub fn power(base: WordExpr, exp: i64) -> Self {
        WordExpr::Power(Box::new(base), exp)
    }

    pub fn inverse(inner: WordExpr) -> Self {
        WordExpr::Inverse(Box::new(inner))
    }

    /// Concatenation; collapses to the single factor or to `e` when fewer
    /// than two factors are given.
    pub fn concat(mut factors: Vec<WordExpr>) -> Self {
        match factors.len() {
            0 => WordExpr::Identity,
            1 => factors.pop().unwrap(),
            _ => WordExpr::Concat(factors),
        }
    }

    /// Replace every `a` by `a_image` and every `b` by `b_image`.
    pub fn substitute(&self, a_image: &WordExpr, b_image: &WordExpr) -> WordExpr {
        match self {
            WordExpr::Identity => WordExpr::Identity,
            WordExpr::Letter(Letter::A) => a_image.clone(),
            WordExpr::Letter(Letter::B) => b_image.clone(),
            WordExpr::Inverse(w) => WordExpr::inverse(w.substitute(a_image, b_image)),
            WordExpr::Power(w, n) => WordExpr::power(w.substitute(a_image, b_image), *n),
            WordExpr::Concat(ws) => {
                WordExpr::Concat(ws.iter().map(|w| w.substitute(a_image, b_image)).collect())
            }
        }
    }

    fn needs_parens_as_base(&self) -> bool {
        matches!(self, WordExpr::Concat(_) | WordExpr::Power(..) | WordExpr::Inverse(_))
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn base(f: &mut fmt::Formatter<'_>, w: &WordExpr) -> fmt::Result {
            if w.needs_parens_as_base() {
                write!(f, "({w})")
            } else {
                write!(f, "{w}")
            }
        }
        match self {
            WordExpr::Identity => f.write_str("e"),
            WordExpr::Letter(l) => write!(f, "{l}"),
            WordExpr::Inverse(w) => {
                base(f, w)?;
                f.write_str("^-1")
            }
            WordExpr::Power(w, n) => {
                base(f, w)?;
                write!(f, "^{n}")
            }
            WordExpr::Concat(ws) => {
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    if matches!(w, WordExpr::Concat(_)) {
                        write!(f, "({w})")?;
                    } else {
                        write!(f, "{w}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    Empty,
    UnexpectedChar(char),
    UnclosedParen,
    UnexpectedCloseParen,
    DanglingPower,
    ExponentOverflow,
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxErrorKind::Empty => f.write_str("empty word"),
            SyntaxErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            SyntaxErrorKind::UnclosedParen => f.write_str("unbalanced `(`"),
            SyntaxErrorKind::UnexpectedCloseParen => f.write_str("unbalanced `)`"),
            SyntaxErrorKind::DanglingPower => f.write_str("`^` without an integer exponent"),
            SyntaxErrorKind::ExponentOverflow => f.write_str("exponent out of range"),
        }
    }
}

/// Parse failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct SyntaxError {
    pub offset: usize,
    pub kind: SyntaxErrorKind,
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError {
            offset: self.pos,
            kind,
        }
    }

    fn unexpected(&self) -> SyntaxError {
        // report the whole character, not a stray byte of it
        let text = core::str::from_utf8(&self.src[self.pos..]).unwrap_or("");
        let c = text.chars().next().unwrap_or('\u{FFFD}');
        self.error(SyntaxErrorKind::UnexpectedChar(c))
    }

    fn word(&mut self, depth: usize) -> Result<WordExpr, SyntaxError> {
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                None => break,
                Some(b')') => {
                    if depth == 0 {
                        return Err(self.error(SyntaxErrorKind::UnexpectedCloseParen));
                    }
                    break;
                }
                Some(_) => factors.push(self.factor(depth)?),
            }
        }
        if factors.is_empty() {
            return Err(self.error(SyntaxErrorKind::Empty));
        }
        Ok(WordExpr::concat(factors))
    }

    fn factor(&mut self, depth: usize) -> Result<WordExpr, SyntaxError> {
        let base = match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                WordExpr::a()
            }
            Some(b'b') => {
                self.pos += 1;
                WordExpr::b()
            }
            Some(b'e') => {
                self.pos += 1;
                WordExpr::Identity
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.word(depth + 1)?;
                if self.peek() != Some(b')') {
                    return Err(SyntaxError {
                        offset: open,
                        kind: SyntaxErrorKind::UnclosedParen,
                    });
                }
                self.pos += 1;
                inner
            }
            Some(b'^') => return Err(self.error(SyntaxErrorKind::DanglingPower)),
            _ => return Err(self.unexpected()),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.integer()?;
            return Ok(WordExpr::power(base, exp));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, SyntaxError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(SyntaxErrorKind::DanglingPower));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let magnitude: i64 = digits.parse().map_err(|_| SyntaxError {
            offset: start,
            kind: SyntaxErrorKind::ExponentOverflow,
        })?;
        Ok(if negative { -magnitude } else { magnitude })
    }
}

pub fn parse_word(text: &str) -> Result<WordExpr, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.word(0)
}

/// Evaluate in the built group, multiplying factors in its composition order.
pub fn eval_word(expr: &WordExpr, group: &TorusGroup) -> GroupElement {
    match expr {
        WordExpr::Identity => group.identity(),
        WordExpr::Letter(l) => group.generator(*l),
        WordExpr::Inverse(w) => group.inv(eval_word(w, group)),
        WordExpr::Power(w, n) => group.pow(eval_word(w, group), *n),
        WordExpr::Concat(ws) => ws
            .iter()
            .fold(group.identity(), |acc, w| group.mul(acc, eval_word(w, group))),
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str, group: &TorusGroup) -> Result<GroupElement, SyntaxError> {
    parse_word(text).map(|w| eval_word(&w, group))
}

fn push_factor(out: &mut String, letter: char, exp: u8) {
    if exp == 0 {
        return;
    }
    if !out.is_empty() {
        out.push(' ');
    }
    out.push(letter);
    if exp != 1 {
        out.push('^');
        out.push_str(&exp.to_string());
    }
}

/// Vertex label `a^k b^l` of an element, `k, l` in `0..8`, zero factors
/// omitted and `e` for the identity.
pub fn format_normal(g: GroupElement) -> String {
    let (k, l) = g.normal_form();
    let mut out = String::new();
    push_factor(&mut out, 'a', k);
    push_factor(&mut out, 'b', l);
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// The canonical path word `a^k b^m` equal to `g`. Unlike the label from
/// [`format_normal`], this string evaluates back to `g`.
pub fn format_word(g: GroupElement, group: &TorusGroup) -> String {
    let (k, m) = group.path_exponents(g);
    let mut out = String::new();
    push_factor(&mut out, 'a', k);
    push_factor(&mut out, 'b', m);
    if out.is_empty() {
        out.push('e');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NormalFormError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("`{0}` is not a label of the form a^k b^l")]
    NotALabel(String),
}

/// Read a vertex label as printed by [`format_normal`]. Exponents may be any
/// integer and are reduced mod 8, so `a^3 b^-2` names the same vertex as
/// `a^3 b^6`.
pub fn parse_normal(text: &str) -> Result<GroupElement, NormalFormError> {
    let expr = parse_word(text)?;
    let not_label = || NormalFormError::NotALabel(text.trim().to_string());
    let factor = |w: &WordExpr| -> Option<(Letter, i64)> {
        match w {
            WordExpr::Letter(l) => Some((*l, 1)),
            WordExpr::Power(inner, n) => match **inner {
                WordExpr::Letter(l) => Some((l, *n)),
                _ => None,
            },
            _ => None,
        }
    };
    let (k, l) = match &expr {
        WordExpr::Identity => (0, 0),
        WordExpr::Concat(ws) if ws.len() == 2 => match (factor(&ws[0]), factor(&ws[1])) {
            (Some((Letter::A, k)), Some((Letter::B, l))) => (k, l),
            _ => return Err(not_label()),
        },
        single => match factor(single).ok_or_else(not_label)? {
            (Letter::A, k) => (k, 0),
            (Letter::B, l) => (0, l),
        },
    };
    let side = SIDE as i64;
    Ok(GroupElement::from_normal(k.rem_euclid(side), l.rem_euclid(side)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Convention};
    use alloc::vec;

    fn group() -> TorusGroup {
        build_group(Convention::ALL[0]).unwrap()
    }

    #[test]
    fn parses_conjugated_power() {
        let ab = WordExpr::Concat(vec![WordExpr::a(), WordExpr::b()]);
        let expected = WordExpr::Concat(vec![
            WordExpr::power(ab.clone(), -3),
            WordExpr::a(),
            WordExpr::power(ab, 3),
        ]);
        assert_eq!(parse_word("(ab)^-3 a (ab)^3").unwrap(), expected);
        assert_eq!(parse_word("(ab)^-3a(ab)^3").unwrap(), expected);
    }

    #[test]
    fn single_letter() {
        assert_eq!(parse_word("a").unwrap(), WordExpr::a());
        assert_eq!(parse_word(" ( b ) ").unwrap(), WordExpr::b());
        assert_eq!(parse_word("e").unwrap(), WordExpr::Identity);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let err = |s: &str| parse_word(s).unwrap_err();
        assert_eq!(err("a^"), SyntaxError { offset: 2, kind: SyntaxErrorKind::DanglingPower });
        assert_eq!(err("^2").kind, SyntaxErrorKind::DanglingPower);
        assert_eq!(err(""), SyntaxError { offset: 0, kind: SyntaxErrorKind::Empty });
        assert_eq!(err("   ").kind, SyntaxErrorKind::Empty);
        assert_eq!(err("(ab"), SyntaxError { offset: 0, kind: SyntaxErrorKind::UnclosedParen });
        assert_eq!(err("ab)"), SyntaxError { offset: 2, kind: SyntaxErrorKind::UnexpectedCloseParen });
        assert_eq!(err("a c"), SyntaxError { offset: 2, kind: SyntaxErrorKind::UnexpectedChar('c') });
        assert_eq!(err("()").kind, SyntaxErrorKind::Empty);
        assert_eq!(err("a^-").kind, SyntaxErrorKind::DanglingPower);
        assert_eq!(err("a^99999999999999999999").kind, SyntaxErrorKind::ExponentOverflow);
        assert_eq!(err("aé").kind, SyntaxErrorKind::UnexpectedChar('é'));
    }

    #[test]
    fn conjugate_of_a_by_ab_cubed() {
        let g = group();
        assert_eq!(eval_str("(ab)^-3 a (ab)^3", &g).unwrap(), GroupElement::from_normal(7, 6));
    }

    #[test]
    fn cancellation() {
        let g = group();
        assert!(eval_str("a a^-1", &g).unwrap().is_identity());
        assert!(eval_str("(a b^3)^0", &g).unwrap().is_identity());
        assert!(eval_str("b^8", &g).unwrap().is_identity());
    }

    #[test]
    fn labels() {
        assert_eq!(format_normal(GroupElement::IDENTITY), "e");
        assert_eq!(format_normal(GroupElement::from_normal(7, 6)), "a^7 b^6");
        assert_eq!(format_normal(GroupElement::from_normal(0, 3)), "b^3");
        assert_eq!(format_normal(GroupElement::from_normal(1, 2)), "a b^2");
        assert_eq!(format_normal(GroupElement::from_normal(5, 0)), "a^5");
    }

    #[test]
    fn label_and_word_differ_on_down_columns() {
        let g = group();
        let x = GroupElement::from_normal(3, 2);
        assert_eq!(format_normal(x), "a^3 b^2");
        assert_eq!(format_word(x, &g), "a^3 b^6");
        assert_eq!(eval_str(&format_word(x, &g), &g).unwrap(), x);
    }

    #[test]
    fn normal_labels_parse_back() {
        for x in GroupElement::all() {
            assert_eq!(parse_normal(&format_normal(x)).unwrap(), x);
        }
        assert_eq!(parse_normal("a^3 b^-2").unwrap(), GroupElement::from_normal(3, 6));
        assert_eq!(parse_normal("a^3b^2").unwrap(), GroupElement::from_normal(3, 2));
        assert!(matches!(parse_normal("b a"), Err(NormalFormError::NotALabel(_))));
        assert!(matches!(parse_normal("(ab)^2"), Err(NormalFormError::NotALabel(_))));
        assert!(matches!(parse_normal("a^"), Err(NormalFormError::Syntax(_))));
    }

    #[test]
    fn substitution_is_letterwise() {
        let w = parse_word("a b^-1").unwrap();
        let f = w.substitute(&parse_word("ab").unwrap(), &WordExpr::b());
        assert_eq!(f.to_string(), "(a b) b^-1");
        let g = group();
        assert_eq!(eval_word(&f, &g), g.generator_a());
    }

    #[test]
    fn display_parenthesizes_nested_factors() {
        let w = WordExpr::Concat(vec![
            WordExpr::a(),
            WordExpr::Concat(vec![WordExpr::b(), WordExpr::a()]),
            WordExpr::inverse(WordExpr::power(WordExpr::b(), 2)),
        ]);
        assert_eq!(w.to_string(), "a (b a) (b^2)^-1");
        let g = group();
        assert_eq!(eval_str(&w.to_string(), &g).unwrap(), eval_word(&w, &g));
    }
}
