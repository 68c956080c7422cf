//! Long virtual knot diagrams as traversal-ordered pass sequences.
//!
//! Text format, one diagram per file:
//!
//! ```text
//! longknot right-trefoil     # optional header
//! V1- U1+ O2+ V1- O1+ U2+
//! ```
//!
//! `O<id><sign>` and `U<id><sign>` are the over and under passes of a
//! classical crossing. `V<id>` passes a virtual crossing and maps the color
//! forward through `f`; `V<id>-` maps it through `f^-1`, and `V<id>+` is an
//! explicit spelling of the forward pass. Classical and virtual ids live in
//! separate namespaces.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::fmap::FDirection;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pass {
    Over { id: u32, sign: Sign },
    Under { id: u32, sign: Sign },
    Virtual { id: u32, direction: FDirection },
}

impl Pass {
    pub fn id(&self) -> u32 {
        match *self {
            Pass::Over { id, .. } | Pass::Under { id, .. } | Pass::Virtual { id, .. } => id,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, Pass::Virtual { .. })
    }

    /// Under and virtual passes end the current arc.
    pub fn breaks_arc(&self) -> bool {
        !matches!(self, Pass::Over { .. })
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pass::Over { id, sign } => write!(f, "O{id}{}", sign.symbol()),
            Pass::Under { id, sign } => write!(f, "U{id}{}", sign.symbol()),
            Pass::Virtual { id, direction: FDirection::Forward } => write!(f, "V{id}"),
            Pass::Virtual { id, direction: FDirection::Inverse } => write!(f, "V{id}-"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    UnknownPass(char),
    MissingId,
    IdOverflow,
    MissingSign,
    TrailingCharacters,
    MissingName,
    MisplacedHeader,
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxErrorKind::UnknownPass(c) => write!(f, "unknown pass kind {c:?} (expected O, U or V)"),
            SyntaxErrorKind::MissingId => f.write_str("missing crossing id"),
            SyntaxErrorKind::IdOverflow => f.write_str("crossing id too large"),
            SyntaxErrorKind::MissingSign => f.write_str("classical pass needs a sign + or -"),
            SyntaxErrorKind::TrailingCharacters => f.write_str("unexpected characters after pass"),
            SyntaxErrorKind::MissingName => f.write_str("header needs a diagram name"),
            SyntaxErrorKind::MisplacedHeader => f.write_str("header must come before the first pass"),
        }
    }
}

/// Position is 1-based line and column (in characters) plus the byte offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
    pub kind: SyntaxErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("crossing {id} has no over pass")]
    MissingOver { id: u32 },
    #[error("crossing {id} has no under pass")]
    MissingUnder { id: u32 },
    #[error("crossing {id} has more than one {pass} pass")]
    DuplicatePass { id: u32, pass: &'static str },
    #[error("crossing {id} has different signs on its over and under passes")]
    SignMismatch { id: u32 },
    #[error("virtual crossing {id} is passed {count} times instead of twice")]
    VirtualCount { id: u32, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrossingClass {
    EarlyOver,
    EarlyUnder,
}

/// Arc bookkeeping for one pass. Arcs are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PassArcs {
    Carry { arc: usize },
    Break { incoming: usize, outgoing: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSegmentation {
    pub arc_count: usize,
    pub passes: Vec<PassArcs>,
}

impl ArcSegmentation {
    /// The arc lying over classical crossing `id`, if the crossing exists.
    pub fn over_arc(&self, diagram: &LongDiagram, id: u32) -> Option<usize> {
        diagram.passes.iter().zip(&self.passes).find_map(|(p, a)| match (p, a) {
            (Pass::Over { id: i, .. }, PassArcs::Carry { arc }) if *i == id => Some(*arc),
            _ => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hand {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LongDiagram {
    pub name: Option<String>,
    pub passes: Vec<Pass>,
}

impl LongDiagram {
    /// Validate the pairing of a pass list.
    pub fn new(name: Option<String>, passes: Vec<Pass>) -> Result<Self, PairingError> {
        check_pairing(&passes)?;
        Ok(LongDiagram { name, passes })
    }

    pub fn is_classical(&self) -> bool {
        !self.passes.iter().any(Pass::is_virtual)
    }

    pub fn arc_count(&self) -> usize {
        self.passes.iter().filter(|p| p.breaks_arc()).count() + 1
    }

    pub fn classical_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.passes.iter().filter_map(|p| match p {
            Pass::Over { id, .. } => Some(*id),
            _ => None,
        })
    }

    pub fn classify(&self) -> BTreeMap<u32, CrossingClass> {
        let mut out = BTreeMap::new();
        for p in &self.passes {
            match *p {
                Pass::Over { id, .. } => {
                    out.entry(id).or_insert(CrossingClass::EarlyOver);
                }
                Pass::Under { id, .. } => {
                    out.entry(id).or_insert(CrossingClass::EarlyUnder);
                }
                Pass::Virtual { .. } => {}
            }
        }
        out
    }

    pub fn arcs(&self) -> ArcSegmentation {
        let mut arc = 1;
        let passes = self
            .passes
            .iter()
            .map(|p| {
                if p.breaks_arc() {
                    arc += 1;
                    PassArcs::Break {
                        incoming: arc - 1,
                        outgoing: arc,
                    }
                } else {
                    PassArcs::Carry { arc }
                }
            })
            .collect();
        ArcSegmentation { arc_count: arc, passes }
    }
}

impl fmt::Display for LongDiagram {
    /// Canonical text: header line when named, then the passes on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "longknot {name}")?;
        }
        for (i, p) in self.passes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.passes.is_empty() {
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_pairing(passes: &[Pass]) -> Result<(), PairingError> {
    let mut classical: BTreeMap<u32, (Option<Sign>, Option<Sign>)> = BTreeMap::new();
    let mut virtuals: BTreeMap<u32, usize> = BTreeMap::new();
    for p in passes {
        match *p {
            Pass::Over { id, sign } => {
                let slot = &mut classical.entry(id).or_default().0;
                if slot.replace(sign).is_some() {
                    return Err(PairingError::DuplicatePass { id, pass: "over" });
                }
            }
            Pass::Under { id, sign } => {
                let slot = &mut classical.entry(id).or_default().1;
                if slot.replace(sign).is_some() {
                    return Err(PairingError::DuplicatePass { id, pass: "under" });
                }
            }
            Pass::Virtual { id, .. } => *virtuals.entry(id).or_default() += 1,
        }
    }
    for (&id, signs) in &classical {
        match *signs {
            (None, _) => return Err(PairingError::MissingOver { id }),
            (_, None) => return Err(PairingError::MissingUnder { id }),
            (Some(o), Some(u)) if o != u => return Err(PairingError::SignMismatch { id }),
            _ => {}
        }
    }
    if let Some((&id, &count)) = virtuals.iter().find(|(_, &c)| c != 2) {
        return Err(PairingError::VirtualCount { id, count });
    }
    Ok(())
}

struct Cursor<'a> {
    text: &'a str,
    line: usize,
    line_start: usize,
}

impl Cursor<'_> {
    fn error(&self, offset: usize, kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError {
            line: self.line,
            column: self.text[self.line_start..offset].chars().count() + 1,
            offset,
            kind,
        }
    }
}

fn parse_pass(token: &str, offset: usize, cur: &Cursor<'_>) -> Result<Pass, SyntaxError> {
    let mut chars = token.char_indices().peekable();
    let (_, kind) = chars.next().expect("tokens are non-empty");
    if !matches!(kind, 'O' | 'U' | 'V') {
        return Err(cur.error(offset, SyntaxErrorKind::UnknownPass(kind)));
    }
    let digits_end = token[1..]
        .find(|c: char| !c.is_ascii_digit())
        .map_or(token.len(), |i| i + 1);
    if digits_end == 1 {
        return Err(cur.error(offset + 1, SyntaxErrorKind::MissingId));
    }
    let id: u32 = token[1..digits_end]
        .parse()
        .map_err(|_| cur.error(offset + 1, SyntaxErrorKind::IdOverflow))?;
    let rest = &token[digits_end..];
    let sign = match rest.chars().next() {
        Some('+') => Some(Sign::Plus),
        Some('-') => Some(Sign::Minus),
        _ => None,
    };
    let after_sign = digits_end + usize::from(sign.is_some());
    if after_sign < token.len() {
        return Err(cur.error(offset + after_sign, SyntaxErrorKind::TrailingCharacters));
    }
    match (kind, sign) {
        ('V', None | Some(Sign::Plus)) => Ok(Pass::Virtual {
            id,
            direction: FDirection::Forward,
        }),
        ('V', Some(Sign::Minus)) => Ok(Pass::Virtual {
            id,
            direction: FDirection::Inverse,
        }),
        (_, None) => Err(cur.error(offset + digits_end, SyntaxErrorKind::MissingSign)),
        ('O', Some(sign)) => Ok(Pass::Over { id, sign }),
        (_, Some(sign)) => Ok(Pass::Under { id, sign }),
    }
}

fn tokenize(text: &str) -> Result<(Option<String>, Vec<Pass>), SyntaxError> {
    let mut name = None;
    let mut passes = Vec::new();
    let mut seen_content = false;
    let mut cur = Cursor {
        text,
        line: 0,
        line_start: 0,
    };
    for line in text.split_inclusive('\n') {
        cur.line += 1;
        let body = line.split('#').next().unwrap_or("");
        let mut tokens = body
            .split_whitespace()
            .map(|t| (t, t.as_ptr() as usize - text.as_ptr() as usize))
            .peekable();
        if let Some(&(first, offset)) = tokens.peek() {
            if first == "longknot" {
                if seen_content {
                    return Err(cur.error(offset, SyntaxErrorKind::MisplacedHeader));
                }
                tokens.next();
                let rest = body[offset - cur.line_start + first.len()..].trim();
                if rest.is_empty() {
                    return Err(cur.error(offset + first.len(), SyntaxErrorKind::MissingName));
                }
                name = Some(rest.to_string());
                seen_content = true;
                cur.line_start += line.len();
                continue;
            }
        }
        for (token, offset) in tokens {
            seen_content = true;
            passes.push(parse_pass(token, offset, &cur)?);
        }
        cur.line_start += line.len();
    }
    Ok((name, passes))
}

pub fn parse_diagram(text: &str) -> Result<LongDiagram, DiagramError> {
    let (name, passes) = tokenize(text)?;
    Ok(LongDiagram::new(name, passes)?)
}

pub const RIGHT_TREFOIL: &str = "longknot right-trefoil\nV1- U1+ O2+ V1- O1+ U2+\n";
pub const LEFT_TREFOIL: &str = "longknot left-trefoil\nU1- V1- U2- O1- V1 O2-\n";

pub fn builtin_trefoil(hand: Hand) -> LongDiagram {
    let text = match hand {
        Hand::Right => RIGHT_TREFOIL,
        Hand::Left => LEFT_TREFOIL,
    };
    parse_diagram(text).expect("builtin diagrams are valid")
}

/// Look up `builtin:right-trefoil` style names (without the prefix).
pub fn builtin(name: &str) -> Option<LongDiagram> {
    match name {
        "right-trefoil" => Some(builtin_trefoil(Hand::Right)),
        "left-trefoil" => Some(builtin_trefoil(Hand::Left)),
        "unknot" => Some(LongDiagram {
            name: Some("unknot".into()),
            passes: Vec::new(),
        }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn parse(t: &str) -> LongDiagram {
        parse_diagram(t).unwrap()
    }

    #[test]
    fn unknot_has_one_arc() {
        let d = parse("longknot unknot\n");
        assert_eq!(d.name.as_deref(), Some("unknot"));
        assert!(d.passes.is_empty());
        assert_eq!(d.arcs(), ArcSegmentation { arc_count: 1, passes: vec![] });
    }

    #[test]
    fn sign_mismatch() {
        assert_eq!(
            parse_diagram("O1+ U1-"),
            Err(DiagramError::Pairing(PairingError::SignMismatch { id: 1 }))
        );
    }

    #[test]
    fn pairing_errors() {
        assert_eq!(
            parse_diagram("U3+"),
            Err(PairingError::MissingOver { id: 3 }.into())
        );
        assert_eq!(
            parse_diagram("O3+"),
            Err(PairingError::MissingUnder { id: 3 }.into())
        );
        assert_eq!(
            parse_diagram("O3+ U3+ O3+"),
            Err(PairingError::DuplicatePass { id: 3, pass: "over" }.into())
        );
        assert_eq!(
            parse_diagram("V2 V2- V2"),
            Err(PairingError::VirtualCount { id: 2, count: 3 }.into())
        );
        assert_eq!(
            parse_diagram("V2"),
            Err(PairingError::VirtualCount { id: 2, count: 1 }.into())
        );
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = |t: &str| match parse_diagram(t) {
            Err(DiagramError::Syntax(e)) => e,
            other => panic!("{other:?}"),
        };
        let e = err("O1+ X1+");
        assert_eq!((e.line, e.column, e.offset), (1, 5, 4));
        assert_eq!(e.kind, SyntaxErrorKind::UnknownPass('X'));
        let e = err("longknot k\nO1+\n  U1");
        assert_eq!((e.line, e.column), (3, 5));
        assert_eq!(e.kind, SyntaxErrorKind::MissingSign);
        assert_eq!(err("O+").kind, SyntaxErrorKind::MissingId);
        assert_eq!(err("O1+x").kind, SyntaxErrorKind::TrailingCharacters);
        assert_eq!(err("O99999999999+").kind, SyntaxErrorKind::IdOverflow);
        assert_eq!(err("longknot").kind, SyntaxErrorKind::MissingName);
        assert_eq!(err("O1+ U1+\nlongknot late").kind, SyntaxErrorKind::MisplacedHeader);
    }

    #[test]
    fn comments_and_layout() {
        let d = parse("# leading\nlongknot k # trailing\n O1+ # over\nU1+\n");
        assert_eq!(d.name.as_deref(), Some("k"));
        assert_eq!(d.passes.len(), 2);
    }

    #[test]
    fn virtual_spellings() {
        let d = parse("V1+ V1-");
        assert_eq!(d.to_string(), "V1 V1-\n");
    }

    #[test]
    fn classification_follows_pass_order() {
        let d = parse("O1+ V2 U1+ V2");
        assert_eq!(d.classify()[&1], CrossingClass::EarlyOver);
        let d = parse("U1+ O1+");
        assert_eq!(d.classify()[&1], CrossingClass::EarlyUnder);
    }

    #[test]
    fn one_virtual_crossing_makes_three_arcs() {
        let d = parse("V1 V1");
        assert_eq!(d.arc_count(), 3);
        assert_eq!(
            d.arcs().passes,
            vec![
                PassArcs::Break { incoming: 1, outgoing: 2 },
                PassArcs::Break { incoming: 2, outgoing: 3 }
            ]
        );
    }

    #[test]
    fn right_trefoil_structure() {
        let d = builtin_trefoil(Hand::Right);
        let arcs = d.arcs();
        assert_eq!(arcs.arc_count, 5);
        assert_eq!(arcs.over_arc(&d, 1), Some(4));
        assert_eq!(arcs.over_arc(&d, 2), Some(3));
        let class = d.classify();
        assert_eq!(class[&1], CrossingClass::EarlyUnder);
        assert_eq!(class[&2], CrossingClass::EarlyOver);
    }

    #[test]
    fn left_trefoil_structure() {
        let d = builtin_trefoil(Hand::Left);
        let arcs = d.arcs();
        assert_eq!(arcs.arc_count, 5);
        // b2 ⋆ b4 = b1 and b4 ⋆ b5 = b3: both crossings are early-under
        assert!(d.classify().values().all(|c| *c == CrossingClass::EarlyUnder));
        assert_eq!(arcs.over_arc(&d, 1), Some(4));
        assert_eq!(arcs.over_arc(&d, 2), Some(5));
    }

    #[test]
    fn trefoils_share_crossing_structure() {
        let shape = |d: &LongDiagram| {
            let mut kinds: Vec<(char, u32)> = d
                .passes
                .iter()
                .map(|p| match p {
                    Pass::Over { id, .. } => ('O', *id),
                    Pass::Under { id, .. } => ('U', *id),
                    Pass::Virtual { id, .. } => ('V', *id),
                })
                .collect();
            kinds.sort();
            kinds
        };
        let right = builtin_trefoil(Hand::Right);
        let left = builtin_trefoil(Hand::Left);
        assert_eq!(shape(&right), shape(&left));
        assert_ne!(right.passes, left.passes);
        let signs = |d: &LongDiagram| {
            d.passes
                .iter()
                .filter_map(|p| match p {
                    Pass::Over { sign, .. } => Some(*sign),
                    _ => None,
                })
                .collect::<Vec<_>>()
        };
        assert!(signs(&right).iter().all(|s| *s == Sign::Plus));
        assert!(signs(&left).iter().all(|s| *s == Sign::Minus));
    }

    #[test]
    fn builtins_round_trip() {
        for text in [RIGHT_TREFOIL, LEFT_TREFOIL] {
            assert_eq!(parse(text).to_string(), text);
        }
        assert!(builtin("nope").is_none());
        assert_eq!(builtin("unknot").unwrap().arc_count(), 1);
    }
}
