//! `f` tables as plain text.
//!
//! One pair per line, source label then image label:
//!
//! ```text
//! # identity on the first two elements
//! e e
//! b b
//! a^3b^2 a^3 b^2
//! ```
//!
//! Labels are vertex labels `a^k b^l`. Spaces inside a label are allowed;
//! a line splits into exactly one pair of labels because every label is at
//! most one `a` factor followed by at most one `b` factor. Blank lines and
//! text after `#` are ignored. Elements missing from the table are left
//! undefined.

use lvknot::fmap::{FCandidate, FError};
use lvknot::group::{GroupElement, TorusGroup};
use lvknot::words::{format_normal, parse_normal};

#[derive(Debug, thiserror::Error)]
pub enum FTableError {
    #[error("line {line}: expected two labels `a^k b^l`, found {text:?}")]
    BadLine { line: usize, text: String },
    #[error("line {line}: {source}")]
    Duplicate { line: usize, source: FError },
}

fn split_pair(body: &str) -> Option<(GroupElement, GroupElement)> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    let mut splits = (1..tokens.len()).filter_map(|k| {
        let from = parse_normal(&tokens[..k].join(" ")).ok()?;
        let to = parse_normal(&tokens[k..].join(" ")).ok()?;
        Some((from, to))
    });
    let first = splits.next()?;
    splits.next().is_none().then_some(first)
}

pub fn parse_table(text: &str) -> Result<Vec<(GroupElement, GroupElement)>, FTableError> {
    let mut pairs = Vec::new();
    let mut seen = [false; 64];
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (from, to) = split_pair(body).ok_or_else(|| FTableError::BadLine {
            line: i + 1,
            text: body.to_string(),
        })?;
        if std::mem::replace(&mut seen[from.index()], true) {
            return Err(FTableError::Duplicate {
                line: i + 1,
                source: FError::DuplicateEntry { element: from },
            });
        }
        pairs.push((from, to));
    }
    Ok(pairs)
}

pub fn load_candidate(text: &str, group: &TorusGroup) -> Result<FCandidate, FTableError> {
    let pairs = parse_table(text)?;
    FCandidate::from_table(group, &pairs).map_err(|source| FTableError::Duplicate { line: 0, source })
}

/// Compact label without inner spaces, e.g. `a^3b^2`.
fn compact(g: GroupElement) -> String {
    format_normal(g).replace(' ', "")
}

/// One line per defined element, in element order.
pub fn format_table(f: &FCandidate) -> String {
    f.pairs().map(|(x, y)| format!("{} {}\n", compact(x), compact(y))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lvknot::group::{build_group, Convention};

    fn group() -> TorusGroup {
        build_group(Convention::ALL[0]).unwrap()
    }

    #[test]
    fn labels_with_spaces_split_uniquely() {
        let pairs = parse_table("a^3 b^2 a^7 b\na b a\n a  b^2 b\n").unwrap();
        let l = GroupElement::from_normal;
        assert_eq!(pairs, [(l(3, 2), l(7, 1)), (l(1, 1), l(1, 0)), (l(1, 2), l(0, 1))]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let pairs = parse_table("# header\n\ne e # identity\n").unwrap();
        assert_eq!(pairs, [(GroupElement::IDENTITY, GroupElement::IDENTITY)]);
    }

    #[test]
    fn errors_name_the_line() {
        assert!(matches!(parse_table("e e\nb a a"), Err(FTableError::BadLine { line: 2, .. })));
        assert!(matches!(parse_table("a\n"), Err(FTableError::BadLine { line: 1, .. })));
        assert!(matches!(parse_table("e e\ne b"), Err(FTableError::Duplicate { line: 2, .. })));
    }

    #[test]
    fn identity_table_round_trips() {
        let g = group();
        let f = FCandidate::identity(&g);
        let text = format_table(&f);
        assert_eq!(text.lines().count(), 64);
        let back = load_candidate(&text, &g).unwrap();
        assert!(back.is_bijective() && back.is_multiplicative());
        assert_eq!(format_table(&back), text);
    }

    #[test]
    fn shear_round_trips() {
        let g = group();
        let f = FCandidate::shear(&g);
        let back = load_candidate(&format_table(&f), &g).unwrap();
        assert!(g.elements().all(|x| back.forward(x) == f.forward(x)));
    }
}
