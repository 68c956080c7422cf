//! Candidates for the unary map `f` of the biquandle.
//!
//! The intended map sends `a -> ab`, `b -> b` and is supposed to be
//! multiplicative. In this group `ab` has order 2 while `a` has order 8, so no
//! multiplicative bijection with `f(a) = ab` exists; each candidate below
//! therefore carries a verdict recording exactly where it falls short.
//!
//! Candidates may be partial and need not be injective. Coloring treats
//! `out = f^-1(in)` as the relation `f(out) = in`, so only `f` itself has to
//! be a function.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{GroupElement, LetterPath, TorusGroup, ORDER};
use crate::words::{eval_word, Letter, WordExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FKind {
    /// `a^k b^m -> (ab)^k b^m` on canonical path words.
    Substitution,
    /// `a^k b^m -> a^k b^(k+m)` on canonical path words.
    Shear,
    /// A user-supplied table.
    Table,
    /// The substitution, evaluated only on an explicit list of words.
    SeededSubstitution,
}

impl fmt::Display for FKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FKind::Substitution => "substitution",
            FKind::Shear => "shear",
            FKind::Table => "table",
            FKind::SeededSubstitution => "seeded-substitution",
        })
    }
}

/// Which way `f` is applied along a virtual pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FDirection {
    Forward,
    Inverse,
}

/// A word at which the substitution is evaluated. `Forward` records
/// `w -> f(w)`; `Inverse` records `f^-1(w) -> w`, where `f^-1` is the
/// substitution `a -> a b^-1`, `b -> b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub word: WordExpr,
    pub direction: FDirection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinednessWitness {
    pub element: GroupElement,
    pub first: WordExpr,
    pub second: WordExpr,
    pub first_image: GroupElement,
    pub second_image: GroupElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BijectivityDefect {
    Collision {
        first: GroupElement,
        second: GroupElement,
        image: GroupElement,
    },
    Undefined {
        at: GroupElement,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplicativityWitness {
    pub g: GroupElement,
    pub h: GroupElement,
    /// `f(gh)`
    pub image_of_product: GroupElement,
    /// `f(g) f(h)`
    pub product_of_images: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVerdict {
    /// Number of elements with a defined image.
    pub defined: usize,
    /// Extension along generator edges; only computed for the substitution.
    pub well_defined: Option<Result<(), WellDefinednessWitness>>,
    pub bijective: Result<(), BijectivityDefect>,
    pub multiplicative: Result<(), MultiplicativityWitness>,
    /// Pairs `(g, h)` where `f(g)`, `f(h)` and `f(gh)` are all defined.
    pub multiplicative_pairs_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FError {
    #[error("table lists {element:?} twice")]
    DuplicateEntry { element: GroupElement },
    #[error("seeds disagree at {element:?}: {first:?} vs {second:?}")]
    SeedConflict {
        element: GroupElement,
        first: GroupElement,
        second: GroupElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FCandidate {
    kind: FKind,
    forward: [Option<GroupElement>; ORDER],
    preimages: Vec<Vec<GroupElement>>,
    verdict: FVerdict,
}

fn ab() -> WordExpr {
    WordExpr::Concat(vec![WordExpr::a(), WordExpr::b()])
}

fn a_b_inv() -> WordExpr {
    WordExpr::Concat(vec![WordExpr::a(), WordExpr::power(WordExpr::b(), -1)])
}

impl FCandidate {
    fn new(
        kind: FKind,
        forward: [Option<GroupElement>; ORDER],
        well_defined: Option<Result<(), WellDefinednessWitness>>,
        group: &TorusGroup,
    ) -> Self {
        let mut preimages = vec![Vec::new(); ORDER];
        for x in GroupElement::all() {
            if let Some(y) = forward[x.index()] {
                preimages[y.index()].push(x);
            }
        }
        let defined = forward.iter().filter(|y| y.is_some()).count();
        let bijective = check_bijective(&forward, &preimages);
        let (multiplicative, multiplicative_pairs_checked) = check_multiplicative(&forward, group);
        FCandidate {
            kind,
            forward,
            preimages,
            verdict: FVerdict {
                defined,
                well_defined,
                bijective,
                multiplicative,
                multiplicative_pairs_checked,
            },
        }
    }

    /// Substitution `a -> ab`, `b -> b` applied to each element's canonical
    /// path word `a^k b^m`. The verdict also records whether extending the
    /// substitution along generator edges is consistent at all.
    pub fn substitution(group: &TorusGroup) -> Self {
        let ab = group.mul(group.generator_a(), group.generator_b());
        let b = group.generator_b();
        let mut forward = [None; ORDER];
        for x in group.elements() {
            let (k, m) = group.path_exponents(x);
            forward[x.index()] = Some(group.mul(group.pow(ab, k as i64), group.pow(b, m as i64)));
        }
        let well_defined = Some(extend_along_edges(group, ab, b));
        Self::new(FKind::Substitution, forward, well_defined, group)
    }

    /// Bijection `a^k b^m -> a^k b^(k+m)` on canonical path words.
    pub fn shear(group: &TorusGroup) -> Self {
        let mut forward = [None; ORDER];
        for x in group.elements() {
            let (k, m) = group.path_exponents(x);
            forward[x.index()] = Some(group.path_word(k as i64, k as i64 + m as i64));
        }
        Self::new(FKind::Shear, forward, None, group)
    }

    /// Explicit `(from, to)` pairs; elements not listed stay undefined.
    pub fn from_table(group: &TorusGroup, pairs: &[(GroupElement, GroupElement)]) -> Result<Self, FError> {
        let mut forward = [None; ORDER];
        for &(x, y) in pairs {
            if forward[x.index()].replace(y).is_some() {
                return Err(FError::DuplicateEntry { element: x });
            }
        }
        Ok(Self::new(FKind::Table, forward, None, group))
    }

    pub fn identity(group: &TorusGroup) -> Self {
        let pairs: Vec<_> = group.elements().map(|x| (x, x)).collect();
        Self::from_table(group, &pairs).expect("identity table has distinct entries")
    }

    /// The substitution evaluated only at the given words.
    pub fn seeded_substitution(group: &TorusGroup, seeds: &[Seed]) -> Result<Self, FError> {
        let f_a = ab();
        let f_inv_a = a_b_inv();
        let mut forward: [Option<GroupElement>; ORDER] = [None; ORDER];
        for seed in seeds {
            let (from, to) = match seed.direction {
                FDirection::Forward => (
                    eval_word(&seed.word, group),
                    eval_word(&seed.word.substitute(&f_a, &WordExpr::b()), group),
                ),
                FDirection::Inverse => (
                    eval_word(&seed.word.substitute(&f_inv_a, &WordExpr::b()), group),
                    eval_word(&seed.word, group),
                ),
            };
            match forward[from.index()] {
                Some(existing) if existing != to => {
                    return Err(FError::SeedConflict {
                        element: from,
                        first: existing,
                        second: to,
                    })
                }
                _ => forward[from.index()] = Some(to),
            }
        }
        Ok(Self::new(FKind::SeededSubstitution, forward, None, group))
    }

    pub fn kind(&self) -> FKind {
        self.kind
    }

    pub fn verdict(&self) -> &FVerdict {
        &self.verdict
    }

    pub fn forward(&self, x: GroupElement) -> Option<GroupElement> {
        self.forward[x.index()]
    }

    /// Every `x` with `f(x) = y`, in index order.
    pub fn preimages(&self, y: GroupElement) -> &[GroupElement] {
        &self.preimages[y.index()]
    }

    /// `f^-1(y)` when `y` has exactly one preimage.
    pub fn inverse(&self, y: GroupElement) -> Option<GroupElement> {
        match self.preimages(y) {
            [x] => Some(*x),
            _ => None,
        }
    }

    pub fn is_total(&self) -> bool {
        self.verdict.defined == ORDER
    }

    pub fn is_bijective(&self) -> bool {
        self.verdict.bijective.is_ok()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.verdict.multiplicative.is_ok()
    }

    /// Defined `(x, f(x))` pairs in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (GroupElement, GroupElement)> + '_ {
        GroupElement::all().filter_map(|x| self.forward(x).map(|y| (x, y)))
    }
}

fn check_bijective(
    forward: &[Option<GroupElement>; ORDER],
    preimages: &[Vec<GroupElement>],
) -> Result<(), BijectivityDefect> {
    for (image, pre) in preimages.iter().enumerate() {
        if let [first, second, ..] = pre.as_slice() {
            return Err(BijectivityDefect::Collision {
                first: *first,
                second: *second,
                image: GroupElement::from_index(image),
            });
        }
    }
    if let Some(at) = GroupElement::all().find(|x| forward[x.index()].is_none()) {
        return Err(BijectivityDefect::Undefined { at });
    }
    Ok(())
}

fn check_multiplicative(
    forward: &[Option<GroupElement>; ORDER],
    group: &TorusGroup,
) -> (Result<(), MultiplicativityWitness>, u64) {
    let mut checked = 0u64;
    let mut first_failure = None;
    for g in group.elements() {
        let Some(fg) = forward[g.index()] else { continue };
        for h in group.elements() {
            let Some(fh) = forward[h.index()] else { continue };
            let Some(fgh) = forward[group.mul(g, h).index()] else { continue };
            checked += 1;
            let prod = group.mul(fg, fh);
            if fgh != prod && first_failure.is_none() {
                first_failure = Some(MultiplicativityWitness {
                    g,
                    h,
                    image_of_product: fgh,
                    product_of_images: prod,
                });
            }
        }
    }
    (first_failure.map_or(Ok(()), Err), checked)
}

/// Breadth-first extension of `a -> a_image`, `b -> b_image` along the
/// generator edges; a clash means the substitution is not a function on the
/// group.
fn extend_along_edges(
    group: &TorusGroup,
    a_image: GroupElement,
    b_image: GroupElement,
) -> Result<(), WellDefinednessWitness> {
    let steps = [
        (Letter::A, 1, a_image),
        (Letter::B, 1, b_image),
        (Letter::A, -1, group.inv(a_image)),
        (Letter::B, -1, group.inv(b_image)),
    ];
    let mut image: Vec<Option<(GroupElement, LetterPath)>> = vec![None; ORDER];
    image[0] = Some((group.identity(), Vec::new()));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let (fx, word) = image[x.index()].clone().expect("queued elements have images");
        for &(letter, exp, img) in &steps {
            let y = group.mul(x, group.pow(group.generator(letter), exp));
            let fy = group.mul(fx, img);
            let mut y_word = word.clone();
            y_word.push((letter, exp));
            match &image[y.index()] {
                Some((existing, existing_word)) if *existing != fy => {
                    return Err(WellDefinednessWitness {
                        element: y,
                        first: to_expr(existing_word),
                        second: to_expr(&y_word),
                        first_image: *existing,
                        second_image: fy,
                    });
                }
                Some(_) => {}
                None => {
                    image[y.index()] = Some((fy, y_word));
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(())
}

fn to_expr(word: &[(Letter, i64)]) -> WordExpr {
    WordExpr::concat(
        word.iter()
            .map(|&(l, e)| if e == 1 { WordExpr::Letter(l) } else { WordExpr::power(WordExpr::Letter(l), e) })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Convention};
    use crate::words::{eval_str, parse_word};

    fn group() -> TorusGroup {
        build_group(Convention::ALL[0]).unwrap()
    }

    fn el(g: &TorusGroup, w: &str) -> GroupElement {
        eval_str(w, g).unwrap()
    }

    #[test]
    fn substitution_fixes_generators() {
        let g = group();
        let f = FCandidate::substitution(&g);
        assert_eq!(f.forward(el(&g, "a")), Some(el(&g, "ab")));
        assert_eq!(f.forward(el(&g, "b")), Some(el(&g, "b")));
        assert_eq!(f.forward(el(&g, "a b^-1")), Some(el(&g, "a")));
    }

    #[test]
    fn substitution_is_neither_well_defined_nor_bijective() {
        let g = group();
        let f = FCandidate::substitution(&g);
        let v = f.verdict();
        let witness = v.well_defined.clone().unwrap().unwrap_err();
        // the two words really are the same element with different images
        assert_eq!(eval_word(&witness.first, &g), witness.element);
        assert_eq!(eval_word(&witness.second, &g), witness.element);
        let ab = parse_word("ab").unwrap();
        let b = WordExpr::b();
        assert_eq!(eval_word(&witness.first.substitute(&ab, &b), &g), witness.first_image);
        assert_eq!(eval_word(&witness.second.substitute(&ab, &b), &g), witness.second_image);
        assert_ne!(witness.first_image, witness.second_image);

        assert!(f.is_total());
        let image_size = GroupElement::all().filter(|&y| !f.preimages(y).is_empty()).count();
        assert_eq!(image_size, 16);
        assert!(matches!(v.bijective, Err(BijectivityDefect::Collision { .. })));
        let w = v.multiplicative.unwrap_err();
        assert_ne!(w.image_of_product, w.product_of_images);
        assert_eq!(v.multiplicative_pairs_checked, 64 * 64);
    }

    #[test]
    fn shear_is_a_bijection_with_f_a_equal_ab() {
        let g = group();
        let f = FCandidate::shear(&g);
        assert!(f.is_bijective());
        assert!(!f.is_multiplicative());
        assert_eq!(f.forward(el(&g, "a")), Some(el(&g, "ab")));
        assert_eq!(f.forward(el(&g, "b")), Some(el(&g, "b")));
        for y in g.elements() {
            let x = f.inverse(y).unwrap();
            assert_eq!(f.forward(x), Some(y));
        }
    }

    #[test]
    fn identity_table_is_an_automorphism() {
        let g = group();
        let f = FCandidate::identity(&g);
        assert!(f.is_bijective() && f.is_multiplicative());
        assert_eq!(f.kind(), FKind::Table);
    }

    #[test]
    fn duplicate_table_rows_are_rejected() {
        let g = group();
        let x = g.generator_a();
        assert_eq!(
            FCandidate::from_table(&g, &[(x, x), (x, g.identity())]),
            Err(FError::DuplicateEntry { element: x })
        );
    }

    #[test]
    fn partial_table_reports_undefined() {
        let g = group();
        let f = FCandidate::from_table(&g, &[(g.generator_a(), g.generator_b())]).unwrap();
        assert_eq!(f.verdict().defined, 1);
        assert!(!f.is_total());
        assert_eq!(f.inverse(g.generator_b()), Some(g.generator_a()));
        assert!(f.preimages(g.generator_a()).is_empty());
        assert!(matches!(f.verdict().bijective, Err(BijectivityDefect::Undefined { .. })));
    }

    #[test]
    fn seeds_apply_the_substitution_or_its_formal_inverse() {
        let g = group();
        let seeds = [
            Seed { word: parse_word("a").unwrap(), direction: FDirection::Inverse },
            Seed { word: parse_word("a b").unwrap(), direction: FDirection::Forward },
        ];
        let f = FCandidate::seeded_substitution(&g, &seeds).unwrap();
        assert_eq!(f.forward(el(&g, "a b^-1")), Some(el(&g, "a")));
        assert_eq!(f.forward(el(&g, "a b")), Some(el(&g, "a b^2")));
        assert_eq!(f.verdict().defined, 2);
    }

    #[test]
    fn conflicting_seeds_are_rejected() {
        let g = group();
        // a^-1 is (ab)^2 a^-1 in this group, so these are two words for one element
        let seeds = [
            Seed { word: parse_word("a^-1").unwrap(), direction: FDirection::Forward },
            Seed { word: parse_word("(ab)^2 a^-1").unwrap(), direction: FDirection::Forward },
        ];
        assert!(matches!(
            FCandidate::seeded_substitution(&g, &seeds),
            Err(FError::SeedConflict { .. })
        ));
    }
}
